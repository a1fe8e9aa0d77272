#include "blockabs/krein.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "blockabs/support.hpp"

namespace blockabs {

namespace {

ComplexMatrix eye(Index n) { return ComplexMatrix::Identity(n, n); }

void require_same_dim(const Idempotent& e, const SymmetryMatrix& j) {
  if (e.dim() != j.dim()) {
    std::ostringstream os;
    os << "E is " << e.dim() << "x" << e.dim() << ", J is " << j.dim() << "x" << j.dim();
    throw Error(ErrorCode::DimensionMismatch, os.str());
  }
}

void require_j_projection(const Idempotent& e, const SymmetryMatrix& j, const Tolerance& tol) {
  if (!is_j_projection(e, j, tol)) {
    throw Error(ErrorCode::NotJProjection, "E != J E* J");
  }
}

// Rotate each column so that its largest entry is real and positive.
void normalize_phases(ComplexMatrix& w) {
  for (Index c = 0; c < w.cols(); ++c) {
    Index k = 0;
    w.col(c).cwiseAbs().maxCoeff(&k);
    const double mag = std::abs(w(k, c));
    if (mag > 0) w.col(c) *= std::conj(w(k, c)) / mag;
  }
}

// sign(A) for a Hermitian A with no eigenvalue in [-cut, cut].
HermitianMatrix hermitian_sign(const HermitianMatrix& a, double cut, std::string_view what) {
  const EigenDecomposition eig = herm_eig(a);
  for (Index i = 0; i < eig.eigenvalues.size(); ++i) {
    if (std::abs(eig.eigenvalues(i)) <= cut) {
      throw Error(ErrorCode::PreconditionViolation, std::string(what) + " is singular");
    }
  }
  return spectral_map(eig, [](double x) { return x > 0 ? 1.0 : -1.0; });
}

HermitianMatrix hermitian_part(const ComplexMatrix& m) {
  return HermitianMatrix(0.5 * (m + m.adjoint()));
}

}  // namespace

Idempotent::Idempotent(ComplexMatrix e, const Tolerance& tol) : e_(std::move(e)) {
  if (e_.rows() != e_.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "idempotent must be square");
  }
  require_finite(e_, "E");
  const double fro = e_.norm();
  const double residual = (e_ * e_ - e_).norm();
  if (residual > tol.compare * (1.0 + fro * fro)) {
    std::ostringstream os;
    os << "||E^2 - E||_F = " << residual;
    throw Error(ErrorCode::NotIdempotent, os.str());
  }
}

SymmetryMatrix::SymmetryMatrix(const ComplexMatrix& j, const Tolerance& tol)
    : j_(j, tol.herm) {
  const ComplexMatrix& m = j_.matrix();
  const double fro = m.norm();
  const double residual = (m * m - eye(m.rows())).norm();
  if (residual > tol.compare * (1.0 + fro * fro)) {
    std::ostringstream os;
    os << "||J^2 - I||_F = " << residual;
    throw Error(ErrorCode::NotSymmetry, os.str());
  }
}

SymmetryMatrix SymmetryMatrix::identity(Index n) { return SymmetryMatrix(eye(n)); }

SymmetryMatrix SymmetryMatrix::from_projection(const HermitianMatrix& p, const Tolerance& tol) {
  return SymmetryMatrix(2.0 * p.matrix() - eye(p.dim()), tol);
}

ComplexMatrix CanonicalIdempotent::block() const {
  const Index n = dim();
  ComplexMatrix b = ComplexMatrix::Zero(n, n);
  b.topLeftCorner(rank, rank).setIdentity();
  b.topRightCorner(rank, n - rank) = e1;
  return b;
}

ComplexMatrix CanonicalIdempotent::reconstruct() const { return w * block() * w.adjoint(); }

CanonicalIdempotent canonical_form(const Idempotent& e, const Tolerance& tol) {
  const ComplexMatrix& em = e.matrix();
  const Index n = e.dim();
  CanonicalIdempotent c;
  if (n == 0) {
    c.w = ComplexMatrix(0, 0);
    c.e1 = ComplexMatrix(0, 0);
    return c;
  }
  Eigen::JacobiSVD<ComplexMatrix> svd(em, Eigen::ComputeFullU);
  const RealVector& s = svd.singularValues();
  const double cut = tol.rank * std::max(1.0, s(0));
  Index r = 0;
  for (Index i = 0; i < s.size(); ++i) {
    if (s(i) <= cut) continue;
    // Nonzero singular values of an idempotent are >= 1.
    if (s(i) <= 0.5) {
      std::ostringstream os;
      os << "singular value " << s(i) << " is neither 0 nor >= 1";
      throw Error(ErrorCode::RankInstability, os.str());
    }
    ++r;
  }
  c.w = svd.matrixU();
  normalize_phases(c.w);
  c.rank = r;
  c.e1 = c.w.leftCols(r).adjoint() * em * c.w.rightCols(n - r);

  const ComplexMatrix extracted = c.w.adjoint() * em * c.w;
  if (!approx_equal(extracted, c.block(), tol.compare)) {
    std::ostringstream os;
    os << "canonical residual " << relative_deviation(extracted, c.block());
    throw Error(ErrorCode::RankInstability, os.str());
  }
  return c;
}

SymmetryMatrix build_symmetry(const CanonicalIdempotent& c, const SymmetryPair& pair,
                              const Tolerance& tol) {
  const Index r = c.rank;
  const Index s = c.dim() - r;
  const ComplexMatrix& j1 = pair.on_range.matrix();
  const ComplexMatrix& j2 = pair.on_complement.matrix();
  if (j1.rows() != r || j2.rows() != s) {
    throw Error(ErrorCode::DimensionMismatch, "symmetry pair does not match the canonical blocks");
  }
  const ComplexMatrix& e1 = c.e1;
  const double defect = (j1 * e1 + e1 * j2).norm();
  if (defect > tol.compare * (1.0 + e1.norm())) {
    std::ostringstream os;
    os << "||J1 E1 + E1 J2||_F = " << defect;
    throw Error(ErrorCode::InvalidPair, os.str());
  }
  const ComplexMatrix s1 =
      pd_inverse_sqrt(HermitianMatrix(eye(r) + e1 * e1.adjoint()), tol).matrix();
  const ComplexMatrix s2 =
      pd_inverse_sqrt(HermitianMatrix(eye(s) + e1.adjoint() * e1), tol).matrix();
  const ComplexMatrix tr = j1 * s1 * e1;
  const ComplexMatrix blocks = block2x2(j1 * s1, tr, tr.adjoint(), j2 * s2);
  return SymmetryMatrix(c.w * blocks * c.w.adjoint(), tol);
}

SymmetryPair extract_symmetry_pair(const CanonicalIdempotent& c, const SymmetryMatrix& j,
                                   const Tolerance& tol) {
  if (j.dim() != c.dim()) throw Error(ErrorCode::DimensionMismatch, "J does not match E");
  require_j_projection(Idempotent(c.reconstruct(), tol), j, tol);
  const Index r = c.rank;
  const Index s = c.dim() - r;
  const ComplexMatrix rotated = c.w.adjoint() * j.matrix() * c.w;
  const HermitianMatrix q11(rotated.topLeftCorner(r, r), 1e-6);
  const HermitianMatrix q22(rotated.bottomRightCorner(s, s), 1e-6);
  return {SymmetryMatrix(hermitian_sign(q11, tol.rank, "range block of J").matrix(), tol),
          SymmetryMatrix(hermitian_sign(q22, tol.rank, "complement block of J").matrix(), tol)};
}

bool is_j_projection(const Idempotent& e, const SymmetryMatrix& j, const Tolerance& tol) {
  require_same_dim(e, j);
  const ComplexMatrix& jm = j.matrix();
  return approx_equal(jm * e.matrix().adjoint() * jm, e.matrix(), tol.compare);
}

bool is_j_positive(const Idempotent& e, const SymmetryMatrix& j, const Tolerance& tol) {
  require_same_dim(e, j);
  const ComplexMatrix je = j.matrix() * e.matrix();
  if (!approx_equal(je.adjoint(), je, tol.compare)) return false;
  return is_psd(hermitian_part(je), tol);
}

bool is_j_positive_structural(const Idempotent& e, const SymmetryMatrix& j,
                              const Tolerance& tol) {
  if (!is_j_projection(e, j, tol)) return false;
  const CanonicalIdempotent c = canonical_form(e, tol);
  const SymmetryPair pair = extract_symmetry_pair(c, j, tol);
  return approx_equal(pair.on_range.matrix(), eye(c.rank), tol.compare);
}

SymmetryMatrix min_symmetry(const Idempotent& e, const Tolerance& tol) {
  const CanonicalIdempotent c = canonical_form(e, tol);
  const ComplexMatrix p = idempotent_sum_support(c.e1, tol).matrix();
  return SymmetryMatrix(c.w * (2.0 * p - eye(c.dim())) * c.w.adjoint(), tol);
}

Equivalence positivity_vs_min_symmetry(const Idempotent& e, const SymmetryMatrix& j,
                                       const Tolerance& tol) {
  require_j_projection(e, j, tol);
  return {is_j_positive(e, j, tol), loewner_geq(j.hermitian(), min_symmetry(e, tol).hermitian(), tol)};
}

Equivalence positivity_vs_range_intersection(const Idempotent& e, const SymmetryMatrix& j,
                                             const Tolerance& tol) {
  require_j_projection(e, j, tol);
  const ComplexMatrix shifted = j.matrix() + eye(j.dim());
  const bool sandwich_psd = is_psd(hermitian_part(shifted * e.matrix() * shifted), tol);
  // R(I - J) is the -1 eigenspace of J; eigenvalues of a symmetry are +-1.
  const EigenDecomposition eig = herm_eig(j.hermitian());
  Index negative = 0;
  while (negative < eig.eigenvalues.size() && eig.eigenvalues(negative) < 0) ++negative;
  const CanonicalIdempotent c = canonical_form(e, tol);
  const bool disjoint =
      trivial_intersection(c.w.leftCols(c.rank), eig.vectors.leftCols(negative), tol);
  return {is_j_positive(e, j, tol), sandwich_psd && disjoint};
}

bool trivial_intersection(const ComplexMatrix& a, const ComplexMatrix& b, const Tolerance& tol) {
  if (a.rows() != b.rows()) throw Error(ErrorCode::DimensionMismatch, "bases of different spaces");
  const Index total = a.cols() + b.cols();
  if (total == 0 || a.cols() == 0 || b.cols() == 0) return true;
  if (total > a.rows()) return false;
  ComplexMatrix joined(a.rows(), total);
  joined << a, b;
  return numerical_rank(joined, tol) == total;
}

Idempotent projection_from_subspace(const ComplexMatrix& m, const SymmetryMatrix& j,
                                    const Tolerance& tol) {
  const Index n = m.rows();
  const Index k = m.cols();
  if (n != j.dim()) throw Error(ErrorCode::DimensionMismatch, "subspace basis does not match J");
  require_finite(m, "M");
  if (k == 0 || k >= n) {
    throw Error(ErrorCode::PreconditionViolation, "subspace must be proper and nonzero");
  }
  if (!approx_equal(m.adjoint() * m, eye(k), tol.compare)) {
    throw Error(ErrorCode::InvalidArgument, "subspace basis columns are not orthonormal");
  }
  const ComplexMatrix mc = orthogonal_complement(m);
  const ComplexMatrix& jm = j.matrix();
  const HermitianMatrix q11(m.adjoint() * jm * m, 1e-6);
  const ComplexMatrix q12 = m.adjoint() * jm * mc;

  const EigenDecomposition eig = herm_eig(q11);
  const double largest = eig.eigenvalues.cwiseAbs().maxCoeff();
  const double smallest = eig.eigenvalues.cwiseAbs().minCoeff();
  if (smallest <= tol.rank * std::max(1.0, largest)) {
    std::ostringstream os;
    os << "compression of J to the subspace is singular (min |eig| = " << smallest << ")";
    throw Error(ErrorCode::NoJProjection, os.str());
  }
  const ComplexMatrix q11_inv =
      eig.vectors * eig.eigenvalues.cwiseInverse().asDiagonal() * eig.vectors.adjoint();

  ComplexMatrix w(n, n);
  w << m, mc;
  const ComplexMatrix blocks =
      block2x2(eye(k), q11_inv * q12, ComplexMatrix::Zero(n - k, k),
               ComplexMatrix::Zero(n - k, n - k));
  return Idempotent(w * blocks * w.adjoint(), tol);
}

PosNegDecomposition decompose_pos_neg(const Idempotent& e, const SymmetryMatrix& j,
                                      const Tolerance& tol) {
  require_j_projection(e, j, tol);
  const CanonicalIdempotent c = canonical_form(e, tol);
  const SymmetryPair pair = extract_symmetry_pair(c, j, tol);
  const Index r = c.rank;
  const Index s = c.dim() - r;
  const ComplexMatrix zero_bl = ComplexMatrix::Zero(s, r);
  const ComplexMatrix zero_br = ComplexMatrix::Zero(s, s);

  auto assemble = [&](const ComplexMatrix& top) {
    return Idempotent(c.w * block2x2(top, top * c.e1, zero_bl, zero_br) * c.w.adjoint(), tol);
  };
  const ComplexMatrix& j1 = pair.on_range.matrix();
  return {assemble(0.5 * (eye(r) + j1)), assemble(0.5 * (eye(r) - j1))};
}

}  // namespace blockabs
