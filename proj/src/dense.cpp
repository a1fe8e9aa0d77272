#include "blockabs/dense.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace blockabs {

namespace {

std::string dims(const ComplexMatrix& m) {
  std::ostringstream os;
  os << m.rows() << "x" << m.cols();
  return os.str();
}

Eigen::JacobiSVD<ComplexMatrix> full_svd(const ComplexMatrix& m) {
  return Eigen::JacobiSVD<ComplexMatrix>(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
}

Index count_above(const RealVector& sigma, double cut) {
  Index r = 0;
  for (Index i = 0; i < sigma.size(); ++i) {
    if (sigma(i) > cut) ++r;
  }
  return r;
}

double spectral_radius(const EigenDecomposition& eig) {
  return eig.eigenvalues.size() == 0 ? 0.0 : eig.eigenvalues.cwiseAbs().maxCoeff();
}

}  // namespace

void Tolerance::validate() const {
  if (!(herm > 0 && rank > 0 && psd > 0 && compare > 0)) {
    throw Error(ErrorCode::InvalidArgument, "tolerances must be strictly positive");
  }
}

double relative_deviation(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "comparing " + dims(a) + " with " + dims(b));
  }
  return (a - b).norm() / (1.0 + b.norm());
}

bool approx_equal(const ComplexMatrix& a, const ComplexMatrix& b, double tol) {
  return relative_deviation(a, b) <= tol;
}

double max_abs_deviation(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "comparing " + dims(a) + " with " + dims(b));
  }
  return a.size() == 0 ? 0.0 : (a - b).cwiseAbs().maxCoeff();
}

void require_finite(const ComplexMatrix& m, std::string_view what) {
  if (!m.allFinite()) {
    throw Error(ErrorCode::NonFinite, std::string(what) + " has NaN or infinite entries");
  }
}

double spectral_norm(const ComplexMatrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<ComplexMatrix> svd(m);
  return svd.singularValues()(0);
}

// ---------------------------------------------------------------------------
// HermitianMatrix

HermitianMatrix::HermitianMatrix(const ComplexMatrix& a, double herm_tol) {
  if (a.rows() != a.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "Hermitian matrix must be square, got " + dims(a));
  }
  require_finite(a, "Hermitian matrix");
  const double asym = (a - a.adjoint()).norm();
  if (asym > herm_tol * (1.0 + a.norm())) {
    std::ostringstream os;
    os << "||A - A*||_F = " << asym << " exceeds tolerance";
    throw Error(ErrorCode::NotHermitian, os.str());
  }
  m_ = 0.5 * (a + a.adjoint());
}

HermitianMatrix HermitianMatrix::identity(Index n) {
  return HermitianMatrix(ComplexMatrix::Identity(n, n));
}

HermitianMatrix HermitianMatrix::zero(Index n) {
  return HermitianMatrix(ComplexMatrix::Zero(n, n));
}

HermitianMatrix HermitianMatrix::diagonal(const RealVector& d) {
  return HermitianMatrix(ComplexMatrix(d.cast<Complex>().asDiagonal()));
}

HermitianMatrix operator+(const HermitianMatrix& a, const HermitianMatrix& b) {
  return HermitianMatrix(a.matrix() + b.matrix());
}

HermitianMatrix operator-(const HermitianMatrix& a, const HermitianMatrix& b) {
  return HermitianMatrix(a.matrix() - b.matrix());
}

HermitianMatrix operator*(double s, const HermitianMatrix& a) {
  return HermitianMatrix(s * a.matrix());
}

// ---------------------------------------------------------------------------
// Spectral calculus

ComplexMatrix EigenDecomposition::reconstruct() const {
  return vectors * eigenvalues.cast<Complex>().asDiagonal() * vectors.adjoint();
}

EigenDecomposition herm_eig(const HermitianMatrix& a) {
  if (a.dim() == 0) return {RealVector(0), ComplexMatrix(0, 0)};
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(a.matrix());
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::KernelFailure, "Hermitian eigensolver did not converge");
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

double min_eigenvalue(const HermitianMatrix& a) {
  if (a.dim() == 0) return 0.0;
  return herm_eig(a).eigenvalues(0);
}

double max_eigenvalue(const HermitianMatrix& a) {
  if (a.dim() == 0) return 0.0;
  const auto eig = herm_eig(a);
  return eig.eigenvalues(eig.eigenvalues.size() - 1);
}

double psd_floor(const Tolerance& tol, double scale) {
  return -tol.psd * std::max(1.0, scale);
}

bool is_psd(const HermitianMatrix& a, const Tolerance& tol) {
  if (a.dim() == 0) return true;
  const auto eig = herm_eig(a);
  return eig.eigenvalues(0) >= psd_floor(tol, spectral_radius(eig));
}

HermitianMatrix psd_sqrt(const HermitianMatrix& a, const Tolerance& tol) {
  const auto eig = herm_eig(a);
  if (eig.eigenvalues.size() > 0) {
    const double lo = eig.eigenvalues(0);
    if (lo < psd_floor(tol, spectral_radius(eig))) {
      std::ostringstream os;
      os << "square root of a matrix with eigenvalue " << lo;
      throw Error(ErrorCode::NotPositive, os.str());
    }
  }
  return spectral_map(eig, [](double x) { return std::sqrt(std::max(x, 0.0)); });
}

namespace {

EigenDecomposition checked_pd(const HermitianMatrix& a, const Tolerance& tol) {
  auto eig = herm_eig(a);
  if (eig.eigenvalues.size() > 0 && !(eig.eigenvalues(0) > tol.rank)) {
    std::ostringstream os;
    os << "matrix expected positive definite, smallest eigenvalue " << eig.eigenvalues(0);
    throw Error(ErrorCode::PreconditionViolation, os.str());
  }
  return eig;
}

}  // namespace

HermitianMatrix pd_inverse(const HermitianMatrix& a, const Tolerance& tol) {
  return spectral_map(checked_pd(a, tol), [](double x) { return 1.0 / x; });
}

HermitianMatrix pd_inverse_sqrt(const HermitianMatrix& a, const Tolerance& tol) {
  return spectral_map(checked_pd(a, tol), [](double x) { return 1.0 / std::sqrt(x); });
}

HermitianMatrix abs_oracle(const HermitianMatrix& m) {
  return spectral_map(m, [](double x) { return std::abs(x); });
}

HermitianMatrix pos_part_oracle(const HermitianMatrix& a) {
  return spectral_map(a, [](double x) { return std::max(x, 0.0); });
}

HermitianMatrix neg_part_oracle(const HermitianMatrix& a) {
  return spectral_map(a, [](double x) { return std::max(-x, 0.0); });
}

HermitianMatrix support_projection_oracle(const HermitianMatrix& a, const Tolerance& tol) {
  const auto eig = herm_eig(a);
  const double cut = tol.rank * spectral_radius(eig);
  return spectral_map(eig, [cut](double x) { return std::abs(x) > cut && x != 0.0 ? 1.0 : 0.0; });
}

// ---------------------------------------------------------------------------
// Subspaces

Index numerical_rank(const ComplexMatrix& m, const Tolerance& tol) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<ComplexMatrix> svd(m);
  const RealVector& s = svd.singularValues();
  if (s(0) == 0.0) return 0;
  return count_above(s, tol.rank * s(0));
}

ComplexMatrix range_basis(const ComplexMatrix& m, const Tolerance& tol) {
  if (m.size() == 0) return ComplexMatrix(m.rows(), 0);
  const auto svd = full_svd(m);
  const RealVector& s = svd.singularValues();
  const Index r = s(0) == 0.0 ? 0 : count_above(s, tol.rank * s(0));
  return svd.matrixU().leftCols(r);
}

ComplexMatrix orthogonal_complement(const ComplexMatrix& basis) {
  const Index n = basis.rows();
  const Index k = basis.cols();
  if (k == 0) return ComplexMatrix::Identity(n, n);
  if (k >= n) return ComplexMatrix(n, 0);
  Eigen::HouseholderQR<ComplexMatrix> qr(basis);
  ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(n, n);
  return q.rightCols(n - k);
}

// ---------------------------------------------------------------------------
// Polar factor

PartialIsometry::PartialIsometry(ComplexMatrix v, Index initial_rank)
    : v_(std::move(v)), rank_(initial_rank) {}

HermitianMatrix PartialIsometry::initial_projection() const {
  return HermitianMatrix(v_.adjoint() * v_);
}

HermitianMatrix PartialIsometry::final_projection() const {
  return HermitianMatrix(v_ * v_.adjoint());
}

PartialIsometry polar_partial_isometry(const ComplexMatrix& b, const Tolerance& tol) {
  // b : K -> H is rows(H) x cols(K); V : H -> K.
  if (b.size() == 0) return PartialIsometry(ComplexMatrix::Zero(b.cols(), b.rows()), 0);
  const auto svd = full_svd(b);
  const RealVector& s = svd.singularValues();
  const Index r = s(0) == 0.0 ? 0 : count_above(s, tol.rank * s(0));
  // B = U S W*  =>  B* = W S U* = (W_r U_r*) (U S U*).
  ComplexMatrix v = svd.matrixV().leftCols(r) * svd.matrixU().leftCols(r).adjoint();
  return PartialIsometry(std::move(v), r);
}

// ---------------------------------------------------------------------------
// Spectral split

ComplexMatrix SpectralSplit::basis() const {
  ComplexMatrix w(basis_low.rows(), basis_low.cols() + basis_high.cols());
  w << basis_low, basis_high;
  return w;
}

AbsoluteFactors abs_factors(const ComplexMatrix& b) {
  if (b.size() == 0) {
    return {HermitianMatrix::zero(b.rows()), HermitianMatrix::zero(b.cols())};
  }
  const auto svd = full_svd(b);
  const Index r = svd.singularValues().size();
  const auto sigma = svd.singularValues().asDiagonal();
  const ComplexMatrix u = svd.matrixU().leftCols(r);
  const ComplexMatrix w = svd.matrixV().leftCols(r);
  return {HermitianMatrix(u * sigma * u.adjoint()), HermitianMatrix(w * sigma * w.adjoint())};
}

SpectralSplit spectral_split(const HermitianMatrix& a, double mu, const Tolerance& tol) {
  if (!(mu > 0) || !std::isfinite(mu)) {
    throw Error(ErrorCode::InvalidArgument, "spectral split threshold must be positive");
  }
  const auto eig = herm_eig(a);
  const Index n = a.dim();
  if (n > 0 && eig.eigenvalues(0) < psd_floor(tol, spectral_radius(eig))) {
    throw Error(ErrorCode::NotPositive, "spectral split of a matrix that is not psd");
  }
  const double cut = mu * (1.0 + tol.rank) + tol.rank;
  Index n_low = 0;
  while (n_low < n && eig.eigenvalues(n_low) <= cut) ++n_low;

  SpectralSplit split;
  split.threshold = mu;
  split.basis_low = eig.vectors.leftCols(n_low);
  split.basis_high = eig.vectors.rightCols(n - n_low);
  split.low = HermitianMatrix::diagonal(eig.eigenvalues.head(n_low));
  split.high = HermitianMatrix::diagonal(eig.eigenvalues.tail(n - n_low));
  return split;
}

bool loewner_geq(const HermitianMatrix& a, const HermitianMatrix& b, const Tolerance& tol) {
  if (a.dim() != b.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "Loewner comparison of different dimensions");
  }
  if (a.dim() == 0) return true;
  const auto eig = herm_eig(a - b);
  const double scale = std::max(spectral_norm(a.matrix()), spectral_norm(b.matrix()));
  return eig.eigenvalues(0) >= psd_floor(tol, scale);
}

// ---------------------------------------------------------------------------
// Block assembly

ComplexMatrix direct_sum(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out = ComplexMatrix::Zero(a.rows() + b.rows(), a.cols() + b.cols());
  out.topLeftCorner(a.rows(), a.cols()) = a;
  out.bottomRightCorner(b.rows(), b.cols()) = b;
  return out;
}

ComplexMatrix block2x2(const ComplexMatrix& tl, const ComplexMatrix& tr, const ComplexMatrix& bl,
                       const ComplexMatrix& br) {
  if (tl.rows() != tr.rows() || bl.rows() != br.rows() || tl.cols() != bl.cols() ||
      tr.cols() != br.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "ragged 2x2 block assembly: " + dims(tl) + ", " +
                                                  dims(tr) + ", " + dims(bl) + ", " + dims(br));
  }
  ComplexMatrix out(tl.rows() + bl.rows(), tl.cols() + tr.cols());
  out.topLeftCorner(tl.rows(), tl.cols()) = tl;
  out.topRightCorner(tr.rows(), tr.cols()) = tr;
  out.bottomLeftCorner(bl.rows(), bl.cols()) = bl;
  out.bottomRightCorner(br.rows(), br.cols()) = br;
  return out;
}

}  // namespace blockabs
