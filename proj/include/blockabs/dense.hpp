#pragma once

// Dense complex-matrix kernel: Hermitian eigendecomposition and the spectral
// functions built on it (square roots, absolute values, positive/negative
// parts, support projections), polar factors and Loewner comparisons.
//
// Every structured formula elsewhere in the library is checked against the
// brute-force routines here, so they deliberately go through a plain
// eigendecomposition and nothing else.

#include <complex>
#include <string_view>
#include <utility>

#include <Eigen/Dense>

#include "blockabs/error.hpp"

namespace blockabs {

using Index = Eigen::Index;
using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;

/// Numerical thresholds shared by the whole library.
///
/// Matrix comparisons are Frobenius-relative: `a ~ b` means
/// `||a - b||_F <= compare * (1 + ||b||_F)`. Rank decisions keep singular
/// values (or |eigenvalues|) above `rank * largest`. Semidefiniteness
/// accepts a smallest eigenvalue down to `-psd * max(1, spectral radius)`.
struct Tolerance {
  double herm = 1e-10;
  double rank = 1e-10;
  double psd = 1e-9;
  double compare = 1e-8;

  /// Throws InvalidArgument unless every field is strictly positive.
  void validate() const;
};

double relative_deviation(const ComplexMatrix& a, const ComplexMatrix& b);
bool approx_equal(const ComplexMatrix& a, const ComplexMatrix& b, double tol);
/// Largest entrywise modulus of `a - b`.
double max_abs_deviation(const ComplexMatrix& a, const ComplexMatrix& b);

/// Throws NonFinite if any entry is NaN or infinite.
void require_finite(const ComplexMatrix& m, std::string_view what);

/// Largest singular value (0 for empty matrices).
double spectral_norm(const ComplexMatrix& m);

/// Square self-adjoint matrix. Construction checks
/// `||A - A*||_F <= herm_tol * (1 + ||A||_F)` and stores `(A + A*) / 2`.
class HermitianMatrix {
 public:
  HermitianMatrix() = default;
  explicit HermitianMatrix(const ComplexMatrix& a, double herm_tol = Tolerance{}.herm);

  static HermitianMatrix identity(Index n);
  static HermitianMatrix zero(Index n);
  static HermitianMatrix diagonal(const RealVector& d);

  Index dim() const { return m_.rows(); }
  const ComplexMatrix& matrix() const { return m_; }

 private:
  ComplexMatrix m_;
};

HermitianMatrix operator+(const HermitianMatrix& a, const HermitianMatrix& b);
HermitianMatrix operator-(const HermitianMatrix& a, const HermitianMatrix& b);
HermitianMatrix operator*(double s, const HermitianMatrix& a);

struct EigenDecomposition {
  RealVector eigenvalues;  // ascending
  ComplexMatrix vectors;   // orthonormal columns

  ComplexMatrix reconstruct() const;
};

/// Throws KernelFailure if the solver does not converge.
EigenDecomposition herm_eig(const HermitianMatrix& a);

/// V f(L) V* for the eigendecomposition A = V L V*.
template <class F>
HermitianMatrix spectral_map(const EigenDecomposition& eig, F&& f) {
  RealVector mapped(eig.eigenvalues.size());
  for (Index i = 0; i < mapped.size(); ++i) mapped(i) = f(eig.eigenvalues(i));
  return HermitianMatrix(eig.vectors * mapped.asDiagonal() * eig.vectors.adjoint());
}

template <class F>
HermitianMatrix spectral_map(const HermitianMatrix& a, F&& f) {
  return spectral_map(herm_eig(a), std::forward<F>(f));
}

double min_eigenvalue(const HermitianMatrix& a);
double max_eigenvalue(const HermitianMatrix& a);

/// Negative floor used for "A >= 0" decisions at scale `scale`.
double psd_floor(const Tolerance& tol, double scale);

bool is_psd(const HermitianMatrix& a, const Tolerance& tol = {});

/// Positive square root. Eigenvalues in [-floor, 0) are clamped to zero;
/// anything below throws NotPositive.
HermitianMatrix psd_sqrt(const HermitianMatrix& a, const Tolerance& tol = {});

/// Inverse and inverse square root of a positive definite matrix. The
/// smallest eigenvalue must exceed `tol.rank`, otherwise PreconditionViolation.
HermitianMatrix pd_inverse(const HermitianMatrix& a, const Tolerance& tol = {});
HermitianMatrix pd_inverse_sqrt(const HermitianMatrix& a, const Tolerance& tol = {});

HermitianMatrix abs_oracle(const HermitianMatrix& m);
HermitianMatrix pos_part_oracle(const HermitianMatrix& a);
HermitianMatrix neg_part_oracle(const HermitianMatrix& a);

/// Orthogonal projection onto the span of eigenvectors with
/// |eigenvalue| > tol.rank * max|eigenvalue|.
HermitianMatrix support_projection_oracle(const HermitianMatrix& a, const Tolerance& tol = {});

/// Orthonormal columns spanning the range of `m` (rank cut at tol.rank).
ComplexMatrix range_basis(const ComplexMatrix& m, const Tolerance& tol = {});
Index numerical_rank(const ComplexMatrix& m, const Tolerance& tol = {});

/// Orthonormal columns spanning the orthogonal complement of the span of the
/// orthonormal columns of `basis`.
ComplexMatrix orthogonal_complement(const ComplexMatrix& basis);

/// V with V V* V = V and rank(V) = initial_rank.
class PartialIsometry {
 public:
  PartialIsometry(ComplexMatrix v, Index initial_rank);

  const ComplexMatrix& matrix() const { return v_; }
  Index initial_rank() const { return rank_; }
  /// V*V, the projection onto the initial space.
  HermitianMatrix initial_projection() const;
  /// VV*, the projection onto the final space.
  HermitianMatrix final_projection() const;

 private:
  ComplexMatrix v_;
  Index rank_;
};

/// The partial isometry V in B* = V (BB*)^{1/2}: maps closure R(B) onto
/// closure R(B*) and vanishes on R(B)^perp. Built from the singular pairs of
/// B with sigma > tol.rank * sigma_max, so V*V = P_B and VV* = P_{B*}.
PartialIsometry polar_partial_isometry(const ComplexMatrix& b, const Tolerance& tol = {});

/// |B*| = (BB*)^{1/2} on H and |B| = (B*B)^{1/2} on K, read off the singular
/// value decomposition so that zero singular values stay exactly zero.
struct AbsoluteFactors {
  HermitianMatrix left;   // |B*|
  HermitianMatrix right;  // |B|
};
AbsoluteFactors abs_factors(const ComplexMatrix& b);

/// Grouping of the spectrum of a psd matrix at a threshold mu.
struct SpectralSplit {
  double threshold = 0.0;
  ComplexMatrix basis_low;   // eigenvalues <= threshold (with tolerance)
  ComplexMatrix basis_high;  // eigenvalues > threshold
  HermitianMatrix low;       // compression of A to basis_low
  HermitianMatrix high;      // compression of A to basis_high

  /// [basis_low | basis_high], a unitary matrix.
  ComplexMatrix basis() const;
};

/// Requires A >= 0 and mu > 0. Eigenvalues <= mu * (1 + tol.rank) + tol.rank
/// are assigned to the low block. Either block may have zero columns.
SpectralSplit spectral_split(const HermitianMatrix& a, double mu, const Tolerance& tol = {});

/// A >= B in the Loewner order.
bool loewner_geq(const HermitianMatrix& a, const HermitianMatrix& b, const Tolerance& tol = {});

/// Block-diagonal [[a, 0], [0, b]].
ComplexMatrix direct_sum(const ComplexMatrix& a, const ComplexMatrix& b);

/// Assemble [[tl, tr], [bl, br]]; throws DimensionMismatch on ragged blocks.
ComplexMatrix block2x2(const ComplexMatrix& tl, const ComplexMatrix& tr, const ComplexMatrix& bl,
                       const ComplexMatrix& br);

}  // namespace blockabs
