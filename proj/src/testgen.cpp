#include "blockabs/testgen.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace blockabs {

namespace {

constexpr Index kMaxDim = 64;
constexpr double kMaxOffBlock = 10.0;

ComplexMatrix eye(Index n) { return ComplexMatrix::Identity(n, n); }

}  // namespace

void GenConfig::validate() const {
  if (dim_min < 1 || dim_max < dim_min || dim_max > kMaxDim) {
    std::ostringstream os;
    os << "dimension range [" << dim_min << ", " << dim_max << "] outside [1, " << kMaxDim << "]";
    throw Error(ErrorCode::InvalidArgument, os.str());
  }
  if (!(magnitude > 0) || !std::isfinite(magnitude)) {
    throw Error(ErrorCode::InvalidArgument, "magnitude must be positive and finite");
  }
}

Generator::Generator(const GenConfig& cfg) : cfg_(cfg), rng_(cfg.seed) { cfg_.validate(); }

Index Generator::uniform_index(Index lo, Index hi) {
  return std::uniform_int_distribution<Index>(lo, hi)(rng_);
}

Index Generator::dim() { return uniform_index(cfg_.dim_min, cfg_.dim_max); }

double Generator::uniform(double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng_);
}

double Generator::sign() { return std::bernoulli_distribution(0.5)(rng_) ? 1.0 : -1.0; }

Complex Generator::entry(double scale) {
  const double re = uniform(-scale, scale);
  const double im = cfg_.complex_enabled ? uniform(-scale, scale) : 0.0;
  return {re, im};
}

ComplexMatrix Generator::matrix(Index rows, Index cols) {
  ComplexMatrix m(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    for (Index j = 0; j < cols; ++j) m(i, j) = entry(cfg_.magnitude);
  }
  return m;
}

ComplexMatrix Generator::gaussian(Index rows, Index cols) {
  std::normal_distribution<double> normal;
  ComplexMatrix m(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    for (Index j = 0; j < cols; ++j) {
      const double re = normal(rng_);
      m(i, j) = {re, cfg_.complex_enabled ? normal(rng_) : 0.0};
    }
  }
  return m;
}

ComplexMatrix Generator::unitary(Index n) {
  if (n == 0) return ComplexMatrix(0, 0);
  Eigen::HouseholderQR<ComplexMatrix> qr(gaussian(n, n));
  ComplexMatrix q = qr.householderQ() * eye(n);
  const ComplexMatrix& r = qr.matrixQR();
  for (Index i = 0; i < n; ++i) {
    const double mag = std::abs(r(i, i));
    if (mag > 0) q.col(i) *= r(i, i) / mag;
  }
  return q;
}

ComplexMatrix Generator::orthonormal_columns(Index n, Index k) {
  if (k < 0 || k > n) throw Error(ErrorCode::InvalidArgument, "need 0 <= k <= n");
  return unitary(n).leftCols(k);
}

HermitianMatrix Generator::hermitian(Index n) {
  const ComplexMatrix x = matrix(n, n);
  return HermitianMatrix(0.5 * (x + x.adjoint()));
}

SymmetryMatrix Generator::symmetry(Index n) {
  const ComplexMatrix u = unitary(n);
  RealVector d(n);
  for (Index i = 0; i < n; ++i) d(i) = sign();
  return SymmetryMatrix(u * d.asDiagonal() * u.adjoint());
}

Idempotent Generator::idempotent(Index dim, Index rank) {
  if (rank < 0 || rank > dim) throw Error(ErrorCode::InvalidArgument, "need 0 <= rank <= dim");
  const double scale = std::min(cfg_.magnitude, kMaxOffBlock);
  ComplexMatrix block = ComplexMatrix::Zero(dim, dim);
  block.topLeftCorner(rank, rank).setIdentity();
  for (Index i = 0; i < rank; ++i) {
    for (Index j = rank; j < dim; ++j) block(i, j) = entry(scale);
  }
  const ComplexMatrix u = unitary(dim);
  return Idempotent(u * block * u.adjoint());
}

SymmetryPair Generator::admissible_pair(const CanonicalIdempotent& c, SignMode mode) {
  const Index r = c.rank;
  const Index s = c.dim() - r;
  auto range_sign = [&]() {
    switch (mode) {
      case SignMode::Positive: return 1.0;
      case SignMode::Negative: return -1.0;
      case SignMode::Mixed: break;
    }
    return sign();
  };

  ComplexMatrix u = eye(r);
  ComplexMatrix v = eye(s);
  RealVector sigma(0);
  if (r > 0 && s > 0) {
    Eigen::JacobiSVD<ComplexMatrix> svd(c.e1, Eigen::ComputeFullU | Eigen::ComputeFullV);
    u = svd.matrixU();
    v = svd.matrixV();
    sigma = svd.singularValues();
  }
  const double top = sigma.size() > 0 ? sigma(0) : 0.0;
  const double zero_cut = 1e-10 * std::max(1.0, top);
  const double cluster_gap = 1e-8 * std::max(1.0, top);

  Index k = 0;
  while (k < sigma.size() && sigma(k) > zero_cut) ++k;

  RealVector d1(r);
  RealVector d2(s);
  double eps = 0.0;
  for (Index i = 0; i < k; ++i) {
    if (i == 0 || sigma(i - 1) - sigma(i) > cluster_gap) eps = range_sign();
    d1(i) = eps;
    d2(i) = -eps;
  }
  for (Index i = k; i < r; ++i) d1(i) = range_sign();
  for (Index i = k; i < s; ++i) d2(i) = sign();

  // Mix the free signs inside the null spaces.
  if (r > k) u.rightCols(r - k) = u.rightCols(r - k) * unitary(r - k);
  if (s > k) v.rightCols(s - k) = v.rightCols(s - k) * unitary(s - k);

  return {SymmetryMatrix(u * d1.asDiagonal() * u.adjoint()),
          SymmetryMatrix(v * d2.asDiagonal() * v.adjoint())};
}

JProjectionPair Generator::j_projection(Index dim, Index rank, SignMode mode) {
  Idempotent e = idempotent(dim, rank);
  const CanonicalIdempotent c = canonical_form(e);
  SymmetryMatrix j = build_symmetry(c, admissible_pair(c, mode));
  return {std::move(e), std::move(j)};
}

SymmetryMatrix Generator::singular_compression_symmetry(const ComplexMatrix& m) {
  const Index n = m.rows();
  const Index k = m.cols();
  if (k == 0 || k >= n) {
    throw Error(ErrorCode::InvalidArgument, "subspace must be proper and nonzero");
  }
  const ComplexMatrix inside = (m * gaussian(k, 1)).normalized();
  const ComplexMatrix outside = (orthogonal_complement(m) * gaussian(n - k, 1)).normalized();
  ComplexMatrix pair(n, 2);
  pair << inside, outside;
  ComplexMatrix x(n, n);
  x << pair, orthogonal_complement(pair);

  ComplexMatrix d = ComplexMatrix::Zero(n, n);
  d(0, 1) = d(1, 0) = 1.0;
  for (Index i = 2; i < n; ++i) d(i, i) = sign();
  return SymmetryMatrix(x * d * x.adjoint());
}

}  // namespace blockabs
