#include "blockabs/block_abs.hpp"

#include <cmath>
#include <sstream>

namespace blockabs {

namespace {

ComplexMatrix eye(Index n) { return ComplexMatrix::Identity(n, n); }

HermitianMatrix outer_gram(const ComplexMatrix& b) { return HermitianMatrix(b * b.adjoint()); }
HermitianMatrix inner_gram(const ComplexMatrix& b) { return HermitianMatrix(b.adjoint() * b); }

// (shift I + 4 G)^{1/2} together with its inverse.
struct ShiftedRoot {
  HermitianMatrix root;
  HermitianMatrix inverse;
};

ShiftedRoot shifted_root(double shift, const HermitianMatrix& g, const Tolerance& tol) {
  HermitianMatrix arg(shift * eye(g.dim()) + 4.0 * g.matrix());
  HermitianMatrix root = psd_sqrt(arg, tol);
  HermitianMatrix inverse = pd_inverse(root, tol);
  return {std::move(root), std::move(inverse)};
}

// Square root of M for mu <= 0 or on the part of the spectrum above mu:
//   [[T^{-1}(2A - mu I + I), (1 + mu) T^{-1} A^{1/2}],
//    [(1 + mu) T^{-1} A^{1/2}, T^{-1}(mu^2 I - mu I + 2A)]],  T = [(mu - 1)^2 I + 4A]^{1/2}.
ComplexMatrix paired_sqrt_upper(const HermitianMatrix& a, double mu, const Tolerance& tol) {
  const Index n = a.dim();
  const auto t = shifted_root((mu - 1.0) * (mu - 1.0), a, tol);
  const ComplexMatrix& tinv = t.inverse.matrix();
  const ComplexMatrix root_a = psd_sqrt(a, tol).matrix();
  return block2x2(tinv * (2.0 * a.matrix() + (1.0 - mu) * eye(n)), (1.0 + mu) * tinv * root_a,
                  (1.0 + mu) * tinv * root_a, tinv * ((mu * mu - mu) * eye(n) + 2.0 * a.matrix()));
}

// [[I, A^{1/2}], [A^{1/2}, mu I]], the square root of M when mu >= ||A||.
ComplexMatrix paired_sqrt_lower(const HermitianMatrix& a, double mu, const Tolerance& tol) {
  const Index n = a.dim();
  const ComplexMatrix root_a = psd_sqrt(a, tol).matrix();
  return block2x2(eye(n), root_a, root_a, mu * eye(n));
}

// All eigenvalues of `a` at or below mu, with the spectral split's tie rule.
bool below_threshold(double top_eigenvalue, double mu, const Tolerance& tol) {
  return top_eigenvalue <= mu * (1.0 + tol.rank) + tol.rank;
}

}  // namespace

BlockSymm::BlockSymm(double lambda, double mu, ComplexMatrix b)
    : lambda_(lambda), mu_(mu), b_(std::move(b)) {
  if (!std::isfinite(lambda_) || !std::isfinite(mu_)) {
    throw Error(ErrorCode::NonFinite, "lambda and mu must be finite");
  }
  require_finite(b_, "B");
}

HermitianMatrix BlockSymm::assemble() const {
  return HermitianMatrix(
      block2x2(lambda_ * eye(dim_h()), b_, b_.adjoint(), mu_ * eye(dim_k())));
}

std::string_view name(CaseTag tag) {
  switch (tag) {
    case CaseTag::BothZero: return "BothZero";
    case CaseTag::LambdaOnly: return "LambdaOnly";
    case CaseTag::MuOnly: return "MuOnly";
    case CaseTag::ProductAboveNormSq: return "ProductAboveNormSq";
    case CaseTag::ProductNegative: return "ProductNegative";
    case CaseTag::ProductInsideNormSq: return "ProductInsideNormSq";
  }
  return "Unknown";
}

Eigen::Matrix2d scalar_pair_sqrt(double b, double mu) {
  if (!(b > 0) || !std::isfinite(b) || !std::isfinite(mu)) {
    throw Error(ErrorCode::InvalidArgument, "scalar_pair_sqrt needs finite b > 0");
  }
  const double rb = std::sqrt(b);
  Eigen::Matrix2d out;
  if (mu >= b) {
    out << 1.0, rb, rb, mu;
    return out;
  }
  const double t = std::sqrt(mu * mu - 2.0 * mu + 4.0 * b + 1.0);
  out << 2.0 * b - mu + 1.0, (1.0 + mu) * rb, rb * (1.0 + mu), mu * mu - mu + 2.0 * b;
  return out / t;
}

HermitianMatrix paired_block_sqrt(const HermitianMatrix& a, double mu, const Tolerance& tol) {
  if (!std::isfinite(mu)) throw Error(ErrorCode::NonFinite, "mu must be finite");
  if (!is_psd(a, tol)) throw Error(ErrorCode::NotPositive, "paired_block_sqrt needs A >= 0");
  const Index n = a.dim();
  if (n == 0) return HermitianMatrix(ComplexMatrix(0, 0));

  if (mu <= 0) return HermitianMatrix(paired_sqrt_upper(a, mu, tol));
  if (below_threshold(max_eigenvalue(a), mu, tol)) {
    return HermitianMatrix(paired_sqrt_lower(a, mu, tol));
  }

  // 0 < mu < ||A||: H = H1 (+) H2 with H1 = E_A[0, mu], H2 = E_A(mu, ||A||].
  // Build the root on (H1 (+) H2) (+) (H1 (+) H2) and rotate back.
  const SpectralSplit split = spectral_split(a, mu, tol);
  const Index n1 = split.low.dim();
  const Index n2 = split.high.dim();
  const ComplexMatrix lower = paired_sqrt_lower(split.low, mu, tol);
  const ComplexMatrix upper = paired_sqrt_upper(split.high, mu, tol);

  // Slots: [H1 | H2 | H1' | H2'] where the primed copies are the second summand.
  ComplexMatrix m = ComplexMatrix::Zero(2 * n, 2 * n);
  const Index h1 = 0, h2 = n1, h1p = n, h2p = n + n1;
  m.block(h1, h1, n1, n1) = lower.topLeftCorner(n1, n1);
  m.block(h1, h1p, n1, n1) = lower.topRightCorner(n1, n1);
  m.block(h1p, h1, n1, n1) = lower.bottomLeftCorner(n1, n1);
  m.block(h1p, h1p, n1, n1) = lower.bottomRightCorner(n1, n1);
  m.block(h2, h2, n2, n2) = upper.topLeftCorner(n2, n2);
  m.block(h2, h2p, n2, n2) = upper.topRightCorner(n2, n2);
  m.block(h2p, h2, n2, n2) = upper.bottomLeftCorner(n2, n2);
  m.block(h2p, h2p, n2, n2) = upper.bottomRightCorner(n2, n2);

  const ComplexMatrix w = split.basis();
  const ComplexMatrix ww = direct_sum(w, w);
  return HermitianMatrix(ww * m * ww.adjoint());
}

HermitianMatrix abs_unit_block(const ComplexMatrix& b, double mu, const Tolerance& tol) {
  if (!std::isfinite(mu)) throw Error(ErrorCode::NonFinite, "mu must be finite");
  require_finite(b, "B");
  const Index dh = b.rows();
  const Index dk = b.cols();
  const double norm_sq = std::pow(spectral_norm(b), 2);

  if (below_threshold(norm_sq, mu, tol)) {
    return BlockSymm(1.0, mu, b).assemble();
  }

  if (mu <= 0) {
    const auto t = shifted_root((mu - 1.0) * (mu - 1.0), outer_gram(b), tol);
    const auto s = shifted_root((mu - 1.0) * (mu - 1.0), inner_gram(b), tol);
    const ComplexMatrix& tinv = t.inverse.matrix();
    const ComplexMatrix& sinv = s.inverse.matrix();
    return HermitianMatrix(block2x2(
        tinv * (2.0 * b * b.adjoint() + (1.0 - mu) * eye(dh)), (1.0 + mu) * tinv * b,
        (1.0 + mu) * b.adjoint() * tinv,
        sinv * ((mu * mu - mu) * eye(dk) + 2.0 * b.adjoint() * b)));
  }

  // 0 < mu < ||B||^2. Split H = R(B) (+) R(B)^perp and K = N(B)^perp (+) N(B).
  // On N(B)^perp the basis is the polar image V * basis(R(B)), so the reduced
  // operator B~ reads as (B~ B~*)^{1/2} and the unitary conjugation of the
  // reduced problem is the identity in these coordinates.
  const PartialIsometry v = polar_partial_isometry(b, tol);
  const ComplexMatrix range_h = range_basis(b, tol);
  const Index r = range_h.cols();
  if (v.initial_rank() != r) {
    std::ostringstream os;
    os << "rank of B disagrees between polar factor (" << v.initial_rank() << ") and range ("
       << r << ")";
    throw Error(ErrorCode::RankInstability, os.str());
  }
  const ComplexMatrix range_k = v.matrix() * range_h;
  const ComplexMatrix wh = [&] {
    ComplexMatrix w(dh, dh);
    w << range_h, orthogonal_complement(range_h);
    return w;
  }();
  const ComplexMatrix wk = [&] {
    ComplexMatrix w(dk, dk);
    w << range_k, orthogonal_complement(range_k);
    return w;
  }();

  const ComplexMatrix compressed = range_h.adjoint() * b;
  const HermitianMatrix reduced(compressed * compressed.adjoint());
  const ComplexMatrix core = paired_block_sqrt(reduced, mu, tol).matrix();

  // Ordering [R(B) | R(B)^perp | N(B)^perp | N(B)].
  ComplexMatrix m = ComplexMatrix::Zero(dh + dk, dh + dk);
  m.block(0, 0, r, r) = core.topLeftCorner(r, r);
  m.block(0, dh, r, r) = core.topRightCorner(r, r);
  m.block(dh, 0, r, r) = core.bottomLeftCorner(r, r);
  m.block(dh, dh, r, r) = core.bottomRightCorner(r, r);
  m.block(r, r, dh - r, dh - r).setIdentity();
  m.block(dh + r, dh + r, dk - r, dk - r) = std::abs(mu) * eye(dk - r);

  const ComplexMatrix w = direct_sum(wh, wk);
  return HermitianMatrix(w * m * w.adjoint());
}

CaseTag case_of(const BlockSymm& q, const Tolerance& tol) {
  const double lambda = q.lambda();
  const double mu = q.mu();
  if (lambda == 0.0 && mu == 0.0) return CaseTag::BothZero;
  if (mu == 0.0) return CaseTag::LambdaOnly;
  if (lambda == 0.0) return CaseTag::MuOnly;
  const double product = lambda * mu;
  if (product < 0.0) return CaseTag::ProductNegative;
  const double norm_sq = std::pow(spectral_norm(q.b()), 2);
  // Same rule abs_unit_block applies to (B / lambda, mu / lambda).
  if (norm_sq <= product * (1.0 + tol.rank) + tol.rank * lambda * lambda) {
    return CaseTag::ProductAboveNormSq;
  }
  return CaseTag::ProductInsideNormSq;
}

ComplexMatrix swap_blocks(const ComplexMatrix& m, Index first) {
  const Index n = m.rows();
  const Index second = n - first;
  return block2x2(m.bottomRightCorner(second, second), m.bottomLeftCorner(second, first),
                  m.topRightCorner(first, second), m.topLeftCorner(first, first));
}

BlockAbs abs_block_symm(const BlockSymm& q, const Tolerance& tol) {
  const double lambda = q.lambda();
  const double mu = q.mu();
  const ComplexMatrix& b = q.b();
  const Index dh = q.dim_h();
  const Index dk = q.dim_k();
  const CaseTag tag = case_of(q, tol);

  switch (tag) {
    case CaseTag::BothZero: {
      const AbsoluteFactors f = abs_factors(b);
      return {HermitianMatrix(direct_sum(f.left.matrix(), f.right.matrix())), tag};
    }
    case CaseTag::LambdaOnly: {
      const auto t = shifted_root(lambda * lambda, outer_gram(b), tol);
      const ComplexMatrix& tm = t.root.matrix();
      const ComplexMatrix& tinv = t.inverse.matrix();
      return {HermitianMatrix(block2x2(0.5 * (tm + lambda * lambda * tinv), lambda * tinv * b,
                                       lambda * b.adjoint() * tinv,
                                       2.0 * b.adjoint() * tinv * b)),
              tag};
    }
    case CaseTag::ProductAboveNormSq: {
      const double sign = lambda > 0 ? 1.0 : -1.0;
      return {sign * q.assemble(), tag};
    }
    case CaseTag::ProductNegative: {
      const double gap = (mu - lambda) * (mu - lambda);
      const auto t = shifted_root(gap, outer_gram(b), tol);
      const auto s = shifted_root(gap, inner_gram(b), tol);
      const ComplexMatrix& tinv = t.inverse.matrix();
      const ComplexMatrix& sinv = s.inverse.matrix();
      return {HermitianMatrix(block2x2(
                  tinv * (2.0 * b * b.adjoint() + (lambda * lambda - lambda * mu) * eye(dh)),
                  (lambda + mu) * tinv * b, (lambda + mu) * b.adjoint() * tinv,
                  sinv * ((mu * mu - lambda * mu) * eye(dk) + 2.0 * b.adjoint() * b))),
              tag};
    }
    case CaseTag::ProductInsideNormSq: {
      // |Q| = |lambda| |[[I, B / lambda], [B* / lambda, (mu / lambda) I]]|.
      return {std::abs(lambda) * abs_unit_block(b / lambda, mu / lambda, tol), tag};
    }
    case CaseTag::MuOnly: {
      // Swapping the summands turns [[0, B], [B*, mu I]] into [[mu I, B*], [B, 0]].
      const BlockAbs swapped = abs_block_symm(BlockSymm(mu, 0.0, b.adjoint()), tol);
      return {HermitianMatrix(swap_blocks(swapped.value.matrix(), dk)), tag};
    }
  }
  throw Error(ErrorCode::KernelFailure, "unhandled case tag");
}

}  // namespace blockabs
