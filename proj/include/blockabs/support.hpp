#pragma once

// Positive/negative parts and support projections of
//
//   S = [[lambda I, B], [B*, 0]]   on H (+) K,
//
// plus the structured support projections they are assembled from.

#include "blockabs/dense.hpp"

namespace blockabs {

/// [[lambda I, B], [B*, 0]] with B of size dim(H) x dim(K).
class LambdaBlock {
 public:
  LambdaBlock(double lambda, ComplexMatrix b);

  double lambda() const { return lambda_; }
  const ComplexMatrix& b() const { return b_; }
  Index dim_h() const { return b_.rows(); }
  Index dim_k() const { return b_.cols(); }

  HermitianMatrix assemble() const;

 private:
  double lambda_;
  ComplexMatrix b_;
};

/// Support projection of [[I, 2 A^{1/2}], [2 A^{1/2}, 4A]] for A >= 0:
/// [[(I + 4A)^{-1}, 2 A^{1/2} (I + 4A)^{-1}], [.., 4A (I + 4A)^{-1}]].
/// The scalar case A = a > 0 is the rank-one projector onto (1, 2 sqrt(a)).
HermitianMatrix support_root_block(const HermitianMatrix& a, const Tolerance& tol = {});

/// Support projection of [[C^2, 2 A^{1/2} C], [2 A^{1/2} C, 4A]] for psd A
/// and positive definite C commuting with A. Throws PreconditionViolation if
/// C is singular or the pair does not commute.
HermitianMatrix support_commuting_pair(const HermitianMatrix& a, const HermitianMatrix& c,
                                       const Tolerance& tol = {});

/// P_F for F = U G U*, computed as U P_G U*. Requires U*U G = G.
HermitianMatrix transport_support(const HermitianMatrix& g, const PartialIsometry& u,
                                  const Tolerance& tol = {});

HermitianMatrix positive_part(const LambdaBlock& s, const Tolerance& tol = {});
/// S^- = S^+ - S.
HermitianMatrix negative_part(const LambdaBlock& s, const Tolerance& tol = {});
/// Closed form of S^- at lambda = 1.
HermitianMatrix negative_part_unit(const ComplexMatrix& b, const Tolerance& tol = {});

/// P_S; diag(I, P_{B*}) for lambda != 0 and diag(P_B, P_{B*}) for lambda = 0.
HermitianMatrix support(const LambdaBlock& s, const Tolerance& tol = {});
/// P_S at lambda = 1.
HermitianMatrix support_unit(const ComplexMatrix& b, const Tolerance& tol = {});

HermitianMatrix support_positive_part(const LambdaBlock& s, const Tolerance& tol = {});
/// P_{S^-} = P_S - P_{S^+}.
HermitianMatrix support_negative_part(const LambdaBlock& s, const Tolerance& tol = {});
/// Closed form of P_{S^-} at lambda = 1.
HermitianMatrix support_negative_part_unit(const ComplexMatrix& b, const Tolerance& tol = {});

/// For an idempotent written as [[I, E1], [0, 0]] on R(E) (+) R(E)^perp,
/// the positive part of E + E* = [[2I, E1], [E1*, 0]] and its support.
HermitianMatrix idempotent_sum_positive_part(const ComplexMatrix& e1, const Tolerance& tol = {});
HermitianMatrix idempotent_sum_support(const ComplexMatrix& e1, const Tolerance& tol = {});

}  // namespace blockabs
