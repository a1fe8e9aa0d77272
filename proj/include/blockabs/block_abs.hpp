#pragma once

// Closed-form absolute values of self-adjoint block matrices
//
//   Q = [[lambda I, B], [B*, mu I]]   on H (+) K,
//
// returned in the original H (+) K coordinates. Where the closed form is
// only stated up to unitary equivalence the conjugating unitaries are built
// explicitly from the polar factor of B and a spectral split of BB*.

#include <string_view>

#include <Eigen/Dense>

#include "blockabs/dense.hpp"

namespace blockabs {

/// The triple (lambda, mu, B) standing for [[lambda I, B], [B*, mu I]].
/// B is dim(H) x dim(K).
class BlockSymm {
 public:
  BlockSymm(double lambda, double mu, ComplexMatrix b);

  double lambda() const { return lambda_; }
  double mu() const { return mu_; }
  const ComplexMatrix& b() const { return b_; }
  Index dim_h() const { return b_.rows(); }
  Index dim_k() const { return b_.cols(); }

  HermitianMatrix assemble() const;

 private:
  double lambda_;
  double mu_;
  ComplexMatrix b_;
};

enum class CaseTag {
  BothZero,             // lambda = mu = 0
  LambdaOnly,           // lambda != 0, mu = 0
  MuOnly,               // lambda = 0, mu != 0
  ProductAboveNormSq,   // lambda mu >= ||B||^2, lambda mu > 0
  ProductNegative,      // lambda mu < 0
  ProductInsideNormSq,  // 0 < lambda mu < ||B||^2
};

std::string_view name(CaseTag tag);

/// Square root of [[1 + b, (1 + mu) sqrt(b)], [sqrt(b) (1 + mu), mu^2 + b]]
/// for b > 0. Throws InvalidArgument otherwise.
Eigen::Matrix2d scalar_pair_sqrt(double b, double mu);

/// Square root of M = [[I + A, (1 + mu) A^{1/2}], [(1 + mu) A^{1/2}, mu^2 I + A]]
/// on H (+) H for psd A. Equivalently |[[I, A^{1/2}], [A^{1/2}, mu I]]|.
HermitianMatrix paired_block_sqrt(const HermitianMatrix& a, double mu, const Tolerance& tol = {});

/// |[[I, B], [B*, mu I]]| on H (+) K.
HermitianMatrix abs_unit_block(const ComplexMatrix& b, double mu, const Tolerance& tol = {});

/// Dispatch for abs_block_symm. ||B||^2 is the top eigenvalue of B*B; the
/// boundary lambda mu = ||B||^2 (within tol.rank) counts as ProductAboveNormSq.
CaseTag case_of(const BlockSymm& q, const Tolerance& tol = {});

struct BlockAbs {
  HermitianMatrix value;
  CaseTag tag;
};

/// |Q| for Q = [[lambda I, B], [B*, mu I]], in H (+) K coordinates.
BlockAbs abs_block_symm(const BlockSymm& q, const Tolerance& tol = {});

/// Reorders a matrix on X (+) Y (dim X = `first`) into Y (+) X.
ComplexMatrix swap_blocks(const ComplexMatrix& m, Index first);

}  // namespace blockabs
