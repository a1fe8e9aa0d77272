#pragma once

// Idempotents in canonical coordinates
//
//   E = W [[I, E1], [0, 0]] W*,   W = [basis R(E) | basis R(E)^perp],
//
// and the symmetries J (J = J* = J^{-1}) for which E is a J-projection,
// i.e. E = J E* J.

#include "blockabs/dense.hpp"

namespace blockabs {

/// Square matrix with ||E^2 - E||_F <= compare * (1 + ||E||_F^2).
class Idempotent {
 public:
  Idempotent() = default;
  /// Throws NotIdempotent (or DimensionMismatch / NonFinite).
  explicit Idempotent(ComplexMatrix e, const Tolerance& tol = {});

  Index dim() const { return e_.rows(); }
  const ComplexMatrix& matrix() const { return e_; }

 private:
  ComplexMatrix e_;
};

/// J = J* with ||J^2 - I||_F <= compare * (1 + ||J||_F^2).
class SymmetryMatrix {
 public:
  SymmetryMatrix() = default;
  /// Throws NotHermitian or NotSymmetry.
  explicit SymmetryMatrix(const ComplexMatrix& j, const Tolerance& tol = {});

  static SymmetryMatrix identity(Index n);
  /// 2P - I for an orthogonal projection P.
  static SymmetryMatrix from_projection(const HermitianMatrix& p, const Tolerance& tol = {});

  Index dim() const { return j_.dim(); }
  const HermitianMatrix& hermitian() const { return j_; }
  const ComplexMatrix& matrix() const { return j_.matrix(); }

 private:
  HermitianMatrix j_;
};

struct CanonicalIdempotent {
  ComplexMatrix w;   // unitary, first `rank` columns span R(E)
  ComplexMatrix e1;  // rank x (dim - rank)
  Index rank = 0;

  Index dim() const { return w.rows(); }
  /// W [[I, E1], [0, 0]] W*.
  ComplexMatrix reconstruct() const;
  /// [[I, E1], [0, 0]].
  ComplexMatrix block() const;
};

/// Throws RankInstability if the singular values of E do not separate
/// cleanly into zeros and values >= 1.
CanonicalIdempotent canonical_form(const Idempotent& e, const Tolerance& tol = {});

/// J1 acts on R(E), J2 on R(E)^perp (both in the coordinates of W).
struct SymmetryPair {
  SymmetryMatrix on_range;
  SymmetryMatrix on_complement;
};

/// The symmetry determined by (J1, J2) with J1 E1 + E1 J2 = 0:
///   W [[J1 S1, J1 S1 E1], [E1* S1 J1, J2 S2]] W*,
/// S1 = (I + E1 E1*)^{-1/2}, S2 = (I + E1* E1)^{-1/2}.
/// Throws InvalidPair if the pair does not intertwine E1.
SymmetryMatrix build_symmetry(const CanonicalIdempotent& c, const SymmetryPair& pair,
                              const Tolerance& tol = {});

/// Inverse of build_symmetry: J1 and J2 are the unitary polar factors of the
/// diagonal blocks of W* J W. Throws NotJProjection unless E = J E* J.
SymmetryPair extract_symmetry_pair(const CanonicalIdempotent& c, const SymmetryMatrix& j,
                                   const Tolerance& tol = {});

/// ||E - J E* J||_F <= compare * (1 + ||E||_F).
bool is_j_projection(const Idempotent& e, const SymmetryMatrix& j, const Tolerance& tol = {});

/// JE self-adjoint and positive semidefinite.
bool is_j_positive(const Idempotent& e, const SymmetryMatrix& j, const Tolerance& tol = {});

/// Same question answered from the canonical blocks: E is a J-projection and
/// the range symmetry J1 is the identity.
bool is_j_positive_structural(const Idempotent& e, const SymmetryMatrix& j,
                              const Tolerance& tol = {});

/// 2 P_{(E+E*)^+} - I, the Loewner-smallest symmetry J with JE >= 0.
SymmetryMatrix min_symmetry(const Idempotent& e, const Tolerance& tol = {});

/// Two sides of a biconditional, evaluated independently.
struct Equivalence {
  bool lhs = false;
  bool rhs = false;
  bool holds() const { return lhs == rhs; }
};

/// (JE >= 0, J >= min_symmetry(E)). Throws NotJProjection unless E = J E* J.
Equivalence positivity_vs_min_symmetry(const Idempotent& e, const SymmetryMatrix& j,
                                       const Tolerance& tol = {});

/// (JE >= 0, (J+I)E(J+I) >= 0 and R(E) meets R(I-J) only in 0).
/// Throws NotJProjection unless E = J E* J.
Equivalence positivity_vs_range_intersection(const Idempotent& e, const SymmetryMatrix& j,
                                             const Tolerance& tol = {});

/// Whether the spans of two sets of orthonormal columns intersect trivially,
/// decided by rank([a | b]) = cols(a) + cols(b).
bool trivial_intersection(const ComplexMatrix& a, const ComplexMatrix& b,
                          const Tolerance& tol = {});

/// The unique idempotent E with R(E) = span(m) and E = J E* J. `m` has
/// orthonormal columns spanning a proper nonzero subspace. Throws
/// NoJProjection if the compression m* J m is singular.
Idempotent projection_from_subspace(const ComplexMatrix& m, const SymmetryMatrix& j,
                                    const Tolerance& tol = {});

struct PosNegDecomposition {
  Idempotent positive;  // JQ >= 0
  Idempotent negative;  // JR <= 0
};

/// E = Q + R with QR = RQ = 0, QR* = R*Q = 0, JQ >= 0 >= JR.
/// Throws NotJProjection unless E = J E* J.
PosNegDecomposition decompose_pos_neg(const Idempotent& e, const SymmetryMatrix& j,
                                      const Tolerance& tol = {});

}  // namespace blockabs
