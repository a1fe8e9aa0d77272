#pragma once

// Seeded random instances for property tests and the `gen` command.
// A Generator owns its engine; use one per thread.

#include <cstdint>
#include <random>

#include "blockabs/dense.hpp"
#include "blockabs/krein.hpp"

namespace blockabs {

struct GenConfig {
  std::uint64_t seed = 0;
  Index dim_min = 1;
  Index dim_max = 6;
  double magnitude = 1.0;
  bool complex_enabled = true;

  /// Throws InvalidArgument unless 1 <= dim_min <= dim_max <= 64 and magnitude > 0.
  void validate() const;
};

/// Sign choice for the range symmetry J1 in admissible pairs.
enum class SignMode { Mixed, Positive, Negative };

struct JProjectionPair {
  Idempotent e;
  SymmetryMatrix j;
};

class Generator {
 public:
  explicit Generator(const GenConfig& cfg);

  const GenConfig& config() const { return cfg_; }
  std::mt19937_64& engine() { return rng_; }

  /// Uniform in [dim_min, dim_max].
  Index dim();
  Index uniform_index(Index lo, Index hi);
  double uniform(double lo, double hi);
  /// +1 or -1 with equal probability.
  double sign();

  /// Real and imaginary parts uniform in [-magnitude, magnitude]; the
  /// imaginary part is zero unless complex_enabled.
  ComplexMatrix matrix(Index rows, Index cols);
  /// Haar-distributed unitary (orthogonal when complex is disabled).
  ComplexMatrix unitary(Index n);
  /// Orthonormal n x k columns.
  ComplexMatrix orthonormal_columns(Index n, Index k);
  HermitianMatrix hermitian(Index n);
  /// Random symmetry U diag(+-1) U*.
  SymmetryMatrix symmetry(Index n);

  /// U [[I, E1], [0, 0]] U* with |entries of E1| capped at min(magnitude, 10).
  Idempotent idempotent(Index dim, Index rank);

  /// (J1, J2) with J1 E1 + E1 J2 = 0: J1 = eps on the left singular vectors
  /// of a singular-value cluster, J2 = -eps on the matching right ones, and
  /// independent signs on N(E1*) and N(E1).
  SymmetryPair admissible_pair(const CanonicalIdempotent& c, SignMode mode = SignMode::Mixed);

  /// Random idempotent with a random symmetry making it a J-projection.
  JProjectionPair j_projection(Index dim, Index rank, SignMode mode = SignMode::Mixed);

  /// A symmetry whose compression to span(m) is singular: it exchanges a
  /// unit vector of span(m) with a unit vector of its complement.
  SymmetryMatrix singular_compression_symmetry(const ComplexMatrix& m);

 private:
  Complex entry(double scale);
  ComplexMatrix gaussian(Index rows, Index cols);

  GenConfig cfg_;
  std::mt19937_64 rng_;
};

}  // namespace blockabs
