// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <exception>
#include <filesystem>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "blockabs/block_abs.hpp"
#include "blockabs/cli.hpp"
#include "blockabs/krein.hpp"
#include "blockabs/matrix_file.hpp"
#include "blockabs/support.hpp"
#include "blockabs/testgen.hpp"

namespace {

using namespace blockabs;

struct Outcome {
  bool pass = true;
  std::ostringstream note;
  double worst = 0.0;

  void fail(const std::string& why) {
    if (pass) note << why;
    pass = false;
  }
  // Records a ratio deviation / allowed; anything above 1 fails.
  void check(double deviation, double allowed, const std::string& what) {
    const double ratio = deviation / allowed;
    worst = std::max(worst, ratio);
    if (!(ratio <= 1.0)) {
      std::ostringstream os;
      os << what << " deviation " << deviation << " > " << allowed;
      fail(os.str());
    }
  }
  void require(bool ok, const std::string& what) {
    if (!ok) fail(what);
  }
};

Generator generator(std::uint64_t seed, Index dim_max = 6) {
  GenConfig cfg;
  cfg.seed = seed;
  cfg.dim_max = dim_max;
  return Generator(cfg);
}

double max_abs(const ComplexMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

ComplexMatrix identity(Index n) { return ComplexMatrix::Identity(n, n); }

// Entrywise comparison relative to the size of the reference.
void compare_relative(Outcome& o, const ComplexMatrix& got, const ComplexMatrix& want, double tol,
                      const std::string& what) {
  o.check(max_abs_deviation(got, want), tol * std::max(1.0, max_abs(want)), what);
}

void projector_identities(Outcome& o, const ComplexMatrix& p, const ComplexMatrix& x,
                          const std::string& what) {
  const double tol = 1e-9;
  o.check(max_abs(p * p - p), tol, what + " P^2=P");
  o.check(max_abs(p - p.adjoint()), tol, what + " P=P*");
  o.check(max_abs(p * x - x), tol * std::max(1.0, max_abs(x)), what + " PX=X");
}

double min_eig(const ComplexMatrix& a) {
  return min_eigenvalue(HermitianMatrix(0.5 * (a + a.adjoint())));
}
double max_eig(const ComplexMatrix& a) {
  return max_eigenvalue(HermitianMatrix(0.5 * (a + a.adjoint())));
}

// 1. Closed-form |Q| against the eigendecomposition, per case.
void block_abs_oracle(Outcome& o) {
  Generator gen = generator(101);
  constexpr std::array tags = {CaseTag::BothZero,           CaseTag::LambdaOnly,
                               CaseTag::MuOnly,             CaseTag::ProductAboveNormSq,
                               CaseTag::ProductNegative,    CaseTag::ProductInsideNormSq};
  for (const CaseTag tag : tags) {
    for (int i = 0; i < 200; ++i) {
      const ComplexMatrix b = gen.matrix(gen.dim(), gen.dim());
      const double norm_sq = spectral_norm(b) * spectral_norm(b);
      const double s = gen.sign();
      const double a = gen.uniform(0.2, 3.0);
      double lambda = 0;
      double mu = 0;
      switch (tag) {
        case CaseTag::BothZero:
          break;
        case CaseTag::LambdaOnly:
          lambda = s * a;
          break;
        case CaseTag::MuOnly:
          mu = s * a;
          break;
        case CaseTag::ProductAboveNormSq:
          lambda = s * a;
          mu = s * norm_sq / a * gen.uniform(1.01, 3.0);
          break;
        case CaseTag::ProductNegative:
          lambda = s * a;
          mu = -s * gen.uniform(0.2, 3.0);
          break;
        case CaseTag::ProductInsideNormSq:
          lambda = s * a;
          mu = s * norm_sq / a * gen.uniform(0.05, 0.95);
          break;
      }
      const BlockSymm q(lambda, mu, b);
      const BlockAbs result = abs_block_symm(q);
      if (result.tag != tag) {
        o.fail("instance dispatched to " + std::string(name(result.tag)) + " instead of " +
               std::string(name(tag)));
        continue;
      }
      const HermitianMatrix full = q.assemble();
      o.check((result.value.matrix() - abs_oracle(full).matrix()).norm(),
              1e-8 * (1 + full.matrix().norm()), std::string(name(tag)));
    }
  }
  o.note << "1200 instances";
}

// 2. Scalar square roots square back to their targets.
void scalar_roots(Outcome& o) {
  Eigen::Matrix2d want;
  want << 2, 3, 3, 5;
  Eigen::Matrix2d r = scalar_pair_sqrt(1, 2);
  o.check((r * r - want).cwiseAbs().maxCoeff(), 1e-12, "sqrt(1,2)");
  want << 2, 1, 1, 1;
  r = scalar_pair_sqrt(1, 0);
  o.check((r * r - want).cwiseAbs().maxCoeff(), 1e-12, "sqrt(1,0)");
  o.note << "2 closed forms";
}

// 3. Structured positive/negative parts and supports against oracles.
void parts_and_supports(Outcome& o) {
  Generator gen = generator(303);
  for (int i = 0; i < 200; ++i) {
    const ComplexMatrix b = gen.matrix(gen.dim(), gen.dim());
    double lambda = 0;
    switch (i % 4) {
      case 0: lambda = -gen.uniform(0.1, 3.0); break;
      case 1: lambda = 0; break;
      case 2: lambda = gen.uniform(0.1, 3.0); break;
      default: lambda = 1; break;
    }
    const LambdaBlock s(lambda, b);
    const HermitianMatrix full = s.assemble();
    const ComplexMatrix plus = pos_part_oracle(full).matrix();
    const ComplexMatrix minus = neg_part_oracle(full).matrix();
    const ComplexMatrix p_s = support(s).matrix();
    const ComplexMatrix p_plus = support_positive_part(s).matrix();
    const ComplexMatrix p_minus = support_negative_part(s).matrix();

    compare_relative(o, positive_part(s).matrix(), plus, 1e-8, "S+");
    compare_relative(o, negative_part(s).matrix(), minus, 1e-8, "S-");
    compare_relative(o, p_s, support_projection_oracle(full).matrix(), 1e-8, "P_S");
    compare_relative(o, p_plus, support_projection_oracle(HermitianMatrix(plus)).matrix(), 1e-8,
                     "P_S+");
    compare_relative(o, p_minus, support_projection_oracle(HermitianMatrix(minus)).matrix(), 1e-8,
                     "P_S-");
    projector_identities(o, p_s, full.matrix(), "P_S");
    projector_identities(o, p_plus, plus, "P_S+");
    projector_identities(o, p_minus, minus, "P_S-");
    if (lambda == 1) {
      compare_relative(o, negative_part_unit(b).matrix(), minus, 1e-8, "S- unit");
      compare_relative(o, support_unit(b).matrix(), p_s, 1e-8, "P_S unit");
      compare_relative(o, support_negative_part_unit(b).matrix(), p_minus, 1e-8, "P_S- unit");
    }
  }
  for (int i = 0; i < 200; ++i) {
    const Index n = gen.dim() + 1;
    const CanonicalIdempotent c = canonical_form(gen.idempotent(n, gen.uniform_index(0, n)));
    const Index k = c.rank;
    ComplexMatrix sum = ComplexMatrix::Zero(n, n);
    sum.topLeftCorner(k, k) = 2 * identity(k);
    sum.topRightCorner(k, n - k) = c.e1;
    sum.bottomLeftCorner(n - k, k) = c.e1.adjoint();
    const ComplexMatrix plus = pos_part_oracle(HermitianMatrix(sum)).matrix();
    const ComplexMatrix p = idempotent_sum_support(c.e1).matrix();
    compare_relative(o, idempotent_sum_positive_part(c.e1).matrix(), plus, 1e-8, "(E+E*)+");
    compare_relative(o, p, support_projection_oracle(HermitianMatrix(plus)).matrix(), 1e-8,
                     "P_(E+E*)+");
    projector_identities(o, p, plus, "P_(E+E*)+");
  }
  o.note << "200 (lambda, B) and 200 idempotents";
}

// 4. The minimal symmetry is a symmetry, makes E positive, and sits below
// every positive symmetry.
void minimal_symmetry(Outcome& o) {
  Generator gen = generator(404, 8);
  for (int i = 0; i < 200; ++i) {
    const Index n = gen.dim();
    const Idempotent e = gen.idempotent(n, gen.uniform_index(0, n));
    const ComplexMatrix jmin = min_symmetry(e).matrix();
    o.check(max_abs(jmin * jmin - identity(n)), 1e-9, "Jmin^2=I");
    o.check(max_abs(jmin - jmin.adjoint()), 1e-9, "Jmin=Jmin*");
    o.check(std::max(0.0, -min_eig(jmin * e.matrix())), 1e-9, "Jmin E >= 0");
    const CanonicalIdempotent c = canonical_form(e);
    for (int k = 0; k < 5; ++k) {
      const ComplexMatrix j = build_symmetry(c, gen.admissible_pair(c, SignMode::Positive)).matrix();
      o.check(std::max(0.0, -min_eig(j - jmin)), 1e-9, "J >= Jmin");
    }
  }
  o.note << "200 idempotents x 5 positive symmetries";
}

// 5. Both positivity biconditionals agree on every sample.
void positivity_equivalences(Outcome& o) {
  Generator gen = generator(505);
  int positive = 0;
  int mismatches = 0;
  for (int i = 0; i < 500; ++i) {
    const Index n = gen.dim();
    const JProjectionPair p = gen.j_projection(n, gen.uniform_index(0, n), SignMode::Mixed);
    const Equivalence a = positivity_vs_min_symmetry(p.e, p.j);
    const Equivalence b = positivity_vs_range_intersection(p.e, p.j);
    if (!a.holds() || !b.holds()) ++mismatches;
    if (a.lhs) ++positive;
  }
  o.require(mismatches == 0, std::to_string(mismatches) + " mismatches");
  // Mixed signs should give both outcomes; otherwise the test says little.
  o.require(positive > 0 && positive < 500, "samples not mixed");
  o.note << "500 pairs, " << positive << " J-positive";
}

// 6. Prescribed-range J-projections, and the singular case.
void projections_from_subspaces(Outcome& o) {
  Generator gen = generator(606);
  int built = 0;
  while (built < 200) {
    const Index n = std::max<Index>(2, gen.dim());
    const Index k = gen.uniform_index(1, n - 1);
    const ComplexMatrix m = gen.orthonormal_columns(n, k);
    const SymmetryMatrix j = gen.symmetry(n);
    const HermitianMatrix q11(m.adjoint() * j.matrix() * m);
    if (herm_eig(q11).eigenvalues.cwiseAbs().minCoeff() < 1e-3) continue;
    ++built;
    const ComplexMatrix e = projection_from_subspace(m, j).matrix();
    const double scale = std::max(1.0, max_abs(e));
    o.require(numerical_rank(e) == k, "rank of E differs from dim M");
    o.check(max_abs(e * m - m), 1e-9 * scale, "EM=M");
    o.check(max_abs(e - j.matrix() * e.adjoint() * j.matrix()), 1e-9 * scale, "E=JE*J");
  }
  int raised = 0;
  for (int i = 0; i < 50; ++i) {
    const Index n = std::max<Index>(2, gen.dim());
    const ComplexMatrix m = gen.orthonormal_columns(n, gen.uniform_index(1, n - 1));
    try {
      projection_from_subspace(m, gen.singular_compression_symmetry(m));
    } catch (const Error& err) {
      if (err.code() == ErrorCode::NoJProjection) ++raised;
    }
  }
  o.require(raised == 50, "singular instances not rejected");
  o.note << "200 regular, " << raised << "/50 singular rejected";
}

// 7. Positive/negative splitting of J-projections.
void pos_neg_decomposition(Outcome& o) {
  Generator gen = generator(707);
  for (int i = 0; i < 200; ++i) {
    const Index n = gen.dim();
    const JProjectionPair p = gen.j_projection(n, gen.uniform_index(0, n));
    const ComplexMatrix& e = p.e.matrix();
    const ComplexMatrix& jm = p.j.matrix();
    const PosNegDecomposition d = decompose_pos_neg(p.e, p.j);
    const ComplexMatrix& q = d.positive.matrix();
    const ComplexMatrix& r = d.negative.matrix();
    const double s = std::max(1.0, max_abs(e));
    const double s2 = s * s;
    o.check(max_abs(q * q - q), 1e-9 * s2, "Q^2=Q");
    o.check(max_abs(r * r - r), 1e-9 * s2, "R^2=R");
    o.check(max_abs(q + r - e), 1e-9 * s, "Q+R=E");
    o.check(max_abs(q * r), 1e-9 * s2, "QR=0");
    o.check(max_abs(r * q), 1e-9 * s2, "RQ=0");
    o.check(max_abs(q * r.adjoint()), 1e-9 * s2, "QR*=0");
    o.check(max_abs(r.adjoint() * q), 1e-9 * s2, "R*Q=0");
    o.check(std::max(0.0, -min_eig(jm * q)), 1e-9 * s, "JQ >= 0");
    o.check(std::max(0.0, max_eig(jm * r)), 1e-9 * s, "JR <= 0");

    // Uniqueness: the split is J(JE)^+ and -J(JE)^-, it is stable under a
    // change of representation of E, and each piece splits trivially.
    const HermitianMatrix je(0.5 * (jm * e + (jm * e).adjoint()));
    compare_relative(o, q, jm * pos_part_oracle(je).matrix(), 1e-8, "Q vs J(JE)+");
    compare_relative(o, r, -jm * neg_part_oracle(je).matrix(), 1e-8, "R vs -J(JE)-");
    const CanonicalIdempotent c = canonical_form(p.e);
    const ComplexMatrix u = gen.unitary(c.rank);
    CanonicalIdempotent rotated = c;
    rotated.w.leftCols(c.rank) = c.w.leftCols(c.rank) * u;
    rotated.e1 = u.adjoint() * c.e1;
    const Idempotent again(rotated.reconstruct());
    const PosNegDecomposition d2 = decompose_pos_neg(again, p.j);
    compare_relative(o, d2.positive.matrix(), q, 1e-8, "Q re-decomposed");
    compare_relative(o, d2.negative.matrix(), r, 1e-8, "R re-decomposed");
    const PosNegDecomposition dq = decompose_pos_neg(d.positive, p.j);
    compare_relative(o, dq.positive.matrix(), q, 1e-8, "split of Q");
    o.check(max_abs(dq.negative.matrix()), 1e-8 * s, "split of Q leaves 0");
    const PosNegDecomposition dr = decompose_pos_neg(d.negative, p.j);
    compare_relative(o, dr.negative.matrix(), r, 1e-8, "split of R");
    o.check(max_abs(dr.positive.matrix()), 1e-8 * s, "split of R leaves 0");
  }
  o.note << "200 pairs";
}

// 8. Extracting (J1, J2) and rebuilding gives J back.
void symmetry_round_trip(Outcome& o) {
  Generator gen = generator(808);
  for (int i = 0; i < 200; ++i) {
    const Index n = gen.dim();
    const JProjectionPair p = gen.j_projection(n, gen.uniform_index(0, n));
    const CanonicalIdempotent c = canonical_form(p.e);
    const SymmetryMatrix rebuilt = build_symmetry(c, extract_symmetry_pair(c, p.j));
    o.check(max_abs(rebuilt.matrix() - p.j.matrix()), 1e-9, "rebuilt J");
  }
  o.note << "200 pairs";
}

// 9. The documented command-line examples.
void cli_examples(Outcome& o) {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "blockabs_acceptance";
  fs::create_directories(dir);
  const auto put = [&](const std::string& name, const ComplexMatrix& m) {
    write_matrix_file((dir / name).string(), m);
    return (dir / name).string();
  };
  const auto run = [](const std::vector<std::string>& args, std::string& out, std::string& err) {
    std::ostringstream os;
    std::ostringstream es;
    const int code = cli::run(args, os, es);
    out = os.str();
    err = es.str();
    return code;
  };
  ComplexMatrix one(1, 1);
  one << 1;
  ComplexMatrix p = ComplexMatrix::Zero(2, 2);
  p(0, 0) = 1;
  ComplexMatrix e1 = ComplexMatrix::Zero(2, 1);
  e1(0, 0) = 1;
  ComplexMatrix swap = ComplexMatrix::Zero(2, 2);
  swap(0, 1) = swap(1, 0) = 1;
  std::string out;
  std::string err;

  int code = run({"abs", "--lambda", "1", "--mu", "0", "--b", put("one.json", one), "--verify"},
                 out, err);
  o.require(code == 0, "abs exit code");
  o.require(out.find("case=LambdaOnly") != std::string::npos, "abs case tag");
  const auto dev = out.find("max_abs_dev=");
  o.require(dev != std::string::npos && std::stod(out.substr(dev + 12)) <= 1e-8, "abs deviation");

  code = run({"minsym", "--e", put("orthproj.json", p)}, out, err);
  o.require(code == 0, "minsym exit code");
  if (code == 0) {
    ComplexMatrix want = ComplexMatrix::Zero(2, 2);
    want(0, 0) = 1;
    want(1, 1) = -1;
    o.check(max_abs_deviation(parse_matrix(out.substr(0, out.find('\n'))), want), 1e-12, "minsym");
  }

  code = run({"fromsubspace", "--m", put("e1.json", e1), "--j", put("swap.json", swap)}, out, err);
  o.require(code == 2, "fromsubspace exit code");
  o.require(err.find("NoJProjection") != std::string::npos, "fromsubspace diagnostic");
  fs::remove_all(dir);
  o.note << "3 examples";
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria = {
      {"block absolute value matches oracle in all six cases", block_abs_oracle},
      {"scalar pair square roots", scalar_roots},
      {"positive/negative parts and support projections", parts_and_supports},
      {"minimal symmetry", minimal_symmetry},
      {"positivity biconditionals", positivity_equivalences},
      {"J-projection from a subspace", projections_from_subspaces},
      {"positive/negative decomposition", pos_neg_decomposition},
      {"symmetry pair round trip", symmetry_round_trip},
      {"command-line examples", cli_examples},
  };
  int failures = 0;
  int index = 0;
  for (const auto& [title, body] : criteria) {
    ++index;
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try {
      body(o);
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!o.pass) ++failures;
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << index << ": " << title << " ("
              << o.note.str() << "; worst/allowed " << o.worst << "; " << seconds << " s)\n";
  }
  return failures == 0 ? 0 : 1;
}
