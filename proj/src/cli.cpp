#include "blockabs/cli.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iomanip>
#include <limits>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "blockabs/block_abs.hpp"
#include "blockabs/krein.hpp"
#include "blockabs/matrix_file.hpp"
#include "blockabs/support.hpp"
#include "blockabs/testgen.hpp"

namespace blockabs::cli {

namespace {

using nlohmann::json;

struct Options {
  double tol = Tolerance{}.compare;
  bool verify = false;
  std::string out_path;

  double lambda = 0.0;
  double mu = 0.0;
  std::string b_path;
  std::string of = "s";
  std::string e_path;
  std::string j_path;
  std::string m_path;

  std::optional<std::uint64_t> seed;
  std::string kind = "matrix";
  Index rows = -1;
  Index cols = -1;
  Index dim = -1;
  Index rank = -1;
  double magnitude = 1.0;
  bool real = false;
};

struct Output {
  std::string document;  // written to --out or stdout
  std::vector<std::pair<std::string, std::string>> summary;
  std::optional<double> deviation;
};

std::string format_double(double x) {
  std::ostringstream os;
  os << std::setprecision(std::numeric_limits<double>::max_digits10) << x;
  return os.str();
}

Tolerance make_tolerance(const Options& o) {
  Tolerance tol;
  tol.compare = o.tol;
  tol.validate();
  return tol;
}

ComplexMatrix complex_identity(Index n) { return ComplexMatrix::Identity(n, n); }

Output matrix_output(const ComplexMatrix& result, std::string command) {
  Output o;
  o.document = format_matrix(result);
  o.summary.emplace_back("command", std::move(command));
  o.summary.emplace_back("rows", std::to_string(result.rows()));
  o.summary.emplace_back("cols", std::to_string(result.cols()));
  return o;
}

Output run_abs(const Options& opt, const Tolerance& tol) {
  const BlockSymm q(opt.lambda, opt.mu, read_matrix_file(opt.b_path));
  const BlockAbs result = abs_block_symm(q, tol);
  Output o = matrix_output(result.value.matrix(), "abs");
  o.summary.emplace_back("case", std::string(name(result.tag)));
  if (opt.verify) {
    o.deviation = max_abs_deviation(result.value.matrix(), abs_oracle(q.assemble()).matrix());
  }
  return o;
}

Output run_part(const Options& opt, const Tolerance& tol, bool positive) {
  const LambdaBlock s(opt.lambda, read_matrix_file(opt.b_path));
  const HermitianMatrix result = positive ? positive_part(s, tol) : negative_part(s, tol);
  Output o = matrix_output(result.matrix(), positive ? "pospart" : "negpart");
  if (opt.verify) {
    const HermitianMatrix oracle =
        positive ? pos_part_oracle(s.assemble()) : neg_part_oracle(s.assemble());
    o.deviation = max_abs_deviation(result.matrix(), oracle.matrix());
  }
  return o;
}

Output run_support(const Options& opt, const Tolerance& tol) {
  const LambdaBlock s(opt.lambda, read_matrix_file(opt.b_path));
  HermitianMatrix result;
  std::function<HermitianMatrix()> oracle;
  if (opt.of == "s") {
    result = support(s, tol);
    oracle = [&] { return support_projection_oracle(s.assemble(), tol); };
  } else if (opt.of == "s-plus") {
    result = support_positive_part(s, tol);
    oracle = [&] { return support_projection_oracle(pos_part_oracle(s.assemble()), tol); };
  } else {
    result = support_negative_part(s, tol);
    oracle = [&] { return support_projection_oracle(neg_part_oracle(s.assemble()), tol); };
  }
  Output o = matrix_output(result.matrix(), "support");
  o.summary.emplace_back("of", opt.of);
  if (opt.verify) o.deviation = max_abs_deviation(result.matrix(), oracle().matrix());
  return o;
}

Output run_minsym(const Options& opt, const Tolerance& tol) {
  const Idempotent e(read_matrix_file(opt.e_path), tol);
  const SymmetryMatrix j = min_symmetry(e, tol);
  Output o = matrix_output(j.matrix(), "minsym");
  if (opt.verify) {
    const ComplexMatrix& em = e.matrix();
    const HermitianMatrix p =
        support_projection_oracle(pos_part_oracle(HermitianMatrix(em + em.adjoint())), tol);
    o.deviation =
        max_abs_deviation(j.matrix(), 2.0 * p.matrix() - complex_identity(e.dim()));
  }
  return o;
}

json equivalence_json(const Equivalence& eq) {
  return {{"lhs", eq.lhs}, {"rhs", eq.rhs}, {"equal", eq.holds()}};
}

Output run_jcheck(const Options& opt, const Tolerance& tol) {
  const Idempotent e(read_matrix_file(opt.e_path), tol);
  const SymmetryMatrix j(read_matrix_file(opt.j_path), tol);
  const bool projection = is_j_projection(e, j, tol);
  json doc;
  doc["is_j_projection"] = projection;
  doc["is_j_positive"] = is_j_positive(e, j, tol);
  if (projection) {
    doc["j_positive_structural"] = is_j_positive_structural(e, j, tol);
    doc["positive_iff_above_min_symmetry"] =
        equivalence_json(positivity_vs_min_symmetry(e, j, tol));
    doc["positive_iff_range_condition"] =
        equivalence_json(positivity_vs_range_intersection(e, j, tol));
  } else {
    doc["j_positive_structural"] = nullptr;
    doc["positive_iff_above_min_symmetry"] = nullptr;
    doc["positive_iff_range_condition"] = nullptr;
  }
  Output o;
  o.document = doc.dump();
  o.summary.emplace_back("command", "jcheck");
  o.summary.emplace_back("is_j_projection", projection ? "true" : "false");
  return o;
}

Output run_jdecompose(const Options& opt, const Tolerance& tol) {
  const Idempotent e(read_matrix_file(opt.e_path), tol);
  const SymmetryMatrix j(read_matrix_file(opt.j_path), tol);
  const PosNegDecomposition d = decompose_pos_neg(e, j, tol);
  Output o;
  o.document = "{\"q\": " + format_matrix(d.positive.matrix()) +
               ", \"r\": " + format_matrix(d.negative.matrix()) + "}";
  o.summary.emplace_back("command", "jdecompose");
  // The trace of an idempotent is its rank.
  o.summary.emplace_back("rank_q", std::to_string(std::llround(d.positive.matrix().trace().real())));
  o.summary.emplace_back("rank_r", std::to_string(std::llround(d.negative.matrix().trace().real())));
  if (opt.verify) {
    const ComplexMatrix& jm = j.matrix();
    const HermitianMatrix je(0.5 * (jm * e.matrix() + (jm * e.matrix()).adjoint()));
    const ComplexMatrix q = jm * pos_part_oracle(je).matrix();
    const ComplexMatrix r = -jm * neg_part_oracle(je).matrix();
    o.deviation = std::max(max_abs_deviation(d.positive.matrix(), q),
                           max_abs_deviation(d.negative.matrix(), r));
  }
  return o;
}

Output run_fromsubspace(const Options& opt, const Tolerance& tol) {
  const ComplexMatrix raw = read_matrix_file(opt.m_path);
  const SymmetryMatrix j(read_matrix_file(opt.j_path), tol);
  const ComplexMatrix m = range_basis(raw, tol);
  if (m.cols() != raw.cols()) {
    throw Error(ErrorCode::InvalidArgument, "subspace basis columns are linearly dependent");
  }
  const Idempotent e = projection_from_subspace(m, j, tol);
  Output o = matrix_output(e.matrix(), "fromsubspace");
  if (opt.verify) {
    // Oblique projection onto span(m) along J span(m)^perp.
    const Index n = m.rows();
    const Index k = m.cols();
    ComplexMatrix x(n, n);
    x << m, j.matrix() * orthogonal_complement(m);
    ComplexMatrix d = ComplexMatrix::Zero(n, n);
    d.topLeftCorner(k, k).setIdentity();
    const ComplexMatrix oracle = x * d * x.fullPivLu().inverse();
    o.deviation = max_abs_deviation(e.matrix(), oracle);
  }
  return o;
}

Output run_gen(const Options& opt) {
  GenConfig cfg;
  if (opt.seed) {
    cfg.seed = *opt.seed;
  } else if (const char* env = std::getenv("BLOCKABS_SEED")) {
    try {
      cfg.seed = std::stoull(env);
    } catch (const std::exception&) {
      throw ParseError(std::string("BLOCKABS_SEED is not an unsigned integer: ") + env);
    }
  }
  cfg.magnitude = opt.magnitude;
  cfg.complex_enabled = !opt.real;
  cfg.validate();
  Generator gen(cfg);
  const Index n = opt.dim >= 0 ? opt.dim : gen.dim();

  ComplexMatrix result;
  if (opt.kind == "matrix") {
    const Index rows = opt.rows >= 0 ? opt.rows : gen.dim();
    const Index cols = opt.cols >= 0 ? opt.cols : gen.dim();
    result = gen.matrix(rows, cols);
  } else if (opt.kind == "hermitian") {
    result = gen.hermitian(n).matrix();
  } else if (opt.kind == "unitary") {
    result = gen.unitary(n);
  } else if (opt.kind == "symmetry") {
    result = gen.symmetry(n).matrix();
  } else {
    const Index rank = opt.rank >= 0 ? opt.rank : gen.uniform_index(0, n);
    if (rank > n) throw Error(ErrorCode::InvalidArgument, "rank exceeds dimension");
    result = gen.idempotent(n, rank).matrix();
  }
  Output o = matrix_output(result, "gen");
  o.summary.emplace_back("kind", opt.kind);
  o.summary.emplace_back("seed", std::to_string(cfg.seed));
  return o;
}

void emit(const Options& opt, const Output& o, std::ostream& out) {
  if (opt.out_path.empty()) {
    out << o.document << '\n';
  } else {
    std::ofstream file(opt.out_path);
    if (!file) throw ParseError("cannot write " + opt.out_path);
    file << o.document << '\n';
  }
  out << "summary:";
  for (const auto& [key, value] : o.summary) out << ' ' << key << '=' << value;
  if (o.deviation) out << " max_abs_dev=" << format_double(*o.deviation);
  out << '\n';
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options opt;
  CLI::App app{"Block operator absolute values, support projections and J-projections",
               "blockabs"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--tol", opt.tol, "comparison tolerance")->check(CLI::PositiveNumber);
  app.add_flag("--verify", opt.verify, "compare against the eigendecomposition oracle");
  app.add_option("--out", opt.out_path, "write the result document to FILE");

  auto* abs = app.add_subcommand("abs", "|[[lambda I, B], [B*, mu I]]|");
  abs->add_option("--lambda", opt.lambda)->required();
  abs->add_option("--mu", opt.mu)->required();
  abs->add_option("--b", opt.b_path, "matrix file for B")->required();

  auto* pospart = app.add_subcommand("pospart", "positive part of [[lambda I, B], [B*, 0]]");
  auto* negpart = app.add_subcommand("negpart", "negative part of [[lambda I, B], [B*, 0]]");
  auto* supp = app.add_subcommand("support", "support projection of S, S+ or S-");
  for (auto* sub : {pospart, negpart, supp}) {
    sub->add_option("--lambda", opt.lambda)->required();
    sub->add_option("--b", opt.b_path, "matrix file for B")->required();
  }
  supp->add_option("--of", opt.of, "which operator")
      ->check(CLI::IsMember({"s", "s-plus", "s-minus"}));

  auto* minsym = app.add_subcommand("minsym", "smallest symmetry J with JE >= 0");
  minsym->add_option("--e", opt.e_path, "idempotent")->required();

  auto* jcheck = app.add_subcommand("jcheck", "J-projection and J-positivity report");
  auto* jdecompose = app.add_subcommand("jdecompose", "E = Q + R with JQ >= 0 >= JR");
  for (auto* sub : {jcheck, jdecompose}) {
    sub->add_option("--e", opt.e_path, "idempotent")->required();
    sub->add_option("--j", opt.j_path, "symmetry")->required();
  }

  auto* fromsub = app.add_subcommand("fromsubspace", "J-projection with a prescribed range");
  fromsub->add_option("--m", opt.m_path, "columns spanning the range")->required();
  fromsub->add_option("--j", opt.j_path, "symmetry")->required();

  auto* gen = app.add_subcommand("gen", "seeded random instance");
  gen->add_option("--seed", opt.seed, "defaults to $BLOCKABS_SEED, then 0");
  gen->add_option("--kind", opt.kind)
      ->check(CLI::IsMember({"matrix", "hermitian", "unitary", "symmetry", "idempotent"}));
  gen->add_option("--rows", opt.rows)->check(CLI::NonNegativeNumber);
  gen->add_option("--cols", opt.cols)->check(CLI::NonNegativeNumber);
  gen->add_option("--dim", opt.dim)->check(CLI::NonNegativeNumber);
  gen->add_option("--rank", opt.rank)->check(CLI::NonNegativeNumber);
  gen->add_option("--magnitude", opt.magnitude)->check(CLI::PositiveNumber);
  gen->add_flag("--real", opt.real, "real entries only");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  try {
    const Tolerance tol = make_tolerance(opt);
    Output o;
    if (abs->parsed()) {
      o = run_abs(opt, tol);
    } else if (pospart->parsed()) {
      o = run_part(opt, tol, true);
    } else if (negpart->parsed()) {
      o = run_part(opt, tol, false);
    } else if (supp->parsed()) {
      o = run_support(opt, tol);
    } else if (minsym->parsed()) {
      o = run_minsym(opt, tol);
    } else if (jcheck->parsed()) {
      o = run_jcheck(opt, tol);
    } else if (jdecompose->parsed()) {
      o = run_jdecompose(opt, tol);
    } else if (fromsub->parsed()) {
      o = run_fromsubspace(opt, tol);
    } else {
      o = run_gen(opt);
    }
    emit(opt, o, out);
    return 0;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return 1;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace blockabs::cli
