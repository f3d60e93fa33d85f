#include "qreflex/cli.hpp"

#include <array>
#include <iomanip>
#include <limits>

#include <CLI11.hpp>

#include "qreflex/approx.hpp"
#include "qreflex/io.hpp"
#include "qreflex/qreflex.hpp"

namespace qreflex::cli {

namespace {

struct Tolerances {
  double structural = kStructuralTol;
  double orth = kOrthTol;
};

std::string fmt(double v) {
  std::ostringstream ss;
  ss << std::setprecision(std::numeric_limits<double>::max_digits10) << v;
  return ss.str();
}

Structure parse_structure(const std::string& s) {
  if (s == "reflexive") return Structure::reflexive;
  if (s == "antireflexive") return Structure::antireflexive;
  throw io::FormatError("class must be \"reflexive\" or \"antireflexive\", got \"" + s + "\"");
}

int cmd_check(const std::string& path, const Tolerances& tol, std::ostream& out, std::ostream& err) {
  const QMatrixd p = io::read_matrix(path);
  const auto c = check_reflection(p, tol.structural);
  if (!c.ok()) {
    err << "error: P is " << c.reason() << "\n";
    return kMalformed;
  }
  const auto [u1, u2] = reflection_eigenbasis(p, tol.orth, tol.structural);
  out << "n = " << p.rows() << "\n" << "r1 = " << u1.rank << "\n";
  return kOk;
}

int cmd_eigenbasis(const std::string& path, const std::string& out_path, const Tolerances& tol,
                   std::ostream& out) {
  const QMatrixd p = io::read_matrix(path);
  const auto [u1, u2] = reflection_eigenbasis(p, tol.orth, tol.structural);
  io::write_matrix(out_path, hcat(u1.matrix, u2.matrix));
  out << "r1 = " << u1.rank << "\n";
  return kOk;
}

int cmd_classify(const std::string& a_path, const std::string& p_path, const std::string& q_path,
                 const Tolerances& tol, std::ostream& out) {
  const QMatrixd a = io::read_matrix(a_path);
  const auto pair = make_pair(io::read_matrix(p_path), io::read_matrix(q_path), tol.structural, tol.orth);
  out << to_string(classify(a, pair, tol.structural)) << "\n";
  return kOk;
}

int cmd_split(const std::string& a_path, const std::string& p_path, const std::string& q_path,
              const std::vector<std::string>& outs, const Tolerances& tol, std::ostream& out) {
  const QMatrixd a = io::read_matrix(a_path);
  const auto pair = make_pair(io::read_matrix(p_path), io::read_matrix(q_path), tol.structural, tol.orth);
  const auto [ar, aa] = split(a, pair);
  io::write_matrix(outs.at(0), ar);
  io::write_matrix(outs.at(1), aa);
  out << "norm_reflexive = " << fmt(fro_norm(ar)) << "\n"
      << "norm_antireflexive = " << fmt(fro_norm(aa)) << "\n";
  return kOk;
}

int cmd_pinv(const std::string& a_path, const std::string& out_path, const Tolerances& tol,
             std::ostream& out) {
  const QMatrixd a = io::read_matrix(a_path);
  const QMatrixd ap = pinv(a, tol.orth);
  io::write_matrix(out_path, ap);
  const QMatrixd aap = matmul(a, ap);
  const QMatrixd apa = matmul(ap, a);
  out << "rank = " << mgs(a, tol.orth).rank << "\n"
      << "penrose_1 = " << fmt(fro_norm(matmul(aap, a) - a)) << "  # ||A A+ A - A||\n"
      << "penrose_2 = " << fmt(fro_norm(matmul(apa, ap) - ap)) << "  # ||A+ A A+ - A+||\n"
      << "penrose_3 = " << fmt(fro_norm(aap - adjoint(aap))) << "  # ||(A A+)* - A A+||\n"
      << "penrose_4 = " << fmt(fro_norm(apa - adjoint(apa))) << "  # ||(A+ A)* - A+ A||\n";
  return kOk;
}

/// Partition plus solvability; reports diagnostics and returns nullopt when infeasible.
std::optional<PartitionedSpectralData<double>> prepare(const io::Problem& pr,
                                                       const ReflectionPair<double>& pair,
                                                       const Tolerances& tol, std::ostream& err) {
  PartitionedSpectralData<double> part;
  try {
    part = partition(pr.data, pair, pr.structure, tol.structural);
  } catch (const InfeasiblePartition<double>& e) {
    err << "infeasible: " << e.what() << "\n";
    return std::nullopt;
  }
  const auto rep = solvability(part, tol.structural, tol.orth);
  if (!rep.ok()) {
    err << "unsolvable: no " << to_string(pr.structure) << " matrix has these eigenpairs\n"
        << "  block 1: ||Y1 Phi X1+ X1 - Y1 Phi|| = " << rep.residual1 << " (scale " << rep.scale1
        << ")" << (rep.block1() ? " ok" : " FAILED") << "\n"
        << "  block 2: ||Y2 Psi X2+ X2 - Y2 Psi|| = " << rep.residual2 << " (scale " << rep.scale2
        << ")" << (rep.block2() ? " ok" : " FAILED") << "\n";
    return std::nullopt;
  }
  return part;
}

int cmd_solve(const std::string& problem_path, const std::string& out_path, const Tolerances& tol,
              std::ostream& out, std::ostream& err) {
  const auto pr = io::read_problem(problem_path);
  const auto pair = make_pair(pr.p, pr.q, tol.structural, tol.orth);
  const auto part = prepare(pr, pair, tol, err);
  if (!part) return kInfeasible;
  const auto sol = general_solution(*part, pair, tol.structural, tol.orth);
  const auto param = [](const std::optional<QMatrixd>& w, Eigen::Index r, Eigen::Index c,
                        const char* name) {
    if (!w) return zeros<double>(r, c);
    if (w->rows() != r || w->cols() != c)
      throw io::FormatError(std::string(name) + " must be " + std::to_string(r) + "x" +
                            std::to_string(c));
    return *w;
  };
  const QMatrixd a = sol.materialize(param(pr.w1, sol.w1_rows(), sol.w1_cols(), "W1"),
                                     param(pr.w2, sol.w2_rows(), sol.w2_cols(), "W2"));
  io::write_matrix(out_path, a);
  out << "class = " << to_string(pr.structure) << "\n"
      << "k = " << part->k << "\n"
      << "m = " << part->m() << "\n"
      << "W1 = " << sol.w1_rows() << "x" << sol.w1_cols() << "\n"
      << "W2 = " << sol.w2_rows() << "x" << sol.w2_cols() << "\n"
      << "eigen_residual = " << fmt(eigen_residual(a, pr.data)) << "\n"
      << "structure_residual = "
      << fmt(fro_norm(pr.structure == Structure::reflexive ? QMatrixd(a - reflect(a, pair))
                                                           : QMatrixd(a + reflect(a, pair))))
      << "\n";
  return kOk;
}

int cmd_approx(const std::string& problem_path, const std::string& out_path, const Tolerances& tol,
               std::ostream& out, std::ostream& err) {
  const auto pr = io::read_problem(problem_path);
  if (!pr.e) throw io::FormatError(problem_path + ": approx needs a target matrix \"E\"");
  const auto pair = make_pair(pr.p, pr.q, tol.structural, tol.orth);
  const auto part = prepare(pr, pair, tol, err);
  if (!part) return kInfeasible;
  const auto res = nearest_solution(*pr.e, *part, pair, tol.structural);
  io::write_matrix(out_path, res.minimizer);
  out << "class = " << to_string(pr.structure) << "\n"
      << "distance = " << fmt(res.distance) << "\n"
      << "block_residual_11 = " << fmt(res.block_residuals[0]) << "\n"
      << "block_residual_12 = " << fmt(res.block_residuals[1]) << "\n"
      << "block_residual_21 = " << fmt(res.block_residuals[2]) << "\n"
      << "block_residual_22 = " << fmt(res.block_residuals[3]) << "\n";
  return kOk;
}

int cmd_gen(InstanceSpec spec, const std::string& out_path, std::ostream& out) {
  const auto inst = generate_instance<double>(spec);
  io::Problem pr;
  pr.p = inst.pair.p();
  pr.q = inst.pair.q();
  pr.data = inst.data;
  pr.structure = spec.structure;
  // Target for approx, drawn from a stream independent of the instance.
  Rng rng(spec.seed ^ 0x9e3779b97f4a7c15ULL);
  pr.e = rng.matrix(spec.n, spec.n);
  io::write_problem(out_path, pr);
  out << "wrote " << out_path << " (n = " << spec.n << ", r1 = " << spec.r1 << ", r2 = " << spec.r2
      << ", k = " << spec.k << ", m = " << spec.m << ", " << to_string(spec.structure) << ")\n";
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Structured inverse eigenproblems for quaternion matrices"};
  app.name("qreflex");
  app.require_subcommand(1);
  Tolerances tol;
  app.add_option("--tol", tol.structural, "Relative tolerance for structural checks")
      ->capture_default_str();
  app.add_option("--orth-tol", tol.orth, "Rank / orthonormality tolerance")->capture_default_str();

  std::string a_path, p_path, q_path, out_path, problem_path;
  std::vector<std::string> split_outs;

  auto* check = app.add_subcommand("check", "Validate a generalized reflection and print r1");
  check->add_option("P", p_path)->required();

  auto* eig = app.add_subcommand("eigenbasis", "Write the unitary eigenbasis [U1, U2] of P");
  eig->add_option("P", p_path)->required();
  eig->add_option("-o,--output", out_path)->required();

  auto* cls = app.add_subcommand("classify", "Print reflexive | antireflexive | neither | zero");
  cls->add_option("A", a_path)->required();
  cls->add_option("P", p_path)->required();
  cls->add_option("Q", q_path)->required();

  auto* spl = app.add_subcommand("split", "Write A = A_r + A_a");
  spl->add_option("A", a_path)->required();
  spl->add_option("P", p_path)->required();
  spl->add_option("Q", q_path)->required();
  spl->add_option("-o,--output", split_outs, "Output files for A_r and A_a")->required()->expected(2);

  auto* pin = app.add_subcommand("pinv", "Write the Moore-Penrose inverse");
  pin->add_option("A", a_path)->required();
  pin->add_option("-o,--output", out_path)->required();

  auto* sol = app.add_subcommand("solve-iep", "Solve A Z = Z Lambda in the requested class");
  sol->add_option("problem", problem_path)->required();
  sol->add_option("-o,--output", out_path)->required();

  auto* apx = app.add_subcommand("approx", "Nearest solution to the target E");
  apx->add_option("problem", problem_path)->required();
  apx->add_option("-o,--output", out_path)->required();

  InstanceSpec spec;
  std::string gen_class = "reflexive";
  auto* gen = app.add_subcommand("gen", "Write a random solvable problem");
  gen->add_option("--n", spec.n)->required();
  gen->add_option("--r1", spec.r1)->required();
  gen->add_option("--r2", spec.r2)->required();
  gen->add_option("--k", spec.k)->required();
  gen->add_option("--m", spec.m)->required();
  gen->add_option("--class", gen_class)->capture_default_str();
  gen->add_option("--seed", spec.seed)->required();
  gen->add_flag("--same-reflection", spec.same_reflection, "Use Q = P (needs r1 = r2)");
  gen->add_option("-o,--output", out_path)->required();

  std::vector<const char*> argv{"qreflex"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kMalformed;
  }

  try {
    if (*check) return cmd_check(p_path, tol, out, err);
    if (*eig) return cmd_eigenbasis(p_path, out_path, tol, out);
    if (*cls) return cmd_classify(a_path, p_path, q_path, tol, out);
    if (*spl) return cmd_split(a_path, p_path, q_path, split_outs, tol, out);
    if (*pin) return cmd_pinv(a_path, out_path, tol, out);
    if (*sol) return cmd_solve(problem_path, out_path, tol, out, err);
    if (*apx) return cmd_approx(problem_path, out_path, tol, out, err);
    if (*gen) {
      spec.structure = parse_structure(gen_class);
      return cmd_gen(spec, out_path, out);
    }
  } catch (const InfeasibleStructureError& e) {
    err << "infeasible: " << e.what() << "\n";
    return kInfeasible;
  } catch (const UnsolvableError& e) {
    err << "unsolvable: " << e.what() << "\n";
    return kInfeasible;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kMalformed;
  }
  return kMalformed;
}

}  // namespace qreflex::cli
