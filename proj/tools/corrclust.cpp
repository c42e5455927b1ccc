#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "corrclust/graph_io.hpp"
#include "corrclust/json_io.hpp"
#include "corrclust/oracle.hpp"
#include "corrclust/parallel.hpp"
#include "corrclust/rng.hpp"

using namespace corrclust;

namespace {

constexpr int kExitAssertion = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

NormSpec parse_q(const std::string& text) {
  try {
    return NormSpec::parse(text);
  } catch (const ContractViolation& e) {
    throw UsageError(e.what());
  }
}

SolverConfig make_config(int breakpoints, double tol, bool use_z, int lazy_flag, int n) {
  SolverConfig cfg;
  cfg.breakpoints = breakpoints;
  cfg.tol = tol;
  cfg.use_z = use_z;
  cfg.lazy_triangles = lazy_flag < 0 ? n > 12 : lazy_flag > 0;  // auto over 12 vertices
  return cfg;
}

void write_output(const std::string& path, const std::string& payload) {
  if (path.empty()) return;
  std::ofstream out(path);
  if (!out) throw ContractViolation("cannot open '" + path + "' for writing");
  out << payload << "\n";
}

RoundMode parse_mode(const std::string& mode) {
  if (mode == "general") return RoundMode::kGeneral;
  if (mode == "complete") return RoundMode::kComplete;
  if (mode == "bipartite") return RoundMode::kBipartite;
  throw UsageError("unknown mode '" + mode + "'");
}

int cmd_solve(const std::string& input, const std::string& q_text, int breakpoints, double tol,
              bool use_z, int lazy_flag, const std::string& output) {
  NormSpec q = parse_q(q_text);
  SignedGraph g = read_graph_file(input);
  ConvexProgram prog = build_program(g, q, make_config(breakpoints, tol, use_z, lazy_flag, g.n()));
  FractionalSolution sol = solve(prog);
  std::cout << "value " << format_real(sol.value) << "\nlower_bound "
            << format_real(sol.lower_bound) << "\n";
  write_output(output, solution_to_json(sol, q));
  FeasibilityReport rep = check_feasible(sol, g, q);
  if (!rep.feasible()) {
    std::cerr << "solution failed feasibility: " << rep.summary() << "\n";
    return kExitAssertion;
  }
  return 0;
}

struct TrialOutcome {
  RoundingReport report;
  std::optional<ProfitAudit> audit;
  std::optional<DecompositionTrace> dtrace;
  std::vector<std::string> violations;
};

TrialOutcome run_round(const SignedGraph& g, const FractionalSolution& sol, const NormSpec& q,
                       RoundMode mode, std::uint64_t seed) {
  TrialOutcome out;
  switch (mode) {
    case RoundMode::kGeneral: {
      DecompositionTrace trace;
      out.report = round_general(g, sol, q, seed, &trace);
      out.dtrace = std::move(trace);
      break;
    }
    case RoundMode::kComplete: {
      auto [report, audit] = round_complete(g, sol, q);
      out.report = std::move(report);
      out.audit = std::move(audit);
      break;
    }
    case RoundMode::kBipartite: {
      auto [report, audit] = round_bipartite(g, sol, q);
      out.report = std::move(report);
      out.audit = std::move(audit);
      break;
    }
  }
  out.violations = rounding_violations(g, sol, out.report,
                                       out.audit ? &*out.audit : nullptr, mode);
  return out;
}

int cmd_round(const std::string& input, const std::string& q_text, const std::string& mode_text,
              std::uint64_t seed, int trials, int breakpoints, double tol, bool use_z,
              int lazy_flag, const std::string& output) {
  if (trials < 1) throw UsageError("--trials must be >= 1");
  NormSpec q = parse_q(q_text);
  RoundMode mode = parse_mode(mode_text);
  SignedGraph g = read_graph_file(input);
  SolverConfig cfg = make_config(breakpoints, tol, use_z, lazy_flag, g.n());
  if (mode != RoundMode::kGeneral && q.is_infinite()) cfg.use_z = false;
  ConvexProgram prog = build_program(g, q, cfg);
  FractionalSolution sol = solve(prog);

  std::vector<TrialOutcome> outcomes(static_cast<std::size_t>(trials));
  if (mode == RoundMode::kGeneral) {
    parallel_for(trials, [&](int i) {
      outcomes[static_cast<std::size_t>(i)] =
          run_round(g, sol, q, mode, subseed(seed, static_cast<std::uint64_t>(i)));
    });
  } else {
    outcomes[0] = run_round(g, sol, q, mode, seed);  // deterministic rounders
    for (int i = 1; i < trials; ++i) outcomes[static_cast<std::size_t>(i)] = outcomes[0];
  }

  int best = 0;
  for (int i = 1; i < trials; ++i)
    if (outcomes[static_cast<std::size_t>(i)].report.objective <
        outcomes[static_cast<std::size_t>(best)].report.objective)
      best = i;
  const TrialOutcome& chosen = outcomes[static_cast<std::size_t>(best)];

  std::cout << "objective " << format_real(chosen.report.objective) << "\nratio_per_vertex "
            << format_real(chosen.report.ratio_per_vertex) << "\nlp_value "
            << format_real(sol.value) << "\nlp_lower_bound " << format_real(sol.lower_bound)
            << "\n";
  write_output(output, report_to_json(chosen.report, chosen.audit ? &*chosen.audit : nullptr,
                                      chosen.dtrace ? &*chosen.dtrace : nullptr));
  bool ok = true;
  for (const auto& outcome : outcomes)
    for (const auto& v : outcome.violations) {
      std::cerr << "assertion failed: " << v << "\n";
      ok = false;
    }
  return ok ? 0 : kExitAssertion;
}

int cmd_exact(const std::string& input, const std::string& q_text, const std::string& scope_text,
              bool st_cut, const std::string& output) {
  NormSpec q = parse_q(q_text);
  SignedGraph g = read_graph_file(input);
  OracleResult res;
  if (st_cut) {
    if (!g.terminals()) throw UsageError("--st requires terminals in the input file");
    res = opt_st_cut(g, g.terminals()->s, g.terminals()->t, q);
  } else {
    Scope scope = Scope::kAll;
    if (scope_text == "left")
      scope = Scope::kLeftSide;
    else if (scope_text != "all")
      throw UsageError("--scope must be all or left");
    res = opt_clustering(g, q, scope);
  }
  std::cout << "value " << format_real(res.value) << "\nenumerated " << res.enumerated << "\n";
  if (!output.empty()) {
    std::ostringstream os;
    os << "{\"schema\":1,\"value\":" << format_real(res.value) << ",\"enumerated\":"
       << res.enumerated << ",\"assignment\":[";
    for (int u = 0; u < res.best.n(); ++u) {
      if (u) os << ",";
      os << res.best.cluster_of(u);
    }
    os << "]}";
    write_output(output, os.str());
  }
  return 0;
}

int cmd_gap(int a, int b, const std::string& q_text, bool solve_lp, const std::string& output) {
  NormSpec q = parse_q(q_text);
  GapParams params{a, b};
  SignedGraph g = gen_gap(params);
  GapFractional frac = gap_fractional(params, q);

  bool ok = true;
  if (std::abs(frac.solution.value - frac.formula_value) > 1e-9) {
    std::cerr << "assertion failed: shortest-path solution value "
              << format_real(frac.solution.value) << " differs from the closed form "
              << format_real(frac.formula_value) << "\n";
    ok = false;
  }
  FeasibilityReport feas = check_feasible(frac.solution, g, q);
  if (!feas.feasible()) {
    std::cerr << "assertion failed: fractional cut infeasible: " << feas.summary() << "\n";
    ok = false;
  }

  std::optional<double> lp_solver_value;
  if (solve_lp) {
    SolverConfig cfg;
    cfg.lazy_triangles = g.n() > 12;
    ConvexProgram prog = build_program(g, q, cfg);
    lp_solver_value = solve(prog).value;
  }
  std::optional<double> opt_value;
  double ratio = std::numeric_limits<double>::quiet_NaN();
  if (g.n() - 2 <= 24) {
    OracleResult res = opt_st_cut(g, g.terminals()->s, g.terminals()->t, q);
    opt_value = res.value;
    ratio = res.value / frac.formula_value;
    if (ratio < 1.0 - 1e-9) {
      std::cerr << "assertion failed: integral optimum below the fractional value\n";
      ok = false;
    }
  }

  std::cout << "lp_formula_value " << format_real(frac.formula_value) << "\n";
  if (lp_solver_value) std::cout << "lp_solver_value " << format_real(*lp_solver_value) << "\n";
  if (opt_value) {
    std::cout << "opt_oracle_value " << format_real(*opt_value) << "\nratio "
              << format_real(ratio) << "\n";
  }
  std::ostringstream os;
  os << "{\"schema\":1,\"a\":" << a << ",\"b\":" << b << ",\"q\":" << format_real(q.q())
     << ",\"lp_formula_value\":" << format_real(frac.formula_value) << ",\"lp_solver_value\":";
  os << (lp_solver_value ? format_real(*lp_solver_value) : "null");
  os << ",\"opt_oracle_value\":" << (opt_value ? format_real(*opt_value) : "null")
     << ",\"ratio\":" << (opt_value ? format_real(ratio) : "null") << "}";
  write_output(output, os.str());
  return ok ? 0 : kExitAssertion;
}

int cmd_reduce(const std::string& cnf_path, const std::string& output, bool verify) {
  CnfFormula f = read_cnf_file(cnf_path);
  SignedGraph g = reduce_3sat(f);
  std::cout << "vertices " << g.n() << "\nedges " << g.num_edges() << "\ninfinite "
            << g.num_infinite_edges() << "\n";
  if (!output.empty()) write_graph_file(g, output);
  if (!verify) return 0;

  if (g.n() - 2 > 24) throw SizeGuardError("instance too large for --verify");
  bool sat = brute_force_satisfiable(f);
  OracleResult cut = opt_st_cut(g, g.terminals()->s, g.terminals()->t, NormSpec::infinity());
  std::cout << "satisfiable " << (sat ? "true" : "false") << "\nmin_linf_cut "
            << format_real(cut.value) << "\n";
  bool ok = sat ? std::abs(cut.value - 1.0) <= 1e-9 : cut.value >= 2.0 - 1e-9;
  if (!ok) std::cerr << "assertion failed: SAT/cut equivalence does not hold\n";
  return ok ? 0 : kExitAssertion;
}

int cmd_gen(const std::string& type, int n, double p_plus, double p_edge, std::uint64_t seed,
            int a, int b, int left, int right, const std::string& output) {
  SignedGraph g = [&] {
    if (type == "random") return gen_random(n, p_plus, p_edge, seed);
    if (type == "gap") return gen_gap(GapParams{a, b});
    if (type == "bipartite") return gen_random_bipartite(left, right, p_plus, seed);
    throw UsageError("unknown --type '" + type + "'");
  }();
  if (output.empty()) {
    std::cout << graph_to_string(g);
  } else {
    write_graph_file(g, output);
    std::cout << "vertices " << g.n() << "\nedges " << g.num_edges() << "\n";
  }
  return 0;
}

int cmd_verify(const std::string& input, const std::string& q_text, const std::string& mode_text,
               std::uint64_t seed, int trials, int breakpoints, double tol, int lazy_flag) {
  NormSpec q = parse_q(q_text);
  RoundMode mode = parse_mode(mode_text);
  SignedGraph g = read_graph_file(input);
  SolverConfig cfg = make_config(breakpoints, tol, mode == RoundMode::kGeneral && !q.is_infinite(),
                                 lazy_flag, g.n());
  ConvexProgram prog = build_program(g, q, cfg);
  FractionalSolution sol = solve(prog);
  int failures = 0;
  auto check = [&failures](bool ok, const std::string& name) {
    std::cout << (ok ? "PASS " : "FAIL ") << name << "\n";
    if (!ok) ++failures;
  };
  check(check_feasible(sol, g, q).feasible(), "relaxation feasibility");
  check(sol.lower_bound <= sol.value + 1e-7, "lower bound below value");

  for (int i = 0; i < trials; ++i) {
    TrialOutcome outcome = run_round(g, sol, q, mode, subseed(seed, static_cast<std::uint64_t>(i)));
    for (const auto& v : outcome.violations) std::cerr << "  " << v << "\n";
    check(outcome.violations.empty(),
          "rounding guarantees (trial " + std::to_string(i) + ")");
    if (mode != RoundMode::kGeneral) break;  // deterministic rounders need one trial
  }
  if (g.n() <= 12) {
    Scope scope = g.bipartition() ? Scope::kLeftSide : Scope::kAll;
    OracleResult opt = opt_clustering(g, q, scope);
    check(sol.lower_bound <= opt.value + 1e-7, "lower bound below integral optimum");
  }
  return failures == 0 ? 0 : kExitAssertion;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"correlation clustering with lq disagreement objectives"};
  app.require_subcommand(1);

  std::string input, output, q_text = "1", mode = "general", scope = "all", type = "random";
  std::string cnf_path;
  int breakpoints = 16, trials = 1, lazy_flag = -1;
  double tol = 1e-6, p_plus = 0.5, p_edge = 1.0;
  std::uint64_t seed = 1;
  bool use_z = false, st_cut = false, verify = false, solve_lp = false;
  int gap_a = 2, gap_b = 2, left = 2, right = 2, n = 8;

  auto add_solver_flags = [&](CLI::App* cmd) {
    cmd->add_option("--breakpoints", breakpoints, "tangent cuts per power term");
    cmd->add_option("--tol", tol, "relative objective tolerance");
    cmd->add_option("--lazy", lazy_flag, "triangle generation: -1 auto, 0 eager, 1 lazy");
  };

  auto* solve_cmd = app.add_subcommand("solve", "solve the convex relaxation");
  solve_cmd->add_option("--input", input)->required();
  solve_cmd->add_option("--q", q_text, "norm parameter (>= 1 or 'inf')");
  solve_cmd->add_flag("--use-z", use_z, "full program with z variables");
  solve_cmd->add_option("--output", output, "solution JSON path");
  add_solver_flags(solve_cmd);

  auto* round_cmd = app.add_subcommand("round", "solve and round");
  round_cmd->add_option("--input", input)->required();
  round_cmd->add_option("--q", q_text);
  round_cmd->add_option("--mode", mode, "general | complete | bipartite");
  round_cmd->add_option("--seed", seed);
  round_cmd->add_option("--trials", trials);
  round_cmd->add_flag("--use-z", use_z);
  round_cmd->add_option("--output", output, "report JSON path");
  add_solver_flags(round_cmd);

  auto* exact_cmd = app.add_subcommand("exact", "brute-force optimum");
  exact_cmd->add_option("--input", input)->required();
  exact_cmd->add_option("--q", q_text);
  exact_cmd->add_option("--scope", scope, "all | left");
  exact_cmd->add_flag("--st", st_cut, "minimum s-t cut over the file's terminals");
  exact_cmd->add_option("--output", output);

  auto* gap_cmd = app.add_subcommand("gap", "integrality-gap construction report");
  gap_cmd->add_option("--a", gap_a)->required();
  gap_cmd->add_option("--b", gap_b)->required();
  gap_cmd->add_option("--q", q_text);
  gap_cmd->add_flag("--solve-lp", solve_lp, "also solve the relaxation");
  gap_cmd->add_option("--output", output);

  auto* reduce_cmd = app.add_subcommand("reduce", "3SAT to minimum l-infinity s-t cut");
  reduce_cmd->add_option("--cnf", cnf_path)->required();
  reduce_cmd->add_option("--output", output, "graph file path");
  reduce_cmd->add_flag("--verify", verify, "check the SAT/cut equivalence by enumeration");

  auto* gen_cmd = app.add_subcommand("gen", "instance generators");
  gen_cmd->add_option("--type", type, "random | gap | bipartite");
  gen_cmd->add_option("--n", n);
  gen_cmd->add_option("--p-plus", p_plus);
  gen_cmd->add_option("--p-edge", p_edge);
  gen_cmd->add_option("--seed", seed);
  gen_cmd->add_option("--a", gap_a);
  gen_cmd->add_option("--b", gap_b);
  gen_cmd->add_option("--left", left);
  gen_cmd->add_option("--right", right);
  gen_cmd->add_option("--output", output);

  auto* verify_cmd = app.add_subcommand("verify", "end-to-end guarantee check");
  verify_cmd->add_option("--input", input)->required();
  verify_cmd->add_option("--q", q_text);
  verify_cmd->add_option("--mode", mode);
  verify_cmd->add_option("--seed", seed);
  verify_cmd->add_option("--trials", trials);
  add_solver_flags(verify_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (solve_cmd->parsed())
      return cmd_solve(input, q_text, breakpoints, tol, use_z, lazy_flag, output);
    if (round_cmd->parsed())
      return cmd_round(input, q_text, mode, seed, trials, breakpoints, tol, use_z, lazy_flag,
                       output);
    if (exact_cmd->parsed()) return cmd_exact(input, q_text, scope, st_cut, output);
    if (gap_cmd->parsed()) return cmd_gap(gap_a, gap_b, q_text, solve_lp, output);
    if (reduce_cmd->parsed()) return cmd_reduce(cnf_path, output, verify);
    if (gen_cmd->parsed()) return cmd_gen(type, n, p_plus, p_edge, seed, gap_a, gap_b, left, right, output);
    if (verify_cmd->parsed())
      return cmd_verify(input, q_text, mode, seed, trials, breakpoints, tol, lazy_flag);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitAssertion;
  }
  return kExitUsage;
}
