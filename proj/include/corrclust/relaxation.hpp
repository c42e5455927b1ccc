#pragma once

#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "corrclust/signed_graph.hpp"
#include "corrclust/simplex.hpp"

namespace corrclust {

struct SolverConfig {
  int breakpoints = 16;         // tangent cuts per power term
  double tol = 1e-6;            // relative target for value - lower_bound
  bool use_z = false;           // full program with z vs the z-free variant
  bool lazy_triangles = false;  // generate triangle rows by separation
  bool refine_tangents = true;  // Kelley refinement at the incumbent y
  long max_pivots = 100000;     // simplex pivot cap per solve round
  int max_rounds = 400;
};

// Feasible point of the relaxation. x is the full n*n metric matrix; y and
// z always satisfy their defining expressions of x exactly (they are
// recomputed from x, never read back from the solver).
struct FractionalSolution {
  int n = 0;
  std::vector<double> x;
  std::vector<double> y;
  std::optional<std::vector<double>> z;
  double value = 0.0;        // true convex objective at this point
  double lower_bound = 0.0;  // optimum of the linearized program (norm scale)
  double value_y_branch = 0.0;
  double value_z_branch = 0.0;

  double at(int u, int v) const { return x[static_cast<std::size_t>(u) * n + v]; }
};

class SolverFailure : public std::runtime_error {
 public:
  SolverFailure(const std::string& msg, FractionalSolution best)
      : std::runtime_error(msg), best_(std::move(best)) {}
  const FractionalSolution& best() const { return best_; }

 private:
  FractionalSolution best_;
};

struct ConstraintViolation {
  std::string constraint;  // P1..P5 or "diagonal"
  int u = -1, v = -1, w = -1;
  double magnitude = 0.0;
};

struct FeasibilityReport {
  std::vector<ConstraintViolation> violations;
  bool feasible() const { return violations.empty(); }
  std::string summary(std::size_t max_items = 5) const;
};

// t >= slope * y + intercept
struct TangentCut {
  double slope = 0.0;
  double intercept = 0.0;
};

// Supporting lines of y^q at a halving ladder of points in (0, w_total].
// Every cut underestimates y^q on y >= 0, so a program built from them
// certifies a lower bound.
std::vector<TangentCut> power_tangents(double q, double w_total, int breakpoints);

// Linearized relaxation of program (P). When the graph carries a
// bipartition the objective is restricted to the left side (the one-sided
// problem); when terminals are present the separation x_st = 1 is pinned,
// which turns the program into the s-t cut relaxation.
class ConvexProgram {
 public:
  ConvexProgram(const SignedGraph& g, NormSpec q, SolverConfig cfg);

  FractionalSolution solve();

  int num_x_vars() const { return num_pairs_; }
  int num_y_vars() const { return g_.n(); }
  int num_triangle_rows() const { return num_triangle_rows_; }
  const SolverConfig& config() const { return cfg_; }
  const SignedGraph& graph() const { return g_; }

 private:
  int pair_index(int u, int v) const;
  void add_triangle_row(int a, int b, int c);  // x_ab long side, c middle
  void add_tangent_row(int u, const TangentCut& cut);
  int separate_triangles(const std::vector<double>& xm);
  std::vector<double> extract_matrix(const std::vector<double>& point) const;

  SignedGraph g_;
  NormSpec q_;
  SolverConfig cfg_;
  int n_ = 0;
  int num_pairs_ = 0;
  int t_begin_ = -1;   // first t variable, finite q only
  int big_t_ = -1;     // aggregate objective variable (full mode and q = inf)
  std::vector<char> scope_;
  std::vector<double> w_total_;
  std::vector<double> y_const_;
  std::vector<std::vector<std::pair<int, double>>> y_lin_;  // per vertex, x coefs
  double z_const_ = 0.0;
  std::vector<std::pair<int, double>> z_lin_;  // aggregated over the scope
  lp::Program lp_;
  int num_triangle_rows_ = 0;
  std::set<std::tuple<int, int, int>> triangle_seen_;
};

ConvexProgram build_program(const SignedGraph& g, NormSpec q, SolverConfig cfg = {});
FractionalSolution solve(ConvexProgram& program);

// Builds the solution record induced by a metric matrix: y and z from the
// (P1)/(P2) expressions, objective over the graph's scope.
FractionalSolution solution_from_matrix(const SignedGraph& g, NormSpec q,
                                        std::vector<double> x_matrix, bool with_z);

// Lists every constraint of (P) violated beyond 1e-7.
FeasibilityReport check_feasible(const FractionalSolution& sol, const SignedGraph& g,
                                 const NormSpec& q);

// Integral solution corresponding to a clustering: x_uv = 0 inside
// clusters, 1 across; value equals the lq norm of the disagreement vector.
FractionalSolution embed_integral(const Clustering& c, const SignedGraph& g, const NormSpec& q);

}  // namespace corrclust
