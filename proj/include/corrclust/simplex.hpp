#pragma once

#include <utility>
#include <vector>

namespace corrclust::lp {

enum class Sense : char { kLe, kGe, kEq };

struct Row {
  std::vector<std::pair<int, double>> coeffs;  // (variable, coefficient), sparse
  Sense sense = Sense::kLe;
  double rhs = 0.0;
};

// minimize cost^T v  subject to  rows, v >= 0.
// Upper bounds are expressed as explicit rows by the caller.
struct Program {
  int num_vars = 0;
  std::vector<double> cost;
  std::vector<Row> rows;

  int add_var(double c) {
    cost.push_back(c);
    return num_vars++;
  }
  void add_row(Row r) { rows.push_back(std::move(r)); }
};

enum class Status { kOptimal, kInfeasible, kUnbounded, kIterationLimit };

struct Result {
  Status status = Status::kOptimal;
  std::vector<double> point;  // structural variables; best iterate on failure
  double objective = 0.0;
  bool feasible = false;  // point satisfies the constraints (phase 1 done)
  long iterations = 0;
};

// Dense two-phase primal simplex. Dantzig pricing with a Bland's-rule
// fallback once the objective stalls, which guarantees termination.
Result solve(const Program& p, long max_iterations = 100000);

}  // namespace corrclust::lp
