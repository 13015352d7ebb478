#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace equinorm::solver {

// Dense linear program over nonnegative variables.
//   optimize c.x  subject to  rows (coeffs . x REL rhs),  x >= 0
struct LinearProgram {
  struct Row {
    std::vector<double> coeffs;
    char rel = '>';  // '<', '>', '='
    double rhs = 0.0;
  };
  bool maximize = false;
  std::vector<double> objective;
  std::vector<Row> rows;
};

struct LpSolution {
  enum class Status { Optimal, Infeasible, Unbounded };
  Status status = Status::Optimal;
  std::vector<double> x;
  double value = 0.0;
  int iterations = 0;
};

// Two-phase dense simplex.  Dantzig pricing with a switch to Bland's rule
// after 10 * (rows + cols) pivots; throws NumericError if the hard iteration
// cap is hit.
LpSolution solve_lp(const LinearProgram& lp);

}  // namespace equinorm::solver
