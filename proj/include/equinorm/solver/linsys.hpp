#pragma once

#include <optional>
#include <vector>

namespace equinorm::solver {

// Solves the square system M z = v by Gaussian elimination with partial
// pivoting.  Returns nullopt when a pivot falls below 1e-11 times the matrix
// scale (treated as singular) or when the residual exceeds 1e-8 relative.
std::optional<std::vector<double>> solve_square_system(std::vector<std::vector<double>> m,
                                                       std::vector<double> v);

}  // namespace equinorm::solver
