#pragma once

#include <cstdint>
#include <vector>

namespace equinorm::solver {

// Region enumeration for hyperplanes {lambda : normal . lambda = 0} restricted
// to the standard simplex {lambda >= 0, sum lambda = 1} in dimension r.
// Exact for r <= 3 (interval splitting for r = 2, convex polygon splitting for
// r = 3); for r >= 4 falls back to Dirichlet sampling plus a one-hyperplane
// adjacency walk and reports complete = false.
struct Arrangement {
  std::vector<std::vector<double>> points;  // one interior sample per region
  bool complete = true;
};

Arrangement arrangement_regions(const std::vector<std::vector<double>>& normals, std::size_t r,
                                std::uint64_t seed = 0, int samples = 20000);

}  // namespace equinorm::solver
