#pragma once

#include <cstddef>
#include <vector>

namespace equinorm::solver {

// Maximum-cardinality bipartite matching via augmenting paths, processing left
// vertices and adjacency lists in index order (deterministic).
// adj[u] lists right neighbors of left vertex u.  Returns match_of_left with
// -1 for unmatched.
std::vector<int> max_bipartite_matching(const std::vector<std::vector<int>>& adj, std::size_t right_count);

}  // namespace equinorm::solver
