#include "equinorm/solver/matching.hpp"

namespace equinorm::solver {

namespace {

bool augment(const std::vector<std::vector<int>>& adj, int u, std::vector<char>& seen,
             std::vector<int>& match_left, std::vector<int>& match_right) {
  for (int v : adj[static_cast<std::size_t>(u)]) {
    if (seen[static_cast<std::size_t>(v)]) continue;
    seen[static_cast<std::size_t>(v)] = 1;
    if (match_right[static_cast<std::size_t>(v)] < 0 ||
        augment(adj, match_right[static_cast<std::size_t>(v)], seen, match_left, match_right)) {
      match_left[static_cast<std::size_t>(u)] = v;
      match_right[static_cast<std::size_t>(v)] = u;
      return true;
    }
  }
  return false;
}

}  // namespace

std::vector<int> max_bipartite_matching(const std::vector<std::vector<int>>& adj, std::size_t right_count) {
  std::vector<int> match_left(adj.size(), -1);
  std::vector<int> match_right(right_count, -1);
  for (std::size_t u = 0; u < adj.size(); ++u) {
    std::vector<char> seen(right_count, 0);
    augment(adj, static_cast<int>(u), seen, match_left, match_right);
  }
  return match_left;
}

}  // namespace equinorm::solver
