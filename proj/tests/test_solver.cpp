#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

#include "equinorm/rng.hpp"
#include "equinorm/solver/arrangement.hpp"
#include "equinorm/solver/linsys.hpp"
#include "equinorm/solver/lp.hpp"
#include "equinorm/solver/matching.hpp"

using namespace equinorm;
using namespace equinorm::solver;

namespace {

LinearProgram make_lp(bool maximize, std::vector<double> obj,
                      std::vector<LinearProgram::Row> rows) {
  LinearProgram lp;
  lp.maximize = maximize;
  lp.objective = std::move(obj);
  lp.rows = std::move(rows);
  return lp;
}

}  // namespace

TEST_CASE("lp: bounded maximization") {
  const auto lp = make_lp(true, {3.0, 2.0},
                          {{{1.0, 1.0}, '<', 4.0}, {{1.0, 0.0}, '<', 2.0}});
  const auto sol = solve_lp(lp);
  REQUIRE(sol.status == LpSolution::Status::Optimal);
  CHECK(sol.value == doctest::Approx(10.0).epsilon(1e-8));
  CHECK(sol.x[0] == doctest::Approx(2.0));
  CHECK(sol.x[1] == doctest::Approx(2.0));
}

TEST_CASE("lp: single bound") {
  const auto sol = solve_lp(make_lp(true, {1.0}, {{{1.0}, '<', 3.0}}));
  REQUIRE(sol.status == LpSolution::Status::Optimal);
  CHECK(sol.value == doctest::Approx(3.0));
}

TEST_CASE("lp: minimization with cover constraint") {
  const auto sol = solve_lp(make_lp(false, {1.0, 1.0}, {{{1.0, 1.0}, '>', 3.0}}));
  REQUIRE(sol.status == LpSolution::Status::Optimal);
  CHECK(sol.value == doctest::Approx(3.0));
}

TEST_CASE("lp: equality rows") {
  const auto sol = solve_lp(make_lp(true, {1.0, 0.0}, {{{1.0, 1.0}, '=', 2.0}}));
  REQUIRE(sol.status == LpSolution::Status::Optimal);
  CHECK(sol.value == doctest::Approx(2.0));
  CHECK(sol.x[1] == doctest::Approx(0.0).epsilon(1e-8));
}

TEST_CASE("lp: infeasible") {
  const auto sol = solve_lp(make_lp(true, {1.0}, {{{1.0}, '<', -1.0}}));
  CHECK(sol.status == LpSolution::Status::Infeasible);
}

TEST_CASE("lp: unbounded") {
  const auto sol = solve_lp(make_lp(true, {1.0}, {{{1.0}, '>', 1.0}}));
  CHECK(sol.status == LpSolution::Status::Unbounded);
}

TEST_CASE("lp: weak duality on random covering pairs") {
  // min c.x st Ax >= b against max b.y st A^T y <= c, both with nonnegative
  // data, so the primal is feasible (scale up) and the dual contains y = 0.
  Rng rng(7);
  for (int t = 0; t < 50; ++t) {
    const std::size_t m = 1 + static_cast<std::size_t>(rng.uniform_int(0, 2));
    const std::size_t n = 1 + static_cast<std::size_t>(rng.uniform_int(0, 3));
    std::vector<std::vector<double>> a(m, std::vector<double>(n));
    std::vector<double> b(m), c(n);
    for (auto& row : a)
      for (auto& v : row) v = rng.uniform(0.1, 2.0);
    for (auto& v : b) v = rng.uniform(0.1, 2.0);
    for (auto& v : c) v = rng.uniform(0.1, 2.0);

    LinearProgram primal;
    primal.maximize = false;
    primal.objective = c;
    for (std::size_t i = 0; i < m; ++i) primal.rows.push_back({a[i], '>', b[i]});

    LinearProgram dual;
    dual.maximize = true;
    dual.objective = b;
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<double> col(m);
      for (std::size_t i = 0; i < m; ++i) col[i] = a[i][j];
      dual.rows.push_back({col, '<', c[j]});
    }

    const auto ps = solve_lp(primal);
    const auto ds = solve_lp(dual);
    REQUIRE(ps.status == LpSolution::Status::Optimal);
    REQUIRE(ds.status == LpSolution::Status::Optimal);
    REQUIRE(std::abs(ps.value - ds.value) <= 1e-6 * (1.0 + std::abs(ps.value)));
  }
}

TEST_CASE("matching: hand instances") {
  // K_{2,2}
  CHECK([] {
    const auto m = max_bipartite_matching({{0, 1}, {0, 1}}, 2);
    return (m[0] >= 0) + (m[1] >= 0);
  }() == 2);
  // Three lefts over two rights.
  const auto m = max_bipartite_matching({{0, 1}, {0}, {1}}, 2);
  int size = 0;
  std::set<int> used;
  for (int r : m)
    if (r >= 0) {
      ++size;
      CHECK(used.insert(r).second);  // rights distinct
    }
  CHECK(size == 2);
  // Empty graph.
  CHECK(max_bipartite_matching({{}, {}}, 3) == std::vector<int>{-1, -1});
}

TEST_CASE("matching size equals the LP relaxation optimum") {
  Rng rng(11);
  for (int t = 0; t < 40; ++t) {
    const std::size_t nl = 1 + static_cast<std::size_t>(rng.uniform_int(0, 4));
    const std::size_t nr = 1 + static_cast<std::size_t>(rng.uniform_int(0, 4));
    std::vector<std::vector<int>> adj(nl);
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    for (std::size_t u = 0; u < nl; ++u)
      for (std::size_t v = 0; v < nr; ++v)
        if (rng.uniform() < 0.4) {
          adj[u].push_back(static_cast<int>(v));
          edges.emplace_back(u, v);
        }
    const auto m = max_bipartite_matching(adj, nr);
    int size = 0;
    for (int r : m) size += (r >= 0);

    if (edges.empty()) {
      CHECK(size == 0);
      continue;
    }
    LinearProgram lp;
    lp.maximize = true;
    lp.objective.assign(edges.size(), 1.0);
    for (std::size_t u = 0; u < nl; ++u) {
      std::vector<double> row(edges.size(), 0.0);
      for (std::size_t e = 0; e < edges.size(); ++e)
        if (edges[e].first == u) row[e] = 1.0;
      lp.rows.push_back({row, '<', 1.0});
    }
    for (std::size_t v = 0; v < nr; ++v) {
      std::vector<double> row(edges.size(), 0.0);
      for (std::size_t e = 0; e < edges.size(); ++e)
        if (edges[e].second == v) row[e] = 1.0;
      lp.rows.push_back({row, '<', 1.0});
    }
    const auto sol = solve_lp(lp);
    REQUIRE(sol.status == LpSolution::Status::Optimal);
    // Bipartite matching polytope is integral.
    REQUIRE(std::abs(static_cast<double>(size) - sol.value) <= 1e-6);
  }
}

TEST_CASE("square systems") {
  const auto z = solve_square_system({{2.0, 1.0}, {1.0, 3.0}}, {3.0, 4.0});
  REQUIRE(z.has_value());
  CHECK((*z)[0] == doctest::Approx(1.0));
  CHECK((*z)[1] == doctest::Approx(1.0));

  CHECK_FALSE(solve_square_system({{1.0, 1.0}, {1.0, 1.0}}, {1.0, 2.0}).has_value());

  const auto id = solve_square_system({{1.0, 0.0}, {0.0, 1.0}}, {5.0, -2.0});
  REQUIRE(id.has_value());
  CHECK((*id)[0] == 5.0);
  CHECK((*id)[1] == -2.0);
}

TEST_CASE("square systems: random residual check") {
  Rng rng(13);
  for (int t = 0; t < 50; ++t) {
    const std::size_t n = 1 + static_cast<std::size_t>(rng.uniform_int(0, 4));
    std::vector<std::vector<double>> m(n, std::vector<double>(n));
    std::vector<double> v(n);
    for (auto& row : m)
      for (auto& x : row) x = rng.uniform(-2.0, 2.0);
    for (std::size_t i = 0; i < n; ++i) m[i][i] += 3.0;  // keep well conditioned
    for (auto& x : v) x = rng.uniform(-2.0, 2.0);
    const auto z = solve_square_system(m, v);
    REQUIRE(z.has_value());
    for (std::size_t i = 0; i < n; ++i) {
      double r = -v[i];
      for (std::size_t j = 0; j < n; ++j) r += m[i][j] * (*z)[j];
      REQUIRE(std::abs(r) <= 1e-8 * (1.0 + std::abs(v[i])));
    }
  }
}

TEST_CASE("arrangement: base cases") {
  CHECK(arrangement_regions({}, 2).points.size() == 1);
  CHECK(arrangement_regions({}, 3).points.size() == 1);
  // One hyperplane crossing the segment.
  const auto two = arrangement_regions({{1.0, -1.0}}, 2);
  CHECK(two.complete);
  CHECK(two.points.size() == 2);
  // A hyperplane missing the simplex interior adds nothing.
  const auto one = arrangement_regions({{1.0, 1.0}}, 2);
  CHECK(one.points.size() == 1);
}

TEST_CASE("arrangement: r=3 counts within the hyperplane bound") {
  Rng rng(17);
  for (int t = 0; t < 20; ++t) {
    const std::size_t count = 1 + static_cast<std::size_t>(rng.uniform_int(0, 5));
    std::vector<std::vector<double>> normals(count, std::vector<double>(3));
    for (auto& h : normals)
      for (auto& v : h) v = rng.uniform(-1.0, 1.0);
    const auto arr = arrangement_regions(normals, 3);
    REQUIRE(arr.complete);
    REQUIRE(arr.points.size() <= count * count + 1);
    // Every sample lies in the simplex interior and off the hyperplanes.
    for (const auto& pt : arr.points) {
      double sum = 0.0;
      for (double v : pt) {
        REQUIRE(v > 0.0);
        sum += v;
      }
      REQUIRE(sum == doctest::Approx(1.0).epsilon(1e-9));
    }
    // Distinct sign patterns.
    std::set<std::vector<int>> seen;
    for (const auto& pt : arr.points) {
      std::vector<int> sig;
      for (const auto& h : normals) {
        double dot = 0.0;
        for (std::size_t i = 0; i < 3; ++i) dot += h[i] * pt[i];
        sig.push_back(dot > 0.0 ? 1 : -1);
      }
      REQUIRE(seen.insert(sig).second);
    }
  }
}

TEST_CASE("arrangement: r=4 sampling is labeled incomplete") {
  const auto arr = arrangement_regions({{1.0, -1.0, 0.0, 0.0}}, 4, 0, 2000);
  CHECK_FALSE(arr.complete);
  CHECK(arr.points.size() >= 2);
}
