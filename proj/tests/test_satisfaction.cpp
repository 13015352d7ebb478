#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "equinorm/errors.hpp"
#include "equinorm/norms.hpp"
#include "equinorm/rng.hpp"
#include "equinorm/satisfaction.hpp"

using namespace equinorm;
using namespace equinorm::sat;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

CompletionTimesProblem random_ct(Rng& rng, std::size_t max_jobs, std::size_t max_machines) {
  const std::size_t jobs = 1 + static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(max_jobs) - 1));
  const std::size_t machines =
      1 + static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(max_machines) - 1));
  std::vector<std::vector<double>> p(jobs, std::vector<double>(machines));
  for (auto& row : p)
    for (auto& v : row) v = static_cast<double>(rng.uniform_int(1, 8));
  return make_completion_times(p);
}

SetCoverProblem random_cover(Rng& rng, std::size_t elements, std::size_t set_count) {
  std::vector<std::vector<std::size_t>> sets(set_count);
  for (std::size_t s = 0; s < set_count; ++s)
    for (std::size_t e = 0; e < elements; ++e)
      if (rng.uniform() < 0.5) sets[s].push_back(e);
  for (std::size_t e = 0; e < elements; ++e) {
    bool covered = false;
    for (const auto& s : sets) covered = covered || std::count(s.begin(), s.end(), e) > 0;
    if (!covered) sets[static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(set_count) - 1))].push_back(e);
  }
  for (auto& s : sets) std::sort(s.begin(), s.end());
  return make_set_cover(elements, sets);
}

// Exhaustive max job count over schedules with makespan <= budget.
std::size_t best_budget_coverage(const CompletionTimesProblem& ct, double budget) {
  const std::size_t jobs = ct.jobs(), machines = ct.machines();
  std::vector<std::size_t> choice(jobs, 0);  // 0 = skip, 1..machines = machine
  std::size_t best = 0;
  while (true) {
    std::vector<double> load(machines, 0.0);
    std::size_t scheduled = 0;
    for (std::size_t j = 0; j < jobs; ++j)
      if (choice[j]) {
        load[choice[j] - 1] += ct.processing()[j][choice[j] - 1];
        ++scheduled;
      }
    if (*std::max_element(load.begin(), load.end()) <= budget + 1e-9) best = std::max(best, scheduled);

    std::size_t i = 0;
    while (i < jobs && choice[i] == machines) choice[i++] = 0;
    if (i == jobs) break;
    ++choice[i];
  }
  return best;
}

}  // namespace

TEST_CASE("completion times: prefix loads") {
  const auto ct = make_completion_times({{2.0}, {3.0}});
  CHECK(ct.client_count() == 2);
  CHECK(ct.object_count() == 2);
  const Satisfier order{{0, 1}};
  CHECK(satisfaction_times(ct, order) == std::vector<double>{2.0, 5.0});
  CHECK(cost(ct, order) == 5.0);
  CHECK(satisfaction_times(ct, Satisfier{{1, 0}}) == std::vector<double>{5.0, 3.0});
  CHECK(satisfaction_times(ct, Satisfier{{0}}) == std::vector<double>{2.0, kInf});
  CHECK(cost(ct, Satisfier{}) == 0.0);
}

TEST_CASE("set cover: times are positions") {
  const auto sc = make_set_cover(3, {{0, 1}, {2}});
  const auto times = satisfaction_times(sc, Satisfier{{0, 1}});
  CHECK(times == std::vector<double>{1.0, 1.0, 2.0});
  CHECK(cost(sc, Satisfier{{1}}) == 1.0);
  CHECK(satisfaction_times(sc, Satisfier{{1}})[0] == kInf);
  const auto full = sc.budget_satisfier(2.0);
  CHECK(full.size() == 2);
}

TEST_CASE("tsp: paths must start at the depot") {
  const std::vector<std::vector<double>> dist{
      {0.0, 1.0, 2.0}, {1.0, 0.0, 1.5}, {2.0, 1.5, 0.0}};
  const auto tsp = make_tsp(dist, 0);
  const auto good = satisfaction_times(tsp, Satisfier{{0, 1, 2}});
  CHECK(good[0] == 0.0);
  CHECK(good[1] == doctest::Approx(1.0));
  CHECK(good[2] == doctest::Approx(2.5));
  const auto bad = satisfaction_times(tsp, Satisfier{{1, 0, 2}});
  for (double t : bad) CHECK(t == kInf);
  CHECK(cost(tsp, Satisfier{{1, 0, 2}}) == kInf);
}

TEST_CASE("compose keeps first occurrences") {
  const auto composed = compose({Satisfier{{0, 1}}, Satisfier{{1, 2}}});
  CHECK(composed.objects == std::vector<std::size_t>{0, 1, 2});
  CHECK(compose({Satisfier{{3, 4}}}).objects == std::vector<std::size_t>{3, 4});
}

TEST_CASE("downward closure and composability hold on random instances") {
  Rng rng(3);
  for (int t = 0; t < 25; ++t) {
    const auto ct = random_ct(rng, 4, 3);
    const auto sc = random_cover(rng, 5, 4);
    const std::vector<const Problem*> problems{&ct, &sc};
    for (const Problem* problem : problems) {
      // Random satisfier: shuffled subset of the objects.
      std::vector<std::size_t> ids(problem->object_count());
      for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = i;
      for (std::size_t i = ids.size(); i > 1; --i)
        std::swap(ids[i - 1], ids[static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(i) - 1))]);
      Satisfier sat;
      const std::size_t take = 1 + static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(ids.size()) - 1));
      sat.objects.assign(ids.begin(), ids.begin() + static_cast<std::ptrdiff_t>(take));

      const double t_cut = rng.uniform(0.5, 10.0);
      REQUIRE(check_downward_closure(*problem, sat, t_cut));

      const std::size_t split = take / 2;
      Satisfier first{std::vector<std::size_t>(sat.objects.begin(),
                                               sat.objects.begin() + static_cast<std::ptrdiff_t>(split))};
      Satisfier second{std::vector<std::size_t>(sat.objects.begin() + static_cast<std::ptrdiff_t>(split),
                                                sat.objects.end())};
      REQUIRE(check_composability(*problem, {first, second}));
    }
  }
}

TEST_CASE("tsp composability uses gamma 2") {
  const std::vector<std::vector<double>> dist{
      {0.0, 2.0, 3.0, 4.0}, {2.0, 0.0, 2.0, 3.0}, {3.0, 2.0, 0.0, 2.0}, {4.0, 3.0, 2.0, 0.0}};
  const auto tsp = make_tsp(dist, 0);
  CHECK(tsp.gamma() == 2.0);
  CHECK(check_composability(tsp, {Satisfier{{0, 2}}, Satisfier{{0, 1, 3}}}));
}

TEST_CASE("vertex cover gadget totals at n=8") {
  const auto g = vc_lower_bound_instance(8);
  CHECK(g.vertex_count == 17);
  CHECK(g.edges.size() == 24);
  const auto vc = make_vertex_cover(g.vertex_count, g.edges);
  CHECK(vc.client_count() == 24);

  // Odd cycle vertices in any order: every edge has exactly one odd endpoint,
  // three edges per vertex.
  Satisfier odd;
  for (std::size_t v = 1; v <= 15; v += 2) odd.objects.push_back(v);
  const auto odd_times = satisfaction_times(vc, odd);
  double total = 0.0;
  for (double s : odd_times) total += s;
  CHECK(total == 108.0);

  Satisfier hub_first;
  hub_first.objects.push_back(0);
  for (std::size_t v = 1; v <= 15; v += 2) hub_first.objects.push_back(v);
  const auto hub_times = satisfaction_times(vc, hub_first);
  total = 0.0;
  for (double s : hub_times) total += s;
  CHECK(total == 96.0);
}

TEST_CASE("vertex cover gadget: odd cover is the unique minimum cover") {
  const auto g = vc_lower_bound_instance(8);
  // All 8-subsets of the 17 vertices; exactly one covers every edge.
  std::vector<std::size_t> pick(8);
  std::size_t covers = 0;
  bool smaller_cover = false;
  std::vector<bool> in(17, false);
  const auto count_covers = [&](std::size_t size, auto&& self, std::size_t start, std::size_t depth) -> void {
    if (depth == size) {
      bool all = true;
      for (const auto& [u, v] : g.edges) all = all && (in[u] || in[v]);
      if (all) {
        ++covers;
        if (size < 8) smaller_cover = true;
      }
      return;
    }
    for (std::size_t v = start; v < 17; ++v) {
      in[v] = true;
      self(size, self, v + 1, depth + 1);
      in[v] = false;
    }
  };
  count_covers(8, count_covers, 0, 0);
  CHECK(covers == 1);
  covers = 0;
  count_covers(7, count_covers, 0, 0);
  CHECK(covers == 0);
  CHECK_FALSE(smaller_cover);
}

TEST_CASE("scheduling gadget: simultaneous ratio") {
  const auto p = ct_lower_bound_instance();
  REQUIRE(p.size() == 3);
  REQUIRE(p[0].size() == 2);
  const double mu = (std::sqrt(61.0) - 7.0) / 3.0;
  const double delta = mu / 2.0;
  CHECK(p[0] == std::vector<double>{1.0, 1.0 + delta});
  CHECK(p[2][0] == doctest::Approx(1.0 + mu));
  CHECK(p[2][1] == 2.0);

  const auto problem = make_completion_times(p);
  const auto best = best_topk_satisfaction(problem);
  REQUIRE(best.size() == 3);
  CHECK(best[0] == doctest::Approx(2.0).epsilon(1e-9));           // makespan optimum
  CHECK(best[2] == doctest::Approx(4.0 + mu + delta).epsilon(1e-9));  // total completion time

  const double ratio = best_simultaneous_ratio_l1_linf(problem);
  CHECK(ratio == doctest::Approx((std::sqrt(61.0) - 1.0) / 6.0).epsilon(1e-9));
}

TEST_CASE("full satisfaction vectors on a two-job line") {
  const auto ct = make_completion_times({{1.0}, {2.0}});
  // One machine, one assignment; the canonical order runs the short job first.
  const auto vectors = all_satisfaction_vectors(ct);
  REQUIRE(vectors.size() == 1);
  CHECK(vectors[0] == std::vector<double>{1.0, 3.0});
  const auto best = best_topk_satisfaction(ct);
  CHECK(best[0] == 3.0);
  CHECK(best[1] == 4.0);
}

TEST_CASE("budget satisfier maximizes coverage") {
  const auto ct = make_completion_times({{2.0}, {3.0}});
  CHECK(ct.budget_satisfier(1.0).empty());
  CHECK(ct.budget_satisfier(2.0).size() == 1);
  CHECK(ct.budget_satisfier(5.0).size() == 2);
}

TEST_CASE("lp rounding satisfier: hand cases") {
  const auto one = make_completion_times({{1.0}, {1.0}, {1.0}});
  const auto sat = completion_times_satisfier(one, 2.0);
  CHECK(sat.size() >= 2);
  CHECK(cost(one, sat) <= 4.0 + 1e-9);

  const auto all = completion_times_satisfier(one, 3.0);
  CHECK(all.size() == 3);

  // A job too large for the budget is placed on the other machine.
  const auto wide = make_completion_times({{5.0, 1.0}});
  const auto pick = completion_times_satisfier(wide, 2.0);
  REQUIRE(pick.size() == 1);
  CHECK(pick.objects[0] == 1);  // job 0 on machine 1
}

TEST_CASE("lp rounding satisfier: makespan and coverage contract") {
  Rng rng(7);
  for (int t = 0; t < 25; ++t) {
    const auto ct = random_ct(rng, 5, 3);
    const double budget = static_cast<double>(rng.uniform_int(1, 20));
    const auto sat = completion_times_satisfier(ct, budget);
    REQUIRE(cost(ct, sat) <= 2.0 * budget + 1e-9);
    std::size_t covered = 0;
    for (double s : satisfaction_times(ct, sat)) covered += std::isfinite(s);
    REQUIRE(covered >= best_budget_coverage(ct, budget));
  }
}

TEST_CASE("iterative ordering covers everything with the declared guarantee") {
  Rng rng(11);
  const auto sc = random_cover(rng, 6, 4);
  const auto result = iterative_ordering(sc);
  CHECK(result.theta == doctest::Approx(2.0));
  CHECK(result.guarantee == doctest::Approx(4.0));
  for (double s : satisfaction_times(sc, result.satisfier)) CHECK(std::isfinite(s));
  REQUIRE(result.budgets.size() >= 1);
  for (std::size_t i = 1; i < result.budgets.size(); ++i)
    CHECK(result.budgets[i] == doctest::Approx(2.0 * result.budgets[i - 1]));
}

TEST_CASE("iterative ordering on tsp uses theta 1+sqrt(2)") {
  const std::vector<std::vector<double>> dist{
      {0.0, 1.0, 2.0, 2.5}, {1.0, 0.0, 1.5, 2.0}, {2.0, 1.5, 0.0, 1.0}, {2.5, 2.0, 1.0, 0.0}};
  const auto tsp = make_tsp(dist, 0);
  const auto result = iterative_ordering(tsp);
  CHECK(result.theta == doctest::Approx(1.0 + std::sqrt(2.0)));
  CHECK(result.guarantee == doctest::Approx(3.0 + 2.0 * std::sqrt(2.0)));
  for (double s : satisfaction_times(tsp, result.satisfier)) CHECK(std::isfinite(s));
}

TEST_CASE("iterative ordering meets the factor-4 bound on a small cover") {
  Rng rng(13);
  for (int t = 0; t < 5; ++t) {
    const auto sc = random_cover(rng, 6, 4);
    const auto result = iterative_ordering(sc);
    const auto times = satisfaction_times(sc, result.satisfier);
    const auto best = best_topk_satisfaction(sc);
    for (std::size_t k = 1; k <= times.size(); ++k)
      REQUIRE(top_k_norm(times, k) <= 4.0 * best[k - 1] + 1e-9);
  }
}
