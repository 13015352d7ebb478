#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <vector>

#include "equinorm/errors.hpp"
#include "equinorm/mlij.hpp"
#include "equinorm/norms.hpp"
#include "equinorm/portfolio.hpp"
#include "equinorm/rng.hpp"

using namespace equinorm;
using namespace equinorm::mlij;

namespace {

MlijInstance random_instance(Rng& rng, std::size_t dmax, long long nmax) {
  const std::size_t d = 1 + static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(dmax) - 1));
  std::vector<double> p(d);
  for (auto& v : p) v = rng.uniform(1.0, 16.0);
  return MlijInstance::create(std::move(p), 1 + rng.uniform_int(0, nmax - 1));
}

}  // namespace

TEST_CASE("instance validation and sorting") {
  CHECK_THROWS_AS(MlijInstance::create({}, 3), ValidationError);
  CHECK_THROWS_AS(MlijInstance::create({1.0, 0.0}, 3), ValidationError);
  CHECK_THROWS_AS(MlijInstance::create({1.0}, 0), ValidationError);
  const auto inst = MlijInstance::create({2.0, 1.0, 4.0}, 5);
  CHECK(inst.machines() == 3);
  CHECK(inst.p == std::vector<double>{2.0, 1.0, 4.0});
  CHECK(inst.p_sorted == std::vector<double>{1.0, 2.0, 4.0});
}

TEST_CASE("load vector") {
  const auto inst = MlijInstance::create({1.0, 2.0}, 3);
  CHECK(load_vector(inst, Schedule{{2, 1}}) == CostVector{2.0, 2.0});
  CHECK(load_vector(inst, Schedule{{3, 0}}) == CostVector{3.0, 0.0});
  CHECK_THROWS_AS(load_vector(inst, Schedule{{1, 1}}), ValidationError);
}

TEST_CASE("equal-load vertices") {
  const auto inst = MlijInstance::create({1.0, 2.0, 2.0, 2.0}, 4);
  CHECK(vertex(inst, 1) == CostVector{4.0, 0.0, 0.0, 0.0});
  const auto full = vertex(inst, 4);
  for (double v : full) CHECK(v == doctest::Approx(1.6));
  // Vertex coordinates follow the sorted machine order, cheapest first,
  // regardless of where that machine sits in the input.
  const auto shuffled = MlijInstance::create({2.0, 1.0, 2.0, 2.0}, 4);
  CHECK(vertex(shuffled, 1) == CostVector{4.0, 0.0, 0.0, 0.0});
}

TEST_CASE("good vertices form a prefix") {
  const auto inst = MlijInstance::create({1.0, 2.0, 2.0, 2.0}, 4);
  CHECK(is_good_vertex(inst, 1));
  CHECK(is_good_vertex(inst, 2));   // load 8/3 >= 2
  CHECK(is_good_vertex(inst, 3));   // load 2 >= 2, boundary
  CHECK_FALSE(is_good_vertex(inst, 4));  // load 1.6 < 2
  CHECK(max_good_index(inst) == 3);

  Rng rng(3);
  for (int t = 0; t < 50; ++t) {
    const auto r = random_instance(rng, 6, 10);
    const std::size_t mg = max_good_index(r);
    REQUIRE(mg >= 1);
    for (std::size_t l = 1; l <= r.machines(); ++l)
      REQUIRE(is_good_vertex(r, l) == (l <= mg));
  }
}

TEST_CASE("rounding a good vertex") {
  const auto even = MlijInstance::create({1.0, 1.0}, 3);
  const auto s1 = round_good_vertex(even, 2);
  CHECK(s1.counts == std::vector<long long>{2, 1});  // tie goes to the lower index
  CHECK(load_vector(even, s1) == CostVector{2.0, 1.0});

  const auto uneven = MlijInstance::create({1.0, 2.0}, 3);
  const auto s2 = round_good_vertex(uneven, 2);
  CHECK(s2.counts == std::vector<long long>{2, 1});
  CHECK(load_vector(uneven, s2) == CostVector{2.0, 2.0});
}

TEST_CASE("rounding stays within half and double of the vertex") {
  Rng rng(5);
  for (int t = 0; t < 100; ++t) {
    const auto inst = random_instance(rng, 6, 10);
    const std::size_t mg = max_good_index(inst);
    for (std::size_t l = 1; l <= mg; ++l) {
      const auto x = vertex(inst, l);  // sorted coordinates
      const auto s = round_good_vertex(inst, l);
      const auto loads = load_vector(inst, s);  // input coordinates
      long long total = 0;
      for (long long cnt : s.counts) {
        REQUIRE(cnt >= 0);
        total += cnt;
      }
      REQUIRE(total == inst.n);
      for (std::size_t i = 0; i < inst.machines(); ++i) {
        const std::size_t at = inst.sorted_to_input[i];
        if (x[i] == 0.0) {
          REQUIRE(loads[at] == 0.0);
        } else {
          REQUIRE(s.counts[at] >= 1);
          REQUIRE(loads[at] >= x[i] / 2.0 - 1e-9);
          REQUIRE(loads[at] <= 2.0 * x[i] + 1e-9);
        }
      }
    }
  }
}

TEST_CASE("doubling transform") {
  CHECK(doubling_transform(MlijInstance::create({3.0}, 1)).p == std::vector<double>{4.0});
  // Exact log-scale midpoint rounds down.
  CHECK(doubling_transform(MlijInstance::create({std::sqrt(2.0)}, 1)).p == std::vector<double>{1.0});
  const auto fixed = doubling_transform(MlijInstance::create({1.0, 2.0, 4.0}, 5));
  CHECK(fixed.p == std::vector<double>{1.0, 2.0, 4.0});

  Rng rng(7);
  for (int t = 0; t < 100; ++t) {
    const auto inst = random_instance(rng, 6, 10);
    const auto dbl = doubling_transform(inst);
    for (std::size_t i = 0; i < inst.machines(); ++i) {
      const double ratio = dbl.p[i] / inst.p[i];
      REQUIRE(ratio >= 1.0 / std::sqrt(2.0) - 1e-12);
      REQUIRE(ratio <= std::sqrt(2.0) + 1e-12);
      REQUIRE(std::exp2(std::round(std::log2(dbl.p[i]))) == doctest::Approx(dbl.p[i]));
    }
  }
}

TEST_CASE("portfolio selection follows the geometric index rule") {
  const auto inst = MlijInstance::create(std::vector<double>(16, 1.0), 16);
  const auto built = build_portfolio(inst, 8.0);
  CHECK(built.good_prefix == 16);
  CHECK(built.selected == std::vector<std::size_t>{1, 2, 4, 8, 16});
  CHECK(built.portfolio.vectors.size() == 5);
  CHECK(built.portfolio.claimed_alpha == 8.0);
  CHECK(built.portfolio.claim_class == "Ord");
  CHECK(built.schedules.size() == 5);

  CHECK_THROWS_AS(build_portfolio(inst, 4.0), ValidationError);
  CHECK_THROWS_AS(build_portfolio(inst, 0.5), ValidationError);
}

TEST_CASE("portfolio meets its factor against brute force") {
  Rng rng(11);
  for (int t = 0; t < 10; ++t) {
    const auto inst = random_instance(rng, 5, 8);
    const auto domain = brute_force_schedules(inst);
    for (double alpha : {5.0, 8.0}) {
      const auto built = build_portfolio(inst, alpha);
      const double topk = certify_topk_ratio(built.portfolio, domain);
      REQUIRE(topk <= alpha + 1e-9);
      const double ord =
          estimate_ordered_ratio(built.portfolio, domain, NormFamily::ordered_sampled(100, 17));
      REQUIRE(ord <= alpha + 1e-9);
      const double bound =
          1.0 + std::ceil(std::log(static_cast<double>(inst.machines())) / std::log(alpha / 4.0));
      REQUIRE(static_cast<double>(built.portfolio.vectors.size()) <= bound + 1e-9);
    }
  }
}

TEST_CASE("two-vector top-k portfolio on doubling instances") {
  Rng rng(13);
  for (int t = 0; t < 20; ++t) {
    auto base = random_instance(rng, 5, 8);
    const auto inst = doubling_transform(base);
    const auto two = topk_two_portfolio(inst);
    REQUIRE(two.portfolio.vectors.size() <= 2);
    REQUIRE(two.portfolio.claim_class == "Top");
    const auto domain = brute_force_schedules(inst);
    REQUIRE(certify_topk_ratio(two.portfolio, domain) <= 8.0 + 1e-9);
  }
}

TEST_CASE("brute force composition counts") {
  const auto d3 = brute_force_schedules(MlijInstance::create({1.0, 2.0, 3.0}, 4));
  CHECK(d3.vectors.size() == 15);
  const auto d2 = brute_force_schedules(MlijInstance::create({1.0, 2.0}, 2));
  CHECK(d2.vectors.size() == 3);
  CHECK_THROWS_AS(brute_force_schedules(MlijInstance::create({1.0, 2.0, 3.0}, 4), 10.0),
                  SizeCapError);
}

TEST_CASE("doubling instances have monotone optima") {
  // On powers of 2 sorted ascending, some minimizer of every ordered norm has
  // nonincreasing loads along the machine order (ties allowed).
  Rng rng(17);
  for (int t = 0; t < 10; ++t) {
    auto base = random_instance(rng, 4, 6);
    std::sort(base.p.begin(), base.p.end());
    const auto inst = doubling_transform(MlijInstance::create(base.p, base.n));
    const auto domain = brute_force_schedules(inst);
    const std::size_t d = inst.machines();
    for (int s = 0; s < 20; ++s) {
      const WeightVector w = sample_weight_vector(d, rng);
      const double best = brute_force_min_norm(domain, w).value;
      bool monotone_optimum = false;
      for (const auto& v : domain.vectors) {
        if (ordered_norm(v, w) > best + 1e-9 * (1.0 + best)) continue;
        bool monotone = true;
        for (std::size_t i = 0; i + 1 < d && monotone; ++i) monotone = v[i] >= v[i + 1] - 1e-12;
        if (monotone) {
          monotone_optimum = true;
          break;
        }
      }
      REQUIRE(monotone_optimum);
    }
  }
}

TEST_CASE("selection majorization between nearby good vertices") {
  Rng rng(19);
  for (int t = 0; t < 100; ++t) {
    const auto inst = random_instance(rng, 6, 10);
    const std::size_t mg = max_good_index(inst);
    for (double alpha : {5.0, 8.0}) {
      const double step = alpha / 4.0;
      for (std::size_t i = 1; i <= mg; ++i)
        for (std::size_t l = i; l <= mg && static_cast<double>(l) <= step * static_cast<double>(i);
             ++l) {
          auto scaled = vertex(inst, i);
          for (auto& v : scaled) v *= step;
          REQUIRE(majorizes(vertex(inst, l), scaled));
        }
    }
  }
}

TEST_CASE("lower-bound family: worked numbers at alpha 1") {
  const auto lb = lower_bound_instance(1.0, 100);
  CHECK(lb.base == 8);
  CHECK(lb.levels == 1);
  CHECK(lb.class_sizes == std::vector<long long>{1, 64});
  CHECK(lb.instance.machines() == 65);
  CHECK(lb.instance.n == 512);
  REQUIRE(lb.weights.size() == 1);
  CHECK(lb.weights[0].dim() == 65);
  for (std::size_t i = 0; i < 65; ++i) CHECK(lb.weights[0][i] == 1.0);

  // Concentrating everything on the fast machine gives the claimed value
  // n * (l+1) / sum of S^i exactly.
  const auto x0 = vertex(lb.instance, 1);
  CHECK(ordered_norm(x0, lb.weights[0]) == doctest::Approx(512.0));
  const auto hat = load_vector(lb.instance, round_good_vertex(lb.instance, 1));
  CHECK(ordered_norm(hat, lb.weights[0]) <= 2.0 * 512.0 + 1e-9);

  CHECK_THROWS_AS(lower_bound_instance(0.5, 100), ValidationError);
  CHECK_THROWS_AS(lower_bound_instance(1.0, 10), SizeCapError);
}

TEST_CASE("lower-bound family: two levels fit under a 1e5 machine cap") {
  const auto lb = lower_bound_instance(1.0, 100000);
  CHECK(lb.base == 16);
  CHECK(lb.levels == 2);
  CHECK(lb.instance.machines() == 65793);  // 1 + 256 + 65536
  CHECK(lb.instance.n == 16777216);        // 16^6
  CHECK(lb.weights.size() == 2);
  // w(1) is 1 on the fast machine and S^-2 elsewhere.
  CHECK(lb.weights[1][0] == 1.0);
  CHECK(lb.weights[1][1] == doctest::Approx(1.0 / 256.0));
  CHECK(lb.weights[1][65792] == doctest::Approx(1.0 / 256.0));
}
