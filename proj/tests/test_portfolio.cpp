#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>
#include <vector>

#include "equinorm/errors.hpp"
#include "equinorm/norms.hpp"
#include "equinorm/portfolio.hpp"
#include "equinorm/rng.hpp"

using namespace equinorm;

namespace {

// Spike / flat / decay triple: x = sqrt(d) e1, y = all ones, z_i = d^{1/3}/sqrt(i).
FiniteDomain spike_flat_decay(std::size_t d) {
  CostVector x(d, 0.0), y(d, 1.0), z(d);
  x[0] = std::sqrt(static_cast<double>(d));
  const double c = std::cbrt(static_cast<double>(d));
  for (std::size_t i = 0; i < d; ++i) z[i] = c / std::sqrt(static_cast<double>(i + 1));
  FiniteDomain domain;
  domain.vectors = {x, y, z};
  domain.labels = {"spike", "flat", "decay"};
  return domain;
}

FiniteDomain random_domain(Rng& rng, std::size_t count, std::size_t d) {
  FiniteDomain domain;
  for (std::size_t i = 0; i < count; ++i) {
    CostVector v(d);
    for (auto& e : v) e = rng.uniform(0.0, 10.0);
    domain.vectors.push_back(std::move(v));
  }
  return domain;
}

}  // namespace

TEST_CASE("finite domain validation") {
  FiniteDomain d;
  CHECK_THROWS_AS(d.validate(), ValidationError);  // empty
  d.vectors = {{1.0, 2.0}, {3.0}};
  CHECK_THROWS_AS(d.validate(), ValidationError);  // ragged
  d.vectors = {{1.0, 2.0}, {3.0, 4.0}};
  d.labels = {"only-one"};
  CHECK_THROWS_AS(d.validate(), ValidationError);  // label count
  d.labels = {"a", "b"};
  CHECK_NOTHROW(d.validate());
  CHECK(d.dim() == 2);
}

TEST_CASE("brute-force min norm") {
  FiniteDomain domain;
  domain.vectors = {{3.0, 0.0}, {2.0, 2.0}};
  const auto top1 = brute_force_min_norm(domain, WeightVector::top_k(2, 1));
  CHECK(top1.index == 1);
  CHECK(top1.value == 2.0);
  const auto l1 = brute_force_min_norm(domain, WeightVector({1.0, 1.0}));
  CHECK(l1.index == 0);
  CHECK(l1.value == 3.0);
}

TEST_CASE("brute-force min norm on the spike/flat/decay triple") {
  const auto domain = spike_flat_decay(64);
  // Flat wins the top-1 norm (1 vs 8 vs 4), spike wins the full sum.
  const auto top1 = brute_force_min_norm(domain, WeightVector::top_k(64, 1));
  CHECK(top1.index == 1);
  CHECK(top1.value == 1.0);
  const auto l1 = brute_force_min_norm(domain, WeightVector::top_k(64, 64));
  CHECK(l1.index == 0);
  CHECK(l1.value == doctest::Approx(8.0));
}

TEST_CASE("top-k certificate hand values") {
  FiniteDomain domain;
  domain.vectors = {{3.0, 0.0}, {2.0, 2.0}};
  Portfolio all;
  all.vectors = domain.vectors;
  CHECK(certify_topk_ratio(all, domain) == 1.0);

  Portfolio spike_only;
  spike_only.vectors = {{3.0, 0.0}};
  // k=1: 3/2, k=2: 3/4.
  CHECK(certify_topk_ratio(spike_only, domain) == doctest::Approx(1.5));
}

TEST_CASE("top-k certificate zero conventions") {
  FiniteDomain zeros;
  zeros.vectors = {{0.0, 0.0}};
  Portfolio same;
  same.vectors = zeros.vectors;
  CHECK(certify_topk_ratio(same, zeros) == 1.0);

  Portfolio positive;
  positive.vectors = {{1.0, 0.0}};
  CHECK(std::isinf(certify_topk_ratio(positive, zeros)));
}

TEST_CASE("spike/flat pair is an exact top-k portfolio over the triple") {
  const auto domain = spike_flat_decay(64);
  Portfolio xy;
  xy.vectors = {domain.vectors[0], domain.vectors[1]};
  CHECK(certify_topk_ratio(xy, domain) == doctest::Approx(1.0).epsilon(1e-12));

  // The inverse-sqrt weight at d=64: spike evaluates to 8, flat to ~14.60,
  // decay to 4 * sum 1/i ~ 18.98, so the pair still matches the domain
  // optimum and the sampled ordered ratio stays at 1.
  std::vector<double> wv(64);
  for (std::size_t i = 0; i < 64; ++i) wv[i] = 1.0 / std::sqrt(static_cast<double>(i + 1));
  const WeightVector w(wv);
  CHECK(ordered_norm(domain.vectors[0], w) == doctest::Approx(8.0));
  CHECK(ordered_norm(domain.vectors[1], w) == doctest::Approx(14.602064).epsilon(1e-6));
  CHECK(ordered_norm(domain.vectors[2], w) == doctest::Approx(18.975564).epsilon(1e-6));
  const double ratio = estimate_ordered_ratio(xy, domain, NormFamily::ordered_set({w}));
  CHECK(ratio == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("ordered estimate dominates the top-k certificate") {
  Rng rng(23);
  for (int t = 0; t < 30; ++t) {
    const std::size_t d = 2 + static_cast<std::size_t>(rng.uniform_int(0, 5));
    const auto domain = random_domain(rng, 6, d);
    Portfolio half;
    half.vectors = {domain.vectors[0], domain.vectors[1], domain.vectors[2]};
    const double topk = certify_topk_ratio(half, domain);
    const double ord = estimate_ordered_ratio(half, domain, NormFamily::ordered_sampled(50, 5));
    REQUIRE(ord >= topk - 1e-12);
    REQUIRE(std::isfinite(ord));
  }
}

TEST_CASE("composition multiplies claimed factors") {
  Portfolio x1;
  x1.vectors = {{1.0, 0.0}, {0.0, 1.0}};
  x1.claimed_alpha = 2.0;
  Portfolio x2;
  x2.vectors = {{0.0, 1.0}};
  x2.claimed_alpha = 3.0;
  const auto composed = compose_sequential(x1, x2);
  CHECK(composed.claimed_alpha == doctest::Approx(6.0));
  CHECK(composed.vectors == x2.vectors);

  Portfolio stranger;
  stranger.vectors = {{5.0, 5.0}};
  stranger.claimed_alpha = 1.0;
  CHECK_THROWS_AS(compose_sequential(x1, stranger), ValidationError);
}

TEST_CASE("union concatenates and dedupes") {
  Portfolio a;
  a.vectors = {{1.0, 0.0}};
  a.claimed_alpha = 2.0;
  Portfolio b;
  b.vectors = {{0.0, 1.0}, {1.0, 0.0}};
  b.claimed_alpha = 2.0;
  const auto u = union_portfolios({a, b});
  CHECK(u.vectors.size() == 2);
  CHECK(u.claimed_alpha == 2.0);

  Portfolio c = b;
  c.claimed_alpha = 3.0;
  CHECK_THROWS_AS(union_portfolios({a, c}), ValidationError);
}

TEST_CASE("bucket portfolio basics") {
  FiniteDomain sym;
  sym.vectors = {{1.0, 0.0}, {0.0, 1.0}};
  const auto p = bucket_portfolio(sym, 0.5);
  CHECK(p.vectors.size() == 1);
  CHECK(p.claimed_alpha == doctest::Approx(1.5));
  CHECK(p.claim_class == "Sym");

  FiniteDomain one;
  one.vectors = {{2.0, 1.0}};
  const auto q = bucket_portfolio(one, 1.0);
  CHECK(q.vectors.size() == 1);
  CHECK(certify_topk_ratio(q, one) == 1.0);

  CHECK_THROWS_AS(bucket_portfolio(sym, 0.0), ValidationError);
  CHECK_THROWS_AS(bucket_portfolio(sym, -0.5), ValidationError);

  // Accuracy parameters above 1 are allowed; the claim just widens.
  const auto loose = bucket_portfolio(sym, 1.5);
  CHECK(loose.claimed_alpha == doctest::Approx(2.5));
  CHECK(certify_topk_ratio(loose, sym) <= 2.5 + 1e-9);
}

TEST_CASE("bucket portfolio meets its ratio on random domains") {
  Rng rng(29);
  for (int t = 0; t < 20; ++t) {
    const std::size_t d = 2 + static_cast<std::size_t>(rng.uniform_int(0, 6));
    const auto domain = random_domain(rng, 2 + static_cast<std::size_t>(rng.uniform_int(0, 18)), d);
    for (double eps : {0.5, 1.0}) {
      const auto p = bucket_portfolio(domain, eps);
      REQUIRE(certify_topk_ratio(p, domain) <= 1.0 + eps + 1e-9);
      REQUIRE(p.vectors.size() <= domain.vectors.size());
    }
  }
}

TEST_CASE("bucket representatives mutually majorize within 1+eps") {
  Rng rng(31);
  const double eps = 0.5;
  const auto domain = random_domain(rng, 30, 5);
  const auto p = bucket_portfolio(domain, eps);

  // Restriction used by the construction: sup-norm at most d times the
  // min-max value.
  double vstar = std::numeric_limits<double>::infinity();
  for (const auto& v : domain.vectors) vstar = std::min(vstar, top_k_norm(v, 1));
  const double cap = 5.0 * vstar;

  for (const auto& x : domain.vectors) {
    if (top_k_norm(x, 1) > cap * (1.0 + 1e-12)) continue;
    bool found = false;
    for (const auto& r : p.vectors) {
      bool mutual = true;
      for (std::size_t k = 1; k <= 5 && mutual; ++k) {
        const double tx = top_k_norm(x, k), tr = top_k_norm(r, k);
        mutual = tr <= (1.0 + eps) * tx + 1e-9 && tx <= (1.0 + eps) * tr + 1e-9;
      }
      if (mutual) {
        found = true;
        break;
      }
    }
    REQUIRE(found);
  }
}

TEST_CASE("antichain instance: smallest case") {
  const auto inst = antichain_hard_instance(1, 2);
  CHECK(inst.exact);
  CHECK(inst.levels == 1);
  CHECK(inst.base == 2);
  CHECK(inst.domain.vectors.size() == 1);
  CHECK(inst.weights.size() == 1);
  CHECK(inst.domain.dim() == 3);  // block sizes 1 + 2
  CHECK(ordered_norm(inst.domain.vectors[0], inst.weights[0]) == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("antichain instance: matched and crossed norms") {
  for (const auto& [levels, base] : std::vector<std::pair<int, long long>>{{2, 3}, {3, 4}, {4, 8}}) {
    const auto inst = antichain_hard_instance(levels, base);
    REQUIRE(inst.exact);
    const std::size_t count = inst.domain.vectors.size();
    REQUIRE(count == inst.weights.size());
    REQUIRE(count == inst.sequences.size());
    for (std::size_t a = 0; a < count; ++a) {
      REQUIRE(ordered_norm(inst.domain.vectors[a], inst.weights[a]) ==
              doctest::Approx(static_cast<double>(levels + 1)).epsilon(1e-12));
      for (std::size_t b = 0; b < count; ++b) {
        if (a == b) continue;
        REQUIRE(ordered_norm(inst.domain.vectors[b], inst.weights[a]) >
                static_cast<double>(base));
      }
    }
    // Pairwise incomparability of the step sequences.
    for (std::size_t a = 0; a < count; ++a)
      for (std::size_t b = a + 1; b < count; ++b) {
        bool a_below_somewhere = false, b_below_somewhere = false;
        for (std::size_t i = 0; i < inst.sequences[a].size(); ++i) {
          a_below_somewhere = a_below_somewhere || inst.sequences[a][i] < inst.sequences[b][i];
          b_below_somewhere = b_below_somewhere || inst.sequences[b][i] < inst.sequences[a][i];
        }
        REQUIRE(a_below_somewhere);
        REQUIRE(b_below_somewhere);
      }
  }
}

TEST_CASE("antichain instance: dimension cap") {
  CHECK_THROWS_AS(antichain_hard_instance(10, 8, 1000), SizeCapError);
}

TEST_CASE("sampled weights are valid and deterministic") {
  Rng a(99), b(99);
  for (int t = 0; t < 20; ++t) {
    const auto w1 = sample_weight_vector(6, a);
    const auto w2 = sample_weight_vector(6, b);
    REQUIRE(w1.entries() == w2.entries());
    for (std::size_t i = 0; i < w1.dim(); ++i) {
      REQUIRE(w1[i] >= 0.0);
      REQUIRE(w1[i] <= 1.0);
      if (i) REQUIRE(w1[i] <= w1[i - 1]);
    }
  }
}
