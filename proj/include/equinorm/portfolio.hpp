#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "equinorm/norms.hpp"
#include "equinorm/rng.hpp"

namespace equinorm {

// Explicit list of candidate cost vectors, all of the same dimension.
struct FiniteDomain {
  std::vector<CostVector> vectors;
  std::vector<std::string> labels;  // optional, empty or one per vector

  std::size_t dim() const;
  void validate() const;
};

// A set of solutions together with the approximation factor it claims: for
// every norm f in the claimed class, min over the portfolio of f is at most
// claimed_alpha times the domain optimum.
struct Portfolio {
  std::vector<CostVector> vectors;
  double claimed_alpha = 1.0;
  std::string claim_class = "Ord";  // "Top", "Ord", or "Sym"
  std::string sym_note;             // symbolic statement for Sym claims
  std::vector<std::string> provenance;
};

// Families of ordered norms used by certification routines.
struct NormFamily {
  enum class Kind { AllTopK, OrderedSet, OrderedSampled };
  Kind kind = Kind::AllTopK;
  std::vector<WeightVector> weights;  // OrderedSet extras
  int sample_count = 0;               // OrderedSampled extras
  std::uint64_t seed = 0;

  static NormFamily all_top_k();
  static NormFamily ordered_set(std::vector<WeightVector> ws);
  static NormFamily ordered_sampled(int count, std::uint64_t seed);
};

struct MinNormResult {
  std::size_t index = 0;  // first index attaining the minimum
  double value = 0.0;
};

MinNormResult brute_force_min_norm(const FiniteDomain& domain, const WeightVector& w);

// Exact max over k of (min over portfolio of top_k) / (min over domain of
// top_k); 0/0 counts as 1 and positive/0 as +infinity.
double certify_topk_ratio(const Portfolio& portfolio, const FiniteDomain& domain);

// Sampled lower bound on the Ord ratio: max of the portfolio ratio over all d
// top-k weights plus the family's weights (given or sampled).
double estimate_ordered_ratio(const Portfolio& portfolio, const FiniteDomain& domain,
                              const NormFamily& family);

// x2 must refine x1 (every vector of x2 appears in x1); factors multiply.
Portfolio compose_sequential(const Portfolio& x1, const Portfolio& x2);

// Same dimension and same claimed factor; vectors concatenated and deduped.
Portfolio union_portfolios(const std::vector<Portfolio>& parts);

// (1+eps) portfolio for all symmetric monotonic norms over a finite domain:
// restrict to the sublevel set of d times the min-max value, bucket by
// quantized top-c_i sums on a geometric index grid, keep one representative
// per bucket (the lexicographically smallest sorted vector).
Portfolio bucket_portfolio(const FiniteDomain& domain, double epsilon);

// Hard instance showing portfolios for all ordered norms need many vectors:
// one cost vector x(a) and weight w(a) per member of a maximum antichain of
// step sequences; ||x(a)||_(w(a)) = levels + 1 while mismatched pairs exceed
// the block base.
struct AntichainInstance {
  FiniteDomain domain;
  std::vector<WeightVector> weights;
  std::vector<std::vector<int>> sequences;
  long long base = 0;  // S
  int levels = 0;      // L
  bool exact = true;   // false when the level-slice heuristic picked the antichain
};
AntichainInstance antichain_hard_instance(int levels, long long base, std::size_t dim_cap = 1000000);

// Random nonincreasing nonnegative weight vector (sorted uniforms).
WeightVector sample_weight_vector(std::size_t dim, Rng& rng);

}  // namespace equinorm
