#pragma once

#include <cstdint>
#include <vector>

#include "equinorm/norms.hpp"

namespace equinorm::clustering {

// Symmetric nonnegative matrix with zero diagonal obeying the triangle
// inequality within relative tolerance.
struct Metric {
  std::vector<std::vector<double>> dist;

  std::size_t size() const { return dist.size(); }
};

Metric make_metric(std::vector<std::vector<double>> dist);

struct FacilitySet {
  std::vector<std::size_t> open;  // sorted point indices
};

// Per-point distance to the nearest open facility.
CostVector distance_vector(const Metric& metric, const FacilitySet& f);

// Points within the radius of some open facility (relative slack).
std::size_t ball_coverage(const Metric& metric, const FacilitySet& f, double radius);

// Exact maximum-coverage k facilities at the given radius; ties go to the
// lexicographically first subset.  An empty allowed mask permits every point.
FacilitySet partial_clustering_exhaustive(const Metric& metric, std::size_t k, double radius,
                                          const std::vector<char>& allowed = {});

// k greedy picks, each maximizing newly covered points within the radius;
// every pick then marks points within three radii as covered.  The output
// covers at least as many points within 3R as any k facilities cover within R.
FacilitySet partial_clustering_greedy3(const Metric& metric, std::size_t k, double radius,
                                       const std::vector<char>& allowed = {});

enum class ClusterMode { Exact, Greedy3 };

struct ClusteringResult {
  FacilitySet open;
  std::vector<double> radii;  // per-iteration radii; empty for the all-points branch
  double internal_eps = 0.0;
  double base_radius = 0.0;
  // Exact mode: the k-center optimum; greedy mode: the smallest candidate
  // radius whose greedy run covers everything within three radii.
  double anchor = 0.0;
  bool all_points = false;
  std::size_t k = 0;
};

// Union of partial clusterings on a geometric radius grid.  Exact mode runs
// the exhaustive partial clustering with internal eps/2 and is within (1+eps)
// of every per-norm k-facility optimum; greedy mode uses eps/6 and is within
// (3+eps).  Opens at most k per iteration.  eps <= 1/n opens all points.
ClusteringResult iterative_clustering(const Metric& metric, std::size_t k, double eps,
                                      ClusterMode mode, const std::vector<char>& allowed = {});

struct UflPortfolio {
  std::vector<FacilitySet> facilities;
  std::vector<CostVector> distances;  // distance vector per facility set
  std::vector<std::size_t> k_values;  // 1, 2, 4, ...
};

// Facility-location portfolio: greedy iterative clustering at k = 2^j for
// j = 0..ceil(log2 n), eps = 1; objectives are |F| + norm(distances).
UflPortfolio ufl_portfolio(const Metric& metric);

// |F| + ordered norm of the distance vector.
double ufl_objective(const Metric& metric, const FacilitySet& f, const WeightVector& w);

// Hub at index 0 and the given number of leaves at distance sqrt(leaves)
// from the hub (leaf to leaf twice that).
Metric star_metric(std::size_t leaves);

}  // namespace equinorm::clustering
