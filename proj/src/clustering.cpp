#include "equinorm/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "equinorm/errors.hpp"

namespace equinorm::clustering {

namespace {

double radius_slack(double r) { return 1e-9 * (1.0 + std::abs(r)); }

std::vector<char> resolve_allowed(const Metric& metric, const std::vector<char>& allowed) {
  if (allowed.empty()) return std::vector<char>(metric.size(), 1);
  if (allowed.size() != metric.size()) throw ValidationError("allowed mask size must match point count");
  bool any = false;
  for (char c : allowed) any = any || c;
  if (!any) throw ValidationError("allowed mask permits no facility");
  return allowed;
}

std::vector<double> candidate_radii(const Metric& metric) {
  std::set<double> values{0.0};
  for (const auto& row : metric.dist) values.insert(row.begin(), row.end());
  return {values.begin(), values.end()};
}

}  // namespace

Metric make_metric(std::vector<std::vector<double>> dist) {
  const std::size_t n = dist.size();
  if (n == 0) throw ValidationError("metric must be nonempty");
  double scale = 0.0;
  for (const auto& row : dist) {
    if (row.size() != n) throw ValidationError("metric must be square");
    for (double v : row) {
      if (!(v >= 0.0) || !std::isfinite(v)) throw ValidationError("distances must be nonnegative and finite");
      scale = std::max(scale, v);
    }
  }
  const double tol = 1e-9 * (1.0 + scale);
  for (std::size_t i = 0; i < n; ++i) {
    if (dist[i][i] != 0.0) throw ValidationError("metric diagonal must be zero");
    for (std::size_t j = 0; j < n; ++j) {
      if (std::abs(dist[i][j] - dist[j][i]) > tol) throw ValidationError("metric must be symmetric");
      for (std::size_t l = 0; l < n; ++l)
        if (dist[i][j] > dist[i][l] + dist[l][j] + tol)
          throw ValidationError("metric violates the triangle inequality");
    }
  }
  return {std::move(dist)};
}

CostVector distance_vector(const Metric& metric, const FacilitySet& f) {
  if (f.open.empty()) throw ValidationError("distance_vector: no open facility");
  CostVector out(metric.size());
  for (std::size_t j = 0; j < metric.size(); ++j) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t c : f.open) {
      if (c >= metric.size()) throw ValidationError("distance_vector: facility out of range");
      best = std::min(best, metric.dist[j][c]);
    }
    out[j] = best;
  }
  return out;
}

std::size_t ball_coverage(const Metric& metric, const FacilitySet& f, double radius) {
  if (f.open.empty()) return 0;
  const CostVector x = distance_vector(metric, f);
  std::size_t count = 0;
  for (double v : x)
    if (v <= radius + radius_slack(radius)) ++count;
  return count;
}

FacilitySet partial_clustering_exhaustive(const Metric& metric, std::size_t k, double radius,
                                          const std::vector<char>& allowed) {
  if (k == 0) throw ValidationError("partial clustering needs k >= 1");
  const std::vector<char> mask = resolve_allowed(metric, allowed);
  std::vector<std::size_t> points;
  for (std::size_t j = 0; j < metric.size(); ++j)
    if (mask[j]) points.push_back(j);
  k = std::min(k, points.size());

  double combos = 1.0;
  for (std::size_t i = 0; i < k; ++i)
    combos *= static_cast<double>(points.size() - i) / static_cast<double>(i + 1);
  if (combos > 1e6) throw SizeCapError("partial_clustering_exhaustive: too many facility subsets");

  const double limit = radius + radius_slack(radius);
  std::vector<std::size_t> pick(k);
  for (std::size_t i = 0; i < k; ++i) pick[i] = i;
  std::vector<std::size_t> best_pick = pick;
  std::size_t best_cover = 0;
  bool first = true;
  while (true) {
    std::size_t cover = 0;
    for (std::size_t j = 0; j < metric.size(); ++j) {
      double d = std::numeric_limits<double>::infinity();
      for (std::size_t i : pick) d = std::min(d, metric.dist[j][points[i]]);
      if (d <= limit) ++cover;
    }
    if (first || cover > best_cover) {
      best_cover = cover;
      best_pick = pick;
      first = false;
    }
    // next k-combination
    std::size_t i = k;
    bool advanced = false;
    while (i > 0) {
      --i;
      if (pick[i] != i + points.size() - k) {
        ++pick[i];
        for (std::size_t t = i + 1; t < k; ++t) pick[t] = pick[t - 1] + 1;
        advanced = true;
        break;
      }
    }
    if (!advanced) break;
  }

  FacilitySet out;
  for (std::size_t i : best_pick) out.open.push_back(points[i]);
  std::sort(out.open.begin(), out.open.end());
  return out;
}

FacilitySet partial_clustering_greedy3(const Metric& metric, std::size_t k, double radius,
                                       const std::vector<char>& allowed) {
  if (k == 0) throw ValidationError("partial clustering needs k >= 1");
  const std::vector<char> mask = resolve_allowed(metric, allowed);
  const double near = radius + radius_slack(radius);
  const double far = 3.0 * radius + radius_slack(3.0 * radius);

  FacilitySet out;
  std::vector<char> covered(metric.size(), 0);
  for (std::size_t pick = 0; pick < k; ++pick) {
    std::size_t best = metric.size();
    std::size_t best_gain = 0;
    for (std::size_t c = 0; c < metric.size(); ++c) {
      if (!mask[c]) continue;
      std::size_t gain = 0;
      for (std::size_t j = 0; j < metric.size(); ++j)
        if (!covered[j] && metric.dist[j][c] <= near) ++gain;
      if (gain > best_gain) {
        best_gain = gain;
        best = c;
      }
    }
    if (best == metric.size()) break;  // nothing new within the radius
    out.open.push_back(best);
    for (std::size_t j = 0; j < metric.size(); ++j)
      if (metric.dist[j][best] <= far) covered[j] = 1;
  }
  if (out.open.empty()) {
    // Nothing gained even once (radius may be tiny); open the first allowed
    // point so the facility set is never empty.
    for (std::size_t c = 0; c < metric.size(); ++c)
      if (mask[c]) {
        out.open.push_back(c);
        break;
      }
  }
  std::sort(out.open.begin(), out.open.end());
  return out;
}

ClusteringResult iterative_clustering(const Metric& metric, std::size_t k, double eps,
                                      ClusterMode mode, const std::vector<char>& allowed) {
  if (!(eps > 0.0 && eps <= 1.0)) throw ValidationError("iterative_clustering: eps must lie in (0, 1]");
  if (k == 0) throw ValidationError("iterative_clustering: k must be >= 1");
  const std::size_t n = metric.size();
  const std::vector<char> mask = resolve_allowed(metric, allowed);

  ClusteringResult out;
  out.k = k;
  out.internal_eps = (mode == ClusterMode::Exact) ? eps / 2.0 : eps / 6.0;

  if (eps <= 1.0 / static_cast<double>(n) + 1e-15) {
    for (std::size_t j = 0; j < n; ++j)
      if (mask[j]) out.open.open.push_back(j);
    out.all_points = true;
    return out;
  }

  const std::vector<double> radii = candidate_radii(metric);
  auto run = [&](double r) {
    return mode == ClusterMode::Exact ? partial_clustering_exhaustive(metric, k, r, mask)
                                      : partial_clustering_greedy3(metric, k, r, mask);
  };

  if (mode == ClusterMode::Exact) {
    // k-center optimum: smallest candidate radius with full coverage.
    std::size_t lo = 0, hi = radii.size() - 1;
    while (lo < hi) {
      const std::size_t mid = (lo + hi) / 2;
      if (ball_coverage(metric, run(radii[mid]), radii[mid]) == n) hi = mid;
      else lo = mid + 1;
    }
    out.anchor = radii[lo];
  } else {
    // Smallest candidate radius whose greedy run covers everything within 3r;
    // this is at most the k-center optimum (greedy success is not monotone in
    // the radius, so scan instead of bisecting).
    for (double r : radii) {
      if (ball_coverage(metric, run(r), 3.0 * r) == n) {
        out.anchor = r;
        break;
      }
    }
  }

  if (out.anchor == 0.0) {
    out.open = run(0.0);
    out.radii.push_back(0.0);
    return out;
  }

  const double ep = out.internal_eps;
  out.base_radius = ep * out.anchor / static_cast<double>(n);
  const double reach = (mode == ClusterMode::Exact ? 1.0 : 3.0) * static_cast<double>(n) / ep;
  const auto iterations = static_cast<std::size_t>(std::ceil(std::log(reach) / std::log1p(ep) - 1e-9));

  std::set<std::size_t> open;
  for (std::size_t l = 0; l <= iterations; ++l) {
    const double r = out.base_radius * std::pow(1.0 + ep, static_cast<double>(l));
    const FacilitySet part = run(r);
    open.insert(part.open.begin(), part.open.end());
    out.radii.push_back(r);
  }
  out.open.open.assign(open.begin(), open.end());
  return out;
}

UflPortfolio ufl_portfolio(const Metric& metric) {
  UflPortfolio out;
  const std::size_t n = metric.size();
  for (std::size_t k = 1;; k *= 2) {
    const std::size_t kk = std::min(k, n);
    ClusteringResult r = iterative_clustering(metric, kk, 1.0, ClusterMode::Greedy3);
    out.k_values.push_back(kk);
    out.distances.push_back(distance_vector(metric, r.open));
    out.facilities.push_back(std::move(r.open));
    if (k >= n) break;
  }
  return out;
}

double ufl_objective(const Metric& metric, const FacilitySet& f, const WeightVector& w) {
  return static_cast<double>(f.open.size()) + ordered_norm(distance_vector(metric, f), w);
}

Metric star_metric(std::size_t leaves) {
  if (leaves == 0) throw ValidationError("star_metric: need at least one leaf");
  const double arm = std::sqrt(static_cast<double>(leaves));
  const std::size_t n = leaves + 1;
  std::vector<std::vector<double>> d(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 1; i < n; ++i) {
    d[0][i] = d[i][0] = arm;
    for (std::size_t j = 1; j < n; ++j)
      if (i != j) d[i][j] = 2.0 * arm;
  }
  return make_metric(std::move(d));
}

}  // namespace equinorm::clustering
