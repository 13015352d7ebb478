#include "equinorm/solver/arrangement.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <set>

#include "equinorm/errors.hpp"
#include "equinorm/rng.hpp"

namespace equinorm::solver {

namespace {

constexpr double kGeomTol = 1e-12;

using Point2 = std::array<double, 2>;
using Polygon = std::vector<Point2>;

// Splits a convex polygon by the line a*u + b*v + c = 0; appends the parts
// that have positive area on each side.
void split_polygon(const Polygon& poly, double a, double b, double c, std::vector<Polygon>& out) {
  Polygon pos, neg;
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point2& p = poly[i];
    const Point2& q = poly[(i + 1) % n];
    const double sp = a * p[0] + b * p[1] + c;
    const double sq = a * q[0] + b * q[1] + c;
    if (sp >= -kGeomTol) pos.push_back(p);
    if (sp <= kGeomTol) neg.push_back(p);
    if ((sp > kGeomTol && sq < -kGeomTol) || (sp < -kGeomTol && sq > kGeomTol)) {
      const double t = sp / (sp - sq);
      pos.push_back({p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])});
      neg.push_back(pos.back());
    }
  }
  auto area = [](const Polygon& g) {
    double s = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
      const auto& p = g[i];
      const auto& q = g[(i + 1) % g.size()];
      s += p[0] * q[1] - q[0] * p[1];
    }
    return std::abs(s) / 2.0;
  };
  if (pos.size() >= 3 && area(pos) > kGeomTol && neg.size() >= 3 && area(neg) > kGeomTol) {
    out.push_back(std::move(pos));
    out.push_back(std::move(neg));
  } else {
    out.push_back(poly);
  }
}

Point2 centroid(const Polygon& g) {
  double u = 0.0, v = 0.0;
  for (const auto& p : g) {
    u += p[0];
    v += p[1];
  }
  return {u / static_cast<double>(g.size()), v / static_cast<double>(g.size())};
}

std::vector<double> dirichlet(std::size_t r, Rng& rng) {
  std::vector<double> l(r);
  double sum = 0.0;
  for (double& v : l) {
    v = -std::log(1.0 - rng.uniform());
    sum += v;
  }
  for (double& v : l) v /= sum;
  return l;
}

std::vector<int> sign_vector(const std::vector<std::vector<double>>& normals, const std::vector<double>& l) {
  std::vector<int> s(normals.size());
  for (std::size_t h = 0; h < normals.size(); ++h) {
    double d = 0.0;
    for (std::size_t i = 0; i < l.size(); ++i) d += normals[h][i] * l[i];
    s[h] = d > 0 ? 1 : (d < 0 ? -1 : 0);
  }
  return s;
}

}  // namespace

Arrangement arrangement_regions(const std::vector<std::vector<double>>& normals, std::size_t r,
                                std::uint64_t seed, int samples) {
  if (r == 0) throw ValidationError("arrangement_regions: dimension must be >= 1");
  for (const auto& h : normals)
    if (h.size() != r) throw ValidationError("arrangement_regions: normal dimension mismatch");

  Arrangement result;
  if (r == 1) {
    result.points = {{1.0}};
    return result;
  }

  if (r == 2) {
    // lambda = (t, 1 - t); crossing t from n1*t + n2*(1-t) = 0.
    std::vector<double> cuts;
    for (const auto& h : normals) {
      const double den = h[0] - h[1];
      if (std::abs(den) < kGeomTol) continue;
      const double t = -h[1] / den;
      if (t > kGeomTol && t < 1.0 - kGeomTol) cuts.push_back(t);
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end(),
                           [](double a, double b) { return std::abs(a - b) < kGeomTol; }),
               cuts.end());
    std::vector<double> knots{0.0};
    knots.insert(knots.end(), cuts.begin(), cuts.end());
    knots.push_back(1.0);
    for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
      const double t = (knots[i] + knots[i + 1]) / 2.0;
      result.points.push_back({t, 1.0 - t});
    }
    return result;
  }

  if (r == 3) {
    // Parametrize by (u, v) with lambda = (u, v, 1-u-v); the simplex becomes
    // the triangle (0,0), (1,0), (0,1) and each hyperplane a line.
    std::vector<Polygon> cells{{{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}}};
    for (const auto& h : normals) {
      const double a = h[0] - h[2];
      const double b = h[1] - h[2];
      const double c = h[2];
      if (std::abs(a) < kGeomTol && std::abs(b) < kGeomTol) continue;
      std::vector<Polygon> next;
      next.reserve(cells.size() * 2);
      for (const auto& cell : cells) split_polygon(cell, a, b, c, next);
      cells = std::move(next);
    }
    for (const auto& cell : cells) {
      const Point2 c = centroid(cell);
      result.points.push_back({c[0], c[1], 1.0 - c[0] - c[1]});
    }
    return result;
  }

  // r >= 4: sampling plus a one-hyperplane adjacency walk.
  result.complete = false;
  Rng rng(seed);
  std::set<std::vector<int>> seen;
  std::vector<std::vector<double>> reps;
  auto consider = [&](const std::vector<double>& l) {
    for (double v : l)
      if (v < 0.0) return;
    auto s = sign_vector(normals, l);
    if (std::find(s.begin(), s.end(), 0) != s.end()) return;
    if (seen.insert(std::move(s)).second) reps.push_back(l);
  };
  for (int it = 0; it < samples; ++it) consider(dirichlet(r, rng));
  // Walk: push each representative slightly across each hyperplane.
  const std::size_t base = reps.size();
  for (std::size_t i = 0; i < base; ++i) {
    for (const auto& h : normals) {
      double d = 0.0, nn = 0.0;
      for (std::size_t j = 0; j < r; ++j) {
        d += h[j] * reps[i][j];
        nn += h[j] * h[j];
      }
      if (nn < kGeomTol) continue;
      std::vector<double> q(reps[i]);
      double sum = 0.0;
      for (std::size_t j = 0; j < r; ++j) {
        q[j] -= 2.0 * d / nn * h[j];
        if (q[j] < 0.0) q[j] = 0.0;
        sum += q[j];
      }
      if (sum <= 0.0) continue;
      for (double& v : q) v /= sum;
      consider(q);
    }
  }
  result.points = std::move(reps);
  return result;
}

}  // namespace equinorm::solver
