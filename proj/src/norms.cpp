#include "equinorm/norms.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "equinorm/errors.hpp"

namespace equinorm {

namespace {

void check_dims(std::size_t a, std::size_t b, const char* what) {
  if (a != b) throw ValidationError(std::string(what) + ": dimension mismatch");
}

void check_nonempty(std::size_t d) {
  if (d == 0) throw ValidationError("vector must have dimension >= 1");
}

}  // namespace

WeightVector::WeightVector(std::vector<double> entries) : entries_(std::move(entries)) {
  check_nonempty(entries_.size());
  const double scale = 1.0 + std::abs(entries_.front());
  double prev = std::numeric_limits<double>::infinity();
  for (double& v : entries_) {
    if (v < -kRelTol * scale) throw ValidationError("weight entries must be nonnegative");
    if (v < 0) v = 0.0;
    if (v > prev + kRelTol * scale) throw ValidationError("weights must be nonincreasing");
    // Running minimum makes the stored vector exactly nonincreasing.
    v = std::min(v, prev);
    prev = v;
  }
  if (entries_.front() <= 0.0) throw ValidationError("weights must not be identically zero");
}

WeightVector WeightVector::top_k(std::size_t dim, std::size_t k) {
  check_nonempty(dim);
  if (k < 1 || k > dim) throw ValidationError("top_k weight: k out of range");
  std::vector<double> w(dim, 0.0);
  std::fill(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(k), 1.0);
  return WeightVector(std::move(w));
}

std::vector<double> sorted_desc(const CostVector& x) {
  check_nonempty(x.size());
  std::vector<double> s(x);
  std::sort(s.begin(), s.end(), std::greater<double>());
  return s;
}

std::vector<double> topk_prefix_sums(const CostVector& x) {
  std::vector<double> s = sorted_desc(x);
  double acc = 0.0;
  for (double& v : s) {
    acc += v;
    v = acc;
  }
  return s;
}

double top_k_norm(const CostVector& x, std::size_t k) {
  check_nonempty(x.size());
  if (k < 1 || k > x.size()) throw ValidationError("top_k_norm: k out of range");
  std::vector<double> s = sorted_desc(x);
  double acc = 0.0;
  for (std::size_t i = 0; i < k; ++i) acc += s[i];
  return acc;
}

double ordered_norm(const CostVector& x, const WeightVector& w) {
  check_dims(x.size(), w.dim(), "ordered_norm");
  std::vector<double> s = sorted_desc(x);
  double acc = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) acc += s[i] * w[i];
  return acc;
}

double dual_ordered_norm(const CostVector& y, const WeightVector& w) {
  check_dims(y.size(), w.dim(), "dual_ordered_norm");
  const std::size_t d = y.size();
  std::vector<double> ys = sorted_desc(y);
  double sy = 0.0, sw = 0.0, best = 0.0;
  for (std::size_t k = 0; k < d; ++k) {
    sy += ys[k];
    sw += w[k];
    // Level-set boundary: the sorted value strictly drops after k, or k = d.
    const bool boundary = (k + 1 == d) || (ys[k] > ys[k + 1]);
    if (boundary) best = std::max(best, sy / sw);  // sw >= w[0] > 0
  }
  return best;
}

double dual_ordered_norm_allk(const CostVector& y, const WeightVector& w) {
  check_dims(y.size(), w.dim(), "dual_ordered_norm");
  std::vector<double> ys = sorted_desc(y);
  double sy = 0.0, sw = 0.0, best = 0.0;
  for (std::size_t k = 0; k < ys.size(); ++k) {
    sy += ys[k];
    sw += w[k];
    best = std::max(best, sy / sw);
  }
  return best;
}

bool majorizes(const CostVector& x, const CostVector& y) {
  check_dims(x.size(), y.size(), "majorizes");
  std::vector<double> px = topk_prefix_sums(x);
  std::vector<double> py = topk_prefix_sums(y);
  const double tol = kRelTol * (1.0 + py.back());
  for (std::size_t k = 0; k < px.size(); ++k) {
    if (px[k] > py[k] + tol) return false;
  }
  return true;
}

CauchySchwarzReport check_ordered_cauchy_schwarz(const CostVector& x, const CostVector& y,
                                                 const WeightVector& w) {
  check_dims(x.size(), y.size(), "check_ordered_cauchy_schwarz");
  check_dims(x.size(), w.dim(), "check_ordered_cauchy_schwarz");
  const std::size_t d = x.size();

  CauchySchwarzReport rep;
  const double xnorm = ordered_norm(x, w);
  const double ynorm = dual_ordered_norm(y, w);
  rep.norm_product = xnorm * ynorm;
  double dot = 0.0;
  for (std::size_t i = 0; i < d; ++i) dot += x[i] * y[i];
  rep.inner_product = dot;
  const double scale = 1.0 + std::abs(rep.norm_product) + std::abs(dot);
  rep.holds = rep.norm_product >= dot - kRelTol * scale;

  // Condition 1: x and y are similarly ordered (some permutation sorts both).
  rep.shared_order = true;
  const double pair_tol = kRelTol * scale;
  for (std::size_t i = 0; i < d && rep.shared_order; ++i) {
    for (std::size_t j = i + 1; j < d; ++j) {
      if ((x[i] - x[j]) * (y[i] - y[j]) < -pair_tol) {
        rep.shared_order = false;
        break;
      }
    }
  }

  // Condition 2: for each k, the sorted x is flat at k or k attains the dual
  // maximum top_k(y)/top_k(w) = ||y||*_(w).
  std::vector<double> xs = sorted_desc(x);
  std::vector<double> ys = sorted_desc(y);
  const double xtol = kRelTol * (1.0 + xs.front());
  const double rtol = kRelTol * (1.0 + ynorm);
  double sy = 0.0, sw = 0.0;
  rep.first_bad_k = -1;
  for (std::size_t k = 0; k < d; ++k) {
    sy += ys[k];
    sw += w[k];
    const double next = (k + 1 < d) ? xs[k + 1] : 0.0;
    const bool flat = std::abs(xs[k] - next) <= xtol;
    const bool attains = std::abs(sy / sw - ynorm) <= rtol;
    if (!flat && !attains) {
      rep.first_bad_k = static_cast<int>(k) + 1;
      break;
    }
  }

  rep.tight = rep.holds && rep.shared_order && rep.first_bad_k == -1;
  return rep;
}

}  // namespace equinorm
