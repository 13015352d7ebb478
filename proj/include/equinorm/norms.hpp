#pragma once

#include <cstddef>
#include <vector>

namespace equinorm {

// Default relative tolerance for value comparisons.
inline constexpr double kRelTol = 1e-9;

using CostVector = std::vector<double>;

// Nonincreasing, nonnegative, not identically zero weights.  ||x||_(w) is the
// dot product of w with the entries of x sorted in nonincreasing order.
// Construction validates monotonicity within tolerance and then renormalizes
// with a running minimum so the stored entries are exactly nonincreasing.
class WeightVector {
 public:
  explicit WeightVector(std::vector<double> entries);

  // Weight (1,...,1,0,...,0) with k ones: ||x||_(w) = sum of k largest entries.
  static WeightVector top_k(std::size_t dim, std::size_t k);

  const std::vector<double>& entries() const { return entries_; }
  std::size_t dim() const { return entries_.size(); }
  double operator[](std::size_t i) const { return entries_[i]; }

 private:
  std::vector<double> entries_;
};

// Entries of x sorted nonincreasing.
std::vector<double> sorted_desc(const CostVector& x);

// Prefix sums of sorted_desc(x); entry k-1 equals top_k_norm(x, k).
std::vector<double> topk_prefix_sums(const CostVector& x);

double top_k_norm(const CostVector& x, std::size_t k);
double ordered_norm(const CostVector& x, const WeightVector& w);

// Dual ordered norm max_k top_k(y)/top_k(w).  The primary entry point scans
// only the boundaries of the level sets of sorted y (plus k = d), which is
// where the maximum is attained; the _allk variant scans every k and exists
// as the reference oracle.
double dual_ordered_norm(const CostVector& y, const WeightVector& w);
double dual_ordered_norm_allk(const CostVector& y, const WeightVector& w);

// True iff top_k(x) <= top_k(y) + tol for every k, tol = 1e-9 * (1 + ||y||_1).
// In that case every symmetric monotonic norm of x is at most that of y.
bool majorizes(const CostVector& x, const CostVector& y);

struct CauchySchwarzReport {
  bool holds = false;         // ||x||_(w) * ||y||*_(w) >= x.y (within tolerance)
  bool tight = false;         // equality conditions met
  bool shared_order = false;  // some permutation sorts both x and y nonincreasing
  double norm_product = 0.0;
  double inner_product = 0.0;
  // First k where neither "x_sorted has a flat step at k" nor "dual max
  // attained at k" holds; -1 when the alternative holds everywhere.
  int first_bad_k = -1;
};

// Checks x.y <= ||x||_(w) * ||y||*_(w) and reports whether the equality
// conditions hold: a shared sorting order, and for each k either the sorted x
// is flat at k (treating entry d+1 as 0) or k attains the dual maximum.
CauchySchwarzReport check_ordered_cauchy_schwarz(const CostVector& x, const CostVector& y,
                                                 const WeightVector& w);

}  // namespace equinorm
