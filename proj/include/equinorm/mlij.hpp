#pragma once

#include <cstdint>
#include <vector>

#include "equinorm/portfolio.hpp"

namespace equinorm::mlij {

// Machines with speeds-as-sizes: scheduling n identical jobs, machine i takes
// load (number of jobs) * p_i.  Internal math runs on the nondecreasing
// sorted view; schedules and load vectors use the input machine order.
struct MlijInstance {
  std::vector<double> p;  // input order
  long long n = 0;
  std::vector<double> p_sorted;
  std::vector<std::size_t> sorted_to_input;

  static MlijInstance create(std::vector<double> p, long long n);
  std::size_t machines() const { return p.size(); }
};

struct Schedule {
  std::vector<long long> counts;  // input order, sums to n
};

CostVector load_vector(const MlijInstance& inst, const Schedule& s);

// Rounds every size to the nearest power of two in log scale; exact midpoints
// round down.  Loads of any schedule change by a factor in [1/sqrt(2), sqrt(2)].
MlijInstance doubling_transform(const MlijInstance& inst);

// Fractional equal-load point on the l cheapest machines (sorted coordinates):
// first l entries are n / sum_{i<=l} 1/p_i, the rest zero.
CostVector vertex(const MlijInstance& inst, std::size_t l);

// A vertex is good when its common load is at least p_l (sorted), i.e. every
// used machine would run at least one job.
bool is_good_vertex(const MlijInstance& inst, std::size_t l);

// Largest good index; good vertices form the prefix 1..L.
std::size_t max_good_index(const MlijInstance& inst);

// Deterministic rounding of a good vertex to an integral schedule: floor all
// machine counts, then give one extra job to the machines with the largest
// fractional parts (ties toward lower sorted index).  Loads stay within
// [x/2, 2x] entrywise.
Schedule round_good_vertex(const MlijInstance& inst, std::size_t l);

struct MlijPortfolio {
  Portfolio portfolio;  // load vectors for the ORIGINAL instance
  std::vector<Schedule> schedules;
  std::vector<std::size_t> selected;  // vertex indices on the doubling instance
  std::size_t good_prefix = 0;        // L of the doubling instance
};

// alpha-portfolio for every ordered norm (alpha > 4): doubling transform,
// geometric index selection l_j = min(ceil((alpha/4)^j), L), rounding.
MlijPortfolio build_portfolio(const MlijInstance& inst, double alpha);

// Two-vector portfolio {x(1), x(L)} after doubling: factor <= 4 for top-k
// norms against the good-vertex domain, <= 8 against all schedules of the
// doubling instance.
MlijPortfolio topk_two_portfolio(const MlijInstance& inst);

// Hard family: machine classes l = 0..L with S^{2l} machines of size S^l and
// n = S^{3L} jobs; weight w(l) distinguishes schedules concentrated on class l.
struct MlijLowerBound {
  MlijInstance instance;
  std::vector<WeightVector> weights;   // w(0..L-1)
  long long base = 0;                  // S
  int levels = 0;                      // L
  std::vector<long long> class_sizes;  // S^{2l}
};
MlijLowerBound lower_bound_instance(double alpha, std::size_t machine_cap);

// All load vectors of all schedules; guarded by a composition-count cap.
FiniteDomain brute_force_schedules(const MlijInstance& inst, double cap = 1e7);

}  // namespace equinorm::mlij
