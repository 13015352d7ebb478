#pragma once

#include <cstdint>
#include <vector>

#include "equinorm/portfolio.hpp"

namespace equinorm::covering {

// {x >= 0 : Ax >= 1} with A entrywise nonnegative; the right side is
// normalized to all-ones on construction.
struct CoveringPolyhedron {
  std::vector<std::vector<double>> a;  // r rows, d columns

  std::size_t rows() const { return a.size(); }
  std::size_t cols() const { return a.empty() ? 0 : a.front().size(); }
};

// Drops rows with b_i = 0 and divides the rest by b_i.  A kept row with no
// positive entry makes the polyhedron empty.
CoveringPolyhedron normalize(const std::vector<std::vector<double>>& a, const std::vector<double>& b);

// Per row: entries below max/mu (mu = 3 d^2 / eps) become 0, the rest snap
// down onto the geometric grid (max/mu) * (1+eps/2)^l.  The result is <= A
// entrywise, so feasibility is only tightened; every point x of the original
// polyhedron has the witness sparsify_witness(x, eps) inside the sparsified
// one with top-k sums inflated by at most (1+eps).
CoveringPolyhedron sparsify(const CoveringPolyhedron& p, double eps);
CostVector sparsify_witness(const CostVector& x, double eps);

// Distinct entry values per row (zero counted when present).
std::vector<std::size_t> row_distinct_values(const CoveringPolyhedron& p);

struct ColumnGroups {
  std::vector<std::vector<std::size_t>> groups;  // partition of [d], members sorted
  std::vector<std::size_t> group_of;             // column -> group index

  std::size_t count() const { return groups.size(); }
};

// Exact-equality grouping of columns; group order follows first appearance.
ColumnGroups group_columns(const CoveringPolyhedron& p);

// Group indices listed by decreasing common column value of A^T lambda.
using ReducedOrder = std::vector<std::size_t>;

struct ReducedOrderSet {
  std::vector<ReducedOrder> orders;
  // Exact for r <= 3 (hyperplane arrangement over the simplex); sampled and
  // possibly incomplete for r >= 4.
  bool complete = true;
};

// Every order realized by A^T lambda, lambda in the r-simplex, off the tie
// hyperplanes.  Ties are resolved by adjacent strict regions: chain
// constraints in vertex enumeration are non-strict, so boundary vertices are
// still produced.
ReducedOrderSet enumerate_reduced_orders(const CoveringPolyhedron& p, const ColumnGroups& groups,
                                         std::uint64_t seed = 0);

// Vertices of the polyhedron restricted to group-equal coordinates obeying
// z_{rho(1)} >= ... >= z_{rho(m)} >= 0, expanded back to d coordinates.
// Enumerates all m-subsets of the r+m constraints, solves each square system
// and keeps feasible solutions (slack >= -1e-8); count <= C(m+r, r).
std::vector<CostVector> vertices_for_order(const CoveringPolyhedron& p, const ColumnGroups& groups,
                                           const ReducedOrder& rho);

struct CoveringPortfolio {
  Portfolio portfolio;
  ReducedOrderSet orders;
  std::vector<std::size_t> vertices_per_order;
  std::size_t group_count = 0;
  // Sparsification only serves to bound the number of distinct columns; when
  // the input matrix already groups at least as coarsely we keep it exact.
  bool used_sparsified = false;
  std::vector<std::size_t> distinct_values_per_row;  // of the working matrix
};

// Union of per-order vertices over all enumerated reduced orders; factor
// (1+eps) for every ordered norm.
CoveringPortfolio build_portfolio(const CoveringPolyhedron& p, double eps, std::uint64_t seed = 0);

struct OrderedNormOptimum {
  CostVector x;
  double value = 0.0;
};

// min ||x||_(w) over the polyhedron, via the level-set LP
//   min sum_k (w_k - w_{k+1}) (k t_k + sum_j s_kj),  s_kj >= x_j - t_k.
OrderedNormOptimum lp_min_ordered_norm(const CoveringPolyhedron& p, const WeightVector& w);

// ||A^T lambda||*_(w) for lambda in the r-simplex; for any feasible x,
// value * ||x||_(w) >= 1.
double dual_objective(const CoveringPolyhedron& p, const std::vector<double>& lambda,
                      const WeightVector& w);

}  // namespace equinorm::covering
