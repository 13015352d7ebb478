#include "equinorm/covering.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <string>

#include "equinorm/errors.hpp"
#include "equinorm/solver/arrangement.hpp"
#include "equinorm/solver/linsys.hpp"
#include "equinorm/solver/lp.hpp"

namespace equinorm::covering {

namespace {

constexpr double kSlackTol = 1e-8;

double binom(std::size_t n, std::size_t k) {
  if (k > n) return 0.0;
  k = std::min(k, n - k);
  double c = 1.0;
  for (std::size_t i = 1; i <= k; ++i) c *= static_cast<double>(n - k + i) / static_cast<double>(i);
  return c;
}

bool close_vectors(const std::vector<double>& a, const std::vector<double>& b) {
  double scale = 1.0, diff = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    scale = std::max(scale, std::abs(a[i]));
    diff = std::max(diff, std::abs(a[i] - b[i]));
  }
  return diff <= 1e-9 * scale;
}

bool next_combination(std::vector<std::size_t>& pick, std::size_t n) {
  const std::size_t m = pick.size();
  std::size_t i = m;
  while (i > 0) {
    --i;
    if (pick[i] != i + n - m) {
      ++pick[i];
      for (std::size_t j = i + 1; j < m; ++j) pick[j] = pick[j - 1] + 1;
      return true;
    }
  }
  return false;
}

}  // namespace

CoveringPolyhedron normalize(const std::vector<std::vector<double>>& a, const std::vector<double>& b) {
  if (a.empty() || a.front().empty()) throw ValidationError("covering matrix must be nonempty");
  if (b.size() != a.size()) throw ValidationError("right side length must match row count");
  const std::size_t d = a.front().size();
  CoveringPolyhedron p;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].size() != d) throw ValidationError("covering matrix rows must have equal length");
    for (double v : a[i])
      if (!(v >= 0.0) || !std::isfinite(v)) throw ValidationError("covering matrix must be nonnegative and finite");
    if (!(b[i] >= 0.0) || !std::isfinite(b[i])) throw ValidationError("right side must be nonnegative and finite");
    if (b[i] == 0.0) continue;
    std::vector<double> row(d);
    bool positive = false;
    for (std::size_t j = 0; j < d; ++j) {
      row[j] = a[i][j] / b[i];
      positive = positive || row[j] > 0.0;
    }
    if (!positive) throw InfeasibleError("covering row with positive demand and no positive coefficient");
    p.a.push_back(std::move(row));
  }
  if (p.a.empty()) throw ValidationError("all covering rows were dropped (b = 0)");
  return p;
}

CoveringPolyhedron sparsify(const CoveringPolyhedron& p, double eps) {
  if (!(eps > 0.0 && eps <= 1.0)) throw ValidationError("sparsify: eps must lie in (0, 1]");
  const double d = static_cast<double>(p.cols());
  const double mu = 3.0 * d * d / eps;
  const double step = 1.0 + eps / 2.0;
  CoveringPolyhedron out;
  out.a.reserve(p.rows());
  for (const auto& row : p.a) {
    const double amax = *std::max_element(row.begin(), row.end());
    const double floor_value = amax / mu;
    std::vector<double> r(row.size(), 0.0);
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (row[j] < floor_value) continue;
      // +1e-12 keeps entries already on the grid from dropping a level.
      const double l = std::floor(std::log(row[j] / floor_value) / std::log(step) + 1e-12);
      r[j] = floor_value * std::pow(step, l);
    }
    out.a.push_back(std::move(r));
  }
  return out;
}

CostVector sparsify_witness(const CostVector& x, double eps) {
  if (x.empty()) throw ValidationError("sparsify_witness: empty vector");
  double l1 = 0.0;
  for (double v : x) l1 += std::abs(v);
  const double shift = eps * l1 / (3.0 * static_cast<double>(x.size()));
  CostVector out(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) out[j] = (1.0 + eps / 2.0) * (x[j] + shift);
  return out;
}

std::vector<std::size_t> row_distinct_values(const CoveringPolyhedron& p) {
  std::vector<std::size_t> counts;
  counts.reserve(p.rows());
  for (const auto& row : p.a) {
    std::set<double> values(row.begin(), row.end());
    counts.push_back(values.size());
  }
  return counts;
}

ColumnGroups group_columns(const CoveringPolyhedron& p) {
  ColumnGroups g;
  g.group_of.assign(p.cols(), 0);
  std::map<std::vector<double>, std::size_t> seen;
  for (std::size_t j = 0; j < p.cols(); ++j) {
    std::vector<double> col(p.rows());
    for (std::size_t i = 0; i < p.rows(); ++i) col[i] = p.a[i][j];
    auto [it, inserted] = seen.emplace(std::move(col), g.groups.size());
    if (inserted) g.groups.push_back({});
    g.group_of[j] = it->second;
    g.groups[it->second].push_back(j);
  }
  return g;
}

ReducedOrderSet enumerate_reduced_orders(const CoveringPolyhedron& p, const ColumnGroups& groups,
                                         std::uint64_t seed) {
  const std::size_t r = p.rows();
  const std::size_t m = groups.count();
  ReducedOrderSet out;
  if (m == 1) {
    out.orders.push_back({0});
    return out;
  }

  std::vector<std::vector<double>> normals;
  for (std::size_t g1 = 0; g1 < m; ++g1)
    for (std::size_t g2 = g1 + 1; g2 < m; ++g2) {
      std::vector<double> h(r);
      for (std::size_t i = 0; i < r; ++i)
        h[i] = p.a[i][groups.groups[g1].front()] - p.a[i][groups.groups[g2].front()];
      normals.push_back(std::move(h));
    }

  const solver::Arrangement arr = solver::arrangement_regions(normals, r, seed);
  out.complete = arr.complete;

  std::set<ReducedOrder> unique;
  for (const auto& lambda : arr.points) {
    std::vector<double> value(m, 0.0);
    for (std::size_t g = 0; g < m; ++g)
      for (std::size_t i = 0; i < r; ++i) value[g] += lambda[i] * p.a[i][groups.groups[g].front()];
    ReducedOrder rho(m);
    for (std::size_t g = 0; g < m; ++g) rho[g] = g;
    std::sort(rho.begin(), rho.end(), [&](std::size_t a, std::size_t b) {
      if (value[a] != value[b]) return value[a] > value[b];
      return a < b;
    });
    unique.insert(std::move(rho));
  }
  out.orders.assign(unique.begin(), unique.end());

  const double bound = std::pow(binom(m, 2), static_cast<double>(r) - 1.0) + 1.0;
  if (static_cast<double>(out.orders.size()) > bound)
    throw NumericError("enumerate_reduced_orders: region bound violated");
  return out;
}

std::vector<CostVector> vertices_for_order(const CoveringPolyhedron& p, const ColumnGroups& groups,
                                           const ReducedOrder& rho) {
  const std::size_t r = p.rows();
  const std::size_t m = groups.count();
  if (rho.size() != m) throw ValidationError("vertices_for_order: order size must equal group count");

  // Constraint list over z in R^m, each as (coeffs, rhs) meaning coeffs.z >= rhs.
  std::vector<std::vector<double>> cons;
  std::vector<double> rhs;
  for (std::size_t i = 0; i < r; ++i) {
    std::vector<double> c(m, 0.0);
    for (std::size_t g = 0; g < m; ++g)
      c[g] = p.a[i][groups.groups[g].front()] * static_cast<double>(groups.groups[g].size());
    cons.push_back(std::move(c));
    rhs.push_back(1.0);
  }
  for (std::size_t t = 0; t + 1 < m; ++t) {
    std::vector<double> c(m, 0.0);
    c[rho[t]] = 1.0;
    c[rho[t + 1]] = -1.0;
    cons.push_back(std::move(c));
    rhs.push_back(0.0);
  }
  {
    std::vector<double> c(m, 0.0);
    c[rho[m - 1]] = 1.0;
    cons.push_back(std::move(c));
    rhs.push_back(0.0);
  }

  const std::size_t total = cons.size();  // r + m
  if (binom(total, m) > 1e6) throw SizeCapError("vertices_for_order: too many tight-set candidates");

  std::vector<std::vector<double>> accepted;
  std::vector<std::size_t> pick(m);
  for (std::size_t i = 0; i < m; ++i) pick[i] = i;
  do {
    std::vector<std::vector<double>> mat(m, std::vector<double>(m));
    std::vector<double> v(m);
    for (std::size_t i = 0; i < m; ++i) {
      mat[i] = cons[pick[i]];
      v[i] = rhs[pick[i]];
    }
    if (auto z = solver::solve_square_system(mat, v)) {
      bool feasible = true;
      for (std::size_t i = 0; i < total && feasible; ++i) {
        double s = -rhs[i];
        for (std::size_t g = 0; g < m; ++g) s += cons[i][g] * (*z)[g];
        feasible = s >= -kSlackTol;
      }
      if (feasible) {
        bool dup = false;
        for (const auto& w : accepted) dup = dup || close_vectors(w, *z);
        if (!dup) accepted.push_back(std::move(*z));
      }
    }
  } while (next_combination(pick, total));

  std::vector<CostVector> out;
  out.reserve(accepted.size());
  for (const auto& z : accepted) {
    CostVector x(p.cols());
    for (std::size_t j = 0; j < p.cols(); ++j) x[j] = std::max(0.0, z[groups.group_of[j]]);
    out.push_back(std::move(x));
  }
  return out;
}

CoveringPortfolio build_portfolio(const CoveringPolyhedron& p, double eps, std::uint64_t seed) {
  if (!(eps > 0.0 && eps <= 1.0)) throw ValidationError("build_portfolio: eps must lie in (0, 1]");
  const ColumnGroups exact_groups = group_columns(p);
  const CoveringPolyhedron sparse = sparsify(p, eps);
  const ColumnGroups sparse_groups = group_columns(sparse);

  CoveringPortfolio out;
  out.used_sparsified = sparse_groups.count() < exact_groups.count();
  const CoveringPolyhedron& work = out.used_sparsified ? sparse : p;
  const ColumnGroups& groups = out.used_sparsified ? sparse_groups : exact_groups;
  out.group_count = groups.count();
  out.distinct_values_per_row = row_distinct_values(work);
  out.orders = enumerate_reduced_orders(work, groups, seed);

  out.portfolio.claimed_alpha = 1.0 + eps;
  out.portfolio.claim_class = "Ord";
  for (const auto& rho : out.orders.orders) {
    const auto verts = vertices_for_order(work, groups, rho);
    out.vertices_per_order.push_back(verts.size());
    std::string tag = "order (";
    for (std::size_t i = 0; i < rho.size(); ++i) tag += (i ? " " : "") + std::to_string(rho[i]);
    tag += ")";
    for (const auto& x : verts) {
      bool dup = false;
      for (const auto& y : out.portfolio.vectors) dup = dup || close_vectors(y, x);
      if (dup) continue;
      out.portfolio.vectors.push_back(x);
      out.portfolio.provenance.push_back(tag);
    }
  }
  if (!out.orders.complete)
    out.portfolio.sym_note = "reduced orders sampled, enumeration may be incomplete";
  return out;
}

OrderedNormOptimum lp_min_ordered_norm(const CoveringPolyhedron& p, const WeightVector& w) {
  const std::size_t d = p.cols();
  if (w.dim() != d) throw ValidationError("lp_min_ordered_norm: weight dimension mismatch");

  std::vector<std::size_t> active;  // k with w_k > w_{k+1} (1-indexed)
  for (std::size_t k = 1; k <= d; ++k) {
    const double next = (k == d) ? 0.0 : w[k];  // w[] is 0-indexed
    if (w[k - 1] > next) active.push_back(k);
  }

  // Variables: x (d), then per active k one t and d slacks s.
  const std::size_t vars = d + active.size() * (1 + d);
  solver::LinearProgram lp;
  lp.maximize = false;
  lp.objective.assign(vars, 0.0);
  for (std::size_t a = 0; a < active.size(); ++a) {
    const std::size_t k = active[a];
    const double delta = w[k - 1] - ((k == d) ? 0.0 : w[k]);
    const std::size_t t_index = d + a * (1 + d);
    lp.objective[t_index] = delta * static_cast<double>(k);
    for (std::size_t j = 0; j < d; ++j) lp.objective[t_index + 1 + j] = delta;
  }
  for (const auto& row : p.a) {
    solver::LinearProgram::Row cons;
    cons.coeffs.assign(vars, 0.0);
    for (std::size_t j = 0; j < d; ++j) cons.coeffs[j] = row[j];
    cons.rel = '>';
    cons.rhs = 1.0;
    lp.rows.push_back(std::move(cons));
  }
  for (std::size_t a = 0; a < active.size(); ++a) {
    const std::size_t t_index = d + a * (1 + d);
    for (std::size_t j = 0; j < d; ++j) {
      solver::LinearProgram::Row cons;
      cons.coeffs.assign(vars, 0.0);
      cons.coeffs[t_index + 1 + j] = 1.0;
      cons.coeffs[t_index] = 1.0;
      cons.coeffs[j] = -1.0;
      cons.rel = '>';
      cons.rhs = 0.0;
      lp.rows.push_back(std::move(cons));
    }
  }

  const solver::LpSolution sol = solver::solve_lp(lp);
  if (sol.status == solver::LpSolution::Status::Infeasible)
    throw InfeasibleError("lp_min_ordered_norm: empty polyhedron");
  if (sol.status != solver::LpSolution::Status::Optimal)
    throw NumericError("lp_min_ordered_norm: solver failed");

  OrderedNormOptimum out;
  out.x.assign(sol.x.begin(), sol.x.begin() + static_cast<std::ptrdiff_t>(d));
  out.value = ordered_norm(out.x, w);
  return out;
}

double dual_objective(const CoveringPolyhedron& p, const std::vector<double>& lambda,
                      const WeightVector& w) {
  if (lambda.size() != p.rows()) throw ValidationError("dual_objective: lambda dimension mismatch");
  double sum = 0.0;
  for (double v : lambda) {
    if (v < -1e-9) throw ValidationError("dual_objective: lambda must be nonnegative");
    sum += v;
  }
  if (std::abs(sum - 1.0) > 1e-9) throw ValidationError("dual_objective: lambda must sum to 1");
  CostVector y(p.cols(), 0.0);
  for (std::size_t j = 0; j < p.cols(); ++j)
    for (std::size_t i = 0; i < p.rows(); ++i) y[j] += lambda[i] * p.a[i][j];
  return dual_ordered_norm(y, w);
}

}  // namespace equinorm::covering
