#include "equinorm/satisfaction.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <set>

#include "equinorm/errors.hpp"
#include "equinorm/solver/lp.hpp"
#include "equinorm/solver/matching.hpp"

namespace equinorm::sat {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double relative_slack(double bound) { return 1e-9 * (1.0 + std::abs(bound)); }

}  // namespace

void Problem::validate_satisfier(const Satisfier& sat) const {
  std::vector<char> seen(object_count(), 0);
  for (std::size_t x : sat.objects) {
    if (x >= object_count()) throw ValidationError("satisfier object out of range");
    if (seen[x]) throw ValidationError("satisfier objects must be distinct");
    seen[x] = 1;
  }
}

std::vector<double> satisfaction_times(const Problem& problem, const Satisfier& sat) {
  const std::vector<double> times = problem.object_times(sat);
  std::vector<double> out(problem.client_count(), kInf);
  for (std::size_t t = 0; t < sat.objects.size(); ++t)
    for (std::size_t e : problem.clients_of(sat.objects[t])) out[e] = std::min(out[e], times[t]);
  return out;
}

double cost(const Problem& problem, const Satisfier& sat) {
  double c = 0.0;
  for (double t : problem.object_times(sat)) c = std::max(c, t);
  return c;
}

Satisfier compose(const std::vector<Satisfier>& parts) {
  Satisfier out;
  std::set<std::size_t> seen;
  for (const Satisfier& part : parts)
    for (std::size_t x : part.objects)
      if (seen.insert(x).second) out.objects.push_back(x);
  return out;
}

bool check_downward_closure(const Problem& problem, const Satisfier& sat, double t_cut) {
  const std::vector<double> times = problem.object_times(sat);
  Satisfier restricted;
  std::vector<double> kept_times;
  for (std::size_t t = 0; t < sat.objects.size(); ++t)
    if (times[t] <= t_cut) {
      restricted.objects.push_back(sat.objects[t]);
      kept_times.push_back(times[t]);
    }
  const std::vector<double> new_times = problem.object_times(restricted);
  for (std::size_t t = 0; t < new_times.size(); ++t)
    if (new_times[t] > kept_times[t] + relative_slack(kept_times[t])) return false;
  return true;
}

bool check_composability(const Problem& problem, const std::vector<Satisfier>& parts) {
  const Satisfier composed = compose(parts);
  const std::vector<double> composed_times = problem.object_times(composed);
  std::vector<double> time_of(problem.object_count(), kInf);
  for (std::size_t t = 0; t < composed.objects.size(); ++t) time_of[composed.objects[t]] = composed_times[t];

  std::set<std::size_t> earlier;
  double prior_cost = 0.0;
  for (const Satisfier& part : parts) {
    const std::vector<double> own = problem.object_times(part);
    for (std::size_t t = 0; t < part.objects.size(); ++t) {
      const std::size_t x = part.objects[t];
      if (earlier.count(x)) continue;
      const double rhs = problem.gamma() * prior_cost + own[t];
      if (std::isfinite(rhs) && time_of[x] > rhs + relative_slack(rhs)) return false;
    }
    prior_cost += cost(problem, part);
    for (std::size_t x : part.objects) earlier.insert(x);
  }
  return true;
}

IterativeResult iterative_ordering(const Problem& problem, double beta, const SatisfierOracle& oracle) {
  if (!(beta >= 1.0)) throw ValidationError("iterative_ordering: beta must be >= 1");
  std::vector<char> coverable(problem.client_count(), 0);
  for (std::size_t x = 0; x < problem.object_count(); ++x)
    for (std::size_t e : problem.clients_of(x)) coverable[e] = 1;
  for (char c : coverable)
    if (!c) throw InfeasibleError("iterative_ordering: some client has no satisfying object");

  const SatisfierOracle run =
      oracle ? oracle : SatisfierOracle([&problem](double b) { return problem.budget_satisfier(b); });

  IterativeResult out;
  out.theta = std::sqrt(problem.gamma()) + 1.0;
  out.guarantee = beta * out.theta * out.theta;
  out.cost_scale = problem.min_positive_cost();
  if (!(out.cost_scale > 0.0)) out.cost_scale = 1.0;
  const double guard = out.theta * out.theta * problem.finite_cost_bound();

  std::vector<Satisfier> parts;
  std::vector<char> covered(problem.client_count(), 0);
  std::size_t covered_count = 0;
  for (int j = 0; covered_count < problem.client_count(); ++j) {
    const double budget = out.cost_scale * std::pow(out.theta, j);
    if (budget > guard + relative_slack(guard))
      throw NumericError("iterative_ordering: coverage stalled past the cost bound");
    Satisfier part = run(budget);
    out.budgets.push_back(budget);
    for (std::size_t x : part.objects)
      for (std::size_t e : problem.clients_of(x))
        if (!covered[e]) {
          covered[e] = 1;
          ++covered_count;
        }
    parts.push_back(std::move(part));
  }
  out.satisfier = compose(parts);
  return out;
}

namespace {

using VectorVisitor = std::function<void(const std::vector<double>&)>;

// All full assignments, each machine ordered by increasing processing time.
// For any satisfier there is such a schedule whose sorted satisfaction vector
// is entrywise no larger, so minima over this family are global.
void enumerate_completion_vectors(const CompletionTimesProblem& pr, double cap, const VectorVisitor& visit) {
  const std::size_t n = pr.jobs(), d = pr.machines();
  if (std::pow(static_cast<double>(d), static_cast<double>(n)) > cap)
    throw SizeCapError("satisfaction enumeration: too many assignments");
  std::vector<std::size_t> assign(n, 0);
  std::vector<std::vector<std::size_t>> on_machine(d);
  std::vector<double> s(n);
  while (true) {
    for (auto& v : on_machine) v.clear();
    for (std::size_t j = 0; j < n; ++j) on_machine[assign[j]].push_back(j);
    for (std::size_t i = 0; i < d; ++i) {
      auto& jobs = on_machine[i];
      std::sort(jobs.begin(), jobs.end(), [&](std::size_t a, std::size_t b) {
        if (pr.processing()[a][i] != pr.processing()[b][i]) return pr.processing()[a][i] < pr.processing()[b][i];
        return a < b;
      });
      double load = 0.0;
      for (std::size_t j : jobs) {
        load += pr.processing()[j][i];
        s[j] = load;
      }
    }
    visit(s);
    std::size_t k = n;
    while (k > 0) {
      --k;
      if (++assign[k] < d) break;
      assign[k] = 0;
      if (k == 0) return;
    }
    if (n == 0) return;
  }
}

void enumerate_tsp_vectors(const TspProblem& pr, double cap, const VectorVisitor& visit) {
  const std::size_t n = pr.dist().size();
  std::vector<std::size_t> rest;
  for (std::size_t v = 0; v < n; ++v)
    if (v != pr.v0()) rest.push_back(v);
  double perms = 1.0;
  for (std::size_t i = 2; i <= rest.size(); ++i) perms *= static_cast<double>(i);
  if (perms > cap) throw SizeCapError("satisfaction enumeration: too many paths");

  std::vector<double> s(n);
  do {
    s[pr.v0()] = 0.0;
    double len = 0.0;
    std::size_t prev = pr.v0();
    for (std::size_t v : rest) {
      len += pr.dist()[prev][v];
      s[v] = len;
      prev = v;
    }
    visit(s);
  } while (std::next_permutation(rest.begin(), rest.end()));
}

// Sequences of distinct objects where each appended object covers a new
// client, emitted once coverage is complete.  Appending never changes earlier
// times for position-cost problems, so redundant objects only delay later
// ones and the pruned family still attains all minima.
void enumerate_cover_vectors(const Problem& pr, double cap, const VectorVisitor& visit) {
  const std::size_t m = pr.object_count();
  std::vector<char> used(m, 0);
  std::vector<std::size_t> seq;
  std::vector<int> cover_count(pr.client_count(), 0);
  std::size_t covered = 0;
  double nodes = 0.0;

  auto rec = [&](auto&& self) -> void {
    if (covered == pr.client_count()) {
      visit(satisfaction_times(pr, Satisfier{seq}));
      return;
    }
    for (std::size_t x = 0; x < m; ++x) {
      if (used[x]) continue;
      bool fresh = false;
      for (std::size_t e : pr.clients_of(x)) fresh = fresh || cover_count[e] == 0;
      if (!fresh) continue;
      if (++nodes > cap) throw SizeCapError("satisfaction enumeration: too many ordered covers");
      used[x] = 1;
      seq.push_back(x);
      for (std::size_t e : pr.clients_of(x))
        if (cover_count[e]++ == 0) ++covered;
      self(self);
      for (std::size_t e : pr.clients_of(x))
        if (--cover_count[e] == 0) --covered;
      seq.pop_back();
      used[x] = 0;
    }
  };
  rec(rec);
}

void enumerate_full_vectors(const Problem& problem, double cap, const VectorVisitor& visit) {
  if (const auto* ct = dynamic_cast<const CompletionTimesProblem*>(&problem))
    enumerate_completion_vectors(*ct, cap, visit);
  else if (const auto* tsp = dynamic_cast<const TspProblem*>(&problem))
    enumerate_tsp_vectors(*tsp, cap, visit);
  else
    enumerate_cover_vectors(problem, cap, visit);
}

}  // namespace

std::vector<std::vector<double>> all_satisfaction_vectors(const Problem& problem, double cap) {
  std::vector<std::vector<double>> out;
  enumerate_full_vectors(problem, cap, [&](const std::vector<double>& s) { out.push_back(s); });
  return out;
}

std::vector<double> best_topk_satisfaction(const Problem& problem, double cap) {
  const std::size_t c = problem.client_count();
  std::vector<double> best(c, kInf);
  enumerate_full_vectors(problem, cap, [&](const std::vector<double>& s) {
    std::vector<double> sorted = s;
    std::sort(sorted.begin(), sorted.end(), std::greater<>());
    double sum = 0.0;
    for (std::size_t k = 0; k < c; ++k) {
      sum += sorted[k];
      best[k] = std::min(best[k], sum);
    }
  });
  for (double v : best)
    if (!std::isfinite(v)) throw InfeasibleError("best_topk_satisfaction: no full-coverage satisfier");
  return best;
}

double best_simultaneous_ratio_l1_linf(const Problem& problem, double cap) {
  std::vector<std::pair<double, double>> values;  // (L1, Linf)
  enumerate_full_vectors(problem, cap, [&](const std::vector<double>& s) {
    double l1 = 0.0, linf = 0.0;
    for (double v : s) {
      l1 += v;
      linf = std::max(linf, v);
    }
    values.emplace_back(l1, linf);
  });
  if (values.empty()) throw InfeasibleError("best_simultaneous_ratio: no full-coverage satisfier");
  double best_l1 = kInf, best_linf = kInf;
  for (const auto& [l1, linf] : values) {
    best_l1 = std::min(best_l1, l1);
    best_linf = std::min(best_linf, linf);
  }
  auto ratio = [](double v, double opt) {
    if (opt > 0.0) return v / opt;
    return v <= 0.0 ? 1.0 : kInf;
  };
  double best = kInf;
  for (const auto& [l1, linf] : values)
    best = std::min(best, std::max(ratio(l1, best_l1), ratio(linf, best_linf)));
  return best;
}

CompletionTimesProblem::CompletionTimesProblem(std::vector<std::vector<double>> p) : p_(std::move(p)) {
  if (p_.empty() || p_.front().empty()) throw ValidationError("completion times: empty matrix");
  const std::size_t d = p_.front().size();
  for (const auto& row : p_) {
    if (row.size() != d) throw ValidationError("completion times: ragged matrix");
    for (double v : row)
      if (!(v > 0.0) || !std::isfinite(v)) throw ValidationError("completion times: entries must be positive");
  }
  client_count_ = p_.size();
  gamma_ = 1.0;
  kind_ = "completion_times";
  satisfies_.reserve(p_.size() * d);
  for (std::size_t j = 0; j < p_.size(); ++j)
    for (std::size_t i = 0; i < d; ++i) satisfies_.push_back({j});
}

std::vector<double> CompletionTimesProblem::object_times(const Satisfier& sat) const {
  validate_satisfier(sat);
  std::vector<double> load(machines(), 0.0);
  std::vector<double> out(sat.objects.size());
  for (std::size_t t = 0; t < sat.objects.size(); ++t) {
    const std::size_t j = sat.objects[t] / machines();
    const std::size_t i = sat.objects[t] % machines();
    load[i] += p_[j][i];
    out[t] = load[i];
  }
  return out;
}

double CompletionTimesProblem::min_positive_cost() const {
  double m = kInf;
  for (const auto& row : p_)
    for (double v : row) m = std::min(m, v);
  return m;
}

double CompletionTimesProblem::finite_cost_bound() const {
  double bound = 0.0;
  for (std::size_t i = 0; i < machines(); ++i) {
    double col = 0.0;
    for (std::size_t j = 0; j < jobs(); ++j) col += p_[j][i];
    bound = std::max(bound, col);
  }
  return bound;
}

Satisfier CompletionTimesProblem::budget_satisfier(double budget) const {
  const std::size_t n = jobs(), d = machines();
  if (std::pow(static_cast<double>(d) + 1.0, static_cast<double>(n)) > 1e7)
    throw SizeCapError("budget_satisfier: too many partial assignments");

  // assign[j] = 0 means unassigned, i+1 means machine i; counting order is
  // lexicographic so the first best is kept.
  std::vector<std::size_t> assign(n, 0), best_assign;
  std::size_t best_covered = 0;
  bool have_best = false;
  const double limit = budget + relative_slack(budget);
  while (true) {
    std::vector<double> load(d, 0.0);
    std::size_t covered = 0;
    for (std::size_t j = 0; j < n; ++j)
      if (assign[j] > 0) {
        load[assign[j] - 1] += p_[j][assign[j] - 1];
        ++covered;
      }
    const double makespan = load.empty() ? 0.0 : *std::max_element(load.begin(), load.end());
    if (makespan <= limit && (!have_best || covered > best_covered)) {
      best_covered = covered;
      best_assign = assign;
      have_best = true;
    }
    std::size_t k = n;
    bool done = true;
    while (k > 0) {
      --k;
      if (++assign[k] <= d) {
        done = false;
        break;
      }
      assign[k] = 0;
    }
    if (done) break;
  }

  Satisfier out;
  for (std::size_t i = 0; i < d; ++i) {
    std::vector<std::size_t> jobs_here;
    for (std::size_t j = 0; j < n; ++j)
      if (best_assign[j] == i + 1) jobs_here.push_back(j);
    std::sort(jobs_here.begin(), jobs_here.end(), [&](std::size_t a, std::size_t b) {
      if (p_[a][i] != p_[b][i]) return p_[a][i] < p_[b][i];
      return a < b;
    });
    for (std::size_t j : jobs_here) out.objects.push_back(j * d + i);
  }
  return out;
}

SetCoverProblem::SetCoverProblem(std::size_t n_elements, std::vector<std::vector<std::size_t>> sets,
                                 std::string kind) {
  if (n_elements == 0) throw ValidationError("set cover: empty ground set");
  if (sets.empty()) throw ValidationError("set cover: no sets");
  for (const auto& s : sets)
    for (std::size_t e : s)
      if (e >= n_elements) throw ValidationError("set cover: element out of range");
  client_count_ = n_elements;
  satisfies_ = std::move(sets);
  gamma_ = 1.0;
  kind_ = std::move(kind);
}

std::vector<double> SetCoverProblem::object_times(const Satisfier& sat) const {
  validate_satisfier(sat);
  std::vector<double> out(sat.objects.size());
  for (std::size_t t = 0; t < sat.objects.size(); ++t) out[t] = static_cast<double>(t + 1);
  return out;
}

Satisfier SetCoverProblem::budget_satisfier(double budget) const {
  const std::size_t m = object_count();
  const double whole = std::floor(budget + 1e-9);
  const std::size_t depth = whole < 0.0 ? 0 : std::min<std::size_t>(m, static_cast<std::size_t>(whole));
  double states = 0.0, level = 1.0;
  for (std::size_t s = 0; s <= depth; ++s) {
    states += level;
    level *= static_cast<double>(m - s) / static_cast<double>(s + 1);
  }
  if (states > 1e7) throw SizeCapError("budget_satisfier: too many set choices");

  // Depth-first in lexicographic order of increasing index sequences; only
  // strict coverage improvements replace the incumbent, so the first best is
  // the lexicographically first one.
  std::vector<std::size_t> seq, best;
  std::vector<char> covered(client_count(), 0);
  std::size_t covered_count = 0, best_count = 0;
  auto rec = [&](auto&& self, std::size_t from) -> void {
    if (covered_count > best_count) {
      best_count = covered_count;
      best = seq;
    }
    if (seq.size() == depth || covered_count == client_count()) return;
    for (std::size_t x = from; x < m; ++x) {
      bool fresh = false;
      for (std::size_t e : clients_of(x)) fresh = fresh || !covered[e];
      if (!fresh) continue;
      seq.push_back(x);
      std::vector<std::size_t> newly;
      for (std::size_t e : clients_of(x))
        if (!covered[e]) {
          covered[e] = 1;
          newly.push_back(e);
          ++covered_count;
        }
      self(self, x + 1);
      for (std::size_t e : newly) covered[e] = 0;
      covered_count -= newly.size();
      seq.pop_back();
    }
  };
  rec(rec, 0);
  return Satisfier{best};
}

TspProblem::TspProblem(std::vector<std::vector<double>> dist, std::size_t v0)
    : dist_(std::move(dist)), v0_(v0) {
  const std::size_t n = dist_.size();
  if (n == 0) throw ValidationError("tsp: empty metric");
  if (v0_ >= n) throw ValidationError("tsp: start vertex out of range");
  double scale = 0.0;
  for (const auto& row : dist_) {
    if (row.size() != n) throw ValidationError("tsp: metric must be square");
    for (double v : row) {
      if (!(v >= 0.0) || !std::isfinite(v)) throw ValidationError("tsp: distances must be nonnegative");
      scale = std::max(scale, v);
    }
  }
  const double tol = 1e-9 * (1.0 + scale);
  for (std::size_t i = 0; i < n; ++i) {
    if (dist_[i][i] != 0.0) throw ValidationError("tsp: diagonal must be zero");
    for (std::size_t j = 0; j < n; ++j) {
      if (std::abs(dist_[i][j] - dist_[j][i]) > tol) throw ValidationError("tsp: metric must be symmetric");
      for (std::size_t k = 0; k < n; ++k)
        if (dist_[i][j] > dist_[i][k] + dist_[k][j] + tol)
          throw ValidationError("tsp: triangle inequality violated");
    }
  }
  client_count_ = n;
  gamma_ = 2.0;
  kind_ = "tsp";
  satisfies_.reserve(n);
  for (std::size_t v = 0; v < n; ++v) satisfies_.push_back({v});
}

std::vector<double> TspProblem::object_times(const Satisfier& sat) const {
  validate_satisfier(sat);
  std::vector<double> out(sat.objects.size(), kInf);
  if (sat.objects.empty()) return out;
  if (sat.objects.front() != v0_) return out;  // paths must start at v0
  double len = 0.0;
  out[0] = 0.0;
  for (std::size_t t = 1; t < sat.objects.size(); ++t) {
    len += dist_[sat.objects[t - 1]][sat.objects[t]];
    out[t] = len;
  }
  return out;
}

double TspProblem::min_positive_cost() const {
  double m = kInf;
  for (const auto& row : dist_)
    for (double v : row)
      if (v > 0.0) m = std::min(m, v);
  return std::isfinite(m) ? m : 1.0;
}

double TspProblem::finite_cost_bound() const {
  double scale = 0.0;
  for (const auto& row : dist_)
    for (double v : row) scale = std::max(scale, v);
  return std::max(1.0, static_cast<double>(dist_.size()) * scale);
}

Satisfier TspProblem::budget_satisfier(double budget) const {
  const std::size_t n = dist_.size();
  const double states = std::pow(2.0, static_cast<double>(n)) * static_cast<double>(n) * static_cast<double>(n);
  if (states > 1e7) throw SizeCapError("budget_satisfier: too many path states");

  const std::size_t full = std::size_t{1} << n;
  std::vector<std::vector<double>> dp(full, std::vector<double>(n, kInf));
  std::vector<std::vector<std::size_t>> parent(full, std::vector<std::size_t>(n, n));
  dp[std::size_t{1} << v0_][v0_] = 0.0;
  for (std::size_t mask = 1; mask < full; ++mask) {
    if (!(mask & (std::size_t{1} << v0_))) continue;
    for (std::size_t last = 0; last < n; ++last) {
      if (!(mask & (std::size_t{1} << last)) || !std::isfinite(dp[mask][last])) continue;
      for (std::size_t next = 0; next < n; ++next) {
        if (mask & (std::size_t{1} << next)) continue;
        const std::size_t nm = mask | (std::size_t{1} << next);
        const double nd = dp[mask][last] + dist_[last][next];
        if (nd < dp[nm][next]) {
          dp[nm][next] = nd;
          parent[nm][next] = last;
        }
      }
    }
  }

  const double limit = budget + relative_slack(budget);
  std::size_t best_mask = std::size_t{1} << v0_, best_last = v0_;
  std::size_t best_count = 1;
  for (std::size_t mask = 1; mask < full; ++mask) {
    if (!(mask & (std::size_t{1} << v0_))) continue;
    double len = kInf;
    std::size_t arg = n;
    for (std::size_t last = 0; last < n; ++last)
      if (dp[mask][last] < len) {
        len = dp[mask][last];
        arg = last;
      }
    const auto count = static_cast<std::size_t>(std::popcount(static_cast<unsigned long long>(mask)));
    if (len <= limit && count > best_count) {
      best_count = count;
      best_mask = mask;
      best_last = arg;
    }
  }

  std::vector<std::size_t> rev;
  std::size_t mask = best_mask, last = best_last;
  while (true) {
    rev.push_back(last);
    if (last == v0_ && mask == (std::size_t{1} << v0_)) break;
    const std::size_t prev = parent[mask][last];
    mask &= ~(std::size_t{1} << last);
    last = prev;
  }
  Satisfier out;
  out.objects.assign(rev.rbegin(), rev.rend());
  return out;
}

CompletionTimesProblem make_completion_times(std::vector<std::vector<double>> p) {
  return CompletionTimesProblem(std::move(p));
}

SetCoverProblem make_set_cover(std::size_t n_elements, std::vector<std::vector<std::size_t>> sets) {
  return {n_elements, std::move(sets), "setcover"};
}

SetCoverProblem make_vertex_cover(std::size_t n_vertices,
                                  const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
  if (n_vertices == 0) throw ValidationError("vertex cover: empty graph");
  std::vector<std::vector<std::size_t>> incidence(n_vertices);
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const auto [u, v] = edges[e];
    if (u >= n_vertices || v >= n_vertices || u == v) throw ValidationError("vertex cover: bad edge");
    incidence[u].push_back(e);
    incidence[v].push_back(e);
  }
  return {edges.size(), std::move(incidence), "vertexcover"};
}

TspProblem make_tsp(std::vector<std::vector<double>> dist, std::size_t v0) {
  return TspProblem(std::move(dist), v0);
}

Satisfier completion_times_satisfier(const CompletionTimesProblem& problem, double budget) {
  if (!(budget >= 0.0)) throw ValidationError("completion_times_satisfier: budget must be nonnegative");
  const auto& p = problem.processing();
  const std::size_t n = problem.jobs(), d = problem.machines();
  const double limit = budget + relative_slack(budget);

  // Variables x_(i,j) only for pairs with p[j][i] <= budget.
  std::vector<std::pair<std::size_t, std::size_t>> vars;  // (machine, job)
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (p[j][i] <= limit) vars.emplace_back(i, j);
  if (vars.empty()) return {};

  solver::LinearProgram lp;
  lp.maximize = true;
  lp.objective.assign(vars.size(), 1.0);
  for (std::size_t i = 0; i < d; ++i) {
    solver::LinearProgram::Row row;
    row.coeffs.assign(vars.size(), 0.0);
    bool any = false;
    for (std::size_t v = 0; v < vars.size(); ++v)
      if (vars[v].first == i) {
        row.coeffs[v] = p[vars[v].second][i];
        any = true;
      }
    if (!any) continue;
    row.rel = '<';
    row.rhs = budget;
    lp.rows.push_back(std::move(row));
  }
  for (std::size_t j = 0; j < n; ++j) {
    solver::LinearProgram::Row row;
    row.coeffs.assign(vars.size(), 0.0);
    bool any = false;
    for (std::size_t v = 0; v < vars.size(); ++v)
      if (vars[v].second == j) {
        row.coeffs[v] = 1.0;
        any = true;
      }
    if (!any) continue;
    row.rel = '<';
    row.rhs = 1.0;
    lp.rows.push_back(std::move(row));
  }
  const solver::LpSolution sol = solver::solve_lp(lp);
  if (sol.status != solver::LpSolution::Status::Optimal)
    throw NumericError("completion_times_satisfier: LP solve failed");

  // Bucket-fill each machine's fractional jobs, largest processing time
  // first, into ceil(sum) unit-capacity copies; edges of the support graph
  // connect copies to jobs.
  std::vector<std::vector<int>> adjacency;  // copy -> jobs
  std::vector<std::size_t> copy_machine;
  for (std::size_t i = 0; i < d; ++i) {
    std::vector<std::pair<double, std::size_t>> frac;  // (x*, job)
    double total = 0.0;
    for (std::size_t v = 0; v < vars.size(); ++v)
      if (vars[v].first == i && sol.x[v] > 1e-9) {
        frac.emplace_back(std::min(1.0, sol.x[v]), vars[v].second);
        total += std::min(1.0, sol.x[v]);
      }
    if (frac.empty()) continue;
    std::sort(frac.begin(), frac.end(), [&](const auto& a, const auto& b) {
      if (p[a.second][i] != p[b.second][i]) return p[a.second][i] > p[b.second][i];
      return a.second < b.second;
    });
    const auto copies = static_cast<std::size_t>(std::ceil(total - 1e-9));
    const std::size_t base = adjacency.size();
    for (std::size_t c = 0; c < copies; ++c) {
      adjacency.push_back({});
      copy_machine.push_back(i);
    }
    std::size_t at = 0;
    double fill = 0.0;
    for (const auto& [weight, job] : frac) {
      double rest = weight;
      while (rest > 1e-12) {
        const double take = std::min(rest, 1.0 - fill);
        if (take > 1e-12) {
          if (adjacency[base + at].empty() || adjacency[base + at].back() != static_cast<int>(job))
            adjacency[base + at].push_back(static_cast<int>(job));
          fill += take;
          rest -= take;
        }
        if (fill >= 1.0 - 1e-12) {
          if (at + 1 < copies) {
            ++at;
            fill = 0.0;
          } else {
            break;  // float overflow clamps into the last copy
          }
        }
      }
    }
  }

  const std::vector<int> match = solver::max_bipartite_matching(adjacency, n);
  std::vector<std::vector<std::size_t>> jobs_on(d);
  for (std::size_t c = 0; c < match.size(); ++c)
    if (match[c] >= 0) jobs_on[copy_machine[c]].push_back(static_cast<std::size_t>(match[c]));

  Satisfier out;
  for (std::size_t i = 0; i < d; ++i) {
    std::sort(jobs_on[i].begin(), jobs_on[i].end(), [&](std::size_t a, std::size_t b) {
      if (p[a][i] != p[b][i]) return p[a][i] > p[b][i];
      return a < b;
    });
    for (std::size_t j : jobs_on[i]) out.objects.push_back(j * d + i);
  }
  return out;
}

Graph vc_lower_bound_instance(std::size_t n) {
  if (n < 2) throw ValidationError("vc_lower_bound_instance: n must be >= 2");
  Graph g;
  g.vertex_count = 2 * n + 1;
  for (std::size_t i = 1; i < 2 * n; ++i) g.edges.emplace_back(i, i + 1);
  g.edges.emplace_back(2 * n, 1);
  for (std::size_t i = 1; i <= 2 * n - 1; i += 2) g.edges.emplace_back(0, i);
  return g;
}

std::vector<std::vector<double>> ct_lower_bound_instance() {
  const double mu = (std::sqrt(61.0) - 7.0) / 3.0;
  const double delta = mu / 2.0;
  return {{1.0, 1.0 + delta}, {1.0, 1.0 + delta}, {1.0 + mu, 2.0}};
}

}  // namespace equinorm::sat
