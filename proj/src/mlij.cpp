#include "equinorm/mlij.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "equinorm/errors.hpp"

namespace equinorm::mlij {

namespace {

double composition_count(long long n, std::size_t d) {
  // C(n + d - 1, d - 1) without overflow.
  double c = 1.0;
  for (std::size_t i = 1; i < d; ++i) c *= static_cast<double>(n + static_cast<long long>(i)) / static_cast<double>(i);
  return c;
}

}  // namespace

MlijInstance MlijInstance::create(std::vector<double> p, long long n) {
  if (p.empty()) throw ValidationError("instance needs at least one machine");
  if (n < 1) throw ValidationError("instance needs at least one job");
  for (double v : p)
    if (!(v > 0.0) || !std::isfinite(v)) throw ValidationError("machine sizes must be positive and finite");
  MlijInstance inst;
  inst.p = std::move(p);
  inst.n = n;
  inst.sorted_to_input.resize(inst.p.size());
  std::iota(inst.sorted_to_input.begin(), inst.sorted_to_input.end(), 0);
  std::stable_sort(inst.sorted_to_input.begin(), inst.sorted_to_input.end(),
                   [&](std::size_t a, std::size_t b) { return inst.p[a] < inst.p[b]; });
  inst.p_sorted.reserve(inst.p.size());
  for (std::size_t i : inst.sorted_to_input) inst.p_sorted.push_back(inst.p[i]);
  return inst;
}

CostVector load_vector(const MlijInstance& inst, const Schedule& s) {
  if (s.counts.size() != inst.machines()) throw ValidationError("schedule/instance machine count mismatch");
  long long total = 0;
  CostVector loads(inst.machines());
  for (std::size_t i = 0; i < inst.machines(); ++i) {
    if (s.counts[i] < 0) throw ValidationError("schedule counts must be nonnegative");
    total += s.counts[i];
    loads[i] = static_cast<double>(s.counts[i]) * inst.p[i];
  }
  if (total != inst.n) throw ValidationError("schedule must place exactly n jobs");
  return loads;
}

MlijInstance doubling_transform(const MlijInstance& inst) {
  std::vector<double> q(inst.p.size());
  for (std::size_t i = 0; i < inst.p.size(); ++i) {
    const double e = std::log2(inst.p[i]);
    double k = std::floor(e);
    // Exact midpoints in log scale round down; the slack absorbs float noise
    // in log2 for inputs like sqrt(2).
    if (e - k >= 0.5 + 1e-12) k += 1.0;
    q[i] = std::pow(2.0, k);
  }
  return MlijInstance::create(std::move(q), inst.n);
}

CostVector vertex(const MlijInstance& inst, std::size_t l) {
  if (l < 1 || l > inst.machines()) throw ValidationError("vertex: index out of range");
  double inv = 0.0;
  for (std::size_t i = 0; i < l; ++i) inv += 1.0 / inst.p_sorted[i];
  const double value = static_cast<double>(inst.n) / inv;
  CostVector x(inst.machines(), 0.0);
  for (std::size_t i = 0; i < l; ++i) x[i] = value;
  return x;
}

bool is_good_vertex(const MlijInstance& inst, std::size_t l) {
  const CostVector x = vertex(inst, l);
  return x[l - 1] >= inst.p_sorted[l - 1] * (1.0 - 1e-12);
}

std::size_t max_good_index(const MlijInstance& inst) {
  std::size_t best = 1;  // l = 1 is always good: n * p_1 >= p_1
  for (std::size_t l = 2; l <= inst.machines(); ++l) {
    if (is_good_vertex(inst, l)) best = l;
    else break;  // the common load decreases while the threshold grows
  }
  return best;
}

Schedule round_good_vertex(const MlijInstance& inst, std::size_t l) {
  if (!is_good_vertex(inst, l)) throw ValidationError("round_good_vertex: vertex is not good");
  const CostVector x = vertex(inst, l);
  const double value = x[0];

  std::vector<long long> counts_sorted(inst.machines(), 0);
  std::vector<std::pair<double, std::size_t>> fracs;  // (fraction, sorted index)
  long long placed = 0;
  for (std::size_t i = 0; i < l; ++i) {
    const double r = value / inst.p_sorted[i];
    double fl = std::floor(r + 1e-9);  // snap near-integers up before flooring
    if (fl < 0) fl = 0;
    counts_sorted[i] = static_cast<long long>(fl);
    placed += counts_sorted[i];
    fracs.emplace_back(r - fl, i);
  }
  long long deficit = inst.n - placed;
  std::sort(fracs.begin(), fracs.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first > b.first;
    return a.second < b.second;
  });
  std::size_t at = 0;
  while (deficit > 0 && at < fracs.size()) {
    counts_sorted[fracs[at].second] += 1;
    --deficit;
    ++at;
  }
  // Float drift can only leave a deficit of the wrong sign by whole units;
  // repair against the smallest fractions (never drops a machine to zero load
  // unless its fractional count was below one).
  std::size_t back = fracs.size();
  while (deficit < 0 && back > 0) {
    --back;
    if (counts_sorted[fracs[back].second] > 0) {
      counts_sorted[fracs[back].second] -= 1;
      ++deficit;
    }
  }
  if (deficit != 0) throw NumericError("round_good_vertex: rounding could not rebalance");

  Schedule s;
  s.counts.assign(inst.machines(), 0);
  for (std::size_t i = 0; i < inst.machines(); ++i) s.counts[inst.sorted_to_input[i]] = counts_sorted[i];
  return s;
}

namespace {

MlijPortfolio portfolio_from_indices(const MlijInstance& inst, const MlijInstance& doubled,
                                     std::vector<std::size_t> indices, double alpha,
                                     const char* how) {
  MlijPortfolio out;
  out.selected = std::move(indices);
  out.good_prefix = max_good_index(doubled);
  out.portfolio.claimed_alpha = alpha;
  out.portfolio.claim_class = "Ord";
  out.portfolio.sym_note = "factor alpha * C * log d for every symmetric monotonic norm, C unspecified";
  for (std::size_t l : out.selected) {
    Schedule s = round_good_vertex(doubled, l);
    out.portfolio.vectors.push_back(load_vector(inst, s));
    out.portfolio.provenance.push_back(std::string(how) + ": rounded equal-load vertex l=" + std::to_string(l));
    out.schedules.push_back(std::move(s));
  }
  return out;
}

}  // namespace

MlijPortfolio build_portfolio(const MlijInstance& inst, double alpha) {
  if (!(alpha > 4.0 + 1e-9)) throw ValidationError("build_portfolio: alpha must exceed 4");
  const MlijInstance doubled = doubling_transform(inst);
  const std::size_t good = max_good_index(doubled);
  const double ratio = alpha / 4.0;

  std::vector<std::size_t> indices;
  double power = 1.0;
  while (true) {
    const std::size_t l = std::min<std::size_t>(
        static_cast<std::size_t>(std::ceil(power - 1e-9)), good);
    if (indices.empty() || indices.back() != l) indices.push_back(l);
    if (l >= good) break;
    power *= ratio;
  }
  return portfolio_from_indices(inst, doubled, std::move(indices), alpha, "geometric selection");
}

MlijPortfolio topk_two_portfolio(const MlijInstance& inst) {
  const MlijInstance doubled = doubling_transform(inst);
  const std::size_t good = max_good_index(doubled);
  std::vector<std::size_t> indices{1};
  if (good != 1) indices.push_back(good);
  MlijPortfolio out = portfolio_from_indices(inst, doubled, std::move(indices), 8.0, "two-vertex selection");
  out.portfolio.claim_class = "Top";
  out.portfolio.sym_note.clear();
  return out;
}

MlijLowerBound lower_bound_instance(double alpha, std::size_t machine_cap) {
  if (!(alpha >= 1.0)) throw ValidationError("lower_bound_instance: alpha must be >= 1");

  auto base_for = [&](int levels) {
    double s = 2.0;
    while (s < 5.0 * alpha * static_cast<double>(levels)) s *= 2.0;
    return s;
  };
  auto dim_for = [&](int levels, double s) {
    double d = 0.0, b = 1.0;
    for (int l = 0; l <= levels; ++l) {
      d += b;
      b *= s * s;
    }
    return d;
  };

  int levels = 0;
  for (int cand = 1;; ++cand) {
    if (dim_for(cand, base_for(cand)) <= static_cast<double>(machine_cap)) levels = cand;
    else break;
  }
  if (levels == 0) throw SizeCapError("lower_bound_instance: machine cap too small for one level");
  const double s = base_for(levels);
  const long long sll = static_cast<long long>(s);

  MlijLowerBound lb;
  lb.base = sll;
  lb.levels = levels;

  std::vector<double> p;
  long long csize = 1;
  double psize = 1.0;
  for (int l = 0; l <= levels; ++l) {
    lb.class_sizes.push_back(csize);
    for (long long i = 0; i < csize; ++i) p.push_back(psize);
    csize *= sll * sll;
    psize *= s;
  }
  long long n = 1;
  for (int i = 0; i < 3 * levels; ++i) n *= sll;
  lb.instance = MlijInstance::create(std::move(p), n);

  const std::size_t d = lb.instance.machines();
  for (int l = 0; l < levels; ++l) {
    // Weight w(l): 1 on the class-0 machine, S^{-2i} on class i < l, and
    // S^{-2l} on every remaining coordinate.
    std::vector<double> w;
    w.reserve(d);
    for (int i = 0; i < l; ++i) {
      const double v = std::pow(s, -2.0 * i);
      for (long long r = 0; r < lb.class_sizes[static_cast<std::size_t>(i)]; ++r) w.push_back(v);
    }
    const double tail = std::pow(s, -2.0 * l);
    while (w.size() < d) w.push_back(tail);
    lb.weights.emplace_back(std::move(w));
  }
  return lb;
}

FiniteDomain brute_force_schedules(const MlijInstance& inst, double cap) {
  const std::size_t d = inst.machines();
  if (composition_count(inst.n, d) > cap) throw SizeCapError("brute_force_schedules: composition count exceeds cap");

  FiniteDomain domain;
  std::vector<long long> work(d, 0);
  std::vector<CostVector>& out = domain.vectors;
  // Iterative stack-based enumeration of all compositions of n into d parts,
  // in decreasing lexicographic order of counts.
  struct Frame {
    std::size_t index;
    long long remaining;
    long long next;
  };
  std::vector<Frame> stack;
  stack.push_back({0, inst.n, inst.n});
  while (!stack.empty()) {
    Frame& f = stack.back();
    if (f.index + 1 == d) {
      work[f.index] = f.remaining;
      CostVector loads(d);
      for (std::size_t i = 0; i < d; ++i) loads[i] = static_cast<double>(work[i]) * inst.p[i];
      out.push_back(std::move(loads));
      stack.pop_back();
      continue;
    }
    if (f.next < 0) {
      stack.pop_back();
      continue;
    }
    work[f.index] = f.next;
    const long long rest = f.remaining - f.next;
    f.next -= 1;
    stack.push_back({f.index + 1, rest, rest});
  }
  return domain;
}

}  // namespace equinorm::mlij
