#include "equinorm/portfolio.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <queue>

#include "equinorm/errors.hpp"

namespace equinorm {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Ratio of two minima with the 0/0 -> 1 and c/0 -> inf conventions.
double safe_ratio(double num, double den) {
  if (den <= 0.0) return num <= 0.0 ? 1.0 : kInf;
  return num / den;
}

double min_ordered(const std::vector<CostVector>& vecs, const WeightVector& w) {
  double best = kInf;
  for (const auto& v : vecs) best = std::min(best, ordered_norm(v, w));
  return best;
}

}  // namespace

std::size_t FiniteDomain::dim() const {
  if (vectors.empty()) throw ValidationError("domain must contain at least one vector");
  return vectors.front().size();
}

void FiniteDomain::validate() const {
  const std::size_t d = dim();
  if (d == 0) throw ValidationError("domain vectors must have dimension >= 1");
  for (const auto& v : vectors) {
    if (v.size() != d) throw ValidationError("domain vectors must share one dimension");
    for (double e : v)
      if (e < 0.0 || !std::isfinite(e)) throw ValidationError("domain entries must be finite and nonnegative");
  }
  if (!labels.empty() && labels.size() != vectors.size())
    throw ValidationError("domain labels must be empty or match the vector count");
}

NormFamily NormFamily::all_top_k() { return NormFamily{}; }

NormFamily NormFamily::ordered_set(std::vector<WeightVector> ws) {
  NormFamily f;
  f.kind = Kind::OrderedSet;
  f.weights = std::move(ws);
  return f;
}

NormFamily NormFamily::ordered_sampled(int count, std::uint64_t seed) {
  NormFamily f;
  f.kind = Kind::OrderedSampled;
  f.sample_count = count;
  f.seed = seed;
  return f;
}

MinNormResult brute_force_min_norm(const FiniteDomain& domain, const WeightVector& w) {
  domain.validate();
  MinNormResult best{0, kInf};
  for (std::size_t i = 0; i < domain.vectors.size(); ++i) {
    const double v = ordered_norm(domain.vectors[i], w);
    if (v < best.value) best = {i, v};  // strict: ties keep the earlier vector
  }
  return best;
}

double certify_topk_ratio(const Portfolio& portfolio, const FiniteDomain& domain) {
  domain.validate();
  if (portfolio.vectors.empty()) throw ValidationError("portfolio must contain at least one vector");
  const std::size_t d = domain.dim();
  for (const auto& v : portfolio.vectors)
    if (v.size() != d) throw ValidationError("portfolio/domain dimension mismatch");

  std::vector<double> best_x(d, kInf), best_d(d, kInf);
  auto fold = [&](const std::vector<CostVector>& vecs, std::vector<double>& best) {
    for (const auto& v : vecs) {
      const auto pref = topk_prefix_sums(v);
      for (std::size_t k = 0; k < d; ++k) best[k] = std::min(best[k], pref[k]);
    }
  };
  fold(portfolio.vectors, best_x);
  fold(domain.vectors, best_d);

  double ratio = 0.0;
  for (std::size_t k = 0; k < d; ++k) ratio = std::max(ratio, safe_ratio(best_x[k], best_d[k]));
  return ratio;
}

double estimate_ordered_ratio(const Portfolio& portfolio, const FiniteDomain& domain,
                              const NormFamily& family) {
  domain.validate();
  const std::size_t d = domain.dim();
  double ratio = certify_topk_ratio(portfolio, domain);  // top-k weights always included
  std::vector<WeightVector> extra;
  if (family.kind == NormFamily::Kind::OrderedSet) {
    extra = family.weights;
  } else if (family.kind == NormFamily::Kind::OrderedSampled) {
    Rng rng(family.seed);
    extra.reserve(static_cast<std::size_t>(std::max(0, family.sample_count)));
    for (int i = 0; i < family.sample_count; ++i) extra.push_back(sample_weight_vector(d, rng));
  }
  for (const auto& w : extra) {
    if (w.dim() != d) throw ValidationError("family weight dimension mismatch");
    ratio = std::max(ratio, safe_ratio(min_ordered(portfolio.vectors, w),
                                       min_ordered(domain.vectors, w)));
  }
  return ratio;
}

Portfolio compose_sequential(const Portfolio& x1, const Portfolio& x2) {
  for (const auto& v : x2.vectors) {
    if (std::find(x1.vectors.begin(), x1.vectors.end(), v) == x1.vectors.end())
      throw ValidationError("compose_sequential: second portfolio must refine the first");
  }
  Portfolio out = x2;
  out.claimed_alpha = x1.claimed_alpha * x2.claimed_alpha;
  out.provenance.insert(out.provenance.begin(), x1.provenance.begin(), x1.provenance.end());
  return out;
}

Portfolio union_portfolios(const std::vector<Portfolio>& parts) {
  if (parts.empty()) throw ValidationError("union_portfolios: nothing to unite");
  Portfolio out;
  out.claimed_alpha = parts.front().claimed_alpha;
  out.claim_class = parts.front().claim_class;
  std::size_t d = 0;
  for (const auto& p : parts) {
    if (std::abs(p.claimed_alpha - out.claimed_alpha) > kRelTol * (1.0 + out.claimed_alpha))
      throw ValidationError("union_portfolios: claimed factors must agree");
    for (const auto& v : p.vectors) {
      if (d == 0) d = v.size();
      if (v.size() != d) throw ValidationError("union_portfolios: dimension mismatch");
      if (std::find(out.vectors.begin(), out.vectors.end(), v) == out.vectors.end())
        out.vectors.push_back(v);
    }
    out.provenance.insert(out.provenance.end(), p.provenance.begin(), p.provenance.end());
  }
  return out;
}

Portfolio bucket_portfolio(const FiniteDomain& domain, double epsilon) {
  domain.validate();
  if (!(epsilon > 0.0)) throw ValidationError("bucket_portfolio: epsilon must be positive");
  const std::size_t d = domain.dim();
  const double step = 1.0 + epsilon / 3.0;

  // Min-max value over the domain; every symmetric monotonic minimizer lives
  // in the sublevel set ||x||_inf <= d * vstar.
  double vstar = kInf;
  std::size_t vstar_at = 0;
  for (std::size_t i = 0; i < domain.vectors.size(); ++i) {
    const double m = *std::max_element(domain.vectors[i].begin(), domain.vectors[i].end());
    if (m < vstar) {
      vstar = m;
      vstar_at = i;
    }
  }

  Portfolio out;
  out.claimed_alpha = 1.0 + epsilon;
  out.claim_class = "Sym";
  out.sym_note = "certified for every symmetric monotonic norm";
  if (vstar <= 0.0) {
    out.vectors.push_back(domain.vectors[vstar_at]);
    out.provenance.push_back("min-max solution (all-zero optimum)");
    return out;
  }

  const std::size_t t_count = static_cast<std::size_t>(std::ceil(std::log(static_cast<double>(d)) / std::log(step)));
  std::vector<std::size_t> cs;
  for (std::size_t i = 1; i <= std::max<std::size_t>(t_count, 1); ++i) {
    const std::size_t c = static_cast<std::size_t>(std::floor(std::pow(step, static_cast<double>(i))));
    cs.push_back(std::min<std::size_t>(std::max<std::size_t>(c, 1), d));
  }
  if (cs.empty()) cs.push_back(1);

  struct Candidate {
    std::vector<double> sorted;
    std::size_t index;
  };
  std::map<std::vector<long long>, Candidate> buckets;
  for (std::size_t i = 0; i < domain.vectors.size(); ++i) {
    const auto& x = domain.vectors[i];
    const double m = *std::max_element(x.begin(), x.end());
    if (m > static_cast<double>(d) * vstar * (1.0 + kRelTol)) continue;
    const auto pref = topk_prefix_sums(x);
    std::vector<long long> key;
    key.reserve(cs.size());
    for (std::size_t c : cs) {
      const double ratio = pref[c - 1] / vstar;  // >= 1 since top-1 >= vstar
      key.push_back(static_cast<long long>(std::floor(std::log(ratio) / std::log(step) + 1e-12)));
    }
    std::vector<double> srt = sorted_desc(x);
    auto it = buckets.find(key);
    if (it == buckets.end()) {
      buckets.emplace(std::move(key), Candidate{std::move(srt), i});
    } else if (std::lexicographical_compare(srt.begin(), srt.end(), it->second.sorted.begin(),
                                            it->second.sorted.end())) {
      it->second = Candidate{std::move(srt), i};
    }
  }

  bool have_vstar = false;
  for (const auto& [key, cand] : buckets) {
    out.vectors.push_back(domain.vectors[cand.index]);
    out.provenance.push_back("bucket representative (domain index " + std::to_string(cand.index) + ")");
    if (cand.index == vstar_at) have_vstar = true;
  }
  if (!have_vstar) {
    // Keep the min-max solution unconditionally.
    out.vectors.push_back(domain.vectors[vstar_at]);
    out.provenance.push_back("min-max solution (kept unconditionally)");
  }
  if (buckets.size() <= 1) out.provenance.push_back("degenerate restriction: single bucket");
  return out;
}

namespace {

// Step sequences a_0..a_L with a_0 = 0 and a_i in {a_{i-1}, a_{i-1}+1},
// encoded by their step bits.
std::vector<std::vector<int>> all_sequences(int levels) {
  std::vector<std::vector<int>> out;
  const std::size_t count = static_cast<std::size_t>(1) << levels;
  out.reserve(count);
  for (std::size_t bits = 0; bits < count; ++bits) {
    std::vector<int> a(static_cast<std::size_t>(levels) + 1, 0);
    for (int i = 1; i <= levels; ++i)
      a[static_cast<std::size_t>(i)] = a[static_cast<std::size_t>(i - 1)] + ((bits >> (i - 1)) & 1 ? 1 : 0);
    out.push_back(std::move(a));
  }
  return out;
}

bool dominates(const std::vector<int>& a, const std::vector<int>& b) {
  // b <= a pointwise and b != a.
  bool strict = false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (b[i] > a[i]) return false;
    if (b[i] < a[i]) strict = true;
  }
  return strict;
}

// Hopcroft-Karp, deterministic by index order.
class HopcroftKarp {
 public:
  HopcroftKarp(std::size_t n, std::vector<std::vector<int>> adj)
      : n_(n), adj_(std::move(adj)), match_l_(n, -1), match_r_(n, -1) {}

  int run() {
    int matching = 0;
    while (bfs()) {
      for (std::size_t u = 0; u < n_; ++u)
        if (match_l_[u] < 0 && dfs(static_cast<int>(u))) ++matching;
    }
    return matching;
  }

  const std::vector<int>& match_left() const { return match_l_; }
  const std::vector<int>& match_right() const { return match_r_; }

 private:
  bool bfs() {
    std::queue<int> q;
    dist_.assign(n_, -1);
    for (std::size_t u = 0; u < n_; ++u) {
      if (match_l_[u] < 0) {
        dist_[u] = 0;
        q.push(static_cast<int>(u));
      }
    }
    bool found = false;
    while (!q.empty()) {
      const int u = q.front();
      q.pop();
      for (int v : adj_[static_cast<std::size_t>(u)]) {
        const int w = match_r_[static_cast<std::size_t>(v)];
        if (w < 0) {
          found = true;
        } else if (dist_[static_cast<std::size_t>(w)] < 0) {
          dist_[static_cast<std::size_t>(w)] = dist_[static_cast<std::size_t>(u)] + 1;
          q.push(w);
        }
      }
    }
    return found;
  }

  bool dfs(int u) {
    for (int v : adj_[static_cast<std::size_t>(u)]) {
      const int w = match_r_[static_cast<std::size_t>(v)];
      if (w < 0 || (dist_[static_cast<std::size_t>(w)] == dist_[static_cast<std::size_t>(u)] + 1 && dfs(w))) {
        match_l_[static_cast<std::size_t>(u)] = v;
        match_r_[static_cast<std::size_t>(v)] = u;
        return true;
      }
    }
    dist_[static_cast<std::size_t>(u)] = -1;
    return false;
  }

  std::size_t n_;
  std::vector<std::vector<int>> adj_;
  std::vector<int> match_l_, match_r_, dist_;
};

// Maximum antichain of the dominance order via matching and the vertex-cover
// construction: free elements (left reached, right unreached) are pairwise
// incomparable and there are exactly n - |matching| of them.
std::vector<std::size_t> max_antichain(const std::vector<std::vector<int>>& seqs) {
  const std::size_t n = seqs.size();
  std::vector<std::vector<int>> adj(n);
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = 0; v < n; ++v)
      if (u != v && dominates(seqs[v], seqs[u])) adj[u].push_back(static_cast<int>(v));

  HopcroftKarp hk(n, adj);
  hk.run();
  const auto& ml = hk.match_left();
  const auto& mr = hk.match_right();

  // Alternating reachability from unmatched left vertices.
  std::vector<char> reach_l(n, 0), reach_r(n, 0);
  std::queue<int> q;
  for (std::size_t u = 0; u < n; ++u) {
    if (ml[u] < 0) {
      reach_l[u] = 1;
      q.push(static_cast<int>(u));
    }
  }
  while (!q.empty()) {
    const int u = q.front();
    q.pop();
    for (int v : adj[static_cast<std::size_t>(u)]) {
      if (ml[static_cast<std::size_t>(u)] == v) continue;
      if (!reach_r[static_cast<std::size_t>(v)]) {
        reach_r[static_cast<std::size_t>(v)] = 1;
        const int w = mr[static_cast<std::size_t>(v)];
        if (w >= 0 && !reach_l[static_cast<std::size_t>(w)]) {
          reach_l[static_cast<std::size_t>(w)] = 1;
          q.push(w);
        }
      }
    }
  }

  std::vector<std::size_t> antichain;
  for (std::size_t u = 0; u < n; ++u)
    if (reach_l[u] && !reach_r[u]) antichain.push_back(u);
  return antichain;
}

}  // namespace

WeightVector sample_weight_vector(std::size_t dim, Rng& rng) {
  std::vector<double> w(dim);
  for (double& v : w) v = rng.uniform();
  std::sort(w.begin(), w.end(), std::greater<double>());
  if (w.front() <= 0.0) w.front() = 0.5;  // not identically zero
  return WeightVector(std::move(w));
}

AntichainInstance antichain_hard_instance(int levels, long long base, std::size_t dim_cap) {
  if (levels < 1) throw ValidationError("antichain_hard_instance: levels must be >= 1");
  if (base < 2) throw ValidationError("antichain_hard_instance: base must be >= 2");

  // d = S^0 + ... + S^L, guarded against the dimension cap.
  std::size_t d = 0;
  double block = 1.0;
  std::vector<std::size_t> block_sizes;
  for (int i = 0; i <= levels; ++i) {
    if (block > static_cast<double>(dim_cap)) throw SizeCapError("antichain_hard_instance: dimension cap exceeded");
    const std::size_t b = static_cast<std::size_t>(block);
    if (d + b > dim_cap) throw SizeCapError("antichain_hard_instance: dimension cap exceeded");
    block_sizes.push_back(b);
    d += b;
    block *= static_cast<double>(base);
  }

  AntichainInstance inst;
  inst.base = base;
  inst.levels = levels;

  std::vector<std::vector<int>> seqs;
  std::vector<std::size_t> picked;
  if (levels <= 16) {
    seqs = all_sequences(levels);
    picked = max_antichain(seqs);
    inst.exact = true;
  } else {
    // Level-slice heuristic: all sequences whose entries sum to the most
    // popular value form an antichain (equal sums + pointwise order forces
    // equality).
    seqs = all_sequences(levels);  // levels > 16 is blocked by the cap above in practice
    std::map<int, std::vector<std::size_t>> by_sum;
    for (std::size_t i = 0; i < seqs.size(); ++i) {
      int s = 0;
      for (int v : seqs[i]) s += v;
      by_sum[s].push_back(i);
    }
    for (const auto& [s, members] : by_sum)
      if (members.size() > picked.size()) picked = members;
    inst.exact = false;
  }

  const double s_d = static_cast<double>(base);
  for (std::size_t idx : picked) {
    const auto& a = seqs[idx];
    CostVector x;
    std::vector<double> w;
    x.reserve(d);
    w.reserve(d);
    for (int i = 0; i <= levels; ++i) {
      const double xv = std::pow(s_d, -static_cast<double>(a[static_cast<std::size_t>(i)]));
      const double wv = std::pow(s_d, static_cast<double>(a[static_cast<std::size_t>(i)] - i));
      for (std::size_t r = 0; r < block_sizes[static_cast<std::size_t>(i)]; ++r) {
        x.push_back(xv);
        w.push_back(wv);
      }
    }
    inst.domain.vectors.push_back(std::move(x));
    inst.weights.emplace_back(std::move(w));
    inst.sequences.push_back(a);
  }
  for (std::size_t i = 0; i < inst.sequences.size(); ++i) {
    std::string label = "a=(";
    for (std::size_t j = 0; j < inst.sequences[i].size(); ++j)
      label += (j ? "," : "") + std::to_string(inst.sequences[i][j]);
    inst.domain.labels.push_back(label + ")");
  }
  return inst;
}

}  // namespace equinorm
