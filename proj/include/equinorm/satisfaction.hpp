#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "equinorm/norms.hpp"

namespace equinorm::sat {

// An ordered list of distinct object ids; position in the list is the order.
struct Satisfier {
  std::vector<std::size_t> objects;

  bool empty() const { return objects.empty(); }
  std::size_t size() const { return objects.size(); }
};

// A set of clients, a set of objects each satisfying some clients, and a
// time vector per (satisfier, order) obeying downward closure: restricting a
// satisfier to its objects with time <= T never increases a survivor's time.
class Problem {
 public:
  virtual ~Problem() = default;

  std::size_t client_count() const { return client_count_; }
  std::size_t object_count() const { return satisfies_.size(); }
  const std::vector<std::size_t>& clients_of(std::size_t object) const { return satisfies_[object]; }
  double gamma() const { return gamma_; }
  const std::string& kind() const { return kind_; }

  virtual std::vector<double> object_times(const Satisfier& sat) const = 0;
  // Lower bound on every positive satisfier cost (used to anchor budgets).
  virtual double min_positive_cost() const = 0;
  // Upper bound on every finite satisfier cost (nontermination guard).
  virtual double finite_cost_bound() const = 0;
  // Exhaustive (1, B)-satisfier: maximum client coverage under cost <= B,
  // ties broken deterministically toward earlier enumeration order.
  virtual Satisfier budget_satisfier(double budget) const = 0;

 protected:
  void validate_satisfier(const Satisfier& sat) const;

  std::size_t client_count_ = 0;
  std::vector<std::vector<std::size_t>> satisfies_;
  double gamma_ = 1.0;
  std::string kind_;
};

// Per-client time of the cheapest satisfying object; infinity when uncovered.
std::vector<double> satisfaction_times(const Problem& problem, const Satisfier& sat);

// Maximum object time; 0 for the empty satisfier; infinity propagates.
double cost(const Problem& problem, const Satisfier& sat);

// Union of the parts in order, duplicates keep their first occurrence.
Satisfier compose(const std::vector<Satisfier>& parts);

// Downward closure at threshold T, within tolerance.
bool check_downward_closure(const Problem& problem, const Satisfier& sat, double t_cut);

// Composed time of a fresh object exceeds its own part's time by at most
// gamma times the earlier parts' total cost.
bool check_composability(const Problem& problem, const std::vector<Satisfier>& parts);

using SatisfierOracle = std::function<Satisfier(double)>;

struct IterativeResult {
  Satisfier satisfier;
  std::vector<double> budgets;
  double theta = 0.0;
  double guarantee = 0.0;  // beta * theta^2
  double cost_scale = 1.0;
};

// Budgets cost_scale * theta^j with theta = sqrt(gamma) + 1; each round takes
// a (beta, B)-satisfier from the oracle and the rounds compose into a
// beta*(sqrt(gamma)+1)^2 simultaneous approximation for every symmetric
// monotonic norm of the client satisfaction times.
IterativeResult iterative_ordering(const Problem& problem, double beta = 1.0,
                                   const SatisfierOracle& oracle = {});

// Every full-coverage satisfaction-time vector, enumerated exhaustively.
// Throws past the state cap.
std::vector<std::vector<double>> all_satisfaction_vectors(const Problem& problem, double cap = 1e7);

// min over all full-coverage satisfiers of the sum of the k largest
// satisfaction times, for every k (index k-1).  Exhaustive with per-kind
// pruning; throws past the state cap.
std::vector<double> best_topk_satisfaction(const Problem& problem, double cap = 1e7);

// min over all full-coverage satisfiers of max(L1/L1*, Linf/Linf*).
double best_simultaneous_ratio_l1_linf(const Problem& problem, double cap = 1e7);

class CompletionTimesProblem : public Problem {
 public:
  // p is jobs x machines, positive entries; object j*d + i assigns job j to
  // machine i, its time is the prefix load of machine i up to that object.
  explicit CompletionTimesProblem(std::vector<std::vector<double>> p);

  std::vector<double> object_times(const Satisfier& sat) const override;
  double min_positive_cost() const override;
  double finite_cost_bound() const override;
  Satisfier budget_satisfier(double budget) const override;

  const std::vector<std::vector<double>>& processing() const { return p_; }
  std::size_t jobs() const { return p_.size(); }
  std::size_t machines() const { return p_.empty() ? 0 : p_.front().size(); }

 private:
  std::vector<std::vector<double>> p_;
};

class SetCoverProblem : public Problem {
 public:
  SetCoverProblem(std::size_t n_elements, std::vector<std::vector<std::size_t>> sets,
                  std::string kind = "setcover");

  std::vector<double> object_times(const Satisfier& sat) const override;
  double min_positive_cost() const override { return 1.0; }
  double finite_cost_bound() const override { return static_cast<double>(object_count()); }
  Satisfier budget_satisfier(double budget) const override;
};

class TspProblem : public Problem {
 public:
  // Symmetric metric with zero diagonal and triangle inequality; paths must
  // start at v0, otherwise every time is infinite.
  TspProblem(std::vector<std::vector<double>> dist, std::size_t v0);

  std::vector<double> object_times(const Satisfier& sat) const override;
  double min_positive_cost() const override;
  double finite_cost_bound() const override;
  Satisfier budget_satisfier(double budget) const override;

  std::size_t v0() const { return v0_; }
  const std::vector<std::vector<double>>& dist() const { return dist_; }

 private:
  std::vector<std::vector<double>> dist_;
  std::size_t v0_ = 0;
};

CompletionTimesProblem make_completion_times(std::vector<std::vector<double>> p);
SetCoverProblem make_set_cover(std::size_t n_elements, std::vector<std::vector<std::size_t>> sets);
SetCoverProblem make_vertex_cover(std::size_t n_vertices,
                                  const std::vector<std::pair<std::size_t, std::size_t>>& edges);
TspProblem make_tsp(std::vector<std::vector<double>> dist, std::size_t v0);

// Partial schedule with makespan <= 2*budget covering at least as many jobs
// as any schedule with makespan <= budget: LP relaxation, bucket filling by
// decreasing processing time, maximum bipartite matching.  Per-machine output
// order is decreasing processing time.
Satisfier completion_times_satisfier(const CompletionTimesProblem& problem, double budget);

struct Graph {
  std::size_t vertex_count = 0;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
};

// Cycle v1..v2n plus hub v0 adjacent to the odd-index vertices.  The unique
// size-n vertex cover (odd vertices) has total cover time 3n(n+1)/2 in every
// order, while (v0, v1, v3, ...) achieves n(n+4).
Graph vc_lower_bound_instance(std::size_t n);

// Two machines, three jobs: p = [[1, 1+delta], [1, 1+delta], [1+mu, 2]] with
// mu = (sqrt(61)-7)/3, delta = (sqrt(61)-7)/6; the best simultaneous
// {L1, Linf} ratio over all schedules is (sqrt(61)-1)/6.
std::vector<std::vector<double>> ct_lower_bound_instance();

}  // namespace equinorm::sat
