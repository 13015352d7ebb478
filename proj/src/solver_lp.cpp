#include "equinorm/solver/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "equinorm/errors.hpp"

namespace equinorm::solver {

namespace {

constexpr double kPivotTol = 1e-9;
constexpr double kFeasTol = 1e-7;

// Dense tableau simplex working on
//   minimize c.x  s.t.  A x = b,  x >= 0,  b >= 0
// with the basis initialized by the caller.
class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols) : m_(rows), n_(cols), a_(rows, std::vector<double>(cols + 1, 0.0)), basis_(rows, 0) {}

  std::vector<std::vector<double>>& a() { return a_; }
  std::vector<int>& basis() { return basis_; }
  double rhs(std::size_t i) const { return a_[i][n_]; }

  // Price out the objective row for the given costs (minimization).
  void set_objective(const std::vector<double>& costs) {
    cost_ = costs;
    cost_.resize(n_, 0.0);
    reduced_.assign(n_ + 1, 0.0);
    for (std::size_t j = 0; j <= n_; ++j) {
      double z = 0.0;
      for (std::size_t i = 0; i < m_; ++i) z += cost_[static_cast<std::size_t>(basis_[i])] * a_[i][j];
      reduced_[j] = (j < n_ ? cost_[j] : 0.0) - z;
    }
  }

  double objective_value() const { return -reduced_[n_]; }

  // Returns Optimal or Unbounded.  `blocked` marks columns that may not enter.
  LpSolution::Status iterate(const std::vector<char>& blocked, int& iterations) {
    const int bland_after = 10 * static_cast<int>(m_ + n_);
    const int hard_cap = 200 * static_cast<int>(m_ + n_) + 5000;
    while (true) {
      if (iterations > hard_cap) throw NumericError("simplex iteration cap exceeded");
      const bool bland = iterations > bland_after;
      int enter = -1;
      double best = -kPivotTol;
      for (std::size_t j = 0; j < n_; ++j) {
        if (blocked[j]) continue;
        const double rc = reduced_[j];
        if (rc < -kPivotTol) {
          if (bland) {
            enter = static_cast<int>(j);
            break;
          }
          if (rc < best) {
            best = rc;
            enter = static_cast<int>(j);
          }
        }
      }
      if (enter < 0) return LpSolution::Status::Optimal;

      int leave = -1;
      double best_ratio = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < m_; ++i) {
        const double aij = a_[i][static_cast<std::size_t>(enter)];
        if (aij > kPivotTol) {
          const double ratio = a_[i][n_] / aij;
          if (ratio < best_ratio - kPivotTol ||
              (ratio < best_ratio + kPivotTol && (leave < 0 || basis_[i] < basis_[static_cast<std::size_t>(leave)]))) {
            best_ratio = ratio;
            leave = static_cast<int>(i);
          }
        }
      }
      if (leave < 0) return LpSolution::Status::Unbounded;
      pivot(static_cast<std::size_t>(leave), static_cast<std::size_t>(enter));
      ++iterations;
    }
  }

  void pivot(std::size_t row, std::size_t col) {
    const double p = a_[row][col];
    for (double& v : a_[row]) v /= p;
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == row) continue;
      const double f = a_[i][col];
      if (f == 0.0) continue;
      for (std::size_t j = 0; j <= n_; ++j) a_[i][j] -= f * a_[row][j];
    }
    const double fr = reduced_[col];
    if (fr != 0.0) {
      for (std::size_t j = 0; j <= n_; ++j) reduced_[j] -= fr * a_[row][j];
    }
    basis_[row] = static_cast<int>(col);
  }

  std::size_t rows() const { return m_; }
  std::size_t cols() const { return n_; }

 private:
  std::size_t m_, n_;
  std::vector<std::vector<double>> a_;  // includes rhs column n_
  std::vector<int> basis_;
  std::vector<double> cost_;
  std::vector<double> reduced_;  // includes -objective at index n_
};

}  // namespace

LpSolution solve_lp(const LinearProgram& lp) {
  const std::size_t n = lp.objective.size();
  for (const auto& row : lp.rows) {
    if (row.coeffs.size() != n) throw ValidationError("solve_lp: row dimension mismatch");
    if (row.rel != '<' && row.rel != '>' && row.rel != '=') throw ValidationError("solve_lp: bad relation");
  }
  const std::size_t m = lp.rows.size();

  // Normalize rows to nonnegative rhs and count slack columns.
  std::vector<std::vector<double>> coeffs(m);
  std::vector<double> rhs(m);
  std::vector<char> rel(m);
  for (std::size_t i = 0; i < m; ++i) {
    coeffs[i] = lp.rows[i].coeffs;
    rhs[i] = lp.rows[i].rhs;
    rel[i] = lp.rows[i].rel;
    if (rhs[i] < 0) {
      for (double& v : coeffs[i]) v = -v;
      rhs[i] = -rhs[i];
      if (rel[i] == '<') rel[i] = '>';
      else if (rel[i] == '>') rel[i] = '<';
    }
  }
  std::size_t slacks = 0;
  for (std::size_t i = 0; i < m; ++i)
    if (rel[i] != '=') ++slacks;

  const std::size_t total = n + slacks + m;  // structural + slack + artificial
  Tableau t(m, total);
  std::vector<char> artificial(total, 0);
  {
    std::size_t slack_at = n;
    for (std::size_t i = 0; i < m; ++i) {
      auto& row = t.a()[i];
      for (std::size_t j = 0; j < n; ++j) row[j] = coeffs[i][j];
      row[total] = rhs[i];
      const std::size_t art = n + slacks + i;
      artificial[art] = 1;
      if (rel[i] == '<') {
        row[slack_at] = 1.0;
        t.basis()[i] = static_cast<int>(slack_at);
        row[art] = 1.0;  // unused artificial stays nonbasic
        ++slack_at;
      } else if (rel[i] == '>') {
        row[slack_at] = -1.0;
        row[art] = 1.0;
        t.basis()[i] = static_cast<int>(art);
        ++slack_at;
      } else {
        row[art] = 1.0;
        t.basis()[i] = static_cast<int>(art);
      }
    }
  }

  LpSolution sol;
  sol.iterations = 0;

  // Phase 1: minimize the sum of artificials.
  {
    std::vector<double> phase1(total, 0.0);
    for (std::size_t j = 0; j < total; ++j)
      if (artificial[j]) phase1[j] = 1.0;
    t.set_objective(phase1);
    std::vector<char> blocked(total, 0);
    const auto st = t.iterate(blocked, sol.iterations);
    if (st == LpSolution::Status::Unbounded) throw NumericError("phase-1 unbounded");
    if (t.objective_value() > kFeasTol) {
      sol.status = LpSolution::Status::Infeasible;
      return sol;
    }
    // Pivot remaining zero-level artificials out of the basis when possible.
    for (std::size_t i = 0; i < m; ++i) {
      const int b = t.basis()[i];
      if (b >= 0 && artificial[static_cast<std::size_t>(b)]) {
        for (std::size_t j = 0; j < total; ++j) {
          if (!artificial[j] && std::abs(t.a()[i][j]) > 1e-7) {
            t.pivot(i, j);
            break;
          }
        }
      }
    }
  }

  // Phase 2: original objective, artificials blocked from re-entering.
  {
    std::vector<double> costs(total, 0.0);
    for (std::size_t j = 0; j < n; ++j) costs[j] = lp.maximize ? -lp.objective[j] : lp.objective[j];
    t.set_objective(costs);
    std::vector<char> blocked(artificial.begin(), artificial.end());
    const auto st = t.iterate(blocked, sol.iterations);
    if (st == LpSolution::Status::Unbounded) {
      sol.status = LpSolution::Status::Unbounded;
      return sol;
    }
  }

  sol.status = LpSolution::Status::Optimal;
  sol.x.assign(n, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    const int b = t.basis()[i];
    if (b >= 0 && static_cast<std::size_t>(b) < n) sol.x[static_cast<std::size_t>(b)] = t.rhs(i);
  }
  double v = 0.0;
  for (std::size_t j = 0; j < n; ++j) v += lp.objective[j] * sol.x[j];
  sol.value = v;
  return sol;
}

}  // namespace equinorm::solver
