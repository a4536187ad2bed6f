#ifndef SUPERCYCLIC_SIMPLEX_HPP_
#define SUPERCYCLIC_SIMPLEX_HPP_

// Small dense two-phase tableau simplex.
//
//   maximize c'x  subject to  A x <= b,  x >= 0
//
// Phase one adds a single auxiliary column and pivots it in on the most
// violated row. Entering columns use Dantzig's rule until a run of degenerate
// pivots is seen, then switch to Bland's rule, which cannot cycle.

#include <cmath>
#include <cstddef>
#include <limits>
#include <utility>
#include <vector>

namespace supercyclic::lp {

enum class Status { Optimal, Infeasible, Unbounded, IterationLimit };

struct Solution {
  Status status = Status::Infeasible;
  double objective = 0;
  std::vector<double> x;
};

class DenseSimplex {
 public:
  /// `a` is row-major with rows.size() == b.size() and every row of length c.size().
  DenseSimplex(const std::vector<std::vector<double>>& a, const std::vector<double>& b, const std::vector<double>& c,
               double eps = 1e-11)
      : m_(b.size()), n_(c.size()), eps_(eps), nonbasic_(n_ + 1), basic_(m_), d_(m_ + 2, std::vector<double>(n_ + 2)) {
    for (std::size_t i = 0; i < m_; ++i) {
      for (std::size_t j = 0; j < n_; ++j) d_[i][j] = a[i][j];
      basic_[i] = static_cast<long>(n_ + i);
      d_[i][n_] = -1;
      d_[i][n_ + 1] = b[i];
    }
    for (std::size_t j = 0; j < n_; ++j) {
      nonbasic_[j] = static_cast<long>(j);
      d_[m_][j] = -c[j];
    }
    nonbasic_[n_] = -1;
    d_[m_ + 1][n_] = 1;
    max_iterations_ = 50 * (m_ + n_ + 10);
  }

  Solution solve() {
    Solution sol;
    std::size_t r = 0;
    for (std::size_t i = 1; i < m_; ++i) {
      if (d_[i][n_ + 1] < d_[r][n_ + 1]) r = i;
    }
    if (m_ > 0 && d_[r][n_ + 1] < -eps_) {
      pivot(r, n_);
      const Status s = run(2);
      if (s == Status::IterationLimit) return finish(sol, s);
      if (s != Status::Optimal || d_[m_ + 1][n_ + 1] < -eps_) return finish(sol, Status::Infeasible);
      for (std::size_t i = 0; i < m_; ++i) {
        if (basic_[i] == -1) {
          std::size_t s2 = 0;
          for (std::size_t j = 1; j <= n_; ++j) {
            if (better(d_[i][j], nonbasic_[j], d_[i][s2], nonbasic_[s2])) s2 = j;
          }
          pivot(i, s2);
        }
      }
    }
    return finish(sol, run(1));
  }

 private:
  static bool better(double v1, long id1, double v2, long id2) {
    return v1 < v2 || (v1 == v2 && id1 < id2);
  }

  Solution& finish(Solution& sol, Status s) {
    sol.status = s;
    sol.x.assign(n_, 0.0);
    for (std::size_t i = 0; i < m_; ++i) {
      if (basic_[i] >= 0 && static_cast<std::size_t>(basic_[i]) < n_) sol.x[basic_[i]] = d_[i][n_ + 1];
    }
    sol.objective = s == Status::Optimal ? d_[m_][n_ + 1]
                    : s == Status::Unbounded ? std::numeric_limits<double>::infinity()
                                             : -std::numeric_limits<double>::infinity();
    return sol;
  }

  void pivot(std::size_t r, std::size_t s) {
    std::vector<double>& row = d_[r];
    const double inv = 1.0 / row[s];
    for (std::size_t i = 0; i < m_ + 2; ++i) {
      if (i == r || std::abs(d_[i][s]) <= eps_ * 1e-3) continue;
      std::vector<double>& other = d_[i];
      const double f = other[s] * inv;
      for (std::size_t j = 0; j < n_ + 2; ++j) other[j] -= row[j] * f;
      other[s] = row[s] * f;
    }
    for (std::size_t j = 0; j < n_ + 2; ++j) {
      if (j != s) row[j] *= inv;
    }
    for (std::size_t i = 0; i < m_ + 2; ++i) {
      if (i != r) d_[i][s] *= -inv;
    }
    row[s] = inv;
    std::swap(basic_[r], nonbasic_[s]);
  }

  Status run(int phase) {
    const std::size_t obj = phase == 1 ? m_ : m_ + 1;
    std::size_t degenerate_run = 0;
    for (std::size_t iter = 0; iter < max_iterations_; ++iter) {
      const bool bland = degenerate_run > 50;
      long s = -1;
      for (std::size_t j = 0; j <= n_; ++j) {
        if (nonbasic_[j] == -phase) continue;
        const double v = d_[obj][j];
        if (bland) {
          if (v < -eps_ && (s == -1 || nonbasic_[j] < nonbasic_[s])) s = static_cast<long>(j);
        } else if (s == -1 || better(v, nonbasic_[j], d_[obj][s], nonbasic_[s])) {
          s = static_cast<long>(j);
        }
      }
      if (s == -1 || d_[obj][s] >= -eps_) return Status::Optimal;
      long r = -1;
      for (std::size_t i = 0; i < m_; ++i) {
        if (d_[i][s] <= eps_) continue;
        if (r == -1) {
          r = static_cast<long>(i);
          continue;
        }
        const double lhs = d_[i][n_ + 1] / d_[i][s];
        const double rhs = d_[r][n_ + 1] / d_[r][s];
        if (lhs < rhs || (lhs == rhs && basic_[i] < basic_[r])) r = static_cast<long>(i);
      }
      if (r == -1) return Status::Unbounded;
      const double step = d_[r][n_ + 1] / d_[r][s];
      degenerate_run = step <= eps_ ? degenerate_run + 1 : 0;
      pivot(static_cast<std::size_t>(r), static_cast<std::size_t>(s));
    }
    return Status::IterationLimit;
  }

  std::size_t m_, n_;
  double eps_;
  std::vector<long> nonbasic_, basic_;
  std::vector<std::vector<double>> d_;
  std::size_t max_iterations_;
};

inline Solution maximize(const std::vector<std::vector<double>>& a, const std::vector<double>& b,
                         const std::vector<double>& c) {
  return DenseSimplex(a, b, c).solve();
}

}  // namespace supercyclic::lp

#endif  // SUPERCYCLIC_SIMPLEX_HPP_
