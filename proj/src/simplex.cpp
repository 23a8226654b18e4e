#include "peakon/simplex.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace peakon::lp {

Problem::Problem(std::size_t rows_, std::size_t cols_)
    : rows(rows_), cols(cols_), A(rows_ * cols_, 0.0), b(rows_, 0.0), c(cols_, 0.0) {}

namespace {

// Tableau over the current nonbasic columns. Row `m` holds the negated
// reduced costs, column `n` the right-hand side.
class Tableau {
 public:
  Tableau(const Problem& p)
      : m_(p.rows), n_(p.cols), width_(p.cols + 1), d_((p.rows + 1) * (p.cols + 1), 0.0),
        basic_(p.rows), nonbasic_(p.cols) {
    for (std::size_t i = 0; i < m_; ++i) {
      for (std::size_t j = 0; j < n_; ++j) at(i, j) = p.a(i, j);
      at(i, n_) = p.b[i];
      basic_[i] = n_ + i;
    }
    for (std::size_t j = 0; j < n_; ++j) at(m_, j) = -p.c[j];
    std::iota(nonbasic_.begin(), nonbasic_.end(), std::size_t{0});
  }

  Solution run(const Options& opt) {
    Solution sol;
    constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();
    while (true) {
      std::size_t s = npos;
      for (std::size_t j = 0; j < n_; ++j) {
        if (at(m_, j) < -opt.eps && (s == npos || nonbasic_[j] < nonbasic_[s])) s = j;
      }
      if (s == npos) break;

      std::size_t r = npos;
      double best = 0.0;
      for (std::size_t i = 0; i < m_; ++i) {
        const double piv = at(i, s);
        if (piv <= opt.eps) continue;
        const double ratio = at(i, n_) / piv;
        if (r == npos || ratio < best || (ratio == best && basic_[i] < basic_[r])) {
          r = i;
          best = ratio;
        }
      }
      if (r == npos) {
        sol.status = Status::Unbounded;
        sol.pivots = pivots_;
        return sol;
      }
      if (pivots_ >= opt.max_pivots) {
        sol.status = Status::IterationLimit;
        break;
      }
      pivot(r, s);
    }

    sol.pivots = pivots_;
    sol.objective = at(m_, n_);
    sol.x.assign(n_, 0.0);
    for (std::size_t i = 0; i < m_; ++i) {
      if (basic_[i] < n_) sol.x[basic_[i]] = at(i, n_);
    }
    return sol;
  }

 private:
  double& at(std::size_t i, std::size_t j) { return d_[i * width_ + j]; }

  void pivot(std::size_t r, std::size_t s) {
    ++pivots_;
    double* row_r = &d_[r * width_];
    const double inv = 1.0 / row_r[s];
    for (std::size_t i = 0; i <= m_; ++i) {
      if (i == r) continue;
      double* row_i = &d_[i * width_];
      const double f = row_i[s] * inv;
      if (f == 0.0) continue;
      for (std::size_t j = 0; j < width_; ++j) row_i[j] -= row_r[j] * f;
      row_i[s] = -f;
    }
    for (std::size_t j = 0; j < width_; ++j) row_r[j] *= inv;
    row_r[s] = inv;
    std::swap(basic_[r], nonbasic_[s]);
  }

  std::size_t m_;
  std::size_t n_;
  std::size_t width_;
  std::vector<double> d_;
  std::vector<std::size_t> basic_;
  std::vector<std::size_t> nonbasic_;
  std::size_t pivots_ = 0;
};

}  // namespace

Solution solve(const Problem& problem, const Options& options) {
  if (problem.A.size() != problem.rows * problem.cols || problem.b.size() != problem.rows ||
      problem.c.size() != problem.cols) {
    throw std::invalid_argument("lp::solve: inconsistent problem dimensions");
  }
  for (double bi : problem.b) {
    if (!(bi >= 0.0)) throw std::invalid_argument("lp::solve: right-hand side must be >= 0");
  }
  Tableau tableau(problem);
  return tableau.run(options);
}

}  // namespace peakon::lp
