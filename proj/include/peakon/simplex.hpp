#pragma once

#include <cstddef>
#include <vector>

namespace peakon::lp {

/// Dense linear program in inequality form:
///
///   maximize c.x   subject to   A x <= b,  x >= 0,
///
/// with b >= 0 so that the origin is a feasible starting vertex. A is stored
/// row-major with `rows` rows and `cols` columns.
struct Problem {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> A;
  std::vector<double> b;
  std::vector<double> c;

  Problem(std::size_t rows, std::size_t cols);

  double& a(std::size_t i, std::size_t j) { return A[i * cols + j]; }
  [[nodiscard]] double a(std::size_t i, std::size_t j) const { return A[i * cols + j]; }
};

enum class Status { Optimal, Unbounded, IterationLimit };

struct Solution {
  Status status = Status::Optimal;
  double objective = 0.0;
  std::vector<double> x;
  std::size_t pivots = 0;
};

struct Options {
  double eps = 1e-11;
  std::size_t max_pivots = 1'000'000;
};

/// Primal tableau simplex with Bland's rule: the entering column is the
/// lowest-index variable with positive reduced cost and the leaving row is
/// the minimum ratio, ties broken by lowest basic-variable index. Bland's
/// rule cannot cycle, so degenerate problems terminate.
///
/// Throws std::invalid_argument if b has a negative entry or dimensions
/// are inconsistent.
Solution solve(const Problem& problem, const Options& options = {});

}  // namespace peakon::lp
