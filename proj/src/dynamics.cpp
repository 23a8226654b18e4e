#include "peakon/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <nlohmann/json.hpp>

#include "peakon/errors.hpp"

namespace peakon {

void PeakonState::validate() const {
  if (x.size() != p.size()) {
    throw InvalidState("state has " + std::to_string(x.size()) + " positions but " +
                       std::to_string(p.size()) + " momenta");
  }
  if (x.empty()) throw InvalidState("state has no particles");
  if (!std::isfinite(t)) throw InvalidState("state time is not finite");
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!std::isfinite(x[i]) || !std::isfinite(p[i])) {
      throw InvalidState("non-finite entry at particle " + std::to_string(i));
    }
    if (!(p[i] > 0.0)) {
      throw InvalidState("momentum p[" + std::to_string(i) + "] = " + std::to_string(p[i]) +
                         " is not positive");
    }
    if (i > 0 && !(x[i] > x[i - 1])) {
      throw InvalidState("positions not strictly increasing at index " + std::to_string(i));
    }
  }
}

double PeakonState::total_momentum() const {
  // Neumaier summation: the total is compared against exact conservation.
  double sum = 0.0;
  double comp = 0.0;
  for (double v : p) {
    const double t = sum + v;
    comp += std::abs(sum) >= std::abs(v) ? (sum - t) + v : (v - t) + sum;
    sum = t;
  }
  return sum + comp;
}

DiscreteMeasure PeakonState::measure() const { return DiscreteMeasure(x, p); }

namespace {

double sgn(double v) { return static_cast<double>((v > 0.0) - (v < 0.0)); }

}  // namespace

StateDerivative rhs_reference(const CHKernel& kernel, const PeakonState& state) {
  state.validate();
  const double a = kernel.alpha();
  const std::size_t n = state.size();
  StateDerivative d{std::vector<double>(n, 0.0), std::vector<double>(n, 0.0)};
  for (std::size_t j = 0; j < n; ++j) {
    double sx = 0.0;
    double sp = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double diff = state.x[j] - state.x[i];
      const double e = std::exp(-std::abs(diff) / a);
      sx += state.p[i] * e;
      if (i != j) sp += state.p[i] * sgn(diff) * e;
    }
    d.dx[j] = sx / (2.0 * a);
    d.dp[j] = state.p[j] * sp / (2.0 * a * a);
  }
  return d;
}

namespace detail {

void rhs_fast_unchecked(double alpha, std::span<const double> x, std::span<const double> p,
                        std::span<double> dx, std::span<double> dp) {
  const std::size_t n = x.size();
  if (n == 0) return;
  // left[j] = sum_{i<j} p_i e^{-(x_j - x_i)/a}, accumulated in dp as scratch.
  // right[j] = sum_{i>j} p_i e^{-(x_i - x_j)/a}, accumulated in dx.
  dp[0] = 0.0;
  for (std::size_t j = 1; j < n; ++j) {
    dp[j] = (dp[j - 1] + p[j - 1]) * std::exp(-(x[j] - x[j - 1]) / alpha);
  }
  dx[n - 1] = 0.0;
  for (std::size_t j = n - 1; j-- > 0;) {
    dx[j] = (dx[j + 1] + p[j + 1]) * std::exp(-(x[j + 1] - x[j]) / alpha);
  }
  const double cx = 1.0 / (2.0 * alpha);
  const double cp = 1.0 / (2.0 * alpha * alpha);
  for (std::size_t j = 0; j < n; ++j) {
    const double left = dp[j];
    const double right = dx[j];
    dx[j] = cx * (left + p[j] + right);
    dp[j] = cp * p[j] * (left - right);
  }
}

}  // namespace detail

StateDerivative rhs_fast(const CHKernel& kernel, const PeakonState& state) {
  state.validate();
  const std::size_t n = state.size();
  StateDerivative d{std::vector<double>(n), std::vector<double>(n)};
  detail::rhs_fast_unchecked(kernel.alpha(), state.x, state.p, d.dx, d.dp);
  return d;
}

InvariantSet invariants(const CHKernel& kernel, const PeakonState& state, int n_max) {
  if (n_max < 1) throw Error("invariants: n_max must be >= 1");
  state.validate();
  const double a = kernel.alpha();
  const std::size_t n = state.size();

  InvariantSet out;
  out.P = state.total_momentum();
  double h = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      h += state.p[i] * state.p[j] * std::exp(-std::abs(state.x[i] - state.x[j]) / a);
    }
  }
  out.H = h / (4.0 * a);

  std::vector<double> lax(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      lax[i * n + j] =
          state.p[j] * std::exp(-std::abs(state.x[i] - state.x[j]) / (2.0 * a)) / (2.0 * a);
    }
  }
  std::vector<double> power = lax;
  std::vector<double> next(n * n);
  for (int k = 1; k <= n_max; ++k) {
    if (k > 1) {
      std::fill(next.begin(), next.end(), 0.0);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t l = 0; l < n; ++l) {
          const double v = power[i * n + l];
          for (std::size_t j = 0; j < n; ++j) next[i * n + j] += v * lax[l * n + j];
        }
      }
      power.swap(next);
    }
    double trace = 0.0;
    for (std::size_t i = 0; i < n; ++i) trace += power[i * n + i];
    out.Hn.push_back(trace);
  }
  return out;
}

double BoundReport::min_slack() const {
  double m = std::numeric_limits<double>::infinity();
  for (const auto* v : {&position_lower, &position_upper, &momentum_lower, &momentum_upper}) {
    for (double s : *v) m = std::min(m, s);
  }
  return m;
}

BoundReport check_bounds(const PeakonState& initial, const PeakonState& current,
                         const CHKernel& kernel) {
  if (initial.size() != current.size()) {
    throw InvalidState("check_bounds: particle counts differ");
  }
  if (current.t < initial.t) throw InvalidState("check_bounds: current state precedes initial");
  const double a = kernel.alpha();
  const double h1 = initial.total_momentum() / (2.0 * a);
  const double t = current.t - initial.t;
  const double grow = std::exp(h1 * t / a);
  const double shrink = std::exp(-h1 * t / a);

  BoundReport r;
  const std::size_t n = initial.size();
  r.position_lower.resize(n);
  r.position_upper.resize(n);
  r.momentum_lower.resize(n);
  r.momentum_upper.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    r.position_lower[i] = current.x[i] - initial.x[i];
    r.position_upper[i] = h1 * t + initial.x[i] - current.x[i];
    r.momentum_lower[i] = current.p[i] - initial.p[i] * shrink;
    r.momentum_upper[i] = initial.p[i] * grow - current.p[i];
  }
  return r;
}

void to_json(nlohmann::json& j, const PeakonState& state) {
  j = nlohmann::json{{"t", state.t}, {"x", state.x}, {"p", state.p}};
}

void from_json(const nlohmann::json& j, PeakonState& state) {
  state.t = j.at("t").get<double>();
  state.x = j.at("x").get<std::vector<double>>();
  state.p = j.at("p").get<std::vector<double>>();
}

}  // namespace peakon
