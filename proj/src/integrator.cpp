#include "peakon/integrator.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

#include "peakon/errors.hpp"

namespace peakon {

namespace {

// Flat phase vector y = (x_1..x_N, p_1..p_N).
using Vec = std::vector<double>;

void eval_rhs(double alpha, std::size_t n, const Vec& y, Vec& f) {
  std::span<const double> ys(y);
  std::span<double> fs(f);
  detail::rhs_fast_unchecked(alpha, ys.first(n), ys.subspan(n), fs.first(n), fs.subspan(n));
}

Vec pack(const PeakonState& s) {
  Vec y(s.x);
  y.insert(y.end(), s.p.begin(), s.p.end());
  return y;
}

PeakonState unpack(const Vec& y, std::size_t n, double t) {
  PeakonState s;
  s.t = t;
  s.x.assign(y.begin(), y.begin() + static_cast<std::ptrdiff_t>(n));
  s.p.assign(y.begin() + static_cast<std::ptrdiff_t>(n), y.end());
  return s;
}

StateDerivative unpack_rate(const Vec& f, std::size_t n) {
  StateDerivative d;
  d.dx.assign(f.begin(), f.begin() + static_cast<std::ptrdiff_t>(n));
  d.dp.assign(f.begin() + static_cast<std::ptrdiff_t>(n), f.end());
  return d;
}

bool admissible(const Vec& y, std::size_t n, double min_gap) {
  for (std::size_t i = 0; i < 2 * n; ++i) {
    if (!std::isfinite(y[i])) return false;
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!(y[n + i] > 0.0)) return false;
    if (i > 0 && !(y[i] - y[i - 1] >= min_gap)) return false;
  }
  return true;
}

void rk4(double alpha, std::size_t n, const Vec& y, const Vec& f0, double h, Vec& out,
         std::array<Vec, 4>& k, Vec& tmp) {
  const std::size_t m = 2 * n;
  k[0] = f0;
  for (std::size_t i = 0; i < m; ++i) tmp[i] = y[i] + 0.5 * h * k[0][i];
  eval_rhs(alpha, n, tmp, k[1]);
  for (std::size_t i = 0; i < m; ++i) tmp[i] = y[i] + 0.5 * h * k[1][i];
  eval_rhs(alpha, n, tmp, k[2]);
  for (std::size_t i = 0; i < m; ++i) tmp[i] = y[i] + h * k[2][i];
  eval_rhs(alpha, n, tmp, k[3]);
  for (std::size_t i = 0; i < m; ++i) {
    out[i] = y[i] + h / 6.0 * (k[0][i] + 2.0 * k[1][i] + 2.0 * k[2][i] + k[3][i]);
  }
}

// Dormand-Prince 5(4) tableau; the system is autonomous so the nodes are
// not needed. Row 6 doubles as the fifth-order weights.
constexpr double kA[7][6] = {
    {},
    {1.0 / 5},
    {3.0 / 40, 9.0 / 40},
    {44.0 / 45, -56.0 / 15, 32.0 / 9},
    {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729},
    {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656},
    {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84},
};
// Difference between the fifth- and fourth-order weights.
constexpr double kE[7] = {71.0 / 57600,  0.0,         -71.0 / 16695, 71.0 / 1920,
                          -17253.0 / 339200, 22.0 / 525, -1.0 / 40};

struct Stepper {
  const CHKernel& kernel;
  const IntegratorOptions& opt;
  std::size_t n;

  std::vector<TrajectoryNode> run(const PeakonState& initial, double t_end) const {
    initial.validate();
    if (!(t_end >= initial.t)) {
      throw Error("integrate: t_end precedes the initial time");
    }
    const double alpha = kernel.alpha();
    const double min_gap = opt.gap_floor * alpha;
    const std::size_t m = 2 * n;

    Vec y = pack(initial);
    Vec f(m);
    eval_rhs(alpha, n, y, f);
    std::vector<TrajectoryNode> nodes;
    nodes.push_back({initial, unpack_rate(f, n)});
    if (t_end == initial.t) return nodes;

    Vec y_new(m);
    Vec f_new(m);
    Vec tmp(m);
    double t = initial.t;

    if (opt.scheme == Scheme::RK4) {
      if (!(opt.dt > 0.0)) throw Error("integrate: RK4 requires dt > 0");
      const double span = t_end - initial.t;
      const auto steps =
          static_cast<std::size_t>(std::max(1.0, std::ceil(span / opt.dt - 1e-9)));
      const double h = span / static_cast<double>(steps);
      std::array<Vec, 4> k{Vec(m), Vec(m), Vec(m), Vec(m)};
      for (std::size_t s = 1; s <= steps; ++s) {
        rk4(alpha, n, y, f, h, y_new, k, tmp);
        const double t_new = s == steps ? t_end : initial.t + h * static_cast<double>(s);
        if (!admissible(y_new, n, min_gap)) {
          throw InvariantBreach("RK4 step to t = " + std::to_string(t_new) +
                                " left the ordered positive-momentum domain; reduce dt");
        }
        y.swap(y_new);
        eval_rhs(alpha, n, y, f);
        nodes.push_back({unpack(y, n, t_new), unpack_rate(f, n)});
      }
      return nodes;
    }

    // Adaptive Dormand-Prince with first-same-as-last reuse of f.
    std::array<Vec, 7> k;
    for (auto& v : k) v.assign(m, 0.0);
    double h = std::min({opt.dt > 0.0 ? opt.dt : 1e-3, opt.max_dt, t_end - t});
    int halvings = 0;
    while (t < t_end) {
      bool last = false;
      if (t + h >= t_end) {
        h = t_end - t;
        last = true;
      }
      k[0] = f;
      for (int s = 1; s < 7; ++s) {
        for (std::size_t i = 0; i < m; ++i) {
          double acc = 0.0;
          for (int r = 0; r < s; ++r) acc += kA[s][r] * k[static_cast<std::size_t>(r)][i];
          tmp[i] = y[i] + h * acc;
        }
        eval_rhs(alpha, n, tmp, k[static_cast<std::size_t>(s)]);
      }
      // Stage 7 is evaluated at the fifth-order solution.
      y_new = tmp;
      f_new = k[6];

      double err = 0.0;
      for (std::size_t i = 0; i < m; ++i) {
        double e = 0.0;
        for (std::size_t s = 0; s < 7; ++s) e += kE[s] * k[s][i];
        e *= h;
        const double scale = opt.atol + opt.rtol * std::max(std::abs(y[i]), std::abs(y_new[i]));
        err += (e / scale) * (e / scale);
      }
      err = std::sqrt(err / static_cast<double>(m));

      const bool ok = std::isfinite(err) && err <= 1.0;
      if (ok && admissible(y_new, n, min_gap)) {
        t = last ? t_end : t + h;
        y.swap(y_new);
        f.swap(f_new);
        nodes.push_back({unpack(y, n, t), unpack_rate(f, n)});
        halvings = 0;
        const double grow = err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
        h = std::min(h * grow, opt.max_dt);
        continue;
      }
      if (ok || !std::isfinite(err)) {
        // Accurate by the error estimate but outside the domain (or blew up).
        h *= 0.5;
        if (++halvings > opt.max_halvings) {
          throw StepRejected("adaptive step rejected after " + std::to_string(opt.max_halvings) +
                             " halvings at t = " + std::to_string(t));
        }
      } else {
        h *= std::clamp(0.9 * std::pow(err, -0.2), 0.1, 0.9);
      }
      if (h <= 1e-15 * std::max(1.0, std::abs(t))) {
        throw StepRejected("adaptive step size underflow at t = " + std::to_string(t));
      }
    }
    return nodes;
  }
};

}  // namespace

Trajectory::Trajectory(std::vector<TrajectoryNode> nodes) : nodes_(std::move(nodes)) {
  if (nodes_.empty()) throw Error("Trajectory: no nodes");
  for (std::size_t i = 1; i < nodes_.size(); ++i) {
    if (!(nodes_[i].state.t > nodes_[i - 1].state.t)) {
      throw Error("Trajectory: node times must increase");
    }
  }
}

PeakonState Trajectory::state_at(double t) const {
  if (t < t_begin() || t > t_end()) {
    throw std::out_of_range("Trajectory::state_at: t = " + std::to_string(t) +
                            " outside [" + std::to_string(t_begin()) + ", " +
                            std::to_string(t_end()) + "]");
  }
  auto it = std::upper_bound(nodes_.begin(), nodes_.end(), t,
                             [](double v, const TrajectoryNode& nd) { return v < nd.state.t; });
  if (it == nodes_.end()) return nodes_.back().state;
  const TrajectoryNode& b = *it;
  const TrajectoryNode& a = *(it - 1);
  if (t == a.state.t) return a.state;

  const double h = b.state.t - a.state.t;
  const double s = (t - a.state.t) / h;
  const double s2 = s * s;
  const double s3 = s2 * s;
  const double h00 = 2 * s3 - 3 * s2 + 1;
  const double h10 = s3 - 2 * s2 + s;
  const double h01 = -2 * s3 + 3 * s2;
  const double h11 = s3 - s2;

  PeakonState out;
  out.t = t;
  const std::size_t n = a.state.size();
  out.x.resize(n);
  out.p.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.x[i] = h00 * a.state.x[i] + h10 * h * a.rate.dx[i] + h01 * b.state.x[i] +
               h11 * h * b.rate.dx[i];
    out.p[i] = h00 * a.state.p[i] + h10 * h * a.rate.dp[i] + h01 * b.state.p[i] +
               h11 * h * b.rate.dp[i];
  }
  return out;
}

Trajectory integrate(const CHKernel& kernel, const PeakonState& initial, double t_end,
                     const IntegratorOptions& options) {
  Stepper stepper{kernel, options, initial.size()};
  return Trajectory(stepper.run(initial, t_end));
}

PeakonState step(const CHKernel& kernel, const PeakonState& state, double dt,
                 const IntegratorOptions& options) {
  if (!(dt >= 0.0)) throw Error("step: dt must be >= 0");
  state.validate();
  if (dt == 0.0) return state;
  IntegratorOptions opt = options;
  if (opt.scheme == Scheme::RK4) opt.dt = dt;
  Stepper stepper{kernel, opt, state.size()};
  return stepper.run(state, state.t + dt).back().state;
}

PeakonState rk4_step_raw(const CHKernel& kernel, const PeakonState& state, double dt) {
  const std::size_t n = state.size();
  const std::size_t m = 2 * n;
  Vec y = pack(state);
  Vec f(m);
  Vec out(m);
  Vec tmp(m);
  std::array<Vec, 4> k{Vec(m), Vec(m), Vec(m), Vec(m)};
  eval_rhs(kernel.alpha(), n, y, f);
  rk4(kernel.alpha(), n, y, f, dt, out, k, tmp);
  return unpack(out, n, state.t + dt);
}

}  // namespace peakon
