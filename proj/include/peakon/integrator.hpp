#pragma once

#include <limits>
#include <span>
#include <vector>

#include "peakon/dynamics.hpp"
#include "peakon/greens.hpp"

namespace peakon {

enum class Scheme {
  RK4,   ///< classical fixed-step fourth order
  RK45,  ///< Dormand-Prince 5(4) with local error control
};

struct IntegratorOptions {
  Scheme scheme = Scheme::RK45;
  /// Fixed step for RK4; initial trial step for RK45.
  double dt = 1e-3;
  double rtol = 1e-10;
  double atol = 1e-10;
  /// Upper bound on adaptive steps (keeps dense output accurate).
  double max_dt = std::numeric_limits<double>::infinity();
  /// A step producing a neighbour gap below gap_floor * alpha is rejected.
  double gap_floor = 1e-13;
  int max_halvings = 40;
};

/// One accepted integrator node: the state and its time derivative.
struct TrajectoryNode {
  PeakonState state;
  StateDerivative rate;
};

/// Accepted integrator steps with cubic Hermite dense output in (x, p).
class Trajectory {
 public:
  Trajectory() = default;
  explicit Trajectory(std::vector<TrajectoryNode> nodes);

  [[nodiscard]] std::span<const TrajectoryNode> nodes() const { return nodes_; }
  [[nodiscard]] double t_begin() const { return nodes_.front().state.t; }
  [[nodiscard]] double t_end() const { return nodes_.back().state.t; }
  [[nodiscard]] std::size_t particles() const { return nodes_.front().state.size(); }

  /// Interpolated state at t; throws std::out_of_range outside the span.
  [[nodiscard]] PeakonState state_at(double t) const;

 private:
  std::vector<TrajectoryNode> nodes_;
};

/// Advances `state` by `dt >= 0`. RK4 takes a single step and throws
/// InvariantBreach if the result leaves the admissible domain. RK45 advances
/// by adaptive substeps and throws StepRejected after `max_halvings`
/// consecutive step halvings.
PeakonState step(const CHKernel& kernel, const PeakonState& state, double dt,
                 const IntegratorOptions& options = {});

/// Integrates from `initial.t` to `t_end`, keeping every accepted step. RK4
/// uses equal steps no longer than `options.dt` that land exactly on t_end.
Trajectory integrate(const CHKernel& kernel, const PeakonState& initial, double t_end,
                     const IntegratorOptions& options = {});

/// One classical RK4 step with signed dt and no domain checks; used for
/// time-reversal tests.
PeakonState rk4_step_raw(const CHKernel& kernel, const PeakonState& state, double dt);

}  // namespace peakon
