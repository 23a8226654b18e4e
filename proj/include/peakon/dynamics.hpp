#pragma once

#include <span>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "peakon/greens.hpp"
#include "peakon/measure.hpp"

namespace peakon {

/// Phase point of the N-peakon system at time t.
///
/// Valid states have strictly increasing positions and strictly positive
/// momenta; `validate` enforces this.
struct PeakonState {
  double t = 0.0;
  std::vector<double> x;
  std::vector<double> p;

  [[nodiscard]] std::size_t size() const { return x.size(); }

  /// Throws InvalidState unless sizes match, N >= 1, values are finite,
  /// x is strictly increasing and p is strictly positive.
  void validate() const;

  /// Sum of momenta.
  [[nodiscard]] double total_momentum() const;

  /// m(t) = sum p_i delta_{x_i}.
  [[nodiscard]] DiscreteMeasure measure() const;
};

struct StateDerivative {
  std::vector<double> dx;
  std::vector<double> dp;
};

/// O(N^2) reference evaluation of
///   dx_j = (1/2a) sum_i p_i e^{-|x_j - x_i|/a}
///   dp_j = (1/2a^2) p_j sum_{i != j} p_i sgn(x_j - x_i) e^{-|x_j - x_i|/a}
/// with sgn(0) = 0.
StateDerivative rhs_reference(const CHKernel& kernel, const PeakonState& state);

/// O(N) evaluation of the same vector field by forward and backward scans.
/// Each scan carries a running sum rescaled to the current particle, so every
/// stored exponential factor lies in (0, 1].
StateDerivative rhs_fast(const CHKernel& kernel, const PeakonState& state);

namespace detail {
/// rhs_fast without validation; positions must be sorted.
void rhs_fast_unchecked(double alpha, std::span<const double> x, std::span<const double> p,
                        std::span<double> dx, std::span<double> dp);
}  // namespace detail

/// Conserved quantities: the Hamiltonian, total momentum and the power traces
/// H_n = Tr(L^n) of the Lax matrix L_ij = p_j e^{-|x_i - x_j|/2a} / (2a).
struct InvariantSet {
  double H = 0.0;
  double P = 0.0;
  /// Hn[k] = Tr(L^{k+1}) for k = 0..n_max-1.
  std::vector<double> Hn;

  [[nodiscard]] double H1() const { return Hn.at(0); }
  [[nodiscard]] double H2() const { return Hn.at(1); }
};

InvariantSet invariants(const CHKernel& kernel, const PeakonState& state, int n_max = 3);

/// Slack of each a priori bound, per particle; all entries are >= 0 when the
/// bounds hold:
///   x_i(t) - x_i^0,  H_1 t + x_i^0 - x_i(t),
///   p_i(t) - p_i^0 e^{-H_1 t/a},  p_i^0 e^{H_1 t/a} - p_i(t),
/// with t measured from the initial state and H_1 = P/(2a) from it.
struct BoundReport {
  std::vector<double> position_lower;
  std::vector<double> position_upper;
  std::vector<double> momentum_lower;
  std::vector<double> momentum_upper;

  /// Smallest slack over all particles and all four bounds.
  [[nodiscard]] double min_slack() const;
};

BoundReport check_bounds(const PeakonState& initial, const PeakonState& current,
                         const CHKernel& kernel);

void to_json(nlohmann::json& j, const PeakonState& state);
void from_json(const nlohmann::json& j, PeakonState& state);

}  // namespace peakon
