#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "peakon/greens.hpp"
#include "peakon/measure.hpp"

namespace peakon {

/// Maximizer of the bounded-Lipschitz dual problem on the union support.
///
/// `values[i]` is f(positions[i]) for a test function with ||f||_inf <= beta
/// and Lip(f) <= 1 - beta. Interpolating linearly between support points and
/// letting the tails decay to zero at slope 1 - beta gives a member of the
/// unit ball {f in C_0 : ||f||_inf + Lip(f) <= 1} (or a limit of members
/// when beta == 1).
struct BLWitness {
  double beta = 0.0;
  std::vector<double> positions;
  std::vector<double> values;
};

struct BLResult {
  double distance = 0.0;
  BLWitness witness;
};

struct BLOptions {
  std::size_t atom_cap = 4096;
};

/// Dudley distance ||mu - nu||_BL, solved exactly as a linear program in
/// (f_1..f_M, beta). Throws AtomCapExceeded when the union support is larger
/// than `options.atom_cap`.
BLResult bl_distance(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                     const BLOptions& options = {});

/// ||mu||_BL, the distance to the zero measure.
double bl_norm(const DiscreteMeasure& mu, const BLOptions& options = {});

/// Brute-force lower bound on bl_distance, independent of the LP solver.
/// Scans beta over a grid of step `grid_step` (endpoints included) and
/// solves each fixed-beta chain problem exactly by propagating the concave
/// piecewise-linear value function along the sorted support. The shortfall
/// is at most grid_step * tv_norm(mu - nu).
double bl_distance_oracle(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                          double grid_step);

/// Both sides of ||G^(order) * mu||_1 <= ||G^(order)||_BV ||mu||_BL.
struct YoungCheck {
  double lhs = 0.0;
  double rhs = 0.0;
};

/// The left side is composite Simpson quadrature on
/// [min atom - 40 alpha, max atom + 40 alpha], with panels split at atoms and
/// at the sign changes of the convolution.
YoungCheck young_inequality_check(const CHKernel& kernel, int order, const DiscreteMeasure& mu);

}  // namespace peakon
