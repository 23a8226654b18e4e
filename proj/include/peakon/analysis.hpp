#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "peakon/discretize.hpp"
#include "peakon/dynamics.hpp"
#include "peakon/greens.hpp"
#include "peakon/integrator.hpp"
#include "peakon/measure.hpp"
#include "peakon/report.hpp"

namespace peakon {

/// ||G * m||_a^2 in the alpha-weighted product <f, g>_a = int fg + a^2 f'g',
/// in closed form: sum_ij w_i w_j G(x_i - x_j). Works for signed measures.
double h1_norm_sq(const CHKernel& kernel, const DiscreteMeasure& m);

/// Same quantity for a particle state; equals twice the Hamiltonian.
double h1_norm_sq(const CHKernel& kernel, const PeakonState& state);

/// ||u(s) - u(t)||_a, with u = G * m for the two measures.
double h1_distance(const CHKernel& kernel, const DiscreteMeasure& a, const DiscreteMeasure& b);

/// Time pairs (s, t) with s < t in [t0, t1]: the first half from an even
/// lattice (all lattice pairs in lexicographic order), the rest uniform
/// random from a seeded generator.
std::vector<std::pair<double, double>> sample_time_pairs(double t0, double t1, std::size_t count,
                                                         std::uint64_t seed);

/// d(m(s), m(t)) / |s - t| over the pairs against (||G||_inf + ||G'||_inf)
/// scaled by mass^2 (the constant itself at unit mass). Margin id
/// "time_lipschitz".
DiagnosticReport time_lipschitz_probe(const Trajectory& trajectory, const CHKernel& kernel,
                                      const std::vector<std::pair<double, double>>& pairs);

/// ||u(s) - u(t)||_a against sqrt(2 L mass) d(m(s), m(t))^{1/2}. Margin id
/// "holder_half".
DiagnosticReport holder_probe(const Trajectory& trajectory, const CHKernel& kernel,
                              const std::vector<std::pair<double, double>>& pairs);

/// Particle runs for a sequence of N from the same initial measure.
struct Ensemble {
  std::vector<std::size_t> sizes;
  std::vector<Trajectory> runs;

  [[nodiscard]] DiscreteMeasure measure_at(std::size_t k, double t) const {
    return runs.at(k).state_at(t).measure();
  }
};

Ensemble build_ensemble(const CHKernel& kernel, const InitialMeasure& m0,
                        const std::vector<std::size_t>& sizes, double horizon,
                        QuantizationRule rule = QuantizationRule::EqualMass,
                        const IntegratorOptions& options = {});

struct L1QuadOptions {
  std::size_t time_panels = 16;
  /// Upper bound on x-panel width in units of alpha.
  double x_panel_width = 0.25;
};

/// For consecutive members of the ensemble, the L1 norm over
/// [0, min(R, T)] x [-R, R] of the difference of d^k u. Series name
/// "l1_diff_order<k>" indexed by the smaller N; margins
/// "l1loc_cauchy_order<k>" (successive differences decrease) and
/// "l1loc_pointwise_order<k>" (each difference is at most the area times
/// 2 ||G^(k)||_inf).
DiagnosticReport l1loc_convergence_probe(const CHKernel& kernel, const Ensemble& ensemble,
                                         double R, double T, int order,
                                         const L1QuadOptions& quad = {});

DiagnosticReport l1loc_convergence_probe(const CHKernel& kernel, const InitialMeasure& m0,
                                         const std::vector<std::size_t>& sizes, double R,
                                         double T, int order, const L1QuadOptions& quad = {});

/// d(m^(N)(t), m^(N')(t)) for consecutive ensemble members; margin
/// "bl_cauchy" is the smallest successive decrease.
DiagnosticReport bl_cauchy_probe(const Ensemble& ensemble, double t);

struct TestFunction1D {
  std::string name;
  std::function<double(double)> f;
};

/// Ten smooth C_0 functions: gaussian bumps of several centres and widths
/// and gaussian-windowed cosines.
std::vector<TestFunction1D> default_battery();

/// |m^(N)(t)(f) - m^(N')(t)(f)| for consecutive members and each f; margin
/// "weak_star_cauchy:<name>" per function.
DiagnosticReport weak_star_probe(const std::vector<std::pair<std::size_t, DiscreteMeasure>>& series,
                                 const std::vector<TestFunction1D>& battery);

}  // namespace peakon
