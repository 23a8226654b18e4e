#pragma once

#include <functional>
#include <string>
#include <variant>

#include "peakon/dynamics.hpp"
#include "peakon/greens.hpp"
#include "peakon/measure.hpp"

namespace peakon {

/// Nonnegative density g on [lower, upper]; zero outside.
struct Density {
  std::function<double(double)> g;
  double lower = 0.0;
  double upper = 1.0;
};

/// Positive initial momentum measure m0, normalized to unit mass on
/// construction. Either absolutely continuous (a density) or atomic.
class InitialMeasure {
 public:
  static InitialMeasure density(Density d);
  static InitialMeasure atomic(DiscreteMeasure atoms);

  /// Built-in densities: uniform(a, b), a gaussian truncated at 8 standard
  /// deviations and the raised-cosine bump (1 + cos(pi (x - c)/w)) on [c-w, c+w].
  static InitialMeasure uniform(double a, double b);
  static InitialMeasure gaussian(double mean, double sigma);
  static InitialMeasure cosine_bump(double center, double half_width);

  [[nodiscard]] bool is_atomic() const { return std::holds_alternative<DiscreteMeasure>(kind_); }
  /// Mass before normalization.
  [[nodiscard]] double raw_mass() const { return raw_mass_; }

  /// Normalized density value at x (density kind only).
  [[nodiscard]] double density_at(double x) const;
  [[nodiscard]] const Density& density_spec() const { return std::get<Density>(kind_); }
  [[nodiscard]] const DiscreteMeasure& atoms() const { return std::get<DiscreteMeasure>(kind_); }

  /// m0(f), by adaptive Gauss-Kronrod quadrature for densities.
  [[nodiscard]] double pair(const std::function<double(double)>& f) const;

  /// Cumulative distribution of the normalized measure.
  [[nodiscard]] double cdf(double x) const;

 private:
  std::variant<Density, DiscreteMeasure> kind_;
  double raw_mass_ = 1.0;
  // Tabulated CDF on a fine uniform grid over the density support.
  std::vector<double> cdf_grid_;
  std::vector<double> cdf_values_;
};

enum class QuantizationRule {
  EqualMass,     ///< p_i = 1/N at the midpoint quantiles F^{-1}((i - 1/2)/N)
  EqualSpacing,  ///< N equal cells over the support, p_i = cell mass, empty cells dropped
};

/// N-particle initial data at t = 0 whose measure approximates m0 with unit
/// total mass. Atomic m0 with at most N atoms is returned as is; with more
/// atoms the closest adjacent pair is merged into its mass-weighted centroid
/// until N remain. Throws DegenerateSupport if the quantiles collapse.
PeakonState quantize(const InitialMeasure& m0, std::size_t n,
                     QuantizationRule rule = QuantizationRule::EqualMass);

/// Uniform sampling grid [x_min, x_max] with `points` nodes.
struct Grid {
  double x_min = -10.0;
  double x_max = 10.0;
  std::size_t points = 401;

  [[nodiscard]] double step() const;
  [[nodiscard]] double at(std::size_t i) const;
};

/// u = G * m and its a.e. derivative sampled on a grid. At a particle the
/// derivative takes the left-continuous value.
struct FieldSample {
  Grid grid;
  double alpha = 1.0;
  std::vector<double> u;
  std::vector<double> ux;
};

FieldSample sample_field(const CHKernel& kernel, const DiscreteMeasure& m, const Grid& grid);

/// u^(N)(0, .) = G * m^(N)(0) on `grid`.
FieldSample reconstruct_u0(const CHKernel& kernel, const PeakonState& particles,
                           const Grid& grid = {});

}  // namespace peakon
