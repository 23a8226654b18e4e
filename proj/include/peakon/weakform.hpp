#pragma once

#include <vector>

#include "peakon/greens.hpp"
#include "peakon/integrator.hpp"
#include "peakon/measure.hpp"
#include "peakon/report.hpp"

namespace peakon {

/// Smooth compactly supported test function
///   phi(t, x) = amplitude * b((t - t0)/sigma_t) * b((x - x0)/sigma_x),
///   b(s) = exp(-1/(1 - s^2)) for |s| < 1, 0 otherwise,
/// with every derivative needed by the weak form in closed form.
struct TestFunction {
  double t0 = 1.0;
  double x0 = 0.0;
  double sigma_t = 0.5;
  double sigma_x = 1.0;
  double amplitude = 1.0;

  [[nodiscard]] double value(double t, double x) const;
  [[nodiscard]] double phi_t(double t, double x) const;
  [[nodiscard]] double phi_x(double t, double x) const;
  [[nodiscard]] double phi_txx(double t, double x) const;
  [[nodiscard]] double phi_xxx(double t, double x) const;

  /// Time support clipped to t >= 0.
  [[nodiscard]] double t_lower() const;
  [[nodiscard]] double t_upper() const { return t0 + sigma_t; }
};

namespace bump {
/// b(s) and its first three derivatives.
double b0(double s);
double b1(double s);
double b2(double s);
double b3(double s);
}  // namespace bump

struct QuadSpec {
  /// Equal GL5 panels across the clipped time support.
  std::size_t t_panels = 64;
  /// Equal GL5 panels across the space support, further split at every
  /// particle inside it.
  std::size_t x_panels = 64;

  [[nodiscard]] QuadSpec refined(std::size_t factor = 2) const {
    return {t_panels * factor, x_panels * factor};
  }
};

/// The four terms of the weak Camassa-Holm identity for u = G * m(t):
///   initial:  int phi(0, x) dm0
///   linear:   int int (phi_t - a^2 phi_txx) u
///   quadratic: int int (3/2 phi_x - 1/2 a^2 phi_xxx) u^2
///   gradient: int int 1/2 a^2 phi_x u_x^2
struct ResidualTerms {
  double initial = 0.0;
  double linear = 0.0;
  double quadratic = 0.0;
  double gradient = 0.0;

  [[nodiscard]] double total() const { return initial + linear + quadratic + gradient; }
};

/// Evaluates the terms by tensor GL5 quadrature, sampling the trajectory by
/// dense output. Spatial panels never straddle a particle, so u_x is only
/// evaluated where it is classical. The time support of phi may start
/// before 0; it is clipped and the initial term accounts for t = 0. Throws
/// SupportNotCovered if the trajectory does not span the clipped support.
ResidualTerms residual_terms(const CHKernel& kernel, const Trajectory& trajectory,
                             const DiscreteMeasure& m0, const TestFunction& phi,
                             const QuadSpec& quad = {});

double residual(const CHKernel& kernel, const Trajectory& trajectory, const DiscreteMeasure& m0,
                const TestFunction& phi, const QuadSpec& quad = {});

/// Residual for each test function (series "residual", indexed by position
/// in the battery) and margin "weak_residual" = threshold - max |residual|.
/// Throws Error on an empty battery.
DiagnosticReport residual_battery(const CHKernel& kernel, const Trajectory& trajectory,
                                  const DiscreteMeasure& m0,
                                  const std::vector<TestFunction>& battery,
                                  const QuadSpec& quad = {}, double threshold = 1e-5);

/// Centres evenly spaced on the segment from (t_first, x_first) to
/// (t_last, x_last), all with the same scales.
struct BatterySpec {
  std::size_t count = 5;
  double t_first = 0.5;
  double t_last = 1.5;
  double x_first = 0.0;
  double x_last = 1.0;
  double sigma_t = 0.4;
  double sigma_x = 1.5;
};

std::vector<TestFunction> make_battery(const BatterySpec& spec);

}  // namespace peakon
