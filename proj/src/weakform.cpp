#include "peakon/weakform.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "peakon/errors.hpp"
#include "peakon/quadrature.hpp"

namespace peakon {

namespace bump {

// b = exp(g) with g = -1/(1 - s^2). With q = 1/(1 - s^2):
//   g'   = -2 s q^2
//   g''  = -2 q^2 - 8 s^2 q^3
//   g''' = -24 s q^3 - 48 s^3 q^4

double b0(double s) {
  if (std::abs(s) >= 1.0) return 0.0;
  return std::exp(-1.0 / (1.0 - s * s));
}

double b1(double s) {
  if (std::abs(s) >= 1.0) return 0.0;
  const double q = 1.0 / (1.0 - s * s);
  return -2.0 * s * q * q * std::exp(-q);
}

double b2(double s) {
  if (std::abs(s) >= 1.0) return 0.0;
  const double q = 1.0 / (1.0 - s * s);
  const double g1 = -2.0 * s * q * q;
  const double g2 = -2.0 * q * q - 8.0 * s * s * q * q * q;
  return (g2 + g1 * g1) * std::exp(-q);
}

double b3(double s) {
  if (std::abs(s) >= 1.0) return 0.0;
  const double q = 1.0 / (1.0 - s * s);
  const double q2 = q * q;
  const double g1 = -2.0 * s * q2;
  const double g2 = -2.0 * q2 - 8.0 * s * s * q2 * q;
  const double g3 = -24.0 * s * q2 * q - 48.0 * s * s * s * q2 * q2;
  return (g3 + 3.0 * g1 * g2 + g1 * g1 * g1) * std::exp(-q);
}

}  // namespace bump

double TestFunction::value(double t, double x) const {
  return amplitude * bump::b0((t - t0) / sigma_t) * bump::b0((x - x0) / sigma_x);
}

double TestFunction::phi_t(double t, double x) const {
  return amplitude * bump::b1((t - t0) / sigma_t) / sigma_t * bump::b0((x - x0) / sigma_x);
}

double TestFunction::phi_x(double t, double x) const {
  return amplitude * bump::b0((t - t0) / sigma_t) * bump::b1((x - x0) / sigma_x) / sigma_x;
}

double TestFunction::phi_txx(double t, double x) const {
  return amplitude * bump::b1((t - t0) / sigma_t) / sigma_t * bump::b2((x - x0) / sigma_x) /
         (sigma_x * sigma_x);
}

double TestFunction::phi_xxx(double t, double x) const {
  return amplitude * bump::b0((t - t0) / sigma_t) * bump::b3((x - x0) / sigma_x) /
         (sigma_x * sigma_x * sigma_x);
}

double TestFunction::t_lower() const { return std::max(0.0, t0 - sigma_t); }

ResidualTerms residual_terms(const CHKernel& kernel, const Trajectory& trajectory,
                             const DiscreteMeasure& m0, const TestFunction& phi,
                             const QuadSpec& quad) {
  if (!(phi.sigma_t > 0.0) || !(phi.sigma_x > 0.0)) {
    throw Error("residual: test function scales must be positive");
  }
  const double t_lo = phi.t_lower();
  const double t_hi = phi.t_upper();
  if (!(t_hi > 0.0)) {
    throw Error("residual: test function support lies before t = 0");
  }
  if (trajectory.t_begin() > t_lo || trajectory.t_end() < t_hi) {
    throw SupportNotCovered("residual: trajectory covers [" +
                            std::to_string(trajectory.t_begin()) + ", " +
                            std::to_string(trajectory.t_end()) + "] but the test function needs [" +
                            std::to_string(t_lo) + ", " + std::to_string(t_hi) + "]");
  }
  const double a2 = kernel.alpha() * kernel.alpha();
  const double x_lo = phi.x0 - phi.sigma_x;
  const double x_hi = phi.x0 + phi.sigma_x;
  const double x_width = (x_hi - x_lo) / static_cast<double>(std::max<std::size_t>(1, quad.x_panels));

  ResidualTerms terms;
  for (const Atom& a : m0.atoms()) terms.initial += a.weight * phi.value(0.0, a.position);

  quad::gl5_panels(t_lo, t_hi, quad.t_panels, [&](double t, double wt) {
    const DiscreteMeasure m = trajectory.state_at(t).measure();
    std::vector<double> cuts;
    for (const Atom& a : m.atoms()) cuts.push_back(a.position);
    // Breaks: the equal grid plus every particle inside the support.
    for (std::size_t k = 1; k < quad.x_panels; ++k) {
      cuts.push_back(x_lo + x_width * static_cast<double>(k));
    }
    const auto pts = quad::split_panels(x_lo, x_hi, cuts, x_hi - x_lo);
    double lin = 0.0;
    double qua = 0.0;
    double gra = 0.0;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
      quad::gl5_panels(pts[i], pts[i + 1], 1, [&](double x, double wx) {
        const double u = convolve(kernel, m, x, 0);
        const double ux = convolve(kernel, m, x, 1);
        const double px = phi.phi_x(t, x);
        lin += wx * (phi.phi_t(t, x) - a2 * phi.phi_txx(t, x)) * u;
        qua += wx * (1.5 * px - 0.5 * a2 * phi.phi_xxx(t, x)) * u * u;
        gra += wx * 0.5 * a2 * px * ux * ux;
      });
    }
    terms.linear += wt * lin;
    terms.quadratic += wt * qua;
    terms.gradient += wt * gra;
  });
  return terms;
}

double residual(const CHKernel& kernel, const Trajectory& trajectory, const DiscreteMeasure& m0,
                const TestFunction& phi, const QuadSpec& quad) {
  return residual_terms(kernel, trajectory, m0, phi, quad).total();
}

DiagnosticReport residual_battery(const CHKernel& kernel, const Trajectory& trajectory,
                                  const DiscreteMeasure& m0,
                                  const std::vector<TestFunction>& battery, const QuadSpec& quad,
                                  double threshold) {
  if (battery.empty()) throw Error("residual_battery: battery is empty");
  DiagnosticReport r;
  double worst = 0.0;
  for (std::size_t k = 0; k < battery.size(); ++k) {
    const double res = residual(kernel, trajectory, m0, battery[k], quad);
    r.record(static_cast<double>(k), "residual", res);
    worst = std::max(worst, std::abs(res));
  }
  r.record(0.0, "max_abs_residual", worst);
  r.check("weak_residual", threshold - worst);
  return r;
}

std::vector<TestFunction> make_battery(const BatterySpec& spec) {
  if (spec.count == 0) throw Error("make_battery: count must be >= 1");
  std::vector<TestFunction> out;
  for (std::size_t k = 0; k < spec.count; ++k) {
    const double s =
        spec.count == 1 ? 0.0 : static_cast<double>(k) / static_cast<double>(spec.count - 1);
    TestFunction phi;
    phi.t0 = spec.t_first + s * (spec.t_last - spec.t_first);
    phi.x0 = spec.x_first + s * (spec.x_last - spec.x_first);
    phi.sigma_t = spec.sigma_t;
    phi.sigma_x = spec.sigma_x;
    out.push_back(phi);
  }
  return out;
}

}  // namespace peakon
