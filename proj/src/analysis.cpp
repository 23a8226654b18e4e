#include "peakon/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "peakon/bl_metric.hpp"
#include "peakon/errors.hpp"
#include "peakon/quadrature.hpp"

namespace peakon {

double h1_norm_sq(const CHKernel& kernel, const DiscreteMeasure& m) {
  const auto atoms = m.atoms();
  double s = 0.0;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < atoms.size(); ++j) {
      row += atoms[j].weight * eval_G(kernel, atoms[i].position - atoms[j].position);
    }
    s += atoms[i].weight * row;
  }
  return s;
}

double h1_norm_sq(const CHKernel& kernel, const PeakonState& state) {
  state.validate();
  return h1_norm_sq(kernel, state.measure());
}

double h1_distance(const CHKernel& kernel, const DiscreteMeasure& a, const DiscreteMeasure& b) {
  return std::sqrt(std::max(0.0, h1_norm_sq(kernel, a - b)));
}

std::vector<std::pair<double, double>> sample_time_pairs(double t0, double t1, std::size_t count,
                                                         std::uint64_t seed) {
  if (!(t1 > t0)) throw Error("sample_time_pairs: empty time interval");
  std::vector<std::pair<double, double>> pairs;
  const std::size_t lattice_pairs = count / 2;
  std::size_t points = 2;
  while (points * (points - 1) / 2 < lattice_pairs) ++points;
  const double h = (t1 - t0) / static_cast<double>(points - 1);
  for (std::size_t i = 0; i < points && pairs.size() < lattice_pairs; ++i) {
    for (std::size_t j = i + 1; j < points && pairs.size() < lattice_pairs; ++j) {
      pairs.emplace_back(t0 + h * static_cast<double>(i),
                         j + 1 == points ? t1 : t0 + h * static_cast<double>(j));
    }
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(t0, t1);
  while (pairs.size() < count) {
    double s = uni(rng);
    double t = uni(rng);
    if (s == t) continue;
    if (s > t) std::swap(s, t);
    pairs.emplace_back(s, t);
  }
  return pairs;
}

DiagnosticReport time_lipschitz_probe(const Trajectory& trajectory, const CHKernel& kernel,
                                      const std::vector<std::pair<double, double>>& pairs) {
  if (trajectory.nodes().size() < 2) throw Error("time_lipschitz_probe: need >= 2 snapshots");
  const KernelConstants kc = constants(kernel);
  const double mass = trajectory.nodes().front().state.total_momentum();
  const double bound = mass * mass * (kc.sup_G + kc.sup_Gp);

  DiagnosticReport r;
  double worst = 0.0;
  for (const auto& [s, t] : pairs) {
    if (s == t) continue;
    const double d =
        bl_distance(trajectory.state_at(s).measure(), trajectory.state_at(t).measure()).distance;
    const double ratio = d / std::abs(t - s);
    r.record(std::abs(t - s), "bl_ratio", ratio);
    worst = std::max(worst, ratio);
  }
  r.record(0.0, "lipschitz_bound", bound);
  r.record(0.0, "max_bl_ratio", worst);
  r.check("time_lipschitz", bound - worst);
  return r;
}

DiagnosticReport holder_probe(const Trajectory& trajectory, const CHKernel& kernel,
                              const std::vector<std::pair<double, double>>& pairs) {
  if (trajectory.nodes().size() < 2) throw Error("holder_probe: need >= 2 snapshots");
  const KernelConstants kc = constants(kernel);
  const double mass = trajectory.nodes().front().state.total_momentum();
  const double factor = std::sqrt(2.0 * kc.holder_L * mass);

  DiagnosticReport r;
  double worst = std::numeric_limits<double>::infinity();
  for (const auto& [s, t] : pairs) {
    const DiscreteMeasure ms = trajectory.state_at(s).measure();
    const DiscreteMeasure mt = trajectory.state_at(t).measure();
    const double lhs = h1_distance(kernel, ms, mt);
    const double rhs = factor * std::sqrt(bl_distance(ms, mt).distance);
    r.record(std::abs(t - s), "h1_diff", lhs);
    r.record(std::abs(t - s), "holder_rhs", rhs);
    worst = std::min(worst, rhs - lhs);
  }
  r.record(0.0, "holder_factor", factor);
  r.check("holder_half", pairs.empty() ? 0.0 : worst);
  return r;
}

Ensemble build_ensemble(const CHKernel& kernel, const InitialMeasure& m0,
                        const std::vector<std::size_t>& sizes, double horizon,
                        QuantizationRule rule, const IntegratorOptions& options) {
  for (std::size_t i = 1; i < sizes.size(); ++i) {
    if (!(sizes[i] > sizes[i - 1])) throw Error("build_ensemble: N list must increase strictly");
  }
  Ensemble e;
  e.sizes = sizes;
  for (std::size_t n : sizes) {
    e.runs.push_back(integrate(kernel, quantize(m0, n, rule), horizon, options));
  }
  return e;
}

namespace {

// Smallest successive decrease of a sequence; +inf with fewer than two terms.
double min_decrease(const std::vector<double>& v) {
  double m = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < v.size(); ++i) m = std::min(m, v[i - 1] - v[i]);
  return m;
}

}  // namespace

DiagnosticReport l1loc_convergence_probe(const CHKernel& kernel, const Ensemble& ensemble,
                                         double R, double T, int order,
                                         const L1QuadOptions& quad) {
  if (!(R > 0.0) || !(T > 0.0)) throw Error("l1loc_convergence_probe: R and T must be positive");
  if (order != 0 && order != 1) throw Error("l1loc_convergence_probe: order must be 0 or 1");
  const double horizon = std::min(R, T);
  for (const Trajectory& run : ensemble.runs) {
    if (run.t_begin() > 0.0 || run.t_end() < horizon) {
      throw SupportNotCovered("l1loc_convergence_probe: run does not cover [0, min(R, T)]");
    }
  }
  const std::string tag = "order" + std::to_string(order);
  const double sup = constants(kernel).sup()[static_cast<std::size_t>(order)];

  DiagnosticReport r;
  std::vector<double> diffs;
  for (std::size_t k = 0; k + 1 < ensemble.runs.size(); ++k) {
    double total = 0.0;
    quad::gl5_panels(0.0, horizon, quad.time_panels, [&](double t, double wt) {
      const DiscreteMeasure a = ensemble.measure_at(k, t);
      const DiscreteMeasure b = ensemble.measure_at(k + 1, t);
      std::vector<double> cuts;
      for (const Atom& atom : a.atoms()) cuts.push_back(atom.position);
      for (const Atom& atom : b.atoms()) cuts.push_back(atom.position);
      const auto pts = quad::split_panels(-R, R, cuts, quad.x_panel_width * kernel.alpha());
      double inner = 0.0;
      for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        quad::gl5_panels(pts[i], pts[i + 1], 1, [&](double x, double wx) {
          inner += wx * std::abs(convolve(kernel, a, x, order) - convolve(kernel, b, x, order));
        });
      }
      total += wt * inner;
    });
    diffs.push_back(total);
    r.record(static_cast<double>(ensemble.sizes[k]), "l1_diff_" + tag, total);
    r.check("l1loc_pointwise_" + tag, 2.0 * R * horizon * 2.0 * sup - total);
  }
  if (diffs.size() >= 2) r.check("l1loc_cauchy_" + tag, min_decrease(diffs));
  return r;
}

DiagnosticReport l1loc_convergence_probe(const CHKernel& kernel, const InitialMeasure& m0,
                                         const std::vector<std::size_t>& sizes, double R,
                                         double T, int order, const L1QuadOptions& quad) {
  const Ensemble e = build_ensemble(kernel, m0, sizes, std::min(R, T));
  return l1loc_convergence_probe(kernel, e, R, T, order, quad);
}

DiagnosticReport bl_cauchy_probe(const Ensemble& ensemble, double t) {
  DiagnosticReport r;
  std::vector<double> d;
  for (std::size_t k = 0; k + 1 < ensemble.runs.size(); ++k) {
    d.push_back(bl_distance(ensemble.measure_at(k, t), ensemble.measure_at(k + 1, t)).distance);
    r.record(static_cast<double>(ensemble.sizes[k]), "bl_diff_t=" + format_double(t), d.back());
  }
  if (d.size() >= 2) r.check("bl_cauchy", min_decrease(d));
  return r;
}

std::vector<TestFunction1D> default_battery() {
  std::vector<TestFunction1D> out;
  auto gauss = [](double c, double w) {
    return [=](double x) { return std::exp(-0.5 * (x - c) * (x - c) / (w * w)); };
  };
  const std::pair<double, double> bumps[] = {{0.0, 1.0},  {0.0, 2.0}, {-1.0, 1.5},
                                             {1.0, 1.5},  {2.0, 2.5}, {-2.0, 2.5}};
  for (const auto& [c, w] : bumps) {
    out.push_back({"gauss(c=" + format_double(c) + ",w=" + format_double(w) + ")", gauss(c, w)});
  }
  const std::pair<double, double> waves[] = {{0.5, 3.0}, {0.25, 4.0}, {0.4, 2.5}, {0.2, 3.5}};
  for (const auto& [k, w] : waves) {
    out.push_back({"cos(k=" + format_double(k) + ")*gauss(w=" + format_double(w) + ")",
                   [=](double x) { return std::cos(k * x) * std::exp(-0.5 * x * x / (w * w)); }});
  }
  return out;
}

DiagnosticReport weak_star_probe(
    const std::vector<std::pair<std::size_t, DiscreteMeasure>>& series,
    const std::vector<TestFunction1D>& battery) {
  DiagnosticReport r;
  for (const TestFunction1D& fn : battery) {
    std::vector<double> d;
    for (std::size_t k = 0; k + 1 < series.size(); ++k) {
      d.push_back(std::abs(pair(series[k].second, fn.f) - pair(series[k + 1].second, fn.f)));
      r.record(static_cast<double>(series[k].first), "pair_diff:" + fn.name, d.back());
    }
    if (d.size() >= 2) r.check("weak_star_cauchy:" + fn.name, min_decrease(d));
  }
  return r;
}

}  // namespace peakon
