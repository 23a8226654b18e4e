// Acceptance checks: one PASS/FAIL line per criterion, nonzero exit if any fail.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "peakon/analysis.hpp"
#include "peakon/bl_metric.hpp"
#include "peakon/discretize.hpp"
#include "peakon/dynamics.hpp"
#include "peakon/greens.hpp"
#include "peakon/integrator.hpp"
#include "peakon/measure.hpp"
#include "peakon/weakform.hpp"

using namespace peakon;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

char buf[512];

template <typename... Args>
std::string fmt(const char* f, Args... args) {
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

int failures = 0;

void run(int id, const char* name, const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (!o.pass) ++failures;
  std::printf("%s %2d %-28s %s [%.2f s]\n", o.pass ? "PASS" : "FAIL", id, name, o.detail.c_str(),
              secs);
  std::fflush(stdout);
}

PeakonState random_state(std::mt19937_64& rng, std::size_t n, double spread) {
  std::uniform_real_distribution<double> gap(0.01, 1.0);
  std::uniform_real_distribution<double> mom(0.01, 2.0);
  PeakonState s;
  double x = -spread;
  for (std::size_t i = 0; i < n; ++i) {
    x += gap(rng);
    s.x.push_back(x);
    s.p.push_back(mom(rng));
  }
  return s;
}

// Signed, at most six atoms, total variation at most one.
DiscreteMeasure random_measure(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> count(1, 6);
  std::uniform_real_distribution<double> pos(-4.0, 4.0);
  std::uniform_real_distribution<double> w(-1.0, 1.0);
  std::vector<Atom> atoms(static_cast<std::size_t>(count(rng)));
  double total = 0.0;
  for (Atom& a : atoms) {
    a = {pos(rng), w(rng)};
    total += std::abs(a.weight);
  }
  for (Atom& a : atoms) a.weight /= std::max(1.0, total);
  return DiscreteMeasure(std::move(atoms));
}

const PeakonState kTwo{0.0, {-5.0, 0.0}, {0.75, 0.25}};

PeakonState ten_peakons() {
  std::mt19937_64 rng(10);
  return random_state(rng, 10, 5.0);
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

Outcome single_peakon() {
  const CHKernel k(1.0);
  const PeakonState s0{0.0, {0.0}, {2.0}};
  const Trajectory tr = integrate(k, s0, 1.0);
  double dx = 0.0;
  double dp = 0.0;
  for (const TrajectoryNode& n : tr.nodes()) {
    dx = std::max(dx, std::abs(n.state.x[0] - n.state.t));
    dp = std::max(dp, std::abs(n.state.p[0] - 2.0));
  }
  const double end = std::abs(tr.nodes().back().state.x[0] - 1.0);
  return {end <= 1e-10 && dx <= 1e-10 && dp <= 1e-12,
          fmt("|x(1)-1|=%.2e max|x-t|=%.2e max|p-2|=%.2e", end, dx, dp)};
}

Outcome conservation() {
  const CHKernel k(1.0);
  double worst_p = 0.0;
  double worst_h = 0.0;
  for (const PeakonState& s0 : {kTwo, ten_peakons()}) {
    const Trajectory tr = integrate(k, s0, 10.0);
    const InvariantSet iv0 = invariants(k, s0);
    for (const TrajectoryNode& n : tr.nodes()) {
      const InvariantSet iv = invariants(k, n.state);
      worst_p = std::max(worst_p, std::abs(iv.P - iv0.P) / iv0.P);
      worst_h = std::max({worst_h, std::abs(iv.H - iv0.H) / iv0.H,
                          std::abs(iv.H2() - iv0.H2()) / iv0.H2(),
                          std::abs(iv.Hn[2] - iv0.Hn[2]) / iv0.Hn[2]});
    }
  }
  return {worst_p <= 1e-12 && worst_h <= 1e-7,
          fmt("max rel dP=%.2e max rel dH,dH2,dH3=%.2e", worst_p, worst_h)};
}

Outcome bounds() {
  const CHKernel k(1.0);
  double slack = std::numeric_limits<double>::infinity();
  double gap = std::numeric_limits<double>::infinity();
  bool positive = true;
  std::size_t snaps = 0;
  std::mt19937_64 rng(33);
  std::vector<PeakonState> inits{kTwo, PeakonState{0.0, {-5.0, 0.0}, {1.5, 0.5}}, ten_peakons(),
                                 random_state(rng, 6, 3.0)};
  for (const PeakonState& s0 : inits) {
    const Trajectory tr = integrate(k, s0, 20.0);
    for (const TrajectoryNode& n : tr.nodes()) {
      ++snaps;
      const PeakonState& s = n.state;
      for (std::size_t i = 0; i + 1 < s.size(); ++i) gap = std::min(gap, s.x[i + 1] - s.x[i]);
      for (double p : s.p) positive = positive && p > 0.0;
      slack = std::min(slack, check_bounds(s0, s, k).min_slack());
    }
  }
  return {gap > 0.0 && positive && slack >= -1e-9,
          fmt("%zu snapshots, min gap=%.3e, min bound slack=%.2e", snaps, gap, slack)};
}

Outcome bl_metric() {
  double analytic = 0.0;
  for (double t : {0.1, 1.0, 5.0}) {
    const double d = bl_distance(DiscreteMeasure::dirac(0.0), DiscreteMeasure::dirac(t)).distance;
    analytic = std::max(analytic, std::abs(d - 2 * t / (2 + t)));
  }
  std::mt19937_64 rng(4);
  const double step = 1e-3;
  double gap = 0.0;
  double below = 0.0;
  bool axioms = true;
  for (int i = 0; i < 100; ++i) {
    const DiscreteMeasure a = random_measure(rng);
    const DiscreteMeasure b = random_measure(rng);
    const DiscreteMeasure c = random_measure(rng);
    const double ab = bl_distance(a, b).distance;
    const double oracle = bl_distance_oracle(a, b, step);
    gap = std::max(gap, ab - oracle);
    below = std::max(below, oracle - ab);
    axioms = axioms && ab > 0.0 && ab == bl_distance(b, a).distance &&
             bl_distance(a, a).distance == 0.0 &&
             ab <= bl_distance(a, c).distance + bl_distance(c, b).distance + 1e-9;
  }
  return {analytic <= 1e-9 && gap <= 2 * step && below <= 1e-9 && axioms,
          fmt("analytic err=%.2e max(LP-oracle)=%.2e (limit %.0e) axioms=%s", analytic, gap,
              2 * step, axioms ? "ok" : "violated")};
}

Trajectory two_peakon_run(double T) {
  return integrate(CHKernel(1.0), kTwo, T);
}

Outcome lipschitz() {
  const Trajectory tr = two_peakon_run(20.0);
  const DiagnosticReport r =
      time_lipschitz_probe(tr, CHKernel(1.0), sample_time_pairs(0.0, 20.0, 100, 5));
  const double m = r.margin("time_lipschitz");
  return {m >= -1e-6, fmt("100 pairs, bound 1, min margin=%.4e", m)};
}

Outcome holder() {
  const Trajectory tr = two_peakon_run(20.0);
  const DiagnosticReport r = holder_probe(tr, CHKernel(1.0), sample_time_pairs(0.0, 20.0, 50, 6));
  const double m = r.margin("holder_half");
  return {m >= -1e-6, fmt("50 pairs, constant 4, min margin=%.4e", m)};
}

Outcome young() {
  const CHKernel k(1.0);
  std::mt19937_64 rng(7);
  double m[2] = {std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
  for (int i = 0; i < 100; ++i) {
    const DiscreteMeasure mu = random_measure(rng);
    for (int order : {0, 1}) {
      const YoungCheck y = young_inequality_check(k, order, mu);
      m[order] = std::min(m[order], y.rhs - y.lhs);
    }
  }
  return {m[0] >= -1e-6 && m[1] >= -1e-6,
          fmt("min(rhs-lhs) k=0: %.4e, k=1: %.4e", m[0], m[1])};
}

Outcome fast_summation() {
  std::mt19937_64 rng(8);
  double worst = 0.0;
  for (double a : {0.5, 1.0, 2.0}) {
    const CHKernel k(a);
    for (std::size_t n : {2, 10, 100, 1000}) {
      const int reps = n == 1000 ? 5 : 50;
      for (int r = 0; r < reps; ++r) {
        const PeakonState s = random_state(rng, n, 0.5 * static_cast<double>(n));
        const StateDerivative ref = rhs_reference(k, s);
        const StateDerivative fast = rhs_fast(k, s);
        worst = std::max({worst, max_abs_diff(ref.dx, fast.dx), max_abs_diff(ref.dp, fast.dp)});
      }
    }
    // Clusters far apart on the alpha scale.
    std::uniform_real_distribution<double> jitter(0.0, 0.5);
    PeakonState s;
    for (double centre : {-1e4 * a, -3e3 * a, 0.0, 5e3 * a, 1e4 * a}) {
      double x = centre;
      for (int i = 0; i < 20; ++i) {
        x += 0.01 + jitter(rng);
        s.x.push_back(x);
        s.p.push_back(0.1 + jitter(rng));
      }
    }
    const StateDerivative ref = rhs_reference(k, s);
    const StateDerivative fast = rhs_fast(k, s);
    worst = std::max({worst, max_abs_diff(ref.dx, fast.dx), max_abs_diff(ref.dp, fast.dp)});
  }
  return {worst <= 1e-12, fmt("max |fast - reference|=%.2e", worst)};
}

Outcome weak_form() {
  const CHKernel k(1.0);
  IntegratorOptions o;
  o.max_dt = 0.05;
  const PeakonState single{0.0, {0.0}, {2.0}};
  const Trajectory st = integrate(k, single, 3.0, o);
  const DiscreteMeasure m0 = single.measure();
  double worst_single = 0.0;
  for (const TestFunction& phi : make_battery(BatterySpec{5, 0.2, 2.5, 0.2, 2.5, 0.4, 1.5})) {
    worst_single = std::max(worst_single, std::abs(residual(k, st, m0, phi)));
  }
  // Order of the quadrature error: doubling the panels from the default.
  const TestFunction phi{1.0, 0.7, 0.5, 1.0, 1.0};
  const double coarse = std::abs(residual(k, st, m0, phi, QuadSpec{}));
  const double fine = std::abs(residual(k, st, m0, phi, QuadSpec{}.refined()));
  const double order = std::log2(coarse / fine);

  const Trajectory tt = integrate(k, kTwo, 3.0, o);
  double worst_two = 0.0;
  for (const TestFunction& f : make_battery(BatterySpec{5, 0.2, 2.5, -5.0, 0.5, 0.4, 1.5})) {
    worst_two = std::max(worst_two, std::abs(residual(k, tt, kTwo.measure(), f)));
  }
  return {worst_single <= 1e-6 && order >= 3.5 && worst_two <= 1e-5,
          fmt("single max|R|=%.2e order=%.2f two max|R|=%.2e", worst_single, order, worst_two)};
}

Outcome convergence() {
  const CHKernel k(1.0);
  const Ensemble e =
      build_ensemble(k, InitialMeasure::gaussian(0.0, 1.0), {8, 16, 32, 64, 128}, 2.0);
  std::string detail;
  bool ok = true;
  auto series = [&](const DiagnosticReport& r, const std::string& label) {
    detail += label + "=[";
    double prev = std::numeric_limits<double>::infinity();
    bool first = true;
    for (const auto& s : r.series) {
      detail += (first ? "" : " ") + fmt("%.2e", s.value);
      first = false;
      ok = ok && s.value < prev;
      prev = s.value;
    }
    detail += "] ";
  };
  for (double t : {0.0, 1.0}) series(bl_cauchy_probe(e, t), fmt("BL(t=%g)", t));
  for (int order : {0, 1}) {
    series(l1loc_convergence_probe(k, e, 5.0, 2.0, order), fmt("L1 d%d", order));
  }
  detail.pop_back();
  return {ok, detail};
}

Outcome h1_identity() {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<std::size_t> n(1, 40);
  double worst = 0.0;
  for (double a : {0.5, 1.0, 2.0}) {
    const CHKernel k(a);
    for (int i = 0; i < 34; ++i) {
      const PeakonState s = random_state(rng, n(rng), 5.0);
      const double h = invariants(k, s).H;
      worst = std::max(worst, std::abs(h1_norm_sq(k, s) - 2 * h) / (2 * h));
    }
  }
  return {worst <= 1e-12, fmt("102 states, max rel |h1 - 2H|=%.2e", worst)};
}

}  // namespace

int main() {
  run(1, "single_peakon_exactness", single_peakon);
  run(2, "conservation", conservation);
  run(3, "no_collision_and_bounds", bounds);
  run(4, "bl_metric", bl_metric);
  run(5, "time_lipschitz", lipschitz);
  run(6, "holder_half", holder);
  run(7, "young_inequality", young);
  run(8, "fast_summation", fast_summation);
  run(9, "weak_form_residual", weak_form);
  run(10, "gaussian_convergence", convergence);
  run(11, "h1_norm_identity", h1_identity);
  std::printf("%d of 11 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
