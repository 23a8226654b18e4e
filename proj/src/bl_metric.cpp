#include "peakon/bl_metric.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "peakon/errors.hpp"
#include "peakon/simplex.hpp"

namespace peakon {

BLResult bl_distance(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                     const BLOptions& options) {
  // ||s||_BL = ||-s||_BL. Solving for a fixed sign of the leading atom makes
  // d(mu, nu) and d(nu, mu) the same LP, hence bitwise symmetric.
  DiscreteMeasure diff = mu - nu;
  const bool flipped = !diff.empty() && diff.atoms().front().weight < 0.0;
  if (flipped) diff = nu - mu;
  const auto atoms = diff.atoms();
  const std::size_t m = atoms.size();
  if (m > options.atom_cap) {
    throw AtomCapExceeded("bl_distance: " + std::to_string(m) + " atoms exceed cap " +
                          std::to_string(options.atom_cap));
  }
  BLResult result;
  if (m == 0) return result;

  // Shift f_i = y_i - beta so every variable is nonnegative and the origin
  // is feasible:
  //   y_i - 2 beta <= 0
  //   +-(y_{i+1} - y_i) + gap_i beta <= gap_i
  //   beta <= 1
  // maximize sum c_i y_i - (sum c_i) beta.
  const std::size_t beta = m;
  lp::Problem problem(m + 2 * (m - 1) + 1, m + 1);
  std::size_t row = 0;
  for (std::size_t i = 0; i < m; ++i, ++row) {
    problem.a(row, i) = 1.0;
    problem.a(row, beta) = -2.0;
  }
  for (std::size_t i = 0; i + 1 < m; ++i) {
    const double gap = atoms[i + 1].position - atoms[i].position;
    for (double sign : {1.0, -1.0}) {
      problem.a(row, i + 1) = sign;
      problem.a(row, i) = -sign;
      problem.a(row, beta) = gap;
      problem.b[row] = gap;
      ++row;
    }
  }
  problem.a(row, beta) = 1.0;
  problem.b[row] = 1.0;

  double total = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    problem.c[i] = atoms[i].weight;
    total += atoms[i].weight;
  }
  problem.c[beta] = -total;

  const lp::Solution sol = lp::solve(problem);
  if (sol.status != lp::Status::Optimal) {
    // The feasible set is bounded, so anything else is a solver failure.
    throw Error("bl_distance: simplex did not reach optimality");
  }
  result.distance = std::max(0.0, sol.objective);
  result.witness.beta = sol.x[beta];
  result.witness.positions.resize(m);
  result.witness.values.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    result.witness.positions[i] = atoms[i].position;
    const double f = sol.x[i] - sol.x[beta];
    result.witness.values[i] = flipped ? -f : f;
  }
  return result;
}

double bl_norm(const DiscreteMeasure& mu, const BLOptions& options) {
  return bl_distance(mu, DiscreteMeasure{}, options).distance;
}

namespace {

// Maximum of sum c_i f_i subject to |f_i| <= beta and
// |f_{i+1} - f_i| <= slope * gap_i. The best value reachable with the last
// variable fixed at v is a concave piecewise-linear function of v; it is
// carried forward as breakpoints.
double chain_value(std::span<const Atom> atoms, double beta, double slope) {
  if (atoms.empty() || beta <= 0.0) return 0.0;
  std::vector<double> xs{-beta, beta};
  std::vector<double> ys{-atoms[0].weight * beta, atoms[0].weight * beta};
  std::vector<double> nx;
  std::vector<double> ny;

  auto interpolate = [&](double x) {
    if (x <= nx.front()) return ny.front();
    const auto it = std::upper_bound(nx.begin(), nx.end(), x);
    if (it == nx.end()) return ny.back();
    const std::size_t k = static_cast<std::size_t>(it - nx.begin());
    const double t = (x - nx[k - 1]) / (nx[k] - nx[k - 1]);
    return ny[k - 1] + t * (ny[k] - ny[k - 1]);
  };

  for (std::size_t i = 1; i < atoms.size(); ++i) {
    const double r = slope * (atoms[i].position - atoms[i - 1].position);
    const std::size_t peak =
        static_cast<std::size_t>(std::max_element(ys.begin(), ys.end()) - ys.begin());

    // Sliding maximum over [v - r, v + r]: the rising part moves left by r,
    // the falling part right by r, with a plateau at the peak.
    nx.clear();
    ny.clear();
    for (std::size_t k = 0; k <= peak; ++k) {
      nx.push_back(xs[k] - r);
      ny.push_back(ys[k]);
    }
    if (r > 0.0) {
      nx.push_back(xs[peak] + r);
      ny.push_back(ys[peak]);
    }
    for (std::size_t k = peak + 1; k < xs.size(); ++k) {
      nx.push_back(xs[k] + r);
      ny.push_back(ys[k]);
    }

    xs.clear();
    ys.clear();
    xs.push_back(-beta);
    ys.push_back(interpolate(-beta));
    for (std::size_t k = 0; k < nx.size(); ++k) {
      if (nx[k] > -beta && nx[k] < beta) {
        xs.push_back(nx[k]);
        ys.push_back(ny[k]);
      }
    }
    xs.push_back(beta);
    ys.push_back(interpolate(beta));

    for (std::size_t k = 0; k < xs.size(); ++k) ys[k] += atoms[i].weight * xs[k];
  }
  return *std::max_element(ys.begin(), ys.end());
}

}  // namespace

double bl_distance_oracle(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                          double grid_step) {
  if (!(grid_step > 0.0)) throw Error("bl_distance_oracle: grid_step must be positive");
  const DiscreteMeasure diff = mu - nu;
  const auto steps = static_cast<std::size_t>(std::ceil(1.0 / grid_step));
  double best = 0.0;
  for (std::size_t k = 0; k <= steps; ++k) {
    const double beta = std::min(1.0, static_cast<double>(k) * grid_step);
    best = std::max(best, chain_value(diff.atoms(), beta, 1.0 - beta));
  }
  return best;
}

namespace {

double simpson(const CHKernel& kernel, const DiscreteMeasure& mu, int order, double a, double b,
               double fa, double fb) {
  const double len = b - a;
  if (len <= 0.0) return 0.0;
  const double target = kernel.alpha() / 64.0;
  auto n = static_cast<std::size_t>(std::ceil(len / target));
  n = std::max<std::size_t>(2, n + (n % 2));
  const double h = len / static_cast<double>(n);
  double sum = std::abs(fa) + std::abs(fb);
  for (std::size_t k = 1; k < n; ++k) {
    const double x = a + h * static_cast<double>(k);
    sum += (k % 2 == 1 ? 4.0 : 2.0) * std::abs(convolve(kernel, mu, x, order));
  }
  return sum * h / 3.0;
}

}  // namespace

YoungCheck young_inequality_check(const CHKernel& kernel, int order, const DiscreteMeasure& mu) {
  if (order != 0 && order != 1) {
    throw Error("young_inequality_check: order must be 0 or 1, got " + std::to_string(order));
  }
  YoungCheck out;
  if (mu.empty()) return out;

  const double alpha = kernel.alpha();
  std::vector<double> cuts;
  cuts.push_back(mu.atoms().front().position - 40.0 * alpha);
  for (const Atom& a : mu.atoms()) cuts.push_back(a.position);
  cuts.push_back(mu.atoms().back().position + 40.0 * alpha);

  // Between atoms the field is A e^{x/alpha} + B e^{-x/alpha} (or its
  // derivative), which changes sign at most once, so a sign change between
  // the panel ends locates the only kink of |.| inside the panel.
  double lhs = 0.0;
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    double a = cuts[k];
    const double b = cuts[k + 1];
    double fa = convolve(kernel, mu, a, order, Side::Right);
    const double fb = convolve(kernel, mu, b, order, Side::Left);
    if ((fa < 0.0 && fb > 0.0) || (fa > 0.0 && fb < 0.0)) {
      double lo = a;
      double hi = b;
      for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, std::abs(lo)); ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = convolve(kernel, mu, mid, order);
        if ((fm < 0.0) == (fa < 0.0)) {
          lo = mid;
        } else {
          hi = mid;
        }
      }
      const double root = 0.5 * (lo + hi);
      lhs += simpson(kernel, mu, order, a, root, fa, 0.0);
      a = root;
      fa = 0.0;
    }
    lhs += simpson(kernel, mu, order, a, b, fa, fb);
  }
  out.lhs = lhs;
  out.rhs = constants(kernel).bv()[static_cast<std::size_t>(order)] * bl_norm(mu);
  return out;
}

}  // namespace peakon
