#include "peakon/discretize.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "peakon/errors.hpp"

namespace peakon {

namespace {

constexpr std::size_t kCdfCells = 2048;

double integrate(const std::function<double(double)>& f, double a, double b) {
  if (b <= a) return 0.0;
  return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, 12, 1e-14);
}

// One Kronrod pass; CDF cells are narrow enough that refinement only chases
// rounding noise in the tails.
double cell_integral(const std::function<double(double)>& f, double a, double b) {
  if (b <= a) return 0.0;
  return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, 0);
}

double neumaier_sum(std::span<const double> v) {
  double sum = 0.0;
  double comp = 0.0;
  for (double x : v) {
    const double t = sum + x;
    comp += std::abs(sum) >= std::abs(x) ? (sum - t) + x : (x - t) + sum;
    sum = t;
  }
  return sum + comp;
}

// Rescale so the compensated sum is exactly one; the largest weight absorbs
// the rounding residue.
void normalize_unit_mass(std::vector<double>& p) {
  double total = neumaier_sum(p);
  for (double& v : p) v /= total;
  const auto big = static_cast<std::size_t>(std::max_element(p.begin(), p.end()) - p.begin());
  std::vector<double> rest;
  rest.reserve(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i != big) rest.push_back(p[i]);
  }
  p[big] = 1.0 - neumaier_sum(rest);
}

}  // namespace

InitialMeasure InitialMeasure::density(Density d) {
  if (!d.g) throw Error("InitialMeasure: density callable is empty");
  if (!(d.upper > d.lower)) throw Error("InitialMeasure: density support is empty");
  InitialMeasure m;
  const double h = (d.upper - d.lower) / static_cast<double>(kCdfCells);
  m.cdf_grid_.resize(kCdfCells + 1);
  m.cdf_values_.assign(kCdfCells + 1, 0.0);
  for (std::size_t k = 0; k <= kCdfCells; ++k) {
    m.cdf_grid_[k] = k == kCdfCells ? d.upper : d.lower + h * static_cast<double>(k);
  }
  for (std::size_t k = 0; k < kCdfCells; ++k) {
    for (double x : {m.cdf_grid_[k], 0.5 * (m.cdf_grid_[k] + m.cdf_grid_[k + 1])}) {
      if (d.g(x) < 0.0) {
        throw Error("InitialMeasure: density is negative at x = " + std::to_string(x));
      }
    }
    m.cdf_values_[k + 1] = m.cdf_values_[k] + cell_integral(d.g, m.cdf_grid_[k], m.cdf_grid_[k + 1]);
  }
  m.raw_mass_ = m.cdf_values_.back();
  if (!(m.raw_mass_ > 0.0)) throw Error("InitialMeasure: density has zero mass");
  for (double& v : m.cdf_values_) v /= m.raw_mass_;
  m.kind_ = std::move(d);
  return m;
}

InitialMeasure InitialMeasure::atomic(DiscreteMeasure atoms) {
  if (atoms.empty()) throw Error("InitialMeasure: atomic measure has no atoms");
  for (const Atom& a : atoms.atoms()) {
    if (!(a.weight > 0.0)) throw Error("InitialMeasure: atomic weights must be positive");
  }
  InitialMeasure m;
  m.raw_mass_ = atoms.mass();
  m.kind_ = atoms.scaled(1.0 / m.raw_mass_);
  return m;
}

InitialMeasure InitialMeasure::uniform(double a, double b) {
  return density({[](double) { return 1.0; }, a, b});
}

InitialMeasure InitialMeasure::gaussian(double mean, double sigma) {
  if (!(sigma > 0.0)) throw Error("gaussian: sigma must be positive");
  return density({[=](double x) {
                    const double z = (x - mean) / sigma;
                    return std::exp(-0.5 * z * z);
                  },
                  mean - 8.0 * sigma, mean + 8.0 * sigma});
}

InitialMeasure InitialMeasure::cosine_bump(double center, double half_width) {
  if (!(half_width > 0.0)) throw Error("cosine_bump: half_width must be positive");
  return density({[=](double x) {
                    return 1.0 + std::cos(std::numbers::pi * (x - center) / half_width);
                  },
                  center - half_width, center + half_width});
}

double InitialMeasure::density_at(double x) const {
  const Density& d = density_spec();
  if (x < d.lower || x > d.upper) return 0.0;
  return d.g(x) / raw_mass_;
}

double InitialMeasure::pair(const std::function<double(double)>& f) const {
  if (is_atomic()) return peakon::pair(atoms(), f);
  const Density& d = density_spec();
  constexpr std::size_t pieces = 64;
  const double h = (d.upper - d.lower) / pieces;
  double s = 0.0;
  for (std::size_t k = 0; k < pieces; ++k) {
    const double a = d.lower + h * static_cast<double>(k);
    s += integrate([&](double x) { return f(x) * d.g(x); }, a, a + h);
  }
  return s / raw_mass_;
}

double InitialMeasure::cdf(double x) const {
  if (is_atomic()) {
    double c = 0.0;
    for (const Atom& a : atoms().atoms()) {
      if (a.position <= x) c += a.weight;
    }
    return c;
  }
  const Density& d = density_spec();
  if (x <= d.lower) return 0.0;
  if (x >= d.upper) return 1.0;
  auto it = std::upper_bound(cdf_grid_.begin(), cdf_grid_.end(), x);
  const auto k = static_cast<std::size_t>(it - cdf_grid_.begin()) - 1;
  return cdf_values_[k] + cell_integral(d.g, cdf_grid_[k], x) / raw_mass_;
}

namespace {

PeakonState cluster_atoms(const DiscreteMeasure& atoms, std::size_t n) {
  std::vector<Atom> a(atoms.atoms().begin(), atoms.atoms().end());
  while (a.size() > n) {
    std::size_t best = 0;
    for (std::size_t i = 1; i + 1 < a.size(); ++i) {
      if (a[i + 1].position - a[i].position < a[best + 1].position - a[best].position) best = i;
    }
    const double w = a[best].weight + a[best + 1].weight;
    a[best].position = (a[best].weight * a[best].position +
                        a[best + 1].weight * a[best + 1].position) / w;
    a[best].weight = w;
    a.erase(a.begin() + static_cast<std::ptrdiff_t>(best) + 1);
  }
  PeakonState s;
  for (const Atom& atom : a) {
    s.x.push_back(atom.position);
    s.p.push_back(atom.weight);
  }
  normalize_unit_mass(s.p);
  return s;
}

}  // namespace

PeakonState quantize(const InitialMeasure& m0, std::size_t n, QuantizationRule rule) {
  if (n == 0) throw Error("quantize: N must be >= 1");
  if (m0.is_atomic()) {
    PeakonState s = cluster_atoms(m0.atoms(), n);
    s.validate();
    return s;
  }

  const Density& d = m0.density_spec();
  PeakonState s;
  if (rule == QuantizationRule::EqualMass) {
    s.x.resize(n);
    s.p.assign(n, 1.0 / static_cast<double>(n));
    for (std::size_t i = 0; i < n; ++i) {
      const double level = (static_cast<double>(i) + 0.5) / static_cast<double>(n);
      double lo = d.lower;
      double hi = d.upper;
      while (hi - lo > 1e-12) {
        const double mid = 0.5 * (lo + hi);
        if (m0.cdf(mid) < level) {
          lo = mid;
        } else {
          hi = mid;
        }
      }
      s.x[i] = 0.5 * (lo + hi);
      if (i > 0 && !(s.x[i] > s.x[i - 1])) {
        throw DegenerateSupport("quantize: quantiles " + std::to_string(i - 1) + " and " +
                                std::to_string(i) + " coincide; reduce N");
      }
    }
  } else {
    const double h = (d.upper - d.lower) / static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double a = d.lower + h * static_cast<double>(i);
      const double b = i + 1 == n ? d.upper : a + h;
      const double mass = m0.cdf(b) - m0.cdf(a);
      if (mass > 0.0) {
        s.x.push_back(0.5 * (a + b));
        s.p.push_back(mass);
      }
    }
    if (s.x.empty()) throw DegenerateSupport("quantize: every cell is empty");
  }
  normalize_unit_mass(s.p);
  s.validate();
  return s;
}

double Grid::step() const {
  return points > 1 ? (x_max - x_min) / static_cast<double>(points - 1) : 0.0;
}

double Grid::at(std::size_t i) const {
  return i + 1 == points ? x_max : x_min + step() * static_cast<double>(i);
}

FieldSample sample_field(const CHKernel& kernel, const DiscreteMeasure& m, const Grid& grid) {
  if (grid.points == 0 || !(grid.x_max >= grid.x_min)) throw Error("sample_field: bad grid");
  FieldSample f;
  f.grid = grid;
  f.alpha = kernel.alpha();
  f.u.resize(grid.points);
  f.ux.resize(grid.points);
  for (std::size_t i = 0; i < grid.points; ++i) {
    const double x = grid.at(i);
    f.u[i] = convolve(kernel, m, x, 0);
    f.ux[i] = convolve(kernel, m, x, 1);
  }
  return f;
}

FieldSample reconstruct_u0(const CHKernel& kernel, const PeakonState& particles,
                           const Grid& grid) {
  return sample_field(kernel, particles.measure(), grid);
}

}  // namespace peakon
