#include "peakon/measure.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <nlohmann/json.hpp>

#include "peakon/errors.hpp"

namespace peakon {

DiscreteMeasure::DiscreteMeasure(std::vector<Atom> atoms) {
  std::stable_sort(atoms.begin(), atoms.end(),
                   [](const Atom& a, const Atom& b) { return a.position < b.position; });
  atoms_.reserve(atoms.size());
  for (const Atom& a : atoms) {
    if (!std::isfinite(a.position) || !std::isfinite(a.weight)) {
      throw Error("DiscreteMeasure: non-finite atom");
    }
    if (!atoms_.empty() && atoms_.back().position == a.position) {
      atoms_.back().weight += a.weight;
    } else {
      atoms_.push_back(a);
    }
  }
  std::erase_if(atoms_, [](const Atom& a) { return a.weight == 0.0; });
}

DiscreteMeasure::DiscreteMeasure(std::span<const double> positions,
                                 std::span<const double> weights) {
  if (positions.size() != weights.size()) {
    throw Error("DiscreteMeasure: positions and weights differ in length");
  }
  std::vector<Atom> atoms(positions.size());
  for (std::size_t i = 0; i < positions.size(); ++i) atoms[i] = {positions[i], weights[i]};
  *this = DiscreteMeasure(std::move(atoms));
}

DiscreteMeasure DiscreteMeasure::dirac(double position, double weight) {
  return DiscreteMeasure(std::vector<Atom>{{position, weight}});
}

double DiscreteMeasure::mass() const {
  double s = 0.0;
  for (const Atom& a : atoms_) s += a.weight;
  return s;
}

DiscreteMeasure DiscreteMeasure::scaled(double factor) const {
  std::vector<Atom> out(atoms_.begin(), atoms_.end());
  for (Atom& a : out) a.weight *= factor;
  return DiscreteMeasure(std::move(out));
}

DiscreteMeasure operator+(const DiscreteMeasure& a, const DiscreteMeasure& b) {
  std::vector<Atom> all(a.atoms_.begin(), a.atoms_.end());
  all.insert(all.end(), b.atoms_.begin(), b.atoms_.end());
  return DiscreteMeasure(std::move(all));
}

DiscreteMeasure operator-(const DiscreteMeasure& a, const DiscreteMeasure& b) {
  return a + b.scaled(-1.0);
}

bool operator==(const DiscreteMeasure& a, const DiscreteMeasure& b) {
  return std::equal(a.atoms_.begin(), a.atoms_.end(), b.atoms_.begin(), b.atoms_.end(),
                    [](const Atom& x, const Atom& y) {
                      return x.position == y.position && x.weight == y.weight;
                    });
}

double tv_norm(const DiscreteMeasure& mu) {
  double s = 0.0;
  for (const Atom& a : mu.atoms()) s += std::abs(a.weight);
  return s;
}

double pair(const DiscreteMeasure& mu, const std::function<double(double)>& f) {
  double s = 0.0;
  for (const Atom& a : mu.atoms()) s += a.weight * f(a.position);
  return s;
}

double w1_distance(const DiscreteMeasure& mu, const DiscreteMeasure& nu) {
  const double m_mu = tv_norm(mu);
  const double m_nu = tv_norm(nu);
  if (std::abs(m_mu - m_nu) > 1e-12 || !(m_mu > 0.0) ||
      std::abs(mu.mass() - m_mu) > 1e-12 || std::abs(nu.mass() - m_nu) > 1e-12) {
    throw MassMismatch("w1_distance: measures must be positive with equal mass (" +
                       std::to_string(m_mu) + " vs " + std::to_string(m_nu) + ")");
  }
  // F_mu - F_nu is the cumulative sum of the signed difference; it is
  // piecewise constant between consecutive support points.
  const DiscreteMeasure diff = mu - nu;
  double cdf = 0.0;
  double total = 0.0;
  const auto atoms = diff.atoms();
  for (std::size_t i = 0; i + 1 < atoms.size(); ++i) {
    cdf += atoms[i].weight;
    total += std::abs(cdf) * (atoms[i + 1].position - atoms[i].position);
  }
  return total;
}

void to_json(nlohmann::json& j, const DiscreteMeasure& mu) {
  j = nlohmann::json::array();
  for (const Atom& a : mu.atoms()) j.push_back({a.position, a.weight});
}

void from_json(const nlohmann::json& j, DiscreteMeasure& mu) {
  if (!j.is_array()) throw Error("measure JSON must be an array of [position, weight] pairs");
  std::vector<Atom> atoms;
  atoms.reserve(j.size());
  for (const auto& entry : j) {
    if (!entry.is_array() || entry.size() != 2) {
      throw Error("measure JSON entries must be [position, weight] pairs");
    }
    atoms.push_back({entry[0].get<double>(), entry[1].get<double>()});
  }
  mu = DiscreteMeasure(std::move(atoms));
}

}  // namespace peakon
