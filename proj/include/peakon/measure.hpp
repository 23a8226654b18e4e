#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace peakon {

struct Atom {
  double position;
  double weight;
};

/// Finite signed combination of Dirac masses on the real line.
///
/// Atoms are kept sorted by strictly increasing position. Construction
/// merges atoms that share a position (weights add) and drops atoms whose
/// weight is exactly zero, so two measures are equal iff their atom lists
/// are equal.
class DiscreteMeasure {
 public:
  DiscreteMeasure() = default;
  explicit DiscreteMeasure(std::vector<Atom> atoms);
  DiscreteMeasure(std::span<const double> positions, std::span<const double> weights);

  static DiscreteMeasure dirac(double position, double weight = 1.0);

  [[nodiscard]] std::span<const Atom> atoms() const { return atoms_; }
  [[nodiscard]] std::size_t size() const { return atoms_.size(); }
  [[nodiscard]] bool empty() const { return atoms_.empty(); }

  /// Signed total mass, sum of weights.
  [[nodiscard]] double mass() const;

  [[nodiscard]] DiscreteMeasure scaled(double factor) const;

  friend DiscreteMeasure operator+(const DiscreteMeasure& a, const DiscreteMeasure& b);
  friend DiscreteMeasure operator-(const DiscreteMeasure& a, const DiscreteMeasure& b);
  friend bool operator==(const DiscreteMeasure& a, const DiscreteMeasure& b);

 private:
  std::vector<Atom> atoms_;
};

/// Total variation norm: sum of |weight|.
double tv_norm(const DiscreteMeasure& mu);

/// mu(f) = sum of weight * f(position).
double pair(const DiscreteMeasure& mu, const std::function<double(double)>& f);

/// 1-Wasserstein distance of two measures of equal positive mass, computed
/// as the integral of |F_mu - F_nu| over the line. Throws MassMismatch.
double w1_distance(const DiscreteMeasure& mu, const DiscreteMeasure& nu);

// JSON form: array of [position, weight] pairs, sorted and merged.
void to_json(nlohmann::json& j, const DiscreteMeasure& mu);
void from_json(const nlohmann::json& j, DiscreteMeasure& mu);

}  // namespace peakon
