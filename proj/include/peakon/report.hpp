#pragma once

#include <map>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace peakon {

/// Diagnostic output of a probe: a time (or N) indexed series of measured
/// values plus one margin per checked inequality. A margin is
/// (bound - measured), so a check passes when margin >= -tolerance.
struct DiagnosticReport {
  struct Sample {
    double t;
    std::string name;
    double value;
  };
  struct Margin {
    std::string id;
    double margin;
  };

  std::vector<Sample> series;
  std::vector<Margin> margins;
  std::map<std::string, std::string> metadata;

  void record(double t, std::string name, double value);
  void check(std::string id, double margin);

  /// Margins below -tolerance.
  [[nodiscard]] std::vector<Margin> violations(double tolerance) const;
  [[nodiscard]] bool passed(double tolerance) const { return violations(tolerance).empty(); }
  /// Smallest margin with the given id; +inf if absent.
  [[nodiscard]] double margin(const std::string& id) const;

  /// Appends another report's series, margins and metadata.
  void merge(const DiagnosticReport& other);

  /// Flat CSV: kind,t,name,value (kind is "series" or "margin").
  [[nodiscard]] std::string to_csv() const;
};

void to_json(nlohmann::json& j, const DiagnosticReport& report);

/// Shortest round-trip decimal form (17 significant digits).
std::string format_double(double v);

}  // namespace peakon
