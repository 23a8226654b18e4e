#include "peakon/report.hpp"

#include <algorithm>
#include <cstdio>
#include <limits>
#include <sstream>

#include <nlohmann/json.hpp>

namespace peakon {

void DiagnosticReport::record(double t, std::string name, double value) {
  series.push_back({t, std::move(name), value});
}

void DiagnosticReport::check(std::string id, double margin_value) {
  margins.push_back({std::move(id), margin_value});
}

std::vector<DiagnosticReport::Margin> DiagnosticReport::violations(double tolerance) const {
  std::vector<Margin> out;
  for (const Margin& m : margins) {
    // NaN margins count as violations.
    if (!(m.margin >= -tolerance)) out.push_back(m);
  }
  return out;
}

double DiagnosticReport::margin(const std::string& id) const {
  double best = std::numeric_limits<double>::infinity();
  for (const Margin& m : margins) {
    if (m.id == id) best = std::min(best, m.margin);
  }
  return best;
}

void DiagnosticReport::merge(const DiagnosticReport& other) {
  series.insert(series.end(), other.series.begin(), other.series.end());
  margins.insert(margins.end(), other.margins.begin(), other.margins.end());
  for (const auto& [k, v] : other.metadata) metadata[k] = v;
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string DiagnosticReport::to_csv() const {
  std::ostringstream out;
  out << "kind,t,name,value\n";
  for (const Sample& s : series) {
    out << "series," << format_double(s.t) << ',' << s.name << ',' << format_double(s.value)
        << '\n';
  }
  for (const Margin& m : margins) {
    out << "margin,," << m.id << ',' << format_double(m.margin) << '\n';
  }
  return out.str();
}

void to_json(nlohmann::json& j, const DiagnosticReport& report) {
  nlohmann::json series = nlohmann::json::array();
  for (const auto& s : report.series) {
    series.push_back({{"t", s.t}, {"name", s.name}, {"value", s.value}});
  }
  nlohmann::json margins = nlohmann::json::array();
  for (const auto& m : report.margins) {
    margins.push_back({{"id", m.id}, {"margin", m.margin}});
  }
  j = nlohmann::json{{"series", series}, {"margins", margins}, {"metadata", report.metadata}};
}

}  // namespace peakon
