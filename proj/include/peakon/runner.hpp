#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "peakon/integrator.hpp"
#include "peakon/report.hpp"
#include "peakon/weakform.hpp"

namespace peakon {

/// Everything a scenario run depends on. Unset optionals take the
/// scenario's default.
struct RunConfig {
  std::string scenario;
  double alpha = 1.0;

  Scheme scheme = Scheme::RK45;
  double rtol = 1e-10;
  double atol = 1e-10;
  double dt = 1e-3;
  std::optional<double> max_dt;
  std::optional<double> horizon;
  std::optional<double> snapshot_dt;

  std::vector<std::size_t> sizes{8, 16, 32, 64};
  double R = 5.0;
  std::size_t lipschitz_pairs = 100;
  std::size_t holder_pairs = 50;
  std::size_t young_samples = 100;
  std::optional<BatterySpec> battery;

  std::filesystem::path out_dir = "peakon-lab-out";
  std::uint64_t seed = 42;
  double tolerance = 1e-9;

  /// Throws ConfigError on out-of-range values or an unknown scenario.
  void validate() const;

  /// Stable FNV-1a digest of the canonical JSON form.
  [[nodiscard]] std::string hash() const;
};

void to_json(nlohmann::json& j, const RunConfig& config);

/// Parses the YAML config schema documented in docs/config.md on top of
/// `base`. Unknown keys and type errors raise ConfigError naming the key and
/// its line.
RunConfig parse_config(const std::string& yaml_text, RunConfig base = {});
RunConfig load_config(const std::filesystem::path& path, RunConfig base = {});

/// Built-in scenario names, sorted.
std::vector<std::string> list_scenarios();

/// Resolves an alias ("convergence" -> "gaussian-convergence"); throws
/// ConfigError naming the valid list for unknown names.
std::string resolve_scenario(const std::string& name);

/// In-memory artifacts of a run; nothing touches the filesystem until
/// write_artifacts.
struct RunResult {
  std::string scenario;
  bool passed = false;
  DiagnosticReport report;
  std::string trajectory_csv;
  std::string invariants_csv;
  std::string report_json;
  std::string summary_json;
};

RunResult run(const RunConfig& config);

/// Writes trajectory.csv, invariants.csv, report.json and summary.json into
/// `dir` (created if missing).
void write_artifacts(const RunResult& result, const std::filesystem::path& dir);

}  // namespace peakon
