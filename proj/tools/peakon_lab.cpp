// peakon-lab: runs built-in scenarios and writes CSV/JSON artifacts.
//
//   peakon-lab list
//   peakon-lab run --scenario single-peakon --alpha 1 --T 1
//   peakon-lab run --config lab.yaml --N 8,16,32,64 --out results/
//
// Exit status: 0 when every margin passes, 1 when a margin fails, 2 on
// configuration or runtime errors (no artifacts are written then).

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "peakon/errors.hpp"
#include "peakon/runner.hpp"

namespace fs = std::filesystem;

namespace {

struct RunFlags {
  std::string config;
  std::string scenario;
  std::optional<double> alpha;
  std::optional<double> horizon;
  std::vector<std::size_t> sizes;
  std::string out;
  std::optional<std::uint64_t> seed;
  std::optional<double> tolerance;
};

peakon::RunConfig assemble(const RunFlags& f) {
  peakon::RunConfig base;
  if (const char* env = std::getenv("PEAKON_LAB_OUT"); env && *env) base.out_dir = env;
  peakon::RunConfig c = f.config.empty() ? base : peakon::load_config(f.config, base);
  if (!f.scenario.empty()) c.scenario = f.scenario;
  if (f.alpha) c.alpha = *f.alpha;
  if (f.horizon) c.horizon = *f.horizon;
  if (!f.sizes.empty()) c.sizes = f.sizes;
  if (!f.out.empty()) c.out_dir = f.out;
  if (f.seed) c.seed = *f.seed;
  if (f.tolerance) c.tolerance = *f.tolerance;
  if (c.scenario.empty()) throw peakon::ConfigError("no scenario given (use --scenario or the config 'scenario' key)");
  c.validate();
  return c;
}

// Stage into a sibling directory, then move files into place, so a failure
// while writing leaves the target untouched.
void publish(const peakon::RunResult& result, const fs::path& dir) {
  const fs::path parent = dir.has_parent_path() ? dir.parent_path() : fs::path(".");
  fs::create_directories(parent);
  const fs::path stage = parent / (dir.filename().string() + ".partial");
  fs::remove_all(stage);
  try {
    peakon::write_artifacts(result, stage);
    fs::create_directories(dir);
    for (const auto& entry : fs::directory_iterator(stage)) {
      fs::rename(entry.path(), dir / entry.path().filename());
    }
  } catch (...) {
    fs::remove_all(stage);
    throw;
  }
  fs::remove_all(stage);
}

int do_run(const RunFlags& flags) {
  const peakon::RunConfig config = assemble(flags);
  const peakon::RunResult result = peakon::run(config);
  publish(result, config.out_dir);

  std::size_t failed = 0;
  for (const auto& v : result.report.violations(config.tolerance)) {
    std::cerr << "FAIL " << v.id << " margin=" << peakon::format_double(v.margin) << '\n';
    ++failed;
  }
  std::cout << result.scenario << ": " << (result.passed ? "pass" : "fail") << " ("
            << result.report.margins.size() - failed << "/" << result.report.margins.size()
            << " margins) -> " << config.out_dir.string() << '\n';
  return result.passed ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Camassa-Holm peakon particle-method lab"};
  app.require_subcommand(1);

  auto* list = app.add_subcommand("list", "Print the built-in scenarios");

  RunFlags flags;
  auto* run = app.add_subcommand("run", "Run a scenario and write artifacts");
  run->add_option("--config", flags.config, "YAML config file")->check(CLI::ExistingFile);
  run->add_option("--scenario", flags.scenario, "Scenario name");
  run->add_option("--alpha", flags.alpha, "Kernel length scale");
  run->add_option("--T", flags.horizon, "Time horizon");
  run->add_option("--N", flags.sizes, "Particle counts, e.g. 8,16,32,64")->delimiter(',');
  run->add_option("--out", flags.out, "Output directory (default $PEAKON_LAB_OUT or peakon-lab-out)");
  run->add_option("--seed", flags.seed, "Seed for randomized probes");
  run->add_option("--tolerance", flags.tolerance, "Allowed negative margin");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*list) {
      for (const auto& name : peakon::list_scenarios()) std::cout << name << '\n';
      return 0;
    }
    return do_run(flags);
  } catch (const peakon::ConfigError& e) {
    std::cerr << "peakon-lab: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "peakon-lab: " << e.what() << '\n';
    return 2;
  }
}
