#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include <doctest.h>
#include <nlohmann/json.hpp>

#include "peakon/errors.hpp"
#include "peakon/runner.hpp"

using namespace peakon;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("peakon_lab_test_" + name);
  fs::remove_all(p);
  return p;
}

int cli(const std::string& args) {
  const std::string cmd = std::string(PEAKON_LAB_BIN) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::string error_of(const std::string& yaml) {
  try {
    parse_config(yaml);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("scenario listing") {
  const auto names = list_scenarios();
  REQUIRE(names.size() == 6);
  CHECK(std::is_sorted(names.begin(), names.end()));
  CHECK(names == list_scenarios());
  CHECK(resolve_scenario("convergence") == "gaussian-convergence");
  CHECK(resolve_scenario("two-peakon") == "two-peakon");
  try {
    resolve_scenario("three-peakon");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("three-peakon") != std::string::npos);
    CHECK(msg.find("weakform-battery") != std::string::npos);
  }
}

TEST_CASE("config parsing") {
  const RunConfig c = parse_config(R"(
scenario: two-peakon
seed: 7
kernel:
  alpha: 0.5
integrator:
  scheme: rk4
  dt: 0.01
  T: 3
diagnostics:
  N: [4, 8]
  battery:
    count: 3
output:
  dir: out/x
)");
  CHECK(c.scenario == "two-peakon");
  CHECK(c.seed == 7);
  CHECK(c.alpha == 0.5);
  CHECK(c.scheme == Scheme::RK4);
  CHECK(c.dt == 0.01);
  CHECK(*c.horizon == 3.0);
  CHECK(c.sizes == std::vector<std::size_t>{4, 8});
  REQUIRE(c.battery);
  CHECK(c.battery->count == 3);
  CHECK(c.battery->sigma_x == BatterySpec{}.sigma_x);
  CHECK(c.out_dir == fs::path("out/x"));
  CHECK(parse_config("").alpha == 1.0);

  CHECK(error_of("scenario: a\nkernel:\n  alpah: 2\n").find("kernel.alpah") != std::string::npos);
  CHECK(error_of("scenario: a\nkernel:\n  alpah: 2\n").find("line 3") != std::string::npos);
  CHECK(error_of("kernel:\n  alpha: wide\n").find("kernel.alpha") != std::string::npos);
  CHECK(error_of("integrator:\n  scheme: euler\n").find("rk4 or rk45") != std::string::npos);
  CHECK(error_of("diagnostics:\n  N: 8\n").find("must be a list") != std::string::npos);
  CHECK(error_of("kernel: [1, 2\n").find("parse error") != std::string::npos);
  CHECK_THROWS_AS(load_config("/nonexistent/peakon.yaml"), ConfigError);
}

TEST_CASE("config validation and hashing") {
  RunConfig c;
  c.scenario = "single-peakon";
  CHECK_NOTHROW(c.validate());
  RunConfig bad = c;
  bad.alpha = 0.0;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  bad = c;
  bad.sizes = {8, 8};
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  bad = c;
  bad.horizon = -1.0;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  bad = c;
  bad.scenario = "nope";
  CHECK_THROWS_AS(bad.validate(), ConfigError);

  RunConfig d = c;
  d.out_dir = "elsewhere";
  CHECK(d.hash() == c.hash());
  d.seed = 43;
  CHECK(d.hash() != c.hash());
  CHECK(c.hash().size() == 16);
}

TEST_CASE("single-peakon run is exact and deterministic") {
  RunConfig c;
  c.scenario = "single-peakon";
  c.horizon = 1.0;
  const RunResult a = run(c);
  CHECK(a.passed);
  CHECK(a.report.margin("single:closed_form") >= 0.0);
  const RunResult b = run(c);
  CHECK(a.trajectory_csv == b.trajectory_csv);
  CHECK(a.invariants_csv == b.invariants_csv);
  CHECK(a.report_json == b.report_json);
  CHECK(a.summary_json == b.summary_json);
  CHECK(a.trajectory_csv.rfind("t,x1,p1\n", 0) == 0);
  CHECK(a.invariants_csv.rfind("t,P,H,H1,H2,H3\n", 0) == 0);

  const auto summary = nlohmann::json::parse(a.summary_json);
  CHECK(summary.at("version") == 1);
  CHECK(summary.at("scenario") == "single-peakon");
  CHECK(summary.at("pass") == true);
  CHECK(summary.at("margins").size() >= 5);
}

TEST_CASE("command line") {
  CHECK(cli("list") == 0);
  CHECK(cli("") != 0);

  const fs::path out = scratch("ok");
  REQUIRE(cli("run --scenario single-peakon --alpha 1 --T 1 --out " + out.string()) == 0);
  for (const char* f : {"trajectory.csv", "invariants.csv", "report.json", "summary.json"}) {
    CHECK(fs::exists(out / f));
  }
  const std::string first = slurp(out / "summary.json");
  REQUIRE(cli("run --scenario single-peakon --alpha 1 --T 1 --out " + out.string()) == 0);
  CHECK(slurp(out / "summary.json") == first);

  const fs::path bad_cfg = scratch("bad.yaml");
  std::ofstream(bad_cfg) << "scenario: single-peakon\nkernel:\n  alpha: [oops\n";
  const fs::path bad_out = scratch("bad_out");
  CHECK(cli("run --config " + bad_cfg.string() + " --out " + bad_out.string()) == 2);
  CHECK_FALSE(fs::exists(bad_out));
  CHECK(cli("run --scenario unknown --out " + bad_out.string()) == 2);
  CHECK_FALSE(fs::exists(bad_out));

  const fs::path env_out = scratch("env_out");
  const std::string env = "PEAKON_LAB_OUT=" + env_out.string() + " ";
  const int status = std::system((env + PEAKON_LAB_BIN + " run --scenario single-peakon >/dev/null").c_str());
  CHECK(WEXITSTATUS(status) == 0);
  CHECK(fs::exists(env_out / "summary.json"));
  fs::remove_all(out);
  fs::remove_all(env_out);
  fs::remove(bad_cfg);
}
