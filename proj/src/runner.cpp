#include "peakon/runner.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>
#include <yaml-cpp/yaml.h>

#include "peakon/analysis.hpp"
#include "peakon/bl_metric.hpp"
#include "peakon/discretize.hpp"
#include "peakon/dynamics.hpp"
#include "peakon/errors.hpp"
#include "peakon/greens.hpp"

namespace peakon {

namespace {

const std::vector<std::string> kScenarios = {
    "gaussian-convergence", "regularity-probe",    "single-peakon",
    "two-peakon",           "uniform-convergence", "weakform-battery",
};

const std::map<std::string, std::string> kAliases = {
    {"convergence", "gaussian-convergence"},
};

std::string scheme_name(Scheme s) { return s == Scheme::RK4 ? "rk4" : "rk45"; }

}  // namespace

std::vector<std::string> list_scenarios() { return kScenarios; }

std::string resolve_scenario(const std::string& name) {
  if (std::find(kScenarios.begin(), kScenarios.end(), name) != kScenarios.end()) return name;
  if (auto it = kAliases.find(name); it != kAliases.end()) return it->second;
  std::string valid;
  for (const auto& s : kScenarios) valid += (valid.empty() ? "" : ", ") + s;
  throw ConfigError("unknown scenario '" + name + "'; valid scenarios: " + valid);
}

void RunConfig::validate() const {
  resolve_scenario(scenario);
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw ConfigError("kernel.alpha must be > 0");
  if (horizon && !(*horizon > 0.0)) throw ConfigError("integrator.T must be > 0");
  if (snapshot_dt && !(*snapshot_dt > 0.0)) throw ConfigError("integrator.snapshot_dt must be > 0");
  if (!(rtol > 0.0) || !(atol > 0.0)) throw ConfigError("integrator tolerances must be > 0");
  if (!(dt > 0.0)) throw ConfigError("integrator.dt must be > 0");
  if (max_dt && !(*max_dt > 0.0)) throw ConfigError("integrator.max_dt must be > 0");
  if (sizes.empty()) throw ConfigError("diagnostics.N must not be empty");
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    if (sizes[i] == 0) throw ConfigError("diagnostics.N entries must be >= 1");
    if (i > 0 && !(sizes[i] > sizes[i - 1])) {
      throw ConfigError("diagnostics.N must be strictly increasing");
    }
  }
  if (!(R > 0.0)) throw ConfigError("diagnostics.R must be > 0");
  if (!(tolerance >= 0.0)) throw ConfigError("tolerance must be >= 0");
  if (battery && battery->count == 0) throw ConfigError("diagnostics.battery.count must be >= 1");
  if (battery && (!(battery->sigma_t > 0.0) || !(battery->sigma_x > 0.0))) {
    throw ConfigError("diagnostics.battery scales must be > 0");
  }
}

void to_json(nlohmann::json& j, const RunConfig& c) {
  j = nlohmann::json{
      {"scenario", c.scenario},
      {"seed", c.seed},
      {"tolerance", c.tolerance},
      {"kernel", {{"alpha", c.alpha}}},
      {"integrator",
       {{"scheme", scheme_name(c.scheme)},
        {"rtol", c.rtol},
        {"atol", c.atol},
        {"dt", c.dt},
        {"max_dt", c.max_dt ? nlohmann::json(*c.max_dt) : nlohmann::json(nullptr)},
        {"T", c.horizon ? nlohmann::json(*c.horizon) : nlohmann::json(nullptr)},
        {"snapshot_dt", c.snapshot_dt ? nlohmann::json(*c.snapshot_dt) : nlohmann::json(nullptr)}}},
      {"diagnostics",
       {{"N", c.sizes},
        {"R", c.R},
        {"lipschitz_pairs", c.lipschitz_pairs},
        {"holder_pairs", c.holder_pairs},
        {"young_samples", c.young_samples}}},
      {"output", {{"dir", c.out_dir.string()}}},
  };
  if (c.battery) {
    const BatterySpec& b = *c.battery;
    j["diagnostics"]["battery"] = {{"count", b.count},     {"t_first", b.t_first},
                                   {"t_last", b.t_last},   {"x_first", b.x_first},
                                   {"x_last", b.x_last},   {"sigma_t", b.sigma_t},
                                   {"sigma_x", b.sigma_x}};
  }
}

std::string RunConfig::hash() const {
  nlohmann::json j = *this;
  // The output location does not change results.
  j.erase("output");
  const std::string text = j.dump();
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  std::ostringstream out;
  out << std::hex;
  out.width(16);
  out.fill('0');
  out << h;
  return out.str();
}

namespace {

std::string where(const YAML::Node& node) {
  const YAML::Mark mark = node.Mark();
  return mark.line >= 0 ? " (line " + std::to_string(mark.line + 1) + ")" : "";
}

template <typename T>
T scalar(const YAML::Node& node, const std::string& key) {
  if (!node.IsScalar()) throw ConfigError("config: key '" + key + "'" + where(node) + " must be a scalar");
  try {
    return node.as<T>();
  } catch (const YAML::Exception&) {
    throw ConfigError("config: key '" + key + "'" + where(node) + " has invalid value '" +
                      node.Scalar() + "'");
  }
}

// Visits each key of a mapping, rejecting keys without a handler.
void for_each_key(const YAML::Node& map, const std::string& prefix,
                  const std::map<std::string, std::function<void(const YAML::Node&,
                                                                 const std::string&)>>& handlers) {
  if (!map.IsMap()) {
    throw ConfigError("config: '" + (prefix.empty() ? std::string("<root>") : prefix) + "'" +
                      where(map) + " must be a mapping");
  }
  for (const auto& kv : map) {
    const std::string key = kv.first.as<std::string>();
    const std::string full = prefix.empty() ? key : prefix + "." + key;
    auto it = handlers.find(key);
    if (it == handlers.end()) {
      throw ConfigError("config: unknown key '" + full + "'" + where(kv.first));
    }
    it->second(kv.second, full);
  }
}

}  // namespace

RunConfig parse_config(const std::string& yaml_text, RunConfig c) {
  YAML::Node root;
  try {
    root = YAML::Load(yaml_text);
  } catch (const YAML::ParserException& e) {
    throw ConfigError("config: parse error at line " + std::to_string(e.mark.line + 1) +
                      ", column " + std::to_string(e.mark.column + 1) + ": " + e.msg);
  }
  if (root.IsNull()) return c;

  using Handler = std::function<void(const YAML::Node&, const std::string&)>;
  auto number = [](double& dst) -> Handler {
    return [&dst](const YAML::Node& n, const std::string& k) { dst = scalar<double>(n, k); };
  };
  auto optional_number = [](std::optional<double>& dst) -> Handler {
    return [&dst](const YAML::Node& n, const std::string& k) { dst = scalar<double>(n, k); };
  };
  auto count = [](std::size_t& dst) -> Handler {
    return [&dst](const YAML::Node& n, const std::string& k) {
      const auto v = scalar<long long>(n, k);
      if (v < 0) throw ConfigError("config: key '" + k + "'" + where(n) + " must be >= 0");
      dst = static_cast<std::size_t>(v);
    };
  };

  for_each_key(
      root, "",
      {
          {"scenario", [&](const YAML::Node& n, const std::string& k) {
             c.scenario = scalar<std::string>(n, k);
           }},
          {"seed", [&](const YAML::Node& n, const std::string& k) {
             c.seed = scalar<std::uint64_t>(n, k);
           }},
          {"tolerance", number(c.tolerance)},
          {"kernel", [&](const YAML::Node& n, const std::string& k) {
             for_each_key(n, k, {{"alpha", number(c.alpha)}});
           }},
          {"integrator",
           [&](const YAML::Node& n, const std::string& k) {
             for_each_key(n, k,
                          {
                              {"scheme",
                               [&](const YAML::Node& v, const std::string& kk) {
                                 const auto s = scalar<std::string>(v, kk);
                                 if (s == "rk4") {
                                   c.scheme = Scheme::RK4;
                                 } else if (s == "rk45") {
                                   c.scheme = Scheme::RK45;
                                 } else {
                                   throw ConfigError("config: key '" + kk + "'" + where(v) +
                                                     " must be rk4 or rk45");
                                 }
                               }},
                              {"rtol", number(c.rtol)},
                              {"atol", number(c.atol)},
                              {"dt", number(c.dt)},
                              {"max_dt", optional_number(c.max_dt)},
                              {"T", optional_number(c.horizon)},
                              {"snapshot_dt", optional_number(c.snapshot_dt)},
                          });
           }},
          {"diagnostics",
           [&](const YAML::Node& n, const std::string& k) {
             for_each_key(
                 n, k,
                 {
                     {"N",
                      [&](const YAML::Node& v, const std::string& kk) {
                        if (!v.IsSequence()) {
                          throw ConfigError("config: key '" + kk + "'" + where(v) +
                                            " must be a list");
                        }
                        c.sizes.clear();
                        for (const auto& e : v) {
                          const auto val = scalar<long long>(e, kk);
                          if (val < 1) {
                            throw ConfigError("config: key '" + kk + "'" + where(e) +
                                              " entries must be >= 1");
                          }
                          c.sizes.push_back(static_cast<std::size_t>(val));
                        }
                      }},
                     {"R", number(c.R)},
                     {"lipschitz_pairs", count(c.lipschitz_pairs)},
                     {"holder_pairs", count(c.holder_pairs)},
                     {"young_samples", count(c.young_samples)},
                     {"battery",
                      [&](const YAML::Node& v, const std::string& kk) {
                        BatterySpec b = c.battery.value_or(BatterySpec{});
                        for_each_key(v, kk,
                                     {{"count", count(b.count)},
                                      {"t_first", number(b.t_first)},
                                      {"t_last", number(b.t_last)},
                                      {"x_first", number(b.x_first)},
                                      {"x_last", number(b.x_last)},
                                      {"sigma_t", number(b.sigma_t)},
                                      {"sigma_x", number(b.sigma_x)}});
                        c.battery = b;
                      }},
                 });
           }},
          {"output",
           [&](const YAML::Node& n, const std::string& k) {
             for_each_key(n, k,
                          {{"dir", [&](const YAML::Node& v, const std::string& kk) {
                              c.out_dir = scalar<std::string>(v, kk);
                            }}});
           }},
      });
  return c;
}

RunConfig load_config(const std::filesystem::path& path, RunConfig base) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open '" + path.string() + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return parse_config(buf.str(), std::move(base));
  } catch (const ConfigError& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

namespace {

struct Context {
  const RunConfig& cfg;
  CHKernel kernel;
  IntegratorOptions integrator;
  DiagnosticReport report;
  std::string trajectory_csv;
  std::string invariants_csv;
};

double relative_drift(double value, double reference) {
  return std::abs(value - reference) / std::max(std::abs(reference), 1e-300);
}

// Dense-output samples at the snapshot cadence, always including t_end.
std::vector<PeakonState> snapshots(const Trajectory& traj, double cadence) {
  std::vector<PeakonState> out;
  const double t0 = traj.t_begin();
  const double t1 = traj.t_end();
  const auto steps = static_cast<std::size_t>(std::max(1.0, std::floor((t1 - t0) / cadence + 1e-9)));
  for (std::size_t k = 0; k <= steps; ++k) {
    const double t = std::min(t1, t0 + cadence * static_cast<double>(k));
    out.push_back(traj.state_at(t));
  }
  if (out.back().t < t1) out.push_back(traj.state_at(t1));
  return out;
}

void emit_csvs(Context& ctx, const Trajectory& traj) {
  const double cadence = ctx.cfg.snapshot_dt.value_or((traj.t_end() - traj.t_begin()) / 100.0);
  const auto snaps = snapshots(traj, cadence);
  const std::size_t n = traj.particles();

  std::ostringstream tr;
  tr << 't';
  for (std::size_t i = 1; i <= n; ++i) tr << ",x" << i;
  for (std::size_t i = 1; i <= n; ++i) tr << ",p" << i;
  tr << '\n';
  std::ostringstream inv;
  inv << "t,P,H,H1,H2,H3\n";
  for (const PeakonState& s : snaps) {
    tr << format_double(s.t);
    for (double v : s.x) tr << ',' << format_double(v);
    for (double v : s.p) tr << ',' << format_double(v);
    tr << '\n';
    const InvariantSet iv = invariants(ctx.kernel, s, 3);
    inv << format_double(s.t) << ',' << format_double(iv.P) << ',' << format_double(iv.H) << ','
        << format_double(iv.Hn[0]) << ',' << format_double(iv.Hn[1]) << ','
        << format_double(iv.Hn[2]) << '\n';
  }
  ctx.trajectory_csv = tr.str();
  ctx.invariants_csv = inv.str();
}

// Conservation, a priori bounds, ordering and field bounds on accepted
// integrator nodes (subsampled to at most `max_checks` for the Lax traces).
void dynamics_checks(Context& ctx, const Trajectory& traj, const std::string& tag,
                     std::size_t max_checks = 200) {
  const auto nodes = traj.nodes();
  const PeakonState& first = nodes.front().state;
  const double alpha = ctx.kernel.alpha();
  const InvariantSet iv0 = invariants(ctx.kernel, first, 3);
  const double horizon = traj.t_end() - traj.t_begin();

  double min_slack = std::numeric_limits<double>::infinity();
  double min_gap = std::numeric_limits<double>::infinity();
  double p_drift = 0.0;
  for (const TrajectoryNode& node : nodes) {
    min_slack = std::min(min_slack, check_bounds(first, node.state, ctx.kernel).min_slack());
    for (std::size_t i = 1; i < node.state.size(); ++i) {
      min_gap = std::min(min_gap, node.state.x[i] - node.state.x[i - 1]);
    }
    p_drift = std::max(p_drift, std::abs(node.state.total_momentum() - iv0.P));
  }

  const std::size_t stride = std::max<std::size_t>(1, nodes.size() / max_checks);
  double h_drift = 0.0;
  double h2_drift = 0.0;
  double h3_drift = 0.0;
  double field_margin = std::numeric_limits<double>::infinity();
  const KernelConstants kc = constants(ctx.kernel);
  for (std::size_t k = 0; k < nodes.size(); k += stride) {
    const PeakonState& s = nodes[k].state;
    const InvariantSet iv = invariants(ctx.kernel, s, 3);
    h_drift = std::max(h_drift, relative_drift(iv.H, iv0.H));
    h2_drift = std::max(h2_drift, relative_drift(iv.Hn[1], iv0.Hn[1]));
    h3_drift = std::max(h3_drift, relative_drift(iv.Hn[2], iv0.Hn[2]));
    if (k % (stride * 20) == 0) {
      const double mass = s.total_momentum();
      const FieldSample f =
          sample_field(ctx.kernel, s.measure(), Grid{s.x.front() - 10 * alpha, s.x.back() + 10 * alpha, 201});
      double umax = 0.0;
      double uxmax = 0.0;
      for (std::size_t i = 0; i < f.u.size(); ++i) {
        umax = std::max(umax, std::abs(f.u[i]));
        uxmax = std::max(uxmax, std::abs(f.ux[i]));
      }
      field_margin = std::min({field_margin, kc.sup_G * mass - umax, kc.sup_Gp * mass - uxmax});
    }
  }
  {
    const PeakonState& s = nodes.back().state;
    const InvariantSet iv = invariants(ctx.kernel, s, 3);
    h_drift = std::max(h_drift, relative_drift(iv.H, iv0.H));
    h2_drift = std::max(h2_drift, relative_drift(iv.Hn[1], iv0.Hn[1]));
    h3_drift = std::max(h3_drift, relative_drift(iv.Hn[2], iv0.Hn[2]));
  }

  auto& r = ctx.report;
  r.record(horizon, tag + ":max_momentum_drift", p_drift);
  r.record(horizon, tag + ":max_H_drift", h_drift);
  r.record(horizon, tag + ":max_H2_drift", h2_drift);
  r.record(horizon, tag + ":max_H3_drift", h3_drift);
  r.record(horizon, tag + ":min_gap", nodes.front().state.size() > 1 ? min_gap : 0.0);
  r.record(horizon, tag + ":accepted_steps", static_cast<double>(nodes.size() - 1));
  r.check(tag + ":a_priori_bounds", min_slack);
  r.check(tag + ":momentum_conservation", 1e-12 * iv0.P * std::max(1.0, horizon) - p_drift);
  r.check(tag + ":hamiltonian_drift", 1e-7 - h_drift);
  r.check(tag + ":lax_drift_H2", 1e-7 - h2_drift);
  r.check(tag + ":lax_drift_H3", 1e-7 - h3_drift);
  r.check(tag + ":field_sup_bound", field_margin);
  if (first.size() > 1) r.check(tag + ":no_collision", min_gap > 0.0 ? min_gap / alpha : -1.0);
}

double horizon_or(const RunConfig& cfg, double fallback) { return cfg.horizon.value_or(fallback); }

PeakonState single_peakon_state(double alpha, double speed) {
  return PeakonState{0.0, {0.0}, {2.0 * alpha * speed}};
}

PeakonState two_peakon_state() { return PeakonState{0.0, {-5.0, 0.0}, {0.75, 0.25}}; }

void run_single_peakon(Context& ctx) {
  const double T = horizon_or(ctx.cfg, 1.0);
  const double speed = 1.0;
  const Trajectory traj = integrate(ctx.kernel, single_peakon_state(ctx.kernel.alpha(), speed), T,
                                    ctx.integrator);
  double err = 0.0;
  for (const TrajectoryNode& node : traj.nodes()) {
    err = std::max(err, std::abs(node.state.x[0] - speed * node.state.t));
  }
  ctx.report.record(T, "single:closed_form_error", err);
  ctx.report.check("single:closed_form", 1e-10 - err);
  dynamics_checks(ctx, traj, "single");
  emit_csvs(ctx, traj);
}

void run_two_peakon(Context& ctx) {
  const double T = horizon_or(ctx.cfg, 20.0);
  const Trajectory traj = integrate(ctx.kernel, two_peakon_state(), T, ctx.integrator);
  dynamics_checks(ctx, traj, "two");
  const auto lip_pairs = sample_time_pairs(0.0, T, ctx.cfg.lipschitz_pairs, ctx.cfg.seed);
  ctx.report.merge(time_lipschitz_probe(traj, ctx.kernel, lip_pairs));
  const auto hold_pairs = sample_time_pairs(0.0, T, ctx.cfg.holder_pairs, ctx.cfg.seed + 1);
  ctx.report.merge(holder_probe(traj, ctx.kernel, hold_pairs));
  emit_csvs(ctx, traj);
}

void run_convergence(Context& ctx, const InitialMeasure& m0) {
  const double T = horizon_or(ctx.cfg, 2.0);
  std::vector<std::size_t> sizes = ctx.cfg.sizes;
  sizes.push_back(2 * sizes.back());
  const Ensemble e = build_ensemble(ctx.kernel, m0, sizes, T, QuantizationRule::EqualMass,
                                    ctx.integrator);
  const double t_mid = std::min(1.0, T);
  for (double t : {0.0, t_mid}) {
    DiagnosticReport bl = bl_cauchy_probe(e, t);
    for (auto& m : bl.margins) m.id += "_t=" + format_double(t);
    ctx.report.merge(bl);
  }
  for (int order : {0, 1}) {
    ctx.report.merge(l1loc_convergence_probe(ctx.kernel, e, ctx.cfg.R, T, order));
  }
  for (double t : {0.0, t_mid}) {
    std::vector<std::pair<std::size_t, DiscreteMeasure>> series;
    for (std::size_t k = 0; k < e.sizes.size(); ++k) series.emplace_back(e.sizes[k], e.measure_at(k, t));
    DiagnosticReport ws = weak_star_probe(series, default_battery());
    for (auto& m : ws.margins) m.id += "_t=" + format_double(t);
    ctx.report.merge(ws);
  }
  dynamics_checks(ctx, e.runs.back(), "finest", 50);
  emit_csvs(ctx, e.runs.back());
}

void run_regularity(Context& ctx) {
  const double T = horizon_or(ctx.cfg, 5.0);
  const PeakonState init = quantize(InitialMeasure::gaussian(0.0, 1.0), ctx.cfg.sizes.front());
  const Trajectory traj = integrate(ctx.kernel, init, T, ctx.integrator);
  dynamics_checks(ctx, traj, "regularity");
  ctx.report.merge(time_lipschitz_probe(
      traj, ctx.kernel, sample_time_pairs(0.0, T, ctx.cfg.lipschitz_pairs, ctx.cfg.seed)));
  ctx.report.merge(holder_probe(
      traj, ctx.kernel, sample_time_pairs(0.0, T, ctx.cfg.holder_pairs, ctx.cfg.seed + 1)));

  std::mt19937_64 rng(ctx.cfg.seed + 2);
  std::uniform_real_distribution<double> pos(-3.0, 3.0);
  std::uniform_real_distribution<double> wt(-1.0, 1.0);
  std::uniform_int_distribution<int> count(1, 6);
  double margin[2] = {std::numeric_limits<double>::infinity(),
                      std::numeric_limits<double>::infinity()};
  for (std::size_t s = 0; s < ctx.cfg.young_samples; ++s) {
    std::vector<Atom> atoms(static_cast<std::size_t>(count(rng)));
    for (Atom& a : atoms) a = {pos(rng), wt(rng)};
    const DiscreteMeasure mu(std::move(atoms));
    for (int order : {0, 1}) {
      const YoungCheck yc = young_inequality_check(ctx.kernel, order, mu);
      margin[order] = std::min(margin[order], yc.rhs - yc.lhs);
    }
  }
  if (ctx.cfg.young_samples > 0) {
    ctx.report.check("young_inequality_order0", margin[0]);
    ctx.report.check("young_inequality_order1", margin[1]);
  }
  emit_csvs(ctx, traj);
}

void run_weakform(Context& ctx) {
  const double T = horizon_or(ctx.cfg, 2.0);
  IntegratorOptions opt = ctx.integrator;
  if (!ctx.cfg.max_dt) opt.max_dt = 0.05;

  const PeakonState single = single_peakon_state(ctx.kernel.alpha(), 1.0);
  const Trajectory single_traj = integrate(ctx.kernel, single, T, opt);
  BatterySpec single_spec = ctx.cfg.battery.value_or(
      BatterySpec{5, 0.2, std::max(0.2, T - 0.5), 0.2, std::max(0.2, T - 0.5), 0.4, 1.5});
  DiagnosticReport rs = residual_battery(ctx.kernel, single_traj, single.measure(),
                                         make_battery(single_spec), QuadSpec{}, 1e-6);
  for (auto& m : rs.margins) m.id = "single:" + m.id;
  for (auto& s : rs.series) s.name = "single:" + s.name;
  ctx.report.merge(rs);

  const PeakonState two = two_peakon_state();
  const Trajectory two_traj = integrate(ctx.kernel, two, T, opt);
  BatterySpec two_spec = ctx.cfg.battery.value_or(
      BatterySpec{5, 0.2, std::max(0.2, T - 0.5), -5.0, 0.5, 0.4, 1.5});
  DiagnosticReport rt = residual_battery(ctx.kernel, two_traj, two.measure(),
                                         make_battery(two_spec), QuadSpec{}, 1e-5);
  for (auto& m : rt.margins) m.id = "two:" + m.id;
  for (auto& s : rt.series) s.name = "two:" + s.name;
  ctx.report.merge(rt);

  dynamics_checks(ctx, two_traj, "two");
  emit_csvs(ctx, two_traj);
}

}  // namespace

RunResult run(const RunConfig& config) {
  config.validate();
  const std::string scenario = resolve_scenario(config.scenario);

  Context ctx{config, CHKernel(config.alpha), {}, {}, {}, {}};
  ctx.integrator.scheme = config.scheme;
  ctx.integrator.rtol = config.rtol;
  ctx.integrator.atol = config.atol;
  ctx.integrator.dt = config.dt;
  if (config.max_dt) ctx.integrator.max_dt = *config.max_dt;

  try {
    if (scenario == "single-peakon") {
      run_single_peakon(ctx);
    } else if (scenario == "two-peakon") {
      run_two_peakon(ctx);
    } else if (scenario == "gaussian-convergence") {
      run_convergence(ctx, InitialMeasure::gaussian(0.0, 1.0));
    } else if (scenario == "uniform-convergence") {
      run_convergence(ctx, InitialMeasure::uniform(-1.0, 1.0));
    } else if (scenario == "regularity-probe") {
      run_regularity(ctx);
    } else {
      run_weakform(ctx);
    }
  } catch (const Error& e) {
    throw Error("scenario '" + scenario + "': " + e.what());
  }

  RunResult result;
  result.scenario = scenario;
  result.report = std::move(ctx.report);
  result.report.metadata["scenario"] = scenario;
  result.report.metadata["config_hash"] = config.hash();
  result.passed = result.report.passed(config.tolerance);
  result.trajectory_csv = std::move(ctx.trajectory_csv);
  result.invariants_csv = std::move(ctx.invariants_csv);

  nlohmann::json report_json{{"config", config}, {"report", result.report}};
  result.report_json = report_json.dump(2) + "\n";

  // Aggregate margins by id (smallest wins), sorted by id.
  std::map<std::string, double> by_id;
  for (const auto& m : result.report.margins) {
    auto [it, inserted] = by_id.emplace(m.id, m.margin);
    if (!inserted) it->second = std::min(it->second, m.margin);
  }
  nlohmann::json margins = nlohmann::json::array();
  for (const auto& [id, value] : by_id) {
    margins.push_back({{"id", id}, {"margin", value}, {"pass", value >= -config.tolerance}});
  }
  nlohmann::json summary{{"schema", "peakon-lab/summary"},
                         {"version", 1},
                         {"scenario", scenario},
                         {"config_hash", config.hash()},
                         {"tolerance", config.tolerance},
                         {"pass", result.passed},
                         {"margins", margins}};
  result.summary_json = summary.dump(2) + "\n";
  return result;
}

void write_artifacts(const RunResult& result, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  const std::pair<const char*, const std::string*> files[] = {
      {"trajectory.csv", &result.trajectory_csv},
      {"invariants.csv", &result.invariants_csv},
      {"report.json", &result.report_json},
      {"summary.json", &result.summary_json},
  };
  for (const auto& [name, text] : files) {
    std::ofstream out(dir / name, std::ios::binary);
    if (!out) throw Error("cannot write " + (dir / name).string());
    out << *text;
  }
}

}  // namespace peakon
