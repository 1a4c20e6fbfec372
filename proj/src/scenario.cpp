#include "zbw/scenario.hpp"

#include "zbw/errors.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

namespace zbw {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

// ---- config parsing ----------------------------------------------------------------------

void check_keys(const json& j, const std::string& where, std::initializer_list<const char*> allowed,
                std::initializer_list<const char*> required) {
  if (!j.is_object()) throw ConfigError(where + ": expected an object");
  const std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& [key, value] : j.items()) {
    (void)value;
    if (!ok.count(key)) throw ConfigError(where + ": unknown key \"" + key + "\"");
  }
  for (const char* key : required)
    if (!j.contains(key)) throw ConfigError(where + ": missing required key \"" + key + "\"");
}

double number(const json& j, const char* key, const std::string& where) {
  const json& v = j.at(key);
  if (!v.is_number()) throw ConfigError(where + "." + key + ": expected a number");
  return v.get<double>();
}

int integer(const json& j, const char* key, const std::string& where) {
  const json& v = j.at(key);
  if (!v.is_number_integer()) throw ConfigError(where + "." + key + ": expected an integer");
  return v.get<int>();
}

Vector vector_of(const json& v, int n, const std::string& where) {
  if (!v.is_array()) throw ConfigError(where + ": expected an array");
  if (n >= 0 && static_cast<int>(v.size()) != n)
    throw ConfigError(where + ": expected " + std::to_string(n) + " components, got " +
                      std::to_string(v.size()));
  Vector out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_number()) throw ConfigError(where + ": components must be numbers");
    out[static_cast<Eigen::Index>(i)] = v[i].get<double>();
  }
  return out;
}

MetricSpec parse_metric(const json& j) {
  check_keys(j, "metric", {"kind", "dimension", "params", "signature"}, {"kind"});
  if (!j.at("kind").is_string()) throw ConfigError("metric.kind: expected a string");
  const MetricKind kind = metric_kind_from_string(j.at("kind").get<std::string>());
  const auto dim = [&](int fallback) {
    if (!j.contains("dimension")) {
      if (fallback > 0) return fallback;
      throw ConfigError("metric: missing required key \"dimension\"");
    }
    return integer(j, "dimension", "metric");
  };
  const auto param = [&](const char* key) {
    if (!j.contains("params")) throw ConfigError("metric: missing required key \"params\"");
    check_keys(j.at("params"), "metric.params", {key}, {key});
    return number(j.at("params"), key, "metric.params");
  };
  const auto no_extra = [&](std::initializer_list<const char*> keys) {
    for (const char* k : keys)
      if (j.contains(k))
        throw ConfigError(std::string("metric: key \"") + k + "\" is not used by kind " + to_string(kind));
  };
  switch (kind) {
    case MetricKind::euclidean:
      no_extra({"params", "signature"});
      return MetricSpec::euclidean(dim(0));
    case MetricKind::minkowski:
      no_extra({"params", "signature"});
      return MetricSpec::minkowski(dim(4));
    case MetricKind::schwarzschild:
      no_extra({"signature"});
      if (dim(4) != 4) throw ConfigError("metric: schwarzschild is four-dimensional");
      return MetricSpec::schwarzschild(param("M"));
    case MetricKind::constant_curvature: {
      const int n = dim(0);
      std::vector<int> signature;
      if (j.contains("signature")) {
        const Vector s = vector_of(j.at("signature"), n, "metric.signature");
        for (int i = 0; i < n; ++i) signature.push_back(static_cast<int>(s[i]));
      }
      return MetricSpec::constant_curvature(n, param("K"), signature);
    }
  }
  throw ConfigError("metric: unsupported kind");
}

FlatZbwParams parse_preset(const json& j, double A, int n) {
  check_keys(j, "initial", {"preset", "k0", "amplitude", "phase", "origin", "frame"}, {"preset", "k0"});
  if (j.at("preset") != "flat_zbw")
    throw ConfigError("initial.preset: only \"flat_zbw\" is available");
  FlatZbwParams p;
  p.k0 = number(j, "k0", "initial");
  p.A = A;
  if (j.contains("amplitude")) p.amplitude = number(j, "amplitude", "initial");
  if (j.contains("phase")) p.phase = number(j, "phase", "initial");
  if (j.contains("origin")) p.origin = vector_of(j.at("origin"), n, "initial.origin");
  if (j.contains("frame")) {
    const json& f = j.at("frame");
    if (!f.is_array() || f.size() != 3) throw ConfigError("initial.frame: expected three vectors");
    for (int i = 0; i < 3; ++i)
      p.frame[i] = vector_of(f[i], n, "initial.frame[" + std::to_string(i) + "]");
  }
  return p;
}

StepperConfig parse_integrator(const json& j, bool& project_natural) {
  check_keys(j, "integrator",
             {"method", "step", "rel_tol", "abs_tol", "span", "sample_every", "project_natural"},
             {"span"});
  StepperConfig cfg;
  if (j.contains("method")) {
    if (!j.at("method").is_string()) throw ConfigError("integrator.method: expected a string");
    cfg.method = step_method_from_string(j.at("method").get<std::string>());
  }
  if (j.contains("step")) cfg.step = number(j, "step", "integrator");
  if (j.contains("rel_tol")) cfg.rel_tol = number(j, "rel_tol", "integrator");
  if (j.contains("abs_tol")) cfg.abs_tol = number(j, "abs_tol", "integrator");
  if (j.contains("sample_every")) cfg.sample_every = integer(j, "sample_every", "integrator");
  const Vector span = vector_of(j.at("span"), 2, "integrator.span");
  cfg.t_start = span[0];
  cfg.t_end = span[1];
  if (j.contains("project_natural")) {
    if (!j.at("project_natural").is_boolean())
      throw ConfigError("integrator.project_natural: expected a boolean");
    project_natural = j.at("project_natural").get<bool>();
  }
  validate(cfg);
  return cfg;
}

// ---- output ------------------------------------------------------------------------------

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<std::size_t> row_indices(std::size_t count, int every) {
  std::vector<std::size_t> rows;
  for (std::size_t i = 0; i < count; ++i)
    if (i % static_cast<std::size_t>(every) == 0 || i + 1 == count) rows.push_back(i);
  return rows;
}

void write_trajectory_csv(const fs::path& path, const Trajectory& traj, int n,
                          const std::vector<std::size_t>& rows) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot open output file " + path.string());
  const std::vector<std::string> cols = csv_columns(traj.engine, n);
  for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
  out << "\n";
  for (std::size_t r : rows) {
    const TrajectorySample& t = traj.samples[r];
    std::string line = fmt(t.s);
    const auto put = [&](double v) { line += ","; line += fmt(v); };
    for (int a = 0; a < n; ++a) put(t.phase.x[a]);
    for (int a = 0; a < n; ++a) put(t.phase.u[a]);
    if (traj.engine == Engine::canonical) {
      for (int a = 0; a < n; ++a) put(t.phase.pi[a]);
      for (int a = 0; a < n; ++a) put(t.phase.pi1[a]);
    }
    const DiagnosticsRecord& d = t.diag;
    for (double v : {d.hamiltonian, d.gamma, d.u_dot_pi1, d.k2, d.r1_norm, d.r2_norm, d.rM_direct_norm})
      put(v);
    line += ",";
    if (d.rM_dual_norm) line += fmt(*d.rM_dual_norm);
    out << line << "\n";
  }
  if (!out) throw ConfigError("failed writing " + path.string());
}

void write_json(const fs::path& path, const json& doc) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot open output file " + path.string());
  out << doc.dump(2) << "\n";
}

fs::path with_suffix(const fs::path& path, const std::string& suffix) {
  return path.parent_path() / (path.stem().string() + suffix);
}

json nullable(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }
json nullable(const std::optional<double>& v) { return v ? nullable(*v) : json(nullptr); }

/// Drift statistics over the written rows, so they can be recomputed from the CSV.
json drift_summary(const Trajectory& traj, const std::vector<std::size_t>& rows) {
  json s;
  s["rows"] = rows.size();
  if (rows.empty()) return s;
  const DiagnosticsRecord& d0 = traj.samples[rows.front()].diag;
  double h = 0, g = 0, up = 0, k2 = 0, r1 = 0, r2 = 0, rmd = 0;
  std::optional<double> rmdual;
  for (std::size_t r : rows) {
    const DiagnosticsRecord& d = traj.samples[r].diag;
    h = std::max(h, std::abs(d.hamiltonian - d0.hamiltonian));
    g = std::max(g, std::abs(d.gamma - d0.gamma));
    up = std::max(up, std::abs(d.u_dot_pi1));
    k2 = std::max(k2, std::abs(d.k2 - d0.k2));
    r1 = std::max(r1, d.r1_norm);
    r2 = std::max(r2, d.r2_norm);
    rmd = std::max(rmd, d.rM_direct_norm);
    if (d.rM_dual_norm) rmdual = std::max(rmdual.value_or(0.0), *d.rM_dual_norm);
  }
  double margin = std::numeric_limits<double>::infinity();
  for (const TrajectorySample& t : traj.samples) margin = std::min(margin, t.diag.admissibility_margin);
  s["s_end"] = traj.samples[rows.back()].s;
  s["max_H_drift"] = h;
  s["max_gamma_drift"] = g;
  s["max_abs_u_dot_pi1"] = up;
  s["max_k2_drift"] = k2;
  s["max_r1_norm"] = r1;
  s["max_r2_norm"] = r2;
  s["max_rM_direct_norm"] = rmd;
  s["max_rM_dual_norm"] = nullable(rmdual);
  s["min_admissibility_margin"] = nullable(margin);
  s["accepted_steps"] = traj.stats.accepted;
  s["rejected_steps"] = traj.stats.rejected;
  return s;
}

struct EngineRun {
  Engine engine;
  std::optional<Trajectory> traj;
  int exit_code = 0;
  std::string message;
  std::vector<double> step_s;
  std::vector<Vector> step_acc;
};

EngineRun run_engine(const MetricSpec& spec, const CovariantJet& initial,
                     const LagrangianParams& params, const StepperConfig& cfg,
                     const GaugeChoice& gauge, bool project_natural, Engine engine) {
  EngineRun run{engine, std::nullopt, 0, "", {}, {}};
  IntegrationOptions opt;
  opt.gauge = gauge;
  opt.project_natural = project_natural;
  opt.on_step = [&](double s, const CovariantJet& jet) {
    run.step_s.push_back(s);
    run.step_acc.push_back(jet.u_prime);
  };
  try {
    run.traj = engine == Engine::canonical
                   ? integrate_canonical(spec, initial, params, cfg, opt)
                   : integrate_fourth_order(spec, initial, params, cfg, opt);
  } catch (const TrajectoryDomainExit& e) {
    run.traj = e.partial();
    run.exit_code = 1;
    run.message = e.what();
  } catch (const TrajectoryNumericalFailure& e) {
    run.traj = e.partial();
    run.exit_code = 2;
    run.message = e.what();
  } catch (const NumericalError& e) {
    run.exit_code = 2;
    run.message = e.what();
  } catch (const std::exception& e) {
    // Domain, configuration and lift-consistency failures before the first step.
    run.exit_code = 1;
    run.message = e.what();
  }
  return run;
}

Vector hermite_position(const TrajectorySample& a, const TrajectorySample& b, double s) {
  const double h = b.s - a.s;
  const double t = (s - a.s) / h;
  const double t2 = t * t;
  const double t3 = t2 * t;
  return (2 * t3 - 3 * t2 + 1) * a.phase.x + (t3 - 2 * t2 + t) * h * a.phase.u +
         (-2 * t3 + 3 * t2) * b.phase.x + (t3 - t2) * h * b.phase.u;
}

/// Max position difference of `a` against `b`, interpolating `b` at the samples of `a`.
double max_position_difference(const Trajectory& a, const Trajectory& b) {
  double worst = 0.0;
  std::size_t j = 0;
  for (const TrajectorySample& sa : a.samples) {
    while (j + 1 < b.samples.size() && b.samples[j + 1].s < sa.s) ++j;
    if (j + 1 >= b.samples.size()) {
      if (!b.samples.empty() && b.samples.back().s == sa.s)
        worst = std::max(worst, (sa.phase.x - b.samples.back().phase.x).norm());
      break;
    }
    const TrajectorySample& lo = b.samples[j];
    const TrajectorySample& hi = b.samples[j + 1];
    if (sa.s < lo.s) continue;
    const Vector xb = sa.s == lo.s ? lo.phase.x : sa.s == hi.s ? hi.phase.x : hermite_position(lo, hi, sa.s);
    worst = std::max(worst, (sa.phase.x - xb).norm());
  }
  return worst;
}

}  // namespace

std::vector<std::string> csv_columns(Engine engine, int n) {
  std::vector<std::string> cols{"s"};
  const auto block = [&](const char* stem) {
    for (int a = 0; a < n; ++a) cols.push_back(std::string(stem) + "_" + std::to_string(a));
  };
  block("x");
  block("u");
  if (engine == Engine::canonical) {
    block("pi");
    block("pi1");
  }
  for (const char* c : {"H", "gamma", "u_dot_pi1", "k2", "r1_norm", "r2_norm", "rM_direct_norm",
                        "rM_dual_norm"})
    cols.emplace_back(c);
  return cols;
}

ScenarioConfig parse_scenario(const json& doc, const fs::path& base_dir) {
  check_keys(doc, "config", {"metric", "params", "initial", "integrator", "engine", "gauge", "output"},
             {"metric", "params", "initial", "integrator", "engine", "output"});
  ScenarioConfig cfg;
  cfg.metric = parse_metric(doc.at("metric"));
  const int n = cfg.metric.dimension();

  check_keys(doc.at("params"), "params", {"A"}, {"A"});
  cfg.params.A = number(doc.at("params"), "A", "params");

  const json& init = doc.at("initial");
  if (init.is_object() && init.contains("preset")) {
    cfg.preset = parse_preset(init, cfg.params.A, n);
  } else {
    check_keys(init, "initial", {"x", "u", "u_prime", "u_prime2"}, {"x", "u", "u_prime", "u_prime2"});
    cfg.initial.x = vector_of(init.at("x"), n, "initial.x");
    cfg.initial.u = vector_of(init.at("u"), n, "initial.u");
    cfg.initial.u_prime = vector_of(init.at("u_prime"), n, "initial.u_prime");
    cfg.initial.u_prime2 = vector_of(init.at("u_prime2"), n, "initial.u_prime2");
  }

  cfg.integrator = parse_integrator(doc.at("integrator"), cfg.project_natural);

  const json& engine = doc.at("engine");
  if (engine == "canonical") cfg.engine = EngineChoice::canonical;
  else if (engine == "fourth_order") cfg.engine = EngineChoice::fourth_order;
  else if (engine == "both") cfg.engine = EngineChoice::both;
  else throw ConfigError("engine: expected \"canonical\", \"fourth_order\" or \"both\"");

  if (doc.contains("gauge")) {
    const json& g = doc.at("gauge");
    if (g == "preserve_gamma") cfg.gauge.mu_policy = MuPolicy::preserve_gamma;
    else if (g == "zero") cfg.gauge.mu_policy = MuPolicy::zero;
    else throw ConfigError("gauge: expected \"preserve_gamma\" or \"zero\"");
  }

  const json& out = doc.at("output");
  check_keys(out, "output", {"path", "format", "sample_every"}, {"path"});
  if (!out.at("path").is_string()) throw ConfigError("output.path: expected a string");
  fs::path path = out.at("path").get<std::string>();
  if (path.relative_path().empty()) throw ConfigError("output.path: empty path");
  cfg.output.path = path.is_relative() ? base_dir / path : path;
  if (out.contains("format") && out.at("format") != "csv") throw ConfigError("output.format: only \"csv\" is supported");
  if (out.contains("sample_every")) cfg.output.sample_every = integer(out, "sample_every", "output");
  if (cfg.output.sample_every < 1) throw ConfigError("output.sample_every must be >= 1");
  return cfg;
}

ScenarioConfig load_scenario(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError("config " + path.string() + " is not valid JSON: " + e.what());
  }
  return parse_scenario(doc, path.parent_path());
}

SimulationOutcome simulate(const ScenarioConfig& config) {
  SimulationOutcome outcome;
  const int n = config.metric.dimension();
  const fs::path& out = config.output.path;
  json& summary = outcome.summary;
  summary["metric"] = config.metric.name();
  summary["A"] = config.params.A;

  CovariantJet initial = config.initial;
  std::optional<FlatZbwReference> reference;
  try {
    if (config.preset) {
      reference.emplace(config.metric, *config.preset);
      initial = reference->at(0.0);
      initial.u_prime3.reset();
    }
  } catch (const std::exception& e) {
    outcome.exit_code = 1;
    outcome.message = e.what();
    summary["exit_code"] = 1;
    summary["message"] = outcome.message;
    return outcome;
  }

  std::vector<Engine> engines;
  if (config.engine != EngineChoice::fourth_order) engines.push_back(Engine::canonical);
  if (config.engine != EngineChoice::canonical) engines.push_back(Engine::fourth_order);

  std::vector<EngineRun> runs;
  for (Engine e : engines)
    runs.push_back(run_engine(config.metric, initial, config.params, config.integrator, config.gauge,
                              config.project_natural, e));

  try {
    for (EngineRun& run : runs) {
      json s;
      if (run.traj && !run.traj->samples.empty()) {
        const fs::path csv = engines.size() == 1
                                 ? out
                                 : with_suffix(out, "." + to_string(run.engine) + out.extension().string());
        const auto rows = row_indices(run.traj->samples.size(), config.output.sample_every);
        write_trajectory_csv(csv, *run.traj, n, rows);
        outcome.files.push_back(csv);
        s = drift_summary(*run.traj, rows);
        s["csv"] = csv.filename().string();
        if (reference) {
          double err = 0.0;
          for (const TrajectorySample& t : run.traj->samples)
            err = std::max(err, (t.phase.x - reference->at(t.s).x).norm());
          s["max_position_error_vs_reference"] = err;
        }
      }
      const std::optional<double> omega = measure_frequency(run.step_s, run.step_acc);
      s["measured_omega"] = nullable(omega);
      s["exit_code"] = run.exit_code;
      if (!run.message.empty()) s["message"] = run.message;
      if (engines.size() == 1) {
        for (auto& [k, v] : s.items()) summary[k] = v;
      } else {
        summary[to_string(run.engine)] = s;
      }
      outcome.exit_code = std::max(outcome.exit_code, run.exit_code);
      if (!run.message.empty()) outcome.message += (outcome.message.empty() ? "" : "; ") + to_string(run.engine) + ": " + run.message;
    }

    summary["engine"] = engines.size() == 1 ? to_string(engines.front()) : "both";
    if (reference) {
      summary["predicted_omega"] = reference->omega();
    } else if (config.metric.kind() == MetricKind::euclidean) {
      try {
        const ScalarInvariants inv = scalar_invariants(config.metric, initial);
        if (std::abs(inv.gamma - 1.0) < kNaturalTolerance && inv.k2 > 0.0) {
          const ZbwFrequency f = zbw_frequency(config.params.A, std::sqrt(inv.k2));
          if (f.oscillatory) summary["predicted_omega"] = f.omega;
        }
      } catch (const std::exception&) {
      }
    }
    if (runs.size() == 2 && runs[0].traj && runs[1].traj)
      summary["cross_engine_max_position_diff"] = max_position_difference(*runs[0].traj, *runs[1].traj);
    summary["exit_code"] = outcome.exit_code;
    if (!outcome.message.empty()) summary["message"] = outcome.message;
    const fs::path sp = with_suffix(out, ".summary.json");
    write_json(sp, summary);
    outcome.files.push_back(sp);
  } catch (const ConfigError& e) {
    outcome.exit_code = std::max(outcome.exit_code, 1);
    outcome.message = e.what();
  }
  return outcome;
}

SimulationOutcome simulate_file(const fs::path& config_path) {
  try {
    return simulate(load_scenario(config_path));
  } catch (const std::exception& e) {
    SimulationOutcome o;
    o.exit_code = 1;
    o.message = e.what();
    return o;
  }
}

SimulationOutcome run_oracle(const OracleOptions& options) {
  SimulationOutcome outcome;
  json& summary = outcome.summary;
  const ZbwFrequency f = zbw_frequency(options.A, options.k0);
  summary["k0"] = options.k0;
  summary["A"] = options.A;
  summary["span"] = options.span;
  summary["amplitude"] = options.amplitude;
  summary["predicted_omega"] = f.omega;
  summary["oscillatory"] = f.oscillatory;
  // Fewer than ten periods over the span.
  summary["long_period"] = f.oscillatory && f.omega * options.span < 20.0 * M_PI;

  const auto fail = [&](int code, const std::string& msg) {
    outcome.exit_code = code;
    outcome.message = msg;
    summary["exit_code"] = code;
    summary["message"] = msg;
    try {
      const fs::path sp = with_suffix(options.output, ".summary.json");
      write_json(sp, summary);
      outcome.files.push_back(sp);
    } catch (const ConfigError&) {
    }
    return outcome;
  };

  const MetricSpec spec = MetricSpec::euclidean(options.dimension);
  std::optional<FlatZbwReference> reference;
  try {
    FlatZbwParams p;
    p.k0 = options.k0;
    p.A = options.A;
    p.amplitude = options.amplitude;
    reference.emplace(spec, p);
  } catch (const std::exception& e) {
    return fail(1, e.what());
  }
  summary["radius"] = reference->radius();
  summary["drift_speed"] = reference->drift_speed();

  StepperConfig cfg;
  cfg.method = StepMethod::rk4;
  cfg.step = options.step;
  cfg.t_end = options.span;
  try {
    validate(cfg);
  } catch (const ConfigError& e) {
    return fail(1, e.what());
  }
  CovariantJet initial = reference->at(0.0);
  initial.u_prime3.reset();
  const LagrangianParams params{options.A};
  EngineRun canon = run_engine(spec, initial, params, cfg, {}, false, Engine::canonical);
  EngineRun fourth = run_engine(spec, initial, params, cfg, {}, false, Engine::fourth_order);
  for (const EngineRun* r : {&canon, &fourth})
    if (r->exit_code != 0) return fail(r->exit_code, to_string(r->engine) + ": " + r->message);

  const auto& a = canon.traj->samples;
  const auto& b = fourth.traj->samples;
  const std::size_t count = std::min(a.size(), b.size());
  std::ofstream csv(options.output);
  if (!csv) return fail(1, "cannot open output file " + options.output.string());
  csv << "s,canonical_position_error,fourth_order_position_error,k2_drift\n";
  double ecan = 0.0, efo = 0.0, k2d = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    const Vector x = reference->at(a[i].s).x;
    const double e1 = (a[i].phase.x - x).norm();
    const double e2 = (b[i].phase.x - x).norm();
    const double dk = std::max(std::abs(a[i].diag.k2 - a[0].diag.k2), std::abs(b[i].diag.k2 - b[0].diag.k2));
    ecan = std::max(ecan, e1);
    efo = std::max(efo, e2);
    k2d = std::max(k2d, dk);
    csv << fmt(a[i].s) << "," << fmt(e1) << "," << fmt(e2) << "," << fmt(dk) << "\n";
  }
  csv.close();
  outcome.files.push_back(options.output);

  summary["samples"] = count;
  summary["max_canonical_position_error"] = ecan;
  summary["max_fourth_order_position_error"] = efo;
  summary["max_k2_drift"] = k2d;
  summary["measured_omega"] = nullable(measure_frequency(canon.step_s, canon.step_acc));
  summary["position_tolerance"] = kOraclePositionTolerance;
  summary["k2_tolerance"] = kOracleK2Tolerance;
  const bool pass = ecan < kOraclePositionTolerance && efo < kOraclePositionTolerance && k2d < kOracleK2Tolerance;
  summary["pass"] = pass;
  summary["exit_code"] = pass ? 0 : 1;
  outcome.exit_code = pass ? 0 : 1;
  if (!pass) outcome.message = "oracle errors above thresholds";
  const fs::path sp = with_suffix(options.output, ".summary.json");
  try {
    write_json(sp, summary);
    outcome.files.push_back(sp);
  } catch (const ConfigError& e) {
    outcome.exit_code = 1;
    outcome.message = e.what();
  }
  return outcome;
}

}  // namespace zbw
