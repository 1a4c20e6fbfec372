#pragma once

// Scenario configuration, trajectory CSV and summary JSON, and the flat-space oracle run.
//
// Config layout (unknown keys are rejected at every level):
//
//   {
//     "metric":     {"kind": "schwarzschild", "dimension": 4, "params": {"M": 1.0},
//                    "signature": [1, -1, -1, -1]},
//     "params":     {"A": -1.0},
//     "initial":    {"x": [...], "u": [...], "u_prime": [...], "u_prime2": [...]}
//                   or {"preset": "flat_zbw", "k0": 1.0, "amplitude": 1, "phase": 0.0,
//                       "origin": [...], "frame": [[...], [...], [...]]},
//     "integrator": {"method": "rk4", "step": 1e-3, "rel_tol": 1e-9, "abs_tol": 1e-12,
//                    "span": [0, 10], "sample_every": 1, "project_natural": false},
//     "engine":     "canonical" | "fourth_order" | "both",
//     "gauge":      "preserve_gamma" | "zero",
//     "output":     {"path": "run.csv", "format": "csv", "sample_every": 1}
//   }
//
// A relative output path is resolved against the directory of the config file.

#include "zbw/dynamics.hpp"

#include <nlohmann/json.hpp>

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace zbw {

enum class EngineChoice { canonical, fourth_order, both };

struct OutputConfig {
  std::filesystem::path path;
  int sample_every = 1;  ///< keep every k-th trajectory sample (the last one always)
};

struct ScenarioConfig {
  MetricSpec metric = MetricSpec::euclidean(4);
  LagrangianParams params;
  CovariantJet initial;
  std::optional<FlatZbwParams> preset;
  StepperConfig integrator;
  bool project_natural = false;
  EngineChoice engine = EngineChoice::canonical;
  GaugeChoice gauge;
  OutputConfig output;
};

/// Schema-validates and converts a config document. Throws ConfigError.
ScenarioConfig parse_scenario(const nlohmann::json& doc,
                              const std::filesystem::path& base_dir = {});
/// Reads and parses a config file. Throws ConfigError (including for unreadable files).
ScenarioConfig load_scenario(const std::filesystem::path& path);

struct SimulationOutcome {
  int exit_code = 0;  ///< 0 success, 1 configuration or domain error, 2 numerical failure
  std::string message;
  nlohmann::json summary;
  std::vector<std::filesystem::path> files;
};

/// Runs the configured engines and writes CSV plus `<stem>.summary.json`. Never throws for
/// configuration, domain or numerical problems; they are mapped to exit codes.
SimulationOutcome simulate(const ScenarioConfig& config);
/// load_scenario + simulate, mapping parse failures to exit code 1.
SimulationOutcome simulate_file(const std::filesystem::path& config_path);

/// Names of the CSV columns written for a trajectory of `engine` in dimension n.
std::vector<std::string> csv_columns(Engine engine, int n);

struct OracleOptions {
  double k0 = 1.0;
  double A = 1.0;
  double span = 20.0 * M_PI;
  double amplitude = 1.0;
  double step = 1e-3;
  int dimension = 3;
  std::filesystem::path output = "oracle.csv";
};

inline constexpr double kOraclePositionTolerance = 1e-6;
inline constexpr double kOracleK2Tolerance = 1e-7;

/// Integrates flat_zbw initial data with both engines and compares against the closed form.
/// Writes the comparison CSV and `<stem>.summary.json`; exit 1 if errors exceed the
/// thresholds above or no unit-speed helix exists for (k0, A).
SimulationOutcome run_oracle(const OracleOptions& options);

}  // namespace zbw
