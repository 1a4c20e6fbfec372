// zbw: simulate scenarios, run the identity suites, compare against the flat-space solution.

#include "zbw/errors.hpp"
#include "zbw/scenario.hpp"
#include "zbw/verify.hpp"

#include <CLI11.hpp>
#include <spdlog/spdlog.h>

#include <cstdlib>
#include <fstream>
#include <iostream>

namespace {

void configure_logging() {
  spdlog::set_pattern("[%l] %v");
  const char* env = std::getenv("ZBW_LOG");
  const std::string level = env ? env : "info";
  if (level == "error") spdlog::set_level(spdlog::level::err);
  else if (level == "debug") spdlog::set_level(spdlog::level::debug);
  else spdlog::set_level(spdlog::level::info);
  if (level != "error" && level != "info" && level != "debug")
    spdlog::warn("ignoring unknown ZBW_LOG value \"{}\"", level);
}

int report(const zbw::SimulationOutcome& o) {
  for (const auto& f : o.files) spdlog::info("wrote {}", f.string());
  if (o.exit_code != 0) spdlog::error("{}", o.message);
  spdlog::debug("summary: {}", o.summary.dump());
  return o.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  configure_logging();
  CLI::App app{"Quasi-classical spinning particle in curved space"};
  app.require_subcommand(1);

  std::string config_path;
  auto* simulate = app.add_subcommand("simulate", "integrate a scenario config");
  simulate->add_option("config", config_path, "scenario JSON")->required();

  zbw::VerifyOptions vopt;
  std::string metric;
  std::string json_path;
  auto* verify = app.add_subcommand("verify", "run the identity suites at seeded random points");
  verify->add_option("--seed", vopt.seed, "random seed");
  verify->add_option("--metric", metric, "restrict to one metric kind");
  verify->add_option("--json", json_path, "write the report as JSON");

  zbw::OracleOptions oopt;
  auto* oracle = app.add_subcommand("oracle", "compare both engines with the flat closed form");
  oracle->add_option("--k0", oopt.k0, "first curvature")->required();
  oracle->add_option("--A", oopt.A, "Lagrangian constant")->required();
  oracle->add_option("--span", oopt.span, "parameter span")->required();
  oracle->add_option("--amplitude", oopt.amplitude, "0 for a straight line, 1 for the helix");
  oracle->add_option("--step", oopt.step, "rk4 step");
  oracle->add_option("--dimension", oopt.dimension, "euclidean dimension (>= 3)");
  oracle->add_option("--out", oopt.output, "comparison CSV path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (*simulate) {
      spdlog::debug("simulate {}", config_path);
      return report(zbw::simulate_file(config_path));
    }
    if (*verify) {
      if (!metric.empty()) vopt.metric = metric;
      const zbw::VerifyReport r = zbw::run_verify(vopt);
      std::cout << r.to_text();
      if (!json_path.empty()) {
        std::ofstream out(json_path);
        if (!out) throw zbw::ConfigError("cannot open " + json_path);
        out << r.to_json().dump(2) << "\n";
      }
      return r.ok() ? 0 : 1;
    }
    if (*oracle) {
      const zbw::SimulationOutcome o = zbw::run_oracle(oopt);
      std::cout << o.summary.dump(2) << "\n";
      return report(o);
    }
  } catch (const zbw::NumericalError& e) {
    spdlog::error("{}", e.what());
    return 2;
  } catch (const std::exception& e) {
    spdlog::error("{}", e.what());
    return 1;
  }
  return 1;
}
