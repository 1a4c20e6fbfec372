#pragma once

// Seeded identity suites across the metric catalog, shared by `zbw verify` and the tests.

#include "zbw/dixon.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace zbw {

struct CheckResult {
  std::string name;
  std::string metric;
  double tolerance = 0.0;
  double measured = 0.0;
  std::size_t samples = 0;
  bool pass = false;
};

struct VerifyReport {
  std::uint64_t seed = 0;
  std::vector<CheckResult> checks;

  bool ok() const;
  nlohmann::json to_json() const;
  std::string to_text() const;
};

struct VerifyOptions {
  std::uint64_t seed = 1;
  std::optional<std::string> metric;  ///< restrict to one metric kind
  int jets = 1000;
  int geometry_points = 100;
  int pi_oracle_jets = 200;
  /// Evaluates the ϖ-oracle check against the ϖ form without the u′ factor. Test hook.
  bool inject_boxed_pi_fault = false;
};

VerifyReport run_verify(const VerifyOptions& options);

namespace oracle {

/// ϖ rebuilt from the π¹ evolution equation along the polynomial curve through `jet`:
///   ϖ = −(π¹)′ − ¾√γ η u♭ − μ̃ π¹ + A γ^{−1/2} u♭,  μ̃ = (u·u′)/γ,
/// with dπ¹/dτ from fourth-order central differences of legendre_map along the curve.
Covector pi_from_pi1_evolution(const MetricSpec& spec, const CovariantJet& jet,
                               const LagrangianParams& params, double h = 1e-3);

/// u″ from central differences of u′ along the polynomial curve through `jet`.
Vector u_prime2_along_curve(const MetricSpec& spec, const CovariantJet& jet, double h = 1e-4);

}  // namespace oracle

}  // namespace zbw
