#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <functional>
#include <string>

namespace zbw {

using OdeVector = Eigen::VectorXd;
using OdeRhs = std::function<OdeVector(double t, const OdeVector& y)>;

enum class StepMethod { rk4, rkf45 };

std::string to_string(StepMethod method);
StepMethod step_method_from_string(const std::string& name);

struct StepperConfig {
  StepMethod method = StepMethod::rk4;
  double step = 1e-3;  ///< fixed step for rk4, initial step for rkf45
  double rel_tol = 1e-9;
  double abs_tol = 1e-12;
  double t_start = 0.0;
  double t_end = 1.0;
  int sample_every = 1;
  int max_halvings = 20;
};

/// Throws ConfigError for non-positive steps, tolerances, spans or sampling cadence.
void validate(const StepperConfig& cfg);

struct StepResult {
  OdeVector next;
  OdeVector error;  ///< embedded error estimate; zero for rk4
};

StepResult rk4_step(const OdeRhs& rhs, double t, const OdeVector& y, double h);

/// Fehlberg 4(5): propagates the fourth-order solution, error = y5 − y4.
StepResult rkf45_step(const OdeRhs& rhs, double t, const OdeVector& y, double h);

/// Called at t_start (step 0) and after every accepted step; `last` marks t_end.
using StepObserver = std::function<void(std::size_t step, double t, const OdeVector& y, bool last)>;
/// Optional in-place correction applied after each accepted step.
using StepProjection = std::function<void(OdeVector& y)>;

struct OdeRunStats {
  std::size_t accepted = 0;
  std::size_t rejected = 0;
};

/// Integrates from cfg.t_start to cfg.t_end. Throws NumericalError when rkf45 cannot meet the
/// tolerance within cfg.max_halvings consecutive halvings or the state becomes non-finite.
OdeRunStats integrate_ode(const OdeRhs& rhs, OdeVector y, const StepperConfig& cfg,
                          const StepObserver& observer, const StepProjection& projection = {});

}  // namespace zbw
