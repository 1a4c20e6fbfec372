#include "zbw/steppers.hpp"

#include "zbw/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace zbw {

std::string to_string(StepMethod method) { return method == StepMethod::rk4 ? "rk4" : "rkf45"; }

StepMethod step_method_from_string(const std::string& name) {
  if (name == "rk4") return StepMethod::rk4;
  if (name == "rkf45") return StepMethod::rkf45;
  throw ConfigError("unknown integrator method '" + name + "' (expected rk4 or rkf45)");
}

void validate(const StepperConfig& cfg) {
  if (!(cfg.step > 0.0) || !std::isfinite(cfg.step)) throw ConfigError("integrator step must be > 0");
  if (!(cfg.rel_tol > 0.0) || !(cfg.abs_tol > 0.0))
    throw ConfigError("integrator rel_tol and abs_tol must be > 0");
  if (!(cfg.t_end > cfg.t_start) || !std::isfinite(cfg.t_end) || !std::isfinite(cfg.t_start))
    throw ConfigError("integrator span must satisfy t_end > t_start");
  if (cfg.sample_every < 1) throw ConfigError("sample_every must be >= 1");
  if (cfg.max_halvings < 1) throw ConfigError("max_halvings must be >= 1");
}

StepResult rk4_step(const OdeRhs& rhs, double t, const OdeVector& y, double h) {
  const OdeVector k1 = rhs(t, y);
  const OdeVector k2 = rhs(t + 0.5 * h, y + 0.5 * h * k1);
  const OdeVector k3 = rhs(t + 0.5 * h, y + 0.5 * h * k2);
  const OdeVector k4 = rhs(t + h, y + h * k3);
  return {y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4), OdeVector::Zero(y.size())};
}

StepResult rkf45_step(const OdeRhs& rhs, double t, const OdeVector& y, double h) {
  const OdeVector k1 = rhs(t, y);
  const OdeVector k2 = rhs(t + h / 4.0, y + h * (k1 / 4.0));
  const OdeVector k3 = rhs(t + 3.0 * h / 8.0, y + h * (3.0 / 32.0 * k1 + 9.0 / 32.0 * k2));
  const OdeVector k4 = rhs(t + 12.0 * h / 13.0,
                           y + h * (1932.0 / 2197.0 * k1 - 7200.0 / 2197.0 * k2 + 7296.0 / 2197.0 * k3));
  const OdeVector k5 = rhs(t + h, y + h * (439.0 / 216.0 * k1 - 8.0 * k2 + 3680.0 / 513.0 * k3 -
                                           845.0 / 4104.0 * k4));
  const OdeVector k6 = rhs(t + h / 2.0, y + h * (-8.0 / 27.0 * k1 + 2.0 * k2 - 3544.0 / 2565.0 * k3 +
                                                 1859.0 / 4104.0 * k4 - 11.0 / 40.0 * k5));
  const OdeVector y4 =
      y + h * (25.0 / 216.0 * k1 + 1408.0 / 2565.0 * k3 + 2197.0 / 4104.0 * k4 - k5 / 5.0);
  // Weight differences applied directly, so the estimate survives below ulp(y).
  const OdeVector err = h * ((16.0 / 135.0 - 25.0 / 216.0) * k1 +
                             (6656.0 / 12825.0 - 1408.0 / 2565.0) * k3 +
                             (28561.0 / 56430.0 - 2197.0 / 4104.0) * k4 +
                             (1.0 / 5.0 - 9.0 / 50.0) * k5 + 2.0 / 55.0 * k6);
  return {y4, err};
}

namespace {

void require_finite(const OdeVector& y, double t) {
  if (y.allFinite()) return;
  std::ostringstream os;
  os << "non-finite state produced at t = " << t;
  throw NumericalError(os.str());
}

}  // namespace

OdeRunStats integrate_ode(const OdeRhs& rhs, OdeVector y, const StepperConfig& cfg,
                          const StepObserver& observer, const StepProjection& projection) {
  validate(cfg);
  require_finite(y, cfg.t_start);
  OdeRunStats stats;
  const double span = cfg.t_end - cfg.t_start;
  if (observer) observer(0, cfg.t_start, y, false);

  if (cfg.method == StepMethod::rk4) {
    const auto full_steps = static_cast<std::size_t>(std::floor(span / cfg.step * (1.0 + 1e-12)));
    const double rest = span - static_cast<double>(full_steps) * cfg.step;
    const bool tail = rest > 1e-12 * std::max(1.0, std::abs(cfg.t_end));
    const std::size_t total = full_steps + (tail ? 1 : 0);
    double t = cfg.t_start;
    for (std::size_t k = 1; k <= total; ++k) {
      const double t_next = k <= full_steps ? cfg.t_start + static_cast<double>(k) * cfg.step : cfg.t_end;
      y = rk4_step(rhs, t, y, t_next - t).next;
      if (projection) projection(y);
      require_finite(y, t_next);
      t = k == total ? cfg.t_end : t_next;
      ++stats.accepted;
      if (observer) observer(k, t, y, k == total);
    }
    return stats;
  }

  double t = cfg.t_start;
  double h = std::min(cfg.step, span);
  int halvings = 0;
  while (t < cfg.t_end) {
    const bool reaches_end = t + h >= cfg.t_end;
    const double h_try = reaches_end ? cfg.t_end - t : h;
    const StepResult step = rkf45_step(rhs, t, y, h_try);
    double err = 0.0;
    for (Eigen::Index i = 0; i < y.size(); ++i) {
      const double scale = cfg.abs_tol + cfg.rel_tol * std::max(std::abs(y[i]), std::abs(step.next[i]));
      err = std::max(err, std::abs(step.error[i]) / scale);
    }
    if (!std::isfinite(err) || err > 1.0) {
      ++stats.rejected;
      if (++halvings > cfg.max_halvings) {
        std::ostringstream os;
        os << "rkf45 could not meet rel_tol=" << cfg.rel_tol << " abs_tol=" << cfg.abs_tol
           << " after " << cfg.max_halvings << " step halvings at t = " << t;
        throw NumericalError(os.str());
      }
      h = 0.5 * h_try;
      continue;
    }
    halvings = 0;
    y = step.next;
    if (projection) projection(y);
    require_finite(y, t + h_try);
    t = reaches_end ? cfg.t_end : t + h_try;
    ++stats.accepted;
    if (observer) observer(stats.accepted, t, y, reaches_end);
    const double grow = err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
    h = h_try * grow;
  }
  return stats;
}

}  // namespace zbw
