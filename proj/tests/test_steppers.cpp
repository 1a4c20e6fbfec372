#include <doctest.h>

#include "zbw/errors.hpp"
#include "zbw/steppers.hpp"

#include <cmath>
#include <limits>

using namespace zbw;

namespace {

const OdeRhs growth = [](double, const OdeVector& y) { return OdeVector(y); };

double final_value(const StepperConfig& cfg, const OdeRhs& rhs = growth) {
  OdeVector y0 = OdeVector::Ones(1);
  double out = 0.0;
  integrate_ode(rhs, y0, cfg, [&](std::size_t, double, const OdeVector& y, bool last) {
    if (last) out = y[0];
  });
  return out;
}

}  // namespace

TEST_CASE("rk4 reproduces e") {
  StepperConfig cfg;
  cfg.step = 1e-3;
  CHECK(std::abs(final_value(cfg) - std::exp(1.0)) < 1e-11);
}

TEST_CASE("rk4 global error is fourth order") {
  StepperConfig cfg;
  cfg.step = 0.1;
  const double e1 = std::abs(final_value(cfg) - std::exp(1.0));
  cfg.step = 0.05;
  const double e2 = std::abs(final_value(cfg) - std::exp(1.0));
  CHECK(e1 / e2 == doctest::Approx(16.0).epsilon(0.08));
}

TEST_CASE("zero field is the identity") {
  const OdeRhs zero = [](double, const OdeVector& y) { return OdeVector(OdeVector::Zero(y.size())); };
  OdeVector y(3);
  y << 1.0, -2.0, 3.5;
  CHECK(rk4_step(zero, 0.0, y, 0.1).next == y);
  CHECK(rkf45_step(zero, 0.0, y, 0.1).next == y);
  CHECK(rkf45_step(zero, 0.0, y, 0.1).error.norm() == 0.0);
}

TEST_CASE("rkf45 meets its tolerance and reports an error estimate") {
  StepperConfig cfg;
  cfg.method = StepMethod::rkf45;
  cfg.step = 0.1;
  cfg.rel_tol = 1e-10;
  cfg.abs_tol = 1e-12;
  CHECK(std::abs(final_value(cfg) - std::exp(1.0)) < 1e-8);
  const StepResult r = rkf45_step(growth, 0.0, OdeVector::Ones(1), 0.1);
  CHECK(std::abs(r.error[0]) > 0.0);
  CHECK(std::abs(r.error[0]) < 1e-7);
}

TEST_CASE("rkf45 gives up after the configured halvings") {
  StepperConfig cfg;
  cfg.method = StepMethod::rkf45;
  cfg.rel_tol = 1e-300;
  cfg.abs_tol = 1e-300;
  // Nonlinear so the embedded error estimate does not cancel to exactly zero.
  const OdeRhs pendulum = [](double, const OdeVector& y) {
    OdeVector d(2);
    d << y[1], -std::sin(y[0]);
    return d;
  };
  double last_t = 0.0;
  CHECK_THROWS_AS(integrate_ode(pendulum, OdeVector::Ones(2), cfg,
                                [&](std::size_t, double t, const OdeVector&, bool) { last_t = t; }),
                  NumericalError);
  CHECK(last_t < 1e-3);
}

TEST_CASE("rkf45 error estimate survives below the state's ulp") {
  const OdeRhs pendulum = [](double, const OdeVector& y) {
    OdeVector d(2);
    d << y[1], -std::sin(y[0]);
    return d;
  };
  for (double h : {1e-3, 1e-6}) CHECK(rkf45_step(pendulum, 0.0, OdeVector::Ones(2), h).error.norm() > 0.0);
}

TEST_CASE("non-finite state aborts") {
  const OdeRhs bad = [](double, const OdeVector& y) {
    return OdeVector(OdeVector::Constant(y.size(), std::numeric_limits<double>::quiet_NaN()));
  };
  CHECK_THROWS_AS(integrate_ode(bad, OdeVector::Ones(1), {}, [](std::size_t, double, const OdeVector&, bool) {}),
                  NumericalError);
}

TEST_CASE("observer sees the start, every step and the end") {
  StepperConfig cfg;
  cfg.step = 0.3;
  cfg.t_end = 1.0;
  std::vector<double> ts;
  int lasts = 0;
  integrate_ode(growth, OdeVector::Ones(1), cfg, [&](std::size_t, double t, const OdeVector&, bool last) {
    ts.push_back(t);
    lasts += last;
  });
  REQUIRE(ts.size() == 5);
  CHECK(ts.front() == 0.0);
  CHECK(ts.back() == 1.0);
  CHECK(lasts == 1);
  for (std::size_t i = 1; i < ts.size(); ++i) CHECK(ts[i] > ts[i - 1]);
}

TEST_CASE("stepper configuration validation") {
  StepperConfig cfg;
  cfg.step = 0.0;
  CHECK_THROWS_AS(validate(cfg), ConfigError);
  cfg = {};
  cfg.t_end = 0.0;
  CHECK_THROWS_AS(validate(cfg), ConfigError);
  cfg = {};
  cfg.rel_tol = -1.0;
  CHECK_THROWS_AS(validate(cfg), ConfigError);
  cfg = {};
  cfg.sample_every = 0;
  CHECK_THROWS_AS(validate(cfg), ConfigError);
  CHECK_THROWS_AS(step_method_from_string("euler"), ConfigError);
  CHECK(step_method_from_string("rkf45") == StepMethod::rkf45);
}

TEST_CASE("integration is deterministic") {
  StepperConfig cfg;
  cfg.method = StepMethod::rkf45;
  const double a = final_value(cfg);
  const double b = final_value(cfg);
  CHECK(a == b);
}
