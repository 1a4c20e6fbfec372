#include <doctest.h>

#include "scenarios.hpp"

#include "zbw/errors.hpp"

#include <cmath>

using namespace zbw;

TEST_CASE("direct spin components") {
  const MetricSpec e = MetricSpec::euclidean(4);
  const Vector x = Vector::Zero(4);
  const SpinBivector s = spin_direct(e, x, Vector::Unit(4, 0), Vector::Unit(4, 1));
  Matrix expect = Matrix::Zero(4, 4);
  expect(0, 1) = 1.0;
  expect(1, 0) = -1.0;
  CHECK(s.components == expect);
  CHECK(spin_direct(e, x, Vector::Unit(4, 0), Vector::Zero(4)).components.norm() == 0.0);
  CHECK(spin_direct(e, x, Vector::Unit(4, 2), 3.0 * Vector::Unit(4, 2)).components.norm() == 0.0);
}

TEST_CASE("sigma of the dual spin in the euclidean frame") {
  const MetricSpec e = MetricSpec::euclidean(4);
  const Vector x = Vector::Zero(4);
  const Vector u = Vector::Unit(4, 0);
  const Covector pi1 = Vector::Unit(4, 1);
  const SpinBivector dual = spin_dual(e, x, u, pi1);
  // σ = −s √γ π¹ with s = sign(det g) = +1 here: magnitude √γ = 1 along e1.
  CHECK((sigma_vector(e, x, u, dual) + pi1).norm() < 1e-15);
  CHECK(sigma_vector(e, x, u, spin_direct(e, x, u, pi1)).norm() < 1e-15);
  CHECK(sigma_vector(e, x, u, {Matrix::Zero(4, 4), SpinConvention::direct}).norm() == 0.0);
  CHECK(spin_dual(e, x, u, Vector::Zero(4)).components.norm() == 0.0);
}

TEST_CASE("sigma sign flips with the signature") {
  const MetricSpec m = MetricSpec::minkowski();
  const Vector x = Vector::Zero(4);
  const Vector u = Vector::Unit(4, 0);
  const Covector pi1 = Vector::Unit(4, 2);
  CHECK((sigma_vector(m, x, u, spin_dual(m, x, u, pi1)) - pi1).norm() < 1e-15);
}

TEST_CASE("Mathisson residuals of both conventions") {
  for (const MetricSpec& spec : catalog_metrics()) {
    JetSampler s(spec, 31);
    for (int i = 0; i < 200; ++i) {
      const Vector x = s.point();
      const Vector u = s.tangent(x, s.uniform(0.5, 2.0));
      const Covector pi1 = s.orthogonal_covector(x, u);
      const double gamma = dot(metric_at(spec, x), u, u);
      CHECK(mathisson_residual(spec, x, u, spin_dual(spec, x, u, pi1)).lpNorm<Eigen::Infinity>() < 1e-12);
      const Covector rm = mathisson_residual(spec, x, u, spin_direct(spec, x, u, pi1));
      CHECK((rm - gamma * pi1).norm() < 1e-12 * std::max(1.0, gamma * pi1.norm()));
    }
  }
}

TEST_CASE("spin bivectors are antisymmetric") {
  const MetricSpec spec = MetricSpec::schwarzschild(1.0);
  JetSampler s(spec, 32);
  for (int i = 0; i < 50; ++i) {
    const Vector x = s.point();
    const Vector u = s.tangent(x, 1.0);
    const Covector pi1 = s.orthogonal_covector(x, u);
    for (SpinConvention c : {SpinConvention::direct, SpinConvention::dual}) {
      const Matrix S = spin_bivector(spec, x, u, pi1, c).components;
      CHECK((S + S.transpose()).norm() == 0.0);
    }
  }
}

TEST_CASE("dual spin needs four dimensions") {
  const MetricSpec e = MetricSpec::euclidean(3);
  CHECK_THROWS_AS(spin_dual(e, Vector::Zero(3), Vector::Unit(3, 0), Vector::Unit(3, 1)), DomainError);
  CHECK_NOTHROW(spin_direct(e, Vector::Zero(3), Vector::Unit(3, 0), Vector::Unit(3, 1)));
}

TEST_CASE("flat straight line has vanishing Dixon residuals") {
  const MetricSpec e = MetricSpec::euclidean(4);
  const PhaseState s{Vector::Zero(4), Vector::Unit(4, 0), 2.0 * Vector::Unit(4, 0), Vector::Zero(4)};
  const PhaseRates r = canonical_rhs(e, s, {2.0}, {});
  for (SpinConvention c : {SpinConvention::direct, SpinConvention::dual}) {
    const DixonResiduals d = dixon_residuals(e, s, r, c);
    CHECK(d.r1.norm() == 0.0);
    CHECK(d.r2.norm() == 0.0);
    CHECK(d.rM.norm() == 0.0);
  }
}

TEST_CASE("Dixon residuals from finite-difference rates along a trajectory") {
  // Rates from a fourth-order stencil on the integrated samples, not from the vector field.
  const MetricSpec spec = MetricSpec::schwarzschild(1.0);
  StepperConfig cfg;
  cfg.step = 1e-3;
  cfg.t_end = 0.2;
  const Trajectory traj = integrate_canonical(spec, testing::schwarzschild_orbit_jet(), {testing::kLorentzianA}, cfg);
  const auto& v = traj.samples;
  const double h = v[1].s - v[0].s;
  double r1 = 0.0, r2 = 0.0;
  for (std::size_t i = 2; i + 2 < v.size(); i += 10) {
    const auto d = [&](auto get) {
      return Eigen::VectorXd((8.0 * (get(v[i + 1]) - get(v[i - 1])) - (get(v[i + 2]) - get(v[i - 2]))) / (12.0 * h));
    };
    PhaseRates rates;
    rates.dx = d([](const TrajectorySample& t) { return t.phase.x; });
    rates.du = d([](const TrajectorySample& t) { return t.phase.u; });
    rates.dpi = d([](const TrajectorySample& t) { return t.phase.pi; });
    rates.dpi1 = d([](const TrajectorySample& t) { return t.phase.pi1; });
    const DixonResiduals res = dixon_residuals(spec, v[i].phase, rates, SpinConvention::direct);
    r1 = std::max(r1, res.r1.norm());
    r2 = std::max(r2, res.r2.norm());
  }
  CHECK(r1 < 1e-6);
  CHECK(r2 < 1e-6);
}

TEST_CASE("Zitterbewegung frequency") {
  CHECK(zbw_frequency(1.0, 1.0).omega == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(zbw_frequency(1.0, 1.0).oscillatory);
  CHECK(zbw_frequency(3.0, 1.0).omega == 0.0);
  CHECK_FALSE(zbw_frequency(3.0, 1.0).oscillatory);
  CHECK_FALSE(zbw_frequency(5.0, 1.0).oscillatory);
  CHECK(zbw_frequency(5.0, 1.0).omega == doctest::Approx(1.0));

  // m²/σ² = 0.75 gives A = 2.5 and ω = √(k0² − m²/σ²) = 0.5.
  const double A = A_from_mass_spin(1.0, std::sqrt(0.75), 1.0);
  CHECK(A == doctest::Approx(2.5).epsilon(1e-15));
  CHECK(zbw_frequency(A, 1.0).omega == doctest::Approx(std::sqrt(1.0 - 0.75)).epsilon(1e-15));
}
