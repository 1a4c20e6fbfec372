#include <doctest.h>

#include "zbw/errors.hpp"
#include "zbw/lagrangian.hpp"
#include "zbw/sampling.hpp"
#include "zbw/verify.hpp"

#include <cmath>

using namespace zbw;

namespace {

/// Circle of radius r in the (0,1) plane of E^n, natural parameter, at s = 0.
CovariantJet circle(double r, int n = 3) {
  CovariantJet j;
  j.x = Vector::Zero(n);
  j.x[0] = r;
  j.u = Vector::Zero(n);
  j.u[1] = 1.0;
  j.u_prime = Vector::Zero(n);
  j.u_prime[0] = -1.0 / r;
  j.u_prime2 = Vector::Zero(n);
  j.u_prime2[1] = -1.0 / (r * r);
  j.u_prime3 = Vector::Zero(n);
  (*j.u_prime3)[0] = 1.0 / (r * r * r);
  return j;
}

CovariantJet line(int n = 3) {
  CovariantJet j;
  j.x = Vector::Zero(n);
  j.u = Vector::Unit(n, 0);
  j.u_prime = Vector::Zero(n);
  j.u_prime2 = Vector::Zero(n);
  j.u_prime3 = Vector::Zero(n);
  return j;
}

}  // namespace

TEST_CASE("flat jets: covariant and coordinate derivatives coincide") {
  const MetricSpec e = MetricSpec::euclidean(3);
  CoordinateJet c{Vector::Constant(3, 0.5), Vector::Unit(3, 1), Vector::Constant(3, 0.2),
                  Vector::Constant(3, -0.1), Vector::Constant(3, 0.3)};
  const CovariantJet j = to_covariant_jet(e, c);
  CHECK(j.u_prime == c.du);
  CHECK(j.u_prime2 == c.d2u);
  CHECK(*j.u_prime3 == *c.d3u);
}

TEST_CASE("jet round trip through the connection") {
  const MetricSpec spec = MetricSpec::schwarzschild(1.0);
  JetSampler s(spec, 11);
  for (int i = 0; i < 50; ++i) {
    CovariantJet j = s.jet();
    j.u_prime3 = s.generic_vector(j.x);
    const CovariantJet back = to_covariant_jet(spec, to_coordinate_jet(spec, j));
    const double scale = std::max({1.0, j.u_prime.norm(), j.u_prime2.norm(), j.u_prime3->norm()});
    CHECK((back.u_prime - j.u_prime).norm() / scale < 1e-10);
    CHECK((back.u_prime2 - j.u_prime2).norm() / scale < 1e-10);
    CHECK((*back.u_prime3 - *j.u_prime3).norm() / scale < 1e-10);
  }
}

TEST_CASE("u'' matches a finite difference of u' along the curve") {
  const MetricSpec spec = MetricSpec::schwarzschild(1.0);
  JetSampler s(spec, 12);
  for (int i = 0; i < 20; ++i) {
    const CovariantJet j = s.jet();
    const Vector fd = oracle::u_prime2_along_curve(spec, j);
    CHECK((fd - j.u_prime2).norm() / std::max(1.0, j.u_prime2.norm()) < 1e-8);
  }
}

TEST_CASE("scalar invariants of a circle and a line") {
  const MetricSpec e = MetricSpec::euclidean(3);
  for (double r : {0.5, 1.0, 3.0}) {
    const ScalarInvariants inv = scalar_invariants(e, circle(r));
    CHECK(inv.gamma == doctest::Approx(1.0));
    CHECK(inv.a1 == 0.0);
    CHECK(inv.k2 == doctest::Approx(1.0 / (r * r)).epsilon(1e-14));
  }
  CHECK(scalar_invariants(e, line()).k2 == 0.0);
}

TEST_CASE("k2 and L under reparameterization of the circle") {
  const MetricSpec e = MetricSpec::euclidean(3);
  const CoordinateJet c = to_coordinate_jet(e, circle(2.0));
  const LagrangianParams p{0.7};
  const double k2 = scalar_invariants(e, circle(2.0)).k2;
  const double l = lagrangian_value(e, circle(2.0), p);
  for (double k : {0.5, 2.0, 3.0}) {
    const CoordinateJet r{c.x, k * c.u, k * k * c.du, k * k * k * c.d2u, std::nullopt};
    const CovariantJet j = to_covariant_jet(e, r);
    CHECK(std::abs(scalar_invariants(e, j).k2 - k2) < 1e-10);
    CHECK(std::abs(lagrangian_value(e, j, p) - k * l) < 1e-10 * std::abs(k * l));
  }
}

TEST_CASE("lagrangian values") {
  const MetricSpec e = MetricSpec::euclidean(3);
  CHECK(lagrangian_value(e, line(), {1.0}) == doctest::Approx(1.0));
  CHECK(lagrangian_value(e, circle(1.0), {0.0}) == doctest::Approx(1.0));
}

TEST_CASE("signature and null-tangent policies") {
  const MetricSpec m = MetricSpec::minkowski();
  CovariantJet spacelike;
  spacelike.x = Vector::Zero(4);
  spacelike.u = Vector::Unit(4, 1);
  spacelike.u_prime = Vector::Zero(4);
  spacelike.u_prime2 = Vector::Zero(4);
  CHECK_THROWS_AS(lagrangian_value(m, spacelike, {1.0}), DomainError);
  CHECK(lagrangian_value(m, spacelike, {1.0, GammaPolicy::absolute}) == doctest::Approx(1.0));

  CovariantJet null = spacelike;
  null.u << 1.0, 1.0, 0.0, 0.0;
  CHECK_THROWS_AS(scalar_invariants(m, null), SingularityError);
}

TEST_CASE("Zermelo residuals vanish for L_k at random jets") {
  for (const MetricSpec& spec : catalog_metrics()) {
    JetSampler s(spec, 13);
    for (int i = 0; i < 50; ++i) {
      const CoordinateJet c = to_coordinate_jet(spec, s.jet());
      const ZermeloResiduals z = zermelo_residuals(spec, c.x, c.u, c.du, {1.5});
      CHECK(std::abs(z.z1) < 1e-7 * (1.0 + std::abs(z.value)));
      CHECK(std::abs(z.z2) < 1e-7 * (1.0 + std::abs(z.value)));
    }
  }
}

TEST_CASE("Zermelo detects a Lagrangian of the wrong homogeneity") {
  const MetricSpec spec = MetricSpec::constant_curvature(3, 0.4);
  JetSampler s(spec, 14);
  const CovariantLagrangian broken = [](const MetricSpec& sp, const CovariantJet& j) {
    const ScalarInvariants inv = scalar_invariants(sp, j);
    return (inv.k2 + 1.0) * inv.gamma;
  };
  for (int i = 0; i < 20; ++i) {
    const CoordinateJet c = to_coordinate_jet(spec, s.jet());
    const ZermeloResiduals z = zermelo_residuals(spec, c.x, c.u, c.du, broken);
    // Degree-2 homogeneity: u·∂L/∂u + 2u̇·∂L/∂u̇ = 2L.
    CHECK(z.z2 == doctest::Approx(z.value).epsilon(1e-7));
    CHECK(std::abs(z.value) > 0.1);
  }
}

TEST_CASE("Zermelo Z1 is exactly zero on a flat straight line") {
  const MetricSpec e = MetricSpec::euclidean(3);
  const ZermeloResiduals z = zermelo_residuals(e, Vector::Zero(3), Vector::Unit(3, 0), Vector::Zero(3), {1.0});
  CHECK(z.z1 == 0.0);
}

TEST_CASE("Legendre map closed forms") {
  const MetricSpec e = MetricSpec::euclidean(3);
  const CovariantMomenta straight = legendre_map(e, line(), {2.0});
  CHECK(straight.pi1.norm() == 0.0);
  CHECK((straight.pi - 2.0 * line().u).norm() < 1e-15);

  // Unit circle with A = 0: π¹ = 2u′, π = −3k²u − 2u″ = −u.
  const CovariantJet c = circle(1.0);
  const CovariantMomenta p = legendre_map(e, c, {0.0});
  CHECK((p.pi1 - 2.0 * c.u_prime).norm() < 1e-15);
  CHECK((p.pi + c.u).norm() < 1e-15);
}

TEST_CASE("natural parameterization reduces varpi to the fourth-order bracket") {
  for (const MetricSpec& spec : catalog_metrics()) {
    JetSampler s(spec, 15);
    for (int i = 0; i < 20; ++i) {
      const CovariantJet j = s.natural_jet();
      const MetricValue m = metric_at(spec, j.x);
      const double A = 0.8;
      const double k2 = scalar_invariants(spec, j).k2;
      const Covector expect = (-3.0 * k2 + A) * lower(m, j.u) - 2.0 * lower(m, j.u_prime2);
      const Covector pi = legendre_map(spec, j, {A}).pi;
      CHECK((pi - expect).norm() < 1e-12 * std::max(1.0, expect.norm()));
    }
  }
}

TEST_CASE("varpi oracle separates the restored and printed forms") {
  const MetricSpec spec = MetricSpec::schwarzschild(1.0);
  JetSampler s(spec, 16);
  for (int i = 0; i < 20; ++i) {
    const CovariantJet j = s.jet();
    const Covector rebuilt = oracle::pi_from_pi1_evolution(spec, j, {0.5});
    const double scale = std::max(1.0, rebuilt.lpNorm<Eigen::Infinity>());
    const double good = (legendre_map(spec, j, {0.5}).pi - rebuilt).lpNorm<Eigen::Infinity>() / scale;
    const double bad =
        (legendre_map(spec, j, {0.5}, BoxedPiForm::as_printed).pi - rebuilt).lpNorm<Eigen::Infinity>() / scale;
    CHECK(good < 1e-6);
    if (std::abs(scalar_invariants(spec, j).a1) > 1e-2) CHECK(bad > 1e-4);
  }
}

TEST_CASE("Euler-Poisson residual") {
  const MetricSpec e = MetricSpec::euclidean(3);
  CHECK(euler_poisson_residual(e, line(), {1.0}).norm() == 0.0);

  // The unit circle solves the flat equation for A = 3k² − 2ω² = 1.
  CHECK(euler_poisson_residual(e, circle(1.0), {1.0}).norm() < 1e-14);
  CHECK(euler_poisson_residual(e, circle(1.0), {2.0}).norm() > 0.5);

  CovariantJet j = circle(1.0);
  j.u *= 1.1;
  CHECK_THROWS_AS(euler_poisson_residual(e, j, {1.0}), DomainError);
  j = circle(1.0);
  j.u_prime3.reset();
  CHECK_THROWS_AS(euler_poisson_residual(e, j, {1.0}), DomainError);
}

TEST_CASE("make_natural produces natural jets") {
  const MetricSpec spec = MetricSpec::constant_curvature(4, -0.2, {1, -1, -1, -1});
  JetSampler s(spec, 17);
  for (int i = 0; i < 20; ++i) {
    const CovariantJet j = s.natural_jet();
    const ScalarInvariants inv = scalar_invariants(spec, j);
    CHECK(std::abs(inv.gamma - 1.0) < 1e-14);
    CHECK(std::abs(inv.a1) < 1e-14);
    CHECK(std::abs(inv.b1 + inv.a2) < 1e-13);
    CHECK_NOTHROW(require_natural(spec, j));
  }
}
