#include <doctest.h>

#include "scenarios.hpp"

#include "zbw/errors.hpp"

#include <cmath>

using namespace zbw;

namespace {

PhaseState straight_lift(int n, double A) {
  PhaseState s{Vector::Zero(n), Vector::Unit(n, 0), A * Vector::Unit(n, 0), Vector::Zero(n)};
  return s;
}

double inf(const Eigen::VectorXd& v) { return v.lpNorm<Eigen::Infinity>(); }

}  // namespace

TEST_CASE("hamiltonian on simple states") {
  const MetricSpec e = MetricSpec::euclidean(3);
  const PhaseState s = straight_lift(3, 1.0);
  CHECK(hamiltonian_value(e, s, {1.0}) == 0.0);
  PhaseState doubled = s;
  doubled.pi *= 2.0;
  CHECK(hamiltonian_value(e, doubled, {1.0}) == doctest::Approx(1.0));
}

TEST_CASE("hamiltonian vanishes on the Legendre image") {
  for (const MetricSpec& spec : catalog_metrics()) {
    JetSampler sampler(spec, 21);
    for (int i = 0; i < 100; ++i) {
      const CovariantJet j = sampler.jet();
      const double A = sampler.uniform(-2.0, 2.0);
      const PhaseState s = lift_initial_data(spec, j, {A});
      CHECK(std::abs(hamiltonian_value(spec, s, {A})) < 1e-9 * (1.0 + std::abs(A)));

      // Independent expansion: ψ = ϖ·u and η = π¹·π¹ in jet variables.
      const ScalarInvariants inv = scalar_invariants(spec, j);
      const double g = inv.gamma;
      const double psi = inv.a1 * inv.a1 * std::pow(g, -2.5) - inv.a2 * std::pow(g, -1.5) + A * std::sqrt(g);
      const double eta = 4.0 * (inv.a2 * std::pow(g, -3.0) - inv.a1 * inv.a1 * std::pow(g, -4.0));
      const HamiltonianInvariants h = hamiltonian_invariants(spec, s);
      CHECK(h.psi == doctest::Approx(psi).epsilon(1e-10));
      CHECK(h.eta == doctest::Approx(eta).epsilon(1e-10));
    }
  }
}

TEST_CASE("straight line is a fixed point of the reduced flow") {
  const MetricSpec e = MetricSpec::euclidean(3);
  const PhaseRates r = canonical_rhs(e, straight_lift(3, 1.7), {1.7}, {MuPolicy::zero});
  CHECK(r.dx == Vector::Unit(3, 0));
  CHECK(r.du.norm() == 0.0);
  CHECK(r.dpi.norm() == 0.0);
  CHECK(r.dpi1.norm() < 1e-15);
}

TEST_CASE("lifted helix: du/dtau is the analytic acceleration") {
  const MetricSpec e = MetricSpec::euclidean(4);
  const FlatZbwReference ref = testing::unit_helix();
  const CovariantJet j = ref.at(0.3);
  const PhaseState s = lift_initial_data(e, j, {1.0});
  const PhaseRates r = canonical_rhs(e, s, {1.0}, {});
  CHECK((r.du - j.u_prime).norm() < 1e-9);
}

TEST_CASE("curvature term isolates against minkowski") {
  // Same components in minkowski and schwarzschild: the covariant π rate differs by the
  // curvature force only.
  const MetricSpec schw = MetricSpec::schwarzschild(1.0);
  JetSampler sampler(schw, 22);
  for (int i = 0; i < 20; ++i) {
    const PhaseState s = lift_initial_data(schw, sampler.jet(), {-1.0});
    const PhaseRates flat = canonical_rhs(MetricSpec::minkowski(), s, {-1.0}, {});
    CHECK(flat.dpi.norm() == 0.0);
    const PhaseRates curved = canonical_rhs(schw, s, {-1.0}, {});
    const Christoffel g = christoffel_at(schw, s.x);
    const Covector covariant = curved.dpi - g.contract_covector(s.pi, s.u);
    const Covector force = riemann_at(schw, s.x, DerivativeMode::finite_difference).force(s.u, s.pi1);
    CHECK(inf(covariant + force) < 1e-6 * std::max(1.0, inf(force)));
  }
}

TEST_CASE("gauge multiplier") {
  const MetricSpec e = MetricSpec::euclidean(3);
  PhaseState s = straight_lift(3, 1.0);
  s.pi1 = Vector::Unit(3, 1);
  CHECK(gauge_mu(e, s, {MuPolicy::zero}) == 0.0);
  CHECK(gauge_mu(e, s, {MuPolicy::preserve_gamma}) == 0.0);
  s.pi1[0] = 1e-6;
  CHECK(gauge_mu(e, s, {MuPolicy::preserve_gamma}) == doctest::Approx(-5e-7).epsilon(1e-12));
  CHECK(gauge_mu(e, s, {MuPolicy::zero}) == 0.0);
}

TEST_CASE("preserve_gamma keeps gamma stationary off the image") {
  const MetricSpec spec = MetricSpec::constant_curvature(4, 0.3);
  JetSampler sampler(spec, 23);
  for (int i = 0; i < 20; ++i) {
    PhaseState s = lift_initial_data(spec, sampler.jet(), {0.4});
    s.pi1 += 1e-3 * lower(metric_at(spec, s.x), s.u);  // u·π¹ ≠ 0
    const MetricValue m = metric_at(spec, s.x);
    const CovariantRates cr = covariant_canonical_rates(spec, s, {0.4}, {});
    CHECK(std::abs(2.0 * dot(m, s.u, cr.u_prime)) < 1e-14);
  }
}

TEST_CASE("constraint identities d(u.pi1)/dtau = -h and dh/dtau = mu h") {
  for (const MetricSpec& spec : catalog_metrics()) {
    JetSampler sampler(spec, 24);
    const double A = testing::conservation_A(spec);
    for (int i = 0; i < 10; ++i) {
      PhaseState s = lift_initial_data(spec, sampler.jet(), {A});
      const MetricValue m = metric_at(spec, s.x);
      s.pi += 1e-2 * lower(m, s.u);
      s.pi1 += 1e-3 * lower(m, s.u);
      const PhaseRates r = canonical_rhs(spec, s, {A}, {});
      const double h = hamiltonian_value(spec, s, {A});
      CHECK(r.du.dot(s.pi1) + s.u.dot(r.dpi1) == doctest::Approx(-h).epsilon(1e-9));

      const double eps = 1e-5;
      const auto shifted = [&](double k) {
        return PhaseState{s.x + k * r.dx, s.u + k * r.du, s.pi + k * r.dpi, s.pi1 + k * r.dpi1};
      };
      const double dh = (hamiltonian_value(spec, shifted(eps), {A}) -
                         hamiltonian_value(spec, shifted(-eps), {A})) / (2.0 * eps);
      const double mu = gauge_mu(spec, s, {});
      CHECK(std::abs(dh - mu * h) < 1e-7 * std::max(1.0, std::abs(h)));
    }
  }
}

TEST_CASE("reconstruct_jet inverts the lift on natural jets") {
  for (const MetricSpec& spec : catalog_metrics()) {
    JetSampler sampler(spec, 25);
    for (int i = 0; i < 20; ++i) {
      const CovariantJet j = sampler.natural_jet();
      const PhaseState s = lift_initial_data(spec, j, {0.5});
      const CovariantJet back = reconstruct_jet(spec, s, {0.5}, {});
      CHECK((back.u_prime - j.u_prime).norm() < 1e-12 * std::max(1.0, j.u_prime.norm()));
      CHECK((back.u_prime2 - j.u_prime2).norm() < 1e-11 * std::max(1.0, j.u_prime2.norm()));
    }
  }
}

TEST_CASE("lift rejects a null tangent") {
  const MetricSpec m = MetricSpec::minkowski();
  CovariantJet j{Vector::Zero(4), Vector::Zero(4), Vector::Zero(4), Vector::Zero(4), std::nullopt};
  j.u << 1, 1, 0, 0;
  CHECK_THROWS_AS(lift_initial_data(m, j, {1.0}), SingularityError);
}

TEST_CASE("schwarzschild: canonical momenta along ignorable coordinates are conserved") {
  // p_t and p_φ are Noether charges of the coordinate Hamiltonian system; their constancy
  // checks the sign of the curvature force independently of the Riemann convention.
  const MetricSpec spec = MetricSpec::schwarzschild(1.0);
  StepperConfig cfg;
  cfg.method = StepMethod::rkf45;
  cfg.step = 1e-2;
  cfg.t_end = 10.0;
  const Trajectory traj = integrate_canonical(spec, testing::schwarzschild_orbit_jet(), {-1.0}, cfg);
  const Covector p0 = canonical_momentum(spec, traj.samples.front().phase);
  double drift_t = 0.0, drift_phi = 0.0, drift_r = 0.0;
  for (const TrajectorySample& s : traj.samples) {
    const Covector p = canonical_momentum(spec, s.phase);
    drift_t = std::max(drift_t, std::abs(p[0] - p0[0]));
    drift_phi = std::max(drift_phi, std::abs(p[3] - p0[3]));
    drift_r = std::max(drift_r, std::abs(p[1] - p0[1]));
  }
  CHECK(drift_t < 1e-8);
  CHECK(drift_phi < 1e-8);
  CHECK(drift_r > 1e-6);  // r is not ignorable
}
