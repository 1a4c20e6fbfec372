#include "zbw/hamiltonian.hpp"

#include "zbw/errors.hpp"

#include <cmath>
#include <sstream>

namespace zbw {

namespace {

void check_state(const MetricSpec& spec, const PhaseState& s) {
  const int n = spec.dimension();
  if (s.x.size() != n || s.u.size() != n || s.pi.size() != n || s.pi1.size() != n)
    throw DomainError("phase state dimension does not match metric " + spec.name());
}

double positive_gamma(double gamma, const char* what) {
  if (gamma > kNullThreshold) return gamma;
  std::ostringstream os;
  os << what << " requires u·u > 1e-10 (got " << gamma << ")";
  throw DomainError(os.str());
}

}  // namespace

HamiltonianInvariants hamiltonian_invariants(const MetricSpec& spec, const PhaseState& state) {
  check_state(spec, state);
  const MetricValue m = metric_at(spec, state.x);
  return {dot(m, state.u, state.u), state.pi.dot(state.u), dot_covectors(m, state.pi1, state.pi1)};
}

double hamiltonian_value(const MetricSpec& spec, const PhaseState& state, const LagrangianParams& params) {
  const HamiltonianInvariants h = hamiltonian_invariants(spec, state);
  double gamma = h.gamma;
  if (!(gamma > 0.0)) {
    if (params.gamma_policy != GammaPolicy::absolute) {
      std::ostringstream os;
      os << "hamiltonian_value requires u·u > 0 (got " << gamma
         << "); use GammaPolicy::absolute to evaluate with |u·u|";
      throw DomainError(os.str());
    }
    gamma = std::abs(gamma);
  }
  const double root = std::sqrt(gamma);
  return h.psi + 0.25 * gamma * root * h.eta - params.A * root;
}

double gauge_mu(const MetricSpec& spec, const PhaseState& state, const GaugeChoice& gauge) {
  if (gauge.mu_policy == MuPolicy::zero) return 0.0;
  const MetricValue m = metric_at(spec, state.x);
  const double gamma = dot(m, state.u, state.u);
  return -0.5 * std::sqrt(std::abs(gamma)) * state.u.dot(state.pi1);
}

CovariantRates covariant_canonical_rates(const MetricSpec& spec, const PhaseState& state,
                                         const LagrangianParams& params, const GaugeChoice& gauge) {
  check_state(spec, state);
  const MetricValue m = metric_at(spec, state.x);
  const double gamma = positive_gamma(dot(m, state.u, state.u), "canonical_rhs");
  const double root = std::sqrt(gamma);
  const double eta = dot_covectors(m, state.pi1, state.pi1);
  const double dh_dgamma = 0.375 * root * eta - params.A / (2.0 * root);

  CovariantRates r;
  r.mu = gauge.mu_policy == MuPolicy::zero ? 0.0 : -0.5 * root * state.u.dot(state.pi1);
  r.u_prime = 0.5 * gamma * root * raise(m, state.pi1) + r.mu * state.u;
  if (spec.is_flat()) {
    r.pi_prime = Covector::Zero(spec.dimension());
  } else {
    r.pi_prime = -riemann_at(spec, state.x).force(state.u, state.pi1);
  }
  r.pi1_prime = -2.0 * dh_dgamma * lower(m, state.u) - state.pi - r.mu * state.pi1;
  return r;
}

PhaseRates to_coordinate_rates(const MetricSpec& spec, const PhaseState& state,
                               const CovariantRates& rates) {
  if (spec.is_flat()) return {state.u, rates.u_prime, rates.pi_prime, rates.pi1_prime};
  const Christoffel g = christoffel_at(spec, state.x);
  return {state.u, coordinate_velocity_rate(g, state.u, rates.u_prime),
          coordinate_covector_rate(g, state.u, state.pi, rates.pi_prime),
          coordinate_covector_rate(g, state.u, state.pi1, rates.pi1_prime)};
}

PhaseRates canonical_rhs(const MetricSpec& spec, const PhaseState& state,
                         const LagrangianParams& params, const GaugeChoice& gauge) {
  return to_coordinate_rates(spec, state, covariant_canonical_rates(spec, state, params, gauge));
}

PhaseState lift_initial_data(const MetricSpec& spec, const CovariantJet& jet,
                             const LagrangianParams& params) {
  const CovariantMomenta p = legendre_map(spec, jet, params);
  PhaseState state{jet.x, jet.u, p.pi, p.pi1};

  const double h = hamiltonian_value(spec, state, params);
  const double u_pi1 = state.u.dot(state.pi1);
  const double u_pi1_scale = std::max(1.0, state.u.cwiseAbs().dot(state.pi1.cwiseAbs()));
  const double h_scale = std::max(1.0, std::abs(state.pi.dot(state.u))) * (1.0 + std::abs(params.A));
  if (!(std::abs(h) < 1e-9 * h_scale) || !(std::abs(u_pi1) < 1e-12 * u_pi1_scale)) {
    std::ostringstream os;
    os.precision(3);
    os << "Legendre lift failed its identities: |H| = " << std::abs(h) << ", |u.pi1| = "
       << std::abs(u_pi1);
    throw ConsistencyError(os.str());
  }
  return state;
}

CovariantJet reconstruct_jet(const MetricSpec& spec, const PhaseState& state,
                             const LagrangianParams& params, const GaugeChoice& gauge) {
  const CovariantRates r = covariant_canonical_rates(spec, state, params, gauge);
  const MetricValue m = metric_at(spec, state.x);
  const double gamma = dot(m, state.u, state.u);
  const double root = std::sqrt(gamma);
  const double gamma_rate = 2.0 * dot(m, state.u, r.u_prime);

  double mu_rate = 0.0;
  if (gauge.mu_policy == MuPolicy::preserve_gamma) {
    const double w = state.u.dot(state.pi1);
    const double w_rate = r.u_prime.dot(state.pi1) + state.u.dot(r.pi1_prime);
    mu_rate = -0.25 * gamma_rate / root * w - 0.5 * root * w_rate;
  }
  CovariantJet jet;
  jet.x = state.x;
  jet.u = state.u;
  jet.u_prime = r.u_prime;
  jet.u_prime2 = 0.75 * root * gamma_rate * raise(m, state.pi1) +
                 0.5 * gamma * root * raise(m, r.pi1_prime) + mu_rate * state.u + r.mu * r.u_prime;
  return jet;
}

Covector canonical_momentum(const MetricSpec& spec, const PhaseState& state) {
  check_state(spec, state);
  if (spec.is_flat()) return state.pi;
  return state.pi + christoffel_at(spec, state.x).contract_covector(state.pi1, state.u);
}

}  // namespace zbw
