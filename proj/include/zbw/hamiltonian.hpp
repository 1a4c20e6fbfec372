#pragma once

// Hamilton function 𝔥 = π·u + (γ^{3/2}/4) η − A√γ and the covariant canonical system
//
//   dx/dτ = u
//   u′    = (γ^{3/2}/2) π¹♯ + μ̃ u
//   π′_a  = −R_{abc}^d u^c u^b π¹_d
//   π¹′   = −2 (∂𝔥/∂γ) u♭ − π − μ̃ π¹,      ∂𝔥/∂γ = (3/8)√γ η − A/(2√γ)
//
// The multiplier λ is fixed to 1 because ∂𝔥/∂ψ = 1 for this 𝔥. The momentum π is the
// Dixon momentum P.

#include "zbw/lagrangian.hpp"

namespace zbw {

/// Canonical state (x, u, π, π¹).
struct PhaseState {
  Vector x;
  Vector u;
  Covector pi;
  Covector pi1;
};

/// γ = u·u, ψ = π·u, η = π¹·π¹.
struct HamiltonianInvariants {
  double gamma = 0.0;
  double psi = 0.0;
  double eta = 0.0;
};

enum class MuPolicy { zero, preserve_gamma };

struct GaugeChoice {
  MuPolicy mu_policy = MuPolicy::preserve_gamma;
};

/// Coordinate rates of a phase state.
struct PhaseRates {
  Vector dx;
  Vector du;
  Covector dpi;
  Covector dpi1;
};

/// Covariant rates (u′, π′, π¹′) along the flow.
struct CovariantRates {
  Vector u_prime;
  Covector pi_prime;
  Covector pi1_prime;
  double mu = 0.0;
};

HamiltonianInvariants hamiltonian_invariants(const MetricSpec& spec, const PhaseState& state);

double hamiltonian_value(const MetricSpec& spec, const PhaseState& state, const LagrangianParams& params);

/// μ̃: 0 under `zero`, −(√γ/2)(u·π¹) under `preserve_gamma` (which keeps dγ/dτ = 0).
double gauge_mu(const MetricSpec& spec, const PhaseState& state, const GaugeChoice& gauge);

CovariantRates covariant_canonical_rates(const MetricSpec& spec, const PhaseState& state,
                                         const LagrangianParams& params, const GaugeChoice& gauge);

PhaseRates canonical_rhs(const MetricSpec& spec, const PhaseState& state,
                         const LagrangianParams& params, const GaugeChoice& gauge);

/// Converts covariant rates into coordinate rates through Γ at the state's point.
PhaseRates to_coordinate_rates(const MetricSpec& spec, const PhaseState& state,
                               const CovariantRates& rates);

/// Legendre lift of a covariant jet. Checks |𝔥| and |u·π¹| on the result and throws
/// ConsistencyError if either fails.
PhaseState lift_initial_data(const MetricSpec& spec, const CovariantJet& jet,
                             const LagrangianParams& params);

/// Covariant jet (x, u, u′, u″) along the flow through `state`.
CovariantJet reconstruct_jet(const MetricSpec& spec, const PhaseState& state,
                             const LagrangianParams& params, const GaugeChoice& gauge);

/// Canonical (non-covariant) momentum p_a = π_a + Γ^r_{ab} u^b π¹_r. Its components along
/// ignorable coordinates are conserved.
Covector canonical_momentum(const MetricSpec& spec, const PhaseState& state);

}  // namespace zbw
