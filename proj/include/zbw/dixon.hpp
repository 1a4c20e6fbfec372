#pragma once

// Spin bivectors built from canonical variables, the σ spin vector, and residuals of
//
//   P′_a  = −½ R_{ab}^{rs} u^b S_{rs}
//   S′_ab = P_a u_b − P_b u_a
//   u^r S_{ra} = 0                       (Mathisson condition)
//
// with P ≡ π. Here R_{abrs} is the textbook-ordered tensor, antisymmetric in (r, s); in
// terms of the zbw components it is R_{abrs} = g_{ax} R_{sbr}^x.

#include "zbw/hamiltonian.hpp"

namespace zbw {

/// direct: S = u♭ ∧ π¹. dual: S = ⋆(u ∧ π¹♯) (n = 4 only).
enum class SpinConvention { direct, dual };

std::string to_string(SpinConvention convention);

/// Lowered components S_{ab}.
struct SpinBivector {
  Matrix components;
  SpinConvention convention = SpinConvention::direct;
};

struct DixonResiduals {
  Covector r1;  ///< momentum equation
  Matrix r2;    ///< spin equation
  Covector rM;  ///< Mathisson condition
};

SpinBivector spin_direct(const MetricSpec& spec, const Vector& x, const Vector& u, const Covector& pi1);
SpinBivector spin_dual(const MetricSpec& spec, const Vector& x, const Vector& u, const Covector& pi1);
SpinBivector spin_bivector(const MetricSpec& spec, const Vector& x, const Vector& u,
                           const Covector& pi1, SpinConvention convention);

/// σ_a = (1/(2√γ)) √|det g| ε_{abrs} u^b S^{rs}; n = 4 only.
///
/// With ε_{0123} = +1 and s = sign(det g), σ(spin_dual) = −s √γ π¹ when u·π¹ = 0, and
/// σ(spin_direct) = 0 identically.
Covector sigma_vector(const MetricSpec& spec, const Vector& x, const Vector& u, const SpinBivector& spin);

/// u^r S_{ra}.
Covector mathisson_residual(const MetricSpec& spec, const Vector& x, const Vector& u,
                            const SpinBivector& spin);

/// Residuals from a state and its coordinate rates (covariant rates are rebuilt through Γ).
DixonResiduals dixon_residuals(const MetricSpec& spec, const PhaseState& state,
                               const PhaseRates& rates, SpinConvention convention);

struct ZbwFrequency {
  double omega = 0.0;        ///< √|3k0²/2 − A/2|
  bool oscillatory = true;   ///< false when 3k0² − A <= 0 (omega is then the imaginary magnitude)
};

ZbwFrequency zbw_frequency(double A, double k0);

/// A = k0² + 2 m²/σ².
double A_from_mass_spin(double k0, double m, double sigma);

}  // namespace zbw
