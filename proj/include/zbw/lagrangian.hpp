#pragma once

// The second-order parameter-invariant Lagrangian L_k = (k² + A)√γ on covariant jets.

#include "zbw/geometry.hpp"

#include <functional>
#include <optional>

namespace zbw {

inline constexpr double kNullThreshold = 1e-10;

/// Worldline germ in coordinate derivatives: x, u = dx/dτ, du/dτ, d²u/dτ², [d³u/dτ³].
struct CoordinateJet {
  Vector x;
  Vector u;
  Vector du;
  Vector d2u;
  std::optional<Vector> d3u;
};

/// Worldline germ in covariant derivatives along the curve: x, u, u′, u″, [u‴].
struct CovariantJet {
  Vector x;
  Vector u;
  Vector u_prime;
  Vector u_prime2;
  std::optional<Vector> u_prime3;
};

/// γ = u·u, a1 = u·u′, a2 = u′·u′, b1 = u·u″, k² = (γ a2 − a1²)/γ³.
struct ScalarInvariants {
  double gamma = 0.0;
  double a1 = 0.0;
  double a2 = 0.0;
  double b1 = 0.0;
  double k2 = 0.0;
};

/// How √γ is formed when γ ≤ 0. `strict` rejects such jets; `absolute` uses √|γ|
/// (only lagrangian_value and hamiltonian_value honour it).
enum class GammaPolicy { strict, absolute };

struct LagrangianParams {
  double A = 0.0;
  GammaPolicy gamma_policy = GammaPolicy::strict;
};

CovariantJet to_covariant_jet(const MetricSpec& spec, const CoordinateJet& jet);
CoordinateJet to_coordinate_jet(const MetricSpec& spec, const CovariantJet& jet);

ScalarInvariants scalar_invariants(const MetricSpec& spec, const CovariantJet& jet);

double lagrangian_value(const MetricSpec& spec, const CovariantJet& jet, const LagrangianParams& params);

/// Any Lagrangian of (x, u, u′); used to feed test doubles into the Zermelo check.
using CovariantLagrangian = std::function<double(const MetricSpec&, const CovariantJet&)>;

struct ZermeloResiduals {
  double z1 = 0.0;  ///< u^a ∂L/∂u̇^a
  double z2 = 0.0;  ///< u^a ∂L/∂u^a + 2 u̇^a ∂L/∂u̇^a − L
  double value = 0.0;
};

/// Zermelo residuals of L_k with partial derivatives taken by fourth-order central differences in the
/// coordinate variables (x fixed, u′ rebuilt from u and du/dτ).
ZermeloResiduals zermelo_residuals(const MetricSpec& spec, const Vector& x, const Vector& u,
                                   const Vector& du_dtau, const LagrangianParams& params,
                                   FiniteDifferenceStep step = {});
ZermeloResiduals zermelo_residuals(const MetricSpec& spec, const Vector& x, const Vector& u,
                                   const Vector& du_dtau, const CovariantLagrangian& lagrangian,
                                   FiniteDifferenceStep step = {});

/// Covariant momenta (π¹, ϖ) of L_k.
struct CovariantMomenta {
  Covector pi1;
  Covector pi;
};

/// Form of the leading term of the closed-form ϖ. `as_printed` drops the u′ factor and
/// folds the scalar into the coefficient of u♭; it exists for oracle-sensitivity tests only.
enum class BoxedPiForm { restored, as_printed };

CovariantMomenta legendre_map(const MetricSpec& spec, const CovariantJet& jet,
                              const LagrangianParams& params,
                              BoxedPiForm form = BoxedPiForm::restored);

/// Residual of the fourth-order natural-parameter equation
///   D/ds[(−3k² + A) u♭ − 2 u″♭]_a + π¹_d R_{abc}^d u^c u^b,   π¹ = 2 u′♭.
/// Requires a natural-parameter jet carrying u‴.
Covector euler_poisson_residual(const MetricSpec& spec, const CovariantJet& jet,
                                const LagrangianParams& params);

inline constexpr double kNaturalTolerance = 1e-8;

/// Throws DomainError unless |γ − 1| and |u·u′| are below `tolerance`.
void require_natural(const MetricSpec& spec, const CovariantJet& jet,
                     double tolerance = kNaturalTolerance);

/// Projects a jet onto natural parameterization: γ = 1, u·u′ = 0, u·u″ = −u′·u′.
CovariantJet make_natural(const MetricSpec& spec, const CovariantJet& jet);

}  // namespace zbw
