#pragma once

// Trajectory producers: the canonical first-order system and the fourth-order
// natural-parameter equation, plus the closed-form flat-space Zitterbewegung solution.

#include "zbw/dixon.hpp"
#include "zbw/errors.hpp"
#include "zbw/steppers.hpp"

#include <array>
#include <memory>
#include <optional>
#include <vector>

namespace zbw {

enum class Engine { canonical, fourth_order };

std::string to_string(Engine engine);

/// Per-sample diagnostics. Residual norms are coordinate (Frobenius) norms of the
/// component arrays; residuals use the direct spin unless named otherwise.
struct DiagnosticsRecord {
  double hamiltonian = 0.0;
  double gamma = 0.0;
  double u_dot_pi1 = 0.0;
  double u_dot_u_prime = 0.0;
  double k2 = 0.0;
  double r1_norm = 0.0;
  double r2_norm = 0.0;
  double rM_direct_norm = 0.0;
  std::optional<double> rM_dual_norm;  ///< n = 4 only
  double admissibility_margin = 0.0;
};

struct TrajectorySample {
  double s = 0.0;
  PhaseState phase;  ///< integrated (canonical) or Legendre-lifted (fourth order)
  CovariantJet jet;  ///< reconstructed (canonical) or integrated (fourth order, with u‴)
  DiagnosticsRecord diag;
};

struct Trajectory {
  Engine engine = Engine::canonical;
  std::vector<TrajectorySample> samples;
  OdeRunStats stats;
};

/// Aborted integration; carries everything sampled before the failure.
template <typename Base>
class TrajectoryError : public Base {
 public:
  TrajectoryError(const std::string& what, Trajectory partial)
      : Base(what), partial_(std::make_shared<Trajectory>(std::move(partial))) {}
  const Trajectory& partial() const { return *partial_; }

 private:
  std::shared_ptr<const Trajectory> partial_;
};

using TrajectoryDomainExit = TrajectoryError<DomainError>;
using TrajectoryNumericalFailure = TrajectoryError<NumericalError>;

/// Called after every accepted step (not only sampled ones) with the current jet.
using JetObserver = std::function<void(double s, const CovariantJet& jet)>;

struct IntegrationOptions {
  GaugeChoice gauge;
  /// Fourth-order engine only: rescale u and orthogonalize u′, u″ after every step.
  bool project_natural = false;
  JetObserver on_step;
};

DiagnosticsRecord compute_diagnostics(const MetricSpec& spec, const PhaseState& phase,
                                      const CovariantJet& jet, const LagrangianParams& params,
                                      const GaugeChoice& gauge);

Trajectory integrate_canonical(const MetricSpec& spec, const CovariantJet& initial,
                               const LagrangianParams& params, const StepperConfig& cfg,
                               const IntegrationOptions& options = {});

/// u‴ = ½[(−3 u′·u′ + A) u′ − 6 (u′·u″) u + (R_{abc}^d u^c u^b π¹_d)♯] with π¹ = 2 u′♭.
Vector fourth_order_u_prime3(const MetricSpec& spec, const Vector& x, const Vector& u,
                             const Vector& u_prime, const Vector& u_prime2, double A);

Trajectory integrate_fourth_order(const MetricSpec& spec, const CovariantJet& initial,
                                  const LagrangianParams& params, const StepperConfig& cfg,
                                  const IntegrationOptions& options = {});

struct FlatZbwParams {
  double k0 = 1.0;
  double A = 1.0;
  /// 1: on-manifold helix with radius k0/ω²; 0: straight line along e0.
  double amplitude = 1.0;
  double phase = 0.0;
  Vector origin;                 ///< defaults to 0
  std::array<Vector, 3> frame;   ///< defaults to the first three coordinate axes
};

/// x(s) = x0 + c s e0 + r [cos(ωs + φ) e1 + sin(ωs + φ) e2] in flat Euclidean space with
/// ω = zbw_frequency(A, k0), r = k0/ω², c = √(1 − r²ω²).
class FlatZbwReference {
 public:
  FlatZbwReference(const MetricSpec& spec, FlatZbwParams params);

  double omega() const { return omega_; }
  double radius() const { return radius_; }
  double drift_speed() const { return drift_; }
  const FlatZbwParams& params() const { return params_; }

  /// Jet (x, u, u′, u″, u‴) at parameter s.
  CovariantJet at(double s) const;

 private:
  FlatZbwParams params_;
  double omega_ = 0.0;
  double radius_ = 0.0;
  double drift_ = 1.0;
};

/// Angular frequency from zero crossings (linear interpolation) of the component with the
/// largest peak-to-peak range. Needs at least three crossings.
std::optional<double> measure_frequency(const std::vector<double>& s,
                                        const std::vector<Vector>& series);

OdeVector pack(const PhaseState& state);
PhaseState unpack_phase(const OdeVector& y, int n);
OdeVector pack(const CovariantJet& jet);
CovariantJet unpack_jet(const OdeVector& y, int n);

}  // namespace zbw
