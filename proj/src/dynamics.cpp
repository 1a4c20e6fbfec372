#include "zbw/dynamics.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace zbw {

std::string to_string(Engine engine) {
  return engine == Engine::canonical ? "canonical" : "fourth_order";
}

OdeVector pack(const PhaseState& state) {
  const auto n = state.x.size();
  OdeVector y(4 * n);
  y << state.x, state.u, state.pi, state.pi1;
  return y;
}

PhaseState unpack_phase(const OdeVector& y, int n) {
  return {y.segment(0, n), y.segment(n, n), y.segment(2 * n, n), y.segment(3 * n, n)};
}

OdeVector pack(const CovariantJet& jet) {
  const auto n = jet.x.size();
  OdeVector y(4 * n);
  y << jet.x, jet.u, jet.u_prime, jet.u_prime2;
  return y;
}

CovariantJet unpack_jet(const OdeVector& y, int n) {
  return {y.segment(0, n), y.segment(n, n), y.segment(2 * n, n), y.segment(3 * n, n), std::nullopt};
}

namespace {

double frobenius(const Eigen::MatrixXd& m) { return m.norm(); }

void require_finite(const DiagnosticsRecord& d, double s) {
  const double values[] = {d.hamiltonian, d.gamma, d.u_dot_pi1, d.u_dot_u_prime, d.k2,
                           d.r1_norm, d.r2_norm, d.rM_direct_norm, d.rM_dual_norm.value_or(0.0)};
  for (double v : values) {
    if (!std::isfinite(v)) {
      std::ostringstream os;
      os << "non-finite diagnostics at s = " << s;
      throw NumericalError(os.str());
    }
  }
}

/// Runs `integrate_ode` and converts thrown errors into trajectory errors with the samples
/// collected so far.
template <typename Run>
void guarded(Trajectory& traj, Run&& run) {
  try {
    run();
  } catch (const DomainError& e) {
    throw TrajectoryDomainExit(std::string("trajectory left the admissible region: ") + e.what(),
                               std::move(traj));
  } catch (const NumericalError& e) {
    throw TrajectoryNumericalFailure(e.what(), std::move(traj));
  }
}

}  // namespace

DiagnosticsRecord compute_diagnostics(const MetricSpec& spec, const PhaseState& phase,
                                      const CovariantJet& jet, const LagrangianParams& params,
                                      const GaugeChoice& gauge) {
  const MetricValue m = metric_at(spec, phase.x);
  DiagnosticsRecord d;
  d.hamiltonian = hamiltonian_value(spec, phase, params);
  d.gamma = dot(m, phase.u, phase.u);
  d.u_dot_pi1 = phase.u.dot(phase.pi1);
  d.u_dot_u_prime = dot(m, jet.u, jet.u_prime);
  d.k2 = scalar_invariants(spec, jet).k2;

  const PhaseRates rates = canonical_rhs(spec, phase, params, gauge);
  const DixonResiduals direct = dixon_residuals(spec, phase, rates, SpinConvention::direct);
  d.r1_norm = direct.r1.norm();
  d.r2_norm = frobenius(direct.r2);
  d.rM_direct_norm = direct.rM.norm();
  if (spec.dimension() == 4) {
    const SpinBivector dual = spin_dual(spec, phase.x, phase.u, phase.pi1);
    d.rM_dual_norm = mathisson_residual(spec, phase.x, phase.u, dual).norm();
  }
  d.admissibility_margin = admissibility_margin(spec, phase.x);
  return d;
}

Trajectory integrate_canonical(const MetricSpec& spec, const CovariantJet& initial,
                               const LagrangianParams& params, const StepperConfig& cfg,
                               const IntegrationOptions& options) {
  validate(cfg);
  const int n = spec.dimension();
  const PhaseState start = lift_initial_data(spec, initial, params);
  const GaugeChoice gauge = options.gauge;

  const OdeRhs rhs = [&](double, const OdeVector& y) {
    const PhaseRates r = canonical_rhs(spec, unpack_phase(y, n), params, gauge);
    OdeVector out(4 * n);
    out << r.dx, r.du, r.dpi, r.dpi1;
    return out;
  };

  Trajectory traj;
  traj.engine = Engine::canonical;
  guarded(traj, [&] {
    traj.stats = integrate_ode(
        rhs, pack(start), cfg, [&](std::size_t step, double s, const OdeVector& y, bool last) {
          const bool sampled = step % static_cast<std::size_t>(cfg.sample_every) == 0 || last;
          if (!sampled && !options.on_step) return;
          const PhaseState phase = unpack_phase(y, n);
          CovariantJet jet = reconstruct_jet(spec, phase, params, gauge);
          if (options.on_step) options.on_step(s, jet);
          if (!sampled) return;
          DiagnosticsRecord diag = compute_diagnostics(spec, phase, jet, params, gauge);
          require_finite(diag, s);
          traj.samples.push_back({s, phase, std::move(jet), diag});
        });
  });
  return traj;
}

Vector fourth_order_u_prime3(const MetricSpec& spec, const Vector& x, const Vector& u,
                             const Vector& u_prime, const Vector& u_prime2, double A) {
  const MetricValue m = metric_at(spec, x);
  const double a2 = dot(m, u_prime, u_prime);
  const double c = dot(m, u_prime, u_prime2);
  Vector out = 0.5 * ((-3.0 * a2 + A) * u_prime - 6.0 * c * u);
  if (!spec.is_flat()) {
    const Covector force = riemann_at(spec, x).force(u, 2.0 * lower(m, u_prime));
    out += 0.5 * raise(m, force);
  }
  return out;
}

Trajectory integrate_fourth_order(const MetricSpec& spec, const CovariantJet& initial,
                                  const LagrangianParams& params, const StepperConfig& cfg,
                                  const IntegrationOptions& options) {
  validate(cfg);
  require_natural(spec, initial);
  const int n = spec.dimension();

  const OdeRhs rhs = [&](double, const OdeVector& y) {
    const CovariantJet j = unpack_jet(y, n);
    const Vector u3 = fourth_order_u_prime3(spec, j.x, j.u, j.u_prime, j.u_prime2, params.A);
    OdeVector out(4 * n);
    if (spec.is_flat()) {
      out << j.u, j.u_prime, j.u_prime2, u3;
    } else {
      const Christoffel g = christoffel_at(spec, j.x);
      out << j.u, j.u_prime - g.contract(j.u, j.u), j.u_prime2 - g.contract(j.u, j.u_prime),
          u3 - g.contract(j.u, j.u_prime2);
    }
    return out;
  };

  StepProjection projection;
  if (options.project_natural) {
    projection = [&](OdeVector& y) { y = pack(make_natural(spec, unpack_jet(y, n))); };
  }

  Trajectory traj;
  traj.engine = Engine::fourth_order;
  guarded(traj, [&] {
    traj.stats = integrate_ode(
        rhs, pack(initial), cfg,
        [&](std::size_t step, double s, const OdeVector& y, bool last) {
          const bool sampled = step % static_cast<std::size_t>(cfg.sample_every) == 0 || last;
          if (!sampled && !options.on_step) return;
          CovariantJet jet = unpack_jet(y, n);
          if (options.on_step) options.on_step(s, jet);
          if (!sampled) return;
          jet.u_prime3 = fourth_order_u_prime3(spec, jet.x, jet.u, jet.u_prime, jet.u_prime2, params.A);
          const CovariantMomenta p = legendre_map(spec, jet, params);
          PhaseState phase{jet.x, jet.u, p.pi, p.pi1};
          DiagnosticsRecord diag = compute_diagnostics(spec, phase, jet, params, options.gauge);
          require_finite(diag, s);
          traj.samples.push_back({s, std::move(phase), std::move(jet), diag});
        },
        projection);
  });
  return traj;
}

FlatZbwReference::FlatZbwReference(const MetricSpec& spec, FlatZbwParams params)
    : params_(std::move(params)) {
  if (spec.kind() != MetricKind::euclidean || spec.dimension() < 3)
    throw DomainError("flat_zbw reference needs a euclidean metric with n >= 3 (got " + spec.name() + ")");
  const int n = spec.dimension();
  if (params_.origin.size() == 0) params_.origin = Vector::Zero(n);
  for (int i = 0; i < 3; ++i)
    if (params_.frame[i].size() == 0) params_.frame[i] = Vector::Unit(n, i);
  if (params_.origin.size() != n) throw DomainError("flat_zbw origin dimension mismatch");
  for (int i = 0; i < 3; ++i) {
    if (params_.frame[i].size() != n) throw DomainError("flat_zbw frame dimension mismatch");
    for (int j = 0; j < 3; ++j) {
      const double expect = i == j ? 1.0 : 0.0;
      if (std::abs(params_.frame[i].dot(params_.frame[j]) - expect) > 1e-12)
        throw DomainError("flat_zbw frame must be orthonormal");
    }
  }
  if (params_.amplitude == 0.0) {
    radius_ = 0.0;
    drift_ = 1.0;
    omega_ = zbw_frequency(params_.A, params_.k0).omega;
    return;
  }
  if (params_.amplitude != 1.0)
    throw DomainError("flat_zbw amplitude must be 0 (straight line) or 1 (on-manifold helix)");
  const ZbwFrequency f = zbw_frequency(params_.A, params_.k0);
  if (!f.oscillatory) {
    std::ostringstream os;
    os.precision(12);
    os << "flat_zbw needs 3*k0^2 > A (k0 = " << params_.k0 << ", A = " << params_.A << ")";
    throw DomainError(os.str());
  }
  omega_ = f.omega;
  radius_ = std::abs(params_.k0) / (omega_ * omega_);
  const double c2 = 1.0 - radius_ * radius_ * omega_ * omega_;
  if (c2 < -1e-14) {
    std::ostringstream os;
    os.precision(12);
    os << "no unit-speed helix exists for k0 = " << params_.k0 << ", A = " << params_.A
       << " (requires A <= k0^2)";
    throw DomainError(os.str());
  }
  drift_ = std::sqrt(std::max(0.0, c2));
}

CovariantJet FlatZbwReference::at(double s) const {
  const auto& [e0, e1, e2] = params_.frame;
  const double th = omega_ * s + params_.phase;
  const double c = std::cos(th);
  const double sn = std::sin(th);
  const double r = radius_;
  const double w = omega_;
  CovariantJet j;
  j.x = params_.origin + drift_ * s * e0 + r * (c * e1 + sn * e2);
  j.u = drift_ * e0 + r * w * (-sn * e1 + c * e2);
  j.u_prime = -r * w * w * (c * e1 + sn * e2);
  j.u_prime2 = r * w * w * w * (sn * e1 - c * e2);
  j.u_prime3 = r * w * w * w * w * (c * e1 + sn * e2);
  return j;
}

std::optional<double> measure_frequency(const std::vector<double>& s, const std::vector<Vector>& series) {
  if (series.size() < 3 || s.size() != series.size()) return std::nullopt;
  const auto dim = series.front().size();
  Eigen::Index best = -1;
  double best_range = 0.0;
  for (Eigen::Index c = 0; c < dim; ++c) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (const Vector& v : series) {
      lo = std::min(lo, v[c]);
      hi = std::max(hi, v[c]);
    }
    if (hi - lo > best_range) {
      best_range = hi - lo;
      best = c;
    }
  }
  if (best < 0 || best_range <= 0.0) return std::nullopt;

  std::vector<double> crossings;
  for (std::size_t i = 1; i < series.size(); ++i) {
    const double a = series[i - 1][best];
    const double b = series[i][best];
    if ((a < 0.0 && b >= 0.0) || (a > 0.0 && b <= 0.0)) {
      if (b == 0.0 && i + 1 < series.size()) continue;  // counted at the next sign change
      crossings.push_back(s[i - 1] + (s[i] - s[i - 1]) * a / (a - b));
    }
  }
  if (crossings.size() < 3) return std::nullopt;
  const double span = crossings.back() - crossings.front();
  if (!(span > 0.0)) return std::nullopt;
  return M_PI * static_cast<double>(crossings.size() - 1) / span;
}

}  // namespace zbw
