#include "zbw/dixon.hpp"

#include "zbw/errors.hpp"

#include <cmath>
#include <sstream>

namespace zbw {

std::string to_string(SpinConvention convention) {
  return convention == SpinConvention::direct ? "direct" : "dual";
}

namespace {

Matrix wedge(const Covector& a, const Covector& b) { return a * b.transpose() - b * a.transpose(); }

void require_four(const MetricSpec& spec, const char* what) {
  if (spec.dimension() != 4) {
    std::ostringstream os;
    os << what << " is defined only for n = 4 (metric " << spec.name() << ")";
    throw DomainError(os.str());
  }
}

}  // namespace

SpinBivector spin_direct(const MetricSpec& spec, const Vector& x, const Vector& u, const Covector& pi1) {
  const MetricValue m = metric_at(spec, x);
  return {wedge(lower(m, u), pi1), SpinConvention::direct};
}

SpinBivector spin_dual(const MetricSpec& spec, const Vector& x, const Vector& u, const Covector& pi1) {
  require_four(spec, "spin_dual");
  const MetricValue m = metric_at(spec, x);
  return {hodge_dual_bivector(spec, x, wedge(lower(m, u), pi1)), SpinConvention::dual};
}

SpinBivector spin_bivector(const MetricSpec& spec, const Vector& x, const Vector& u,
                           const Covector& pi1, SpinConvention convention) {
  return convention == SpinConvention::direct ? spin_direct(spec, x, u, pi1)
                                              : spin_dual(spec, x, u, pi1);
}

Covector sigma_vector(const MetricSpec& spec, const Vector& x, const Vector& u, const SpinBivector& spin) {
  require_four(spec, "sigma_vector");
  const MetricValue m = metric_at(spec, x);
  const double gamma = dot(m, u, u);
  if (!(gamma > kNullThreshold)) throw DomainError("sigma_vector requires u·u > 0");
  const Matrix s_upper = m.g_inv * spin.components * m.g_inv.transpose();
  const double density = std::sqrt(std::abs(m.det));
  Covector sigma = Covector::Zero(4);
  for (int a = 0; a < 4; ++a) {
    double acc = 0.0;
    for (int b = 0; b < 4; ++b)
      for (int r = 0; r < 4; ++r)
        for (int s = 0; s < 4; ++s) {
          const int e = levi_civita(a, b, r, s);
          if (e != 0) acc += e * u[b] * s_upper(r, s);
        }
    sigma[a] = density * acc / (2.0 * std::sqrt(gamma));
  }
  return sigma;
}

Covector mathisson_residual(const MetricSpec&, const Vector&, const Vector& u, const SpinBivector& spin) {
  return spin.components.transpose() * u;
}

DixonResiduals dixon_residuals(const MetricSpec& spec, const PhaseState& state,
                               const PhaseRates& rates, SpinConvention convention) {
  const int n = spec.dimension();
  const MetricValue m = metric_at(spec, state.x);
  const Christoffel g = christoffel_at(spec, state.x);
  const Vector u_prime = covariant_velocity(g, state.u, rates.du);
  const Covector pi_prime = covariant_covector_rate(g, state.u, state.pi, rates.dpi);
  const Covector pi1_prime = covariant_covector_rate(g, state.u, state.pi1, rates.dpi1);
  const Covector u_flat = lower(m, state.u);

  const SpinBivector spin = spin_bivector(spec, state.x, state.u, state.pi1, convention);
  Matrix spin_rate = wedge(lower(m, u_prime), state.pi1) + wedge(u_flat, pi1_prime);
  if (convention == SpinConvention::dual) spin_rate = hodge_dual_bivector(spec, state.x, spin_rate);

  DixonResiduals res;
  res.r1 = pi_prime;
  if (!spec.is_flat()) {
    const DenseTensor<4> rl = riemann_at(spec, state.x).lowered(m.g);
    const Matrix s_upper = m.g_inv * spin.components * m.g_inv.transpose();
    for (int a = 0; a < n; ++a) {
      double acc = 0.0;
      for (int b = 0; b < n; ++b) {
        if (state.u[b] == 0.0) continue;
        for (int r = 0; r < n; ++r)
          for (int s = 0; s < n; ++s) acc += rl(s, b, r, a) * state.u[b] * s_upper(r, s);
      }
      res.r1[a] += 0.5 * acc;
    }
  }
  res.r2 = spin_rate - wedge(state.pi, u_flat);
  res.rM = mathisson_residual(spec, state.x, state.u, spin);
  return res;
}

ZbwFrequency zbw_frequency(double A, double k0) {
  const double arg = 1.5 * k0 * k0 - 0.5 * A;
  return {std::sqrt(std::abs(arg)), arg > 0.0};
}

double A_from_mass_spin(double k0, double m, double sigma) {
  if (sigma == 0.0) throw DomainError("A_from_mass_spin requires sigma != 0");
  return k0 * k0 + 2.0 * m * m / (sigma * sigma);
}

}  // namespace zbw
