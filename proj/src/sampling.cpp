#include "zbw/sampling.hpp"

#include "zbw/errors.hpp"

#include <algorithm>
#include <cmath>

namespace zbw {

std::vector<MetricSpec> catalog_metrics() {
  return {MetricSpec::euclidean(4), MetricSpec::minkowski(4), MetricSpec::schwarzschild(1.0),
          MetricSpec::constant_curvature(4, 0.3),
          MetricSpec::constant_curvature(4, -0.2, {1, -1, -1, -1})};
}

JetSampler::JetSampler(MetricSpec spec, std::uint64_t seed) : spec_(std::move(spec)), rng_(seed) {}

double JetSampler::uniform(double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng_);
}

Vector JetSampler::point() {
  const int n = spec_.dimension();
  Vector x(n);
  switch (spec_.kind()) {
    case MetricKind::schwarzschild: {
      const double m = spec_.param("M");
      x << uniform(-5.0, 5.0), uniform(3.0 * m, 20.0 * m), uniform(0.4, M_PI - 0.4),
          uniform(0.0, 2.0 * M_PI);
      return x;
    }
    case MetricKind::constant_curvature:
      for (int attempt = 0; attempt < 1000; ++attempt) {
        for (int a = 0; a < n; ++a) x[a] = uniform(-1.0, 1.0);
        const double margin = admissibility_margin(spec_, x);
        if (margin > 0.2) return x;
      }
      throw DomainError("could not sample an admissible constant-curvature point");
    default:
      for (int a = 0; a < n; ++a) x[a] = uniform(-2.0, 2.0);
      return x;
  }
}

Vector JetSampler::generic_vector(const Vector& x) {
  const MetricValue m = metric_at(spec_, x);
  const int n = spec_.dimension();
  Vector v(n);
  for (int a = 0; a < n; ++a) v[a] = uniform(-1.0, 1.0) / std::sqrt(std::abs(m.g(a, a)));
  return v;
}

Vector JetSampler::tangent(const Vector& x, double gamma) {
  const MetricValue m = metric_at(spec_, x);
  const int n = spec_.dimension();
  const bool lorentzian = spec_.signature()[0] == 1 &&
                          std::any_of(spec_.signature().begin() + 1, spec_.signature().end(),
                                      [](int s) { return s == -1; });
  Vector u(n);
  if (!lorentzian) {
    for (int a = 0; a < n; ++a) u[a] = uniform(-1.0, 1.0) / std::sqrt(std::abs(m.g(a, a)));
    const double g0 = dot(m, u, u);
    return u * std::sqrt(gamma / g0);
  }
  // Catalog metrics are diagonal; pick spatial components in an orthonormal frame, then
  // solve g_00 (u^0)² = γ − g_ij u^i u^j for the time component.
  double spatial = 0.0;
  for (int a = 1; a < n; ++a) {
    u[a] = uniform(-0.6, 0.6) / std::sqrt(std::abs(m.g(a, a)));
    spatial += m.g(a, a) * u[a] * u[a];
  }
  u[0] = std::sqrt((gamma - spatial) / m.g(0, 0));
  return u;
}

CovariantJet JetSampler::jet() {
  CovariantJet j;
  j.x = point();
  j.u = tangent(j.x, uniform(0.5, 2.0));
  j.u_prime = generic_vector(j.x);
  j.u_prime2 = generic_vector(j.x);
  return j;
}

CovariantJet JetSampler::natural_jet() { return make_natural(spec_, jet()); }

Covector JetSampler::orthogonal_covector(const Vector& x, const Vector& u) {
  const MetricValue m = metric_at(spec_, x);
  const Covector w = lower(m, generic_vector(x));
  const double gamma = dot(m, u, u);
  return w - (u.dot(w) / gamma) * lower(m, u);
}

}  // namespace zbw
