#include "zbw/lagrangian.hpp"

#include "zbw/errors.hpp"

#include <cmath>
#include <sstream>

namespace zbw {

namespace {

/// out^a = ∂_e Γ^a_{bc} v^e p^b q^c
Vector contract_derivative(const ChristoffelDerivative& dg, const Vector& v, const Vector& p,
                           const Vector& q) {
  const int n = dg.dimension();
  Vector out = Vector::Zero(n);
  for (int e = 0; e < n; ++e) {
    if (v[e] == 0.0) continue;
    for (int a = 0; a < n; ++a) {
      double s = 0.0;
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c) s += dg(e, a, b, c) * p[b] * q[c];
      out[a] += v[e] * s;
    }
  }
  return out;
}

/// out^a = ∂_f ∂_e Γ^a_{bc} v^f w^e p^b q^c
Vector contract_second_derivative(const ChristoffelSecondDerivative& ddg, const Vector& v,
                                  const Vector& w, const Vector& p, const Vector& q) {
  const int n = ddg.dimension();
  Vector out = Vector::Zero(n);
  for (int f = 0; f < n; ++f)
    for (int e = 0; e < n; ++e) {
      const double ve = v[f] * w[e];
      if (ve == 0.0) continue;
      for (int a = 0; a < n; ++a) {
        double s = 0.0;
        for (int b = 0; b < n; ++b)
          for (int c = 0; c < n; ++c) s += ddg(f, e, a, b, c) * p[b] * q[c];
        out[a] += ve * s;
      }
    }
  return out;
}

void check_jet_shape(const MetricSpec& spec, std::initializer_list<const Vector*> vs) {
  for (const Vector* v : vs)
    if (v->size() != spec.dimension())
      throw DomainError("jet component dimension does not match metric " + spec.name());
}

/// The part of d²u′/dτ² that does not involve d³u/dτ³.
Vector second_rate_remainder(const Christoffel& g, const ChristoffelDerivative& dg,
                             const ChristoffelSecondDerivative& ddg, const Vector& c1,
                             const Vector& c2, const Vector& c3) {
  return contract_second_derivative(ddg, c1, c1, c1, c1) + contract_derivative(dg, c2, c1, c1) +
         4.0 * contract_derivative(dg, c1, c2, c1) + 2.0 * g.contract(c3, c1) +
         2.0 * g.contract(c2, c2);
}

double root_gamma(double gamma, GammaPolicy policy, const char* what) {
  if (gamma > 0.0) return std::sqrt(gamma);
  if (policy == GammaPolicy::absolute) return std::sqrt(std::abs(gamma));
  std::ostringstream os;
  os << what << " requires u·u > 0 (got " << gamma
     << "); use GammaPolicy::absolute to evaluate with sqrt|u·u|";
  throw DomainError(os.str());
}

}  // namespace

CovariantJet to_covariant_jet(const MetricSpec& spec, const CoordinateJet& jet) {
  check_jet_shape(spec, {&jet.x, &jet.u, &jet.du, &jet.d2u});
  const Christoffel g = christoffel_at(spec, jet.x);
  const ChristoffelDerivative dg = christoffel_derivative_at(spec, jet.x);
  const Vector& c1 = jet.u;
  const Vector& c2 = jet.du;
  const Vector& c3 = jet.d2u;

  CovariantJet out;
  out.x = jet.x;
  out.u = c1;
  out.u_prime = c2 + g.contract(c1, c1);
  const Vector du_prime = c3 + contract_derivative(dg, c1, c1, c1) + 2.0 * g.contract(c2, c1);
  out.u_prime2 = du_prime + g.contract(c1, out.u_prime);
  if (jet.d3u) {
    check_jet_shape(spec, {&*jet.d3u});
    const ChristoffelSecondDerivative ddg = christoffel_second_derivative_at(spec, jet.x);
    const Vector d2u_prime = *jet.d3u + second_rate_remainder(g, dg, ddg, c1, c2, c3);
    const Vector du_prime2 = d2u_prime + contract_derivative(dg, c1, c1, out.u_prime) +
                             g.contract(c2, out.u_prime) + g.contract(c1, du_prime);
    out.u_prime3 = du_prime2 + g.contract(c1, out.u_prime2);
  }
  return out;
}

CoordinateJet to_coordinate_jet(const MetricSpec& spec, const CovariantJet& jet) {
  check_jet_shape(spec, {&jet.x, &jet.u, &jet.u_prime, &jet.u_prime2});
  const Christoffel g = christoffel_at(spec, jet.x);
  const ChristoffelDerivative dg = christoffel_derivative_at(spec, jet.x);
  const Vector& c1 = jet.u;

  CoordinateJet out;
  out.x = jet.x;
  out.u = c1;
  out.du = jet.u_prime - g.contract(c1, c1);
  const Vector du_prime = jet.u_prime2 - g.contract(c1, jet.u_prime);
  out.d2u = du_prime - contract_derivative(dg, c1, c1, c1) - 2.0 * g.contract(out.du, c1);
  if (jet.u_prime3) {
    check_jet_shape(spec, {&*jet.u_prime3});
    const ChristoffelSecondDerivative ddg = christoffel_second_derivative_at(spec, jet.x);
    const Vector du_prime2 = *jet.u_prime3 - g.contract(c1, jet.u_prime2);
    const Vector d2u_prime = du_prime2 - contract_derivative(dg, c1, c1, jet.u_prime) -
                             g.contract(out.du, jet.u_prime) - g.contract(c1, du_prime);
    out.d3u = d2u_prime - second_rate_remainder(g, dg, ddg, c1, out.du, out.d2u);
  }
  return out;
}

ScalarInvariants scalar_invariants(const MetricSpec& spec, const CovariantJet& jet) {
  check_jet_shape(spec, {&jet.x, &jet.u, &jet.u_prime, &jet.u_prime2});
  const MetricValue m = metric_at(spec, jet.x);
  ScalarInvariants s;
  s.gamma = dot(m, jet.u, jet.u);
  if (!(std::abs(s.gamma) > kNullThreshold)) {
    std::ostringstream os;
    os << "near-null tangent: |u·u| = " << std::abs(s.gamma) << " <= 1e-10";
    throw SingularityError(os.str());
  }
  s.a1 = dot(m, jet.u, jet.u_prime);
  s.a2 = dot(m, jet.u_prime, jet.u_prime);
  s.b1 = dot(m, jet.u, jet.u_prime2);
  s.k2 = (s.gamma * s.a2 - s.a1 * s.a1) / (s.gamma * s.gamma * s.gamma);
  return s;
}

double lagrangian_value(const MetricSpec& spec, const CovariantJet& jet, const LagrangianParams& params) {
  const ScalarInvariants s = scalar_invariants(spec, jet);
  return (s.k2 + params.A) * root_gamma(s.gamma, params.gamma_policy, "lagrangian_value");
}

ZermeloResiduals zermelo_residuals(const MetricSpec& spec, const Vector& x, const Vector& u,
                                   const Vector& du_dtau, const LagrangianParams& params,
                                   FiniteDifferenceStep step) {
  return zermelo_residuals(
      spec, x, u, du_dtau,
      [params](const MetricSpec& s, const CovariantJet& j) { return lagrangian_value(s, j, params); },
      step);
}

ZermeloResiduals zermelo_residuals(const MetricSpec& spec, const Vector& x, const Vector& u,
                                   const Vector& du_dtau, const CovariantLagrangian& lagrangian,
                                   FiniteDifferenceStep step) {
  check_jet_shape(spec, {&x, &u, &du_dtau});
  if (!(step.relative >= 1e-12)) throw ConfigError("Zermelo differentiation step underflow");
  const int n = spec.dimension();
  const Christoffel g = christoffel_at(spec, x);
  auto eval = [&](const Vector& uu, const Vector& du) {
    CovariantJet j{x, uu, du + g.contract(uu, uu), Vector::Zero(n), std::nullopt};
    return lagrangian(spec, j);
  };

  ZermeloResiduals r;
  r.value = eval(u, du_dtau);
  double u_dl_du = 0.0;
  double u_dl_ddu = 0.0;
  double du_dl_ddu = 0.0;
  // Fourth-order central stencil: components along large metric factors (e.g. r² sin²θ)
  // are small, so the absolute step is relatively coarse for them.
  const auto partial = [](auto&& f, const Vector& v, int a, double h) {
    const auto at = [&](double k) {
      Vector w = v;
      w[a] += k * h;
      return f(w);
    };
    return (8.0 * (at(1.0) - at(-1.0)) - (at(2.0) - at(-2.0))) / (12.0 * h);
  };
  for (int a = 0; a < n; ++a) {
    const double dl_du =
        partial([&](const Vector& w) { return eval(w, du_dtau); }, u, a, step.at(u[a]));
    const double dl_ddu =
        partial([&](const Vector& w) { return eval(u, w); }, du_dtau, a, step.at(du_dtau[a]));
    u_dl_du += u[a] * dl_du;
    u_dl_ddu += u[a] * dl_ddu;
    du_dl_ddu += du_dtau[a] * dl_ddu;
  }
  r.z1 = u_dl_ddu;
  r.z2 = u_dl_du + 2.0 * du_dl_ddu - r.value;
  return r;
}

CovariantMomenta legendre_map(const MetricSpec& spec, const CovariantJet& jet,
                              const LagrangianParams& params, BoxedPiForm form) {
  const ScalarInvariants s = scalar_invariants(spec, jet);
  if (!(s.gamma > 0.0)) {
    std::ostringstream os;
    os << "legendre_map requires u·u > 0 (got " << s.gamma << ")";
    throw DomainError(os.str());
  }
  const MetricValue m = metric_at(spec, jet.x);
  const Covector u_flat = lower(m, jet.u);
  const Covector up_flat = lower(m, jet.u_prime);
  const Covector upp_flat = lower(m, jet.u_prime2);

  const double root = std::sqrt(s.gamma);
  const double g32 = 1.0 / (s.gamma * root);  // γ^{-3/2}
  const double g52 = g32 / s.gamma;           // γ^{-5/2}
  const double g72 = g52 / s.gamma;           // γ^{-7/2}

  CovariantMomenta p;
  p.pi1 = 2.0 * g32 * up_flat - 2.0 * s.a1 * g52 * u_flat;

  double u_coeff = 2.0 * s.b1 * g52 - 5.0 * s.a1 * s.a1 * g72 - s.a2 * g52 + params.A / root;
  if (form == BoxedPiForm::restored) {
    p.pi = 6.0 * s.a1 * g52 * up_flat - 2.0 * g32 * upp_flat + u_coeff * u_flat;
  } else {
    u_coeff += 6.0 * s.a1 * g52;
    p.pi = -2.0 * g32 * upp_flat + u_coeff * u_flat;
  }
  return p;
}

void require_natural(const MetricSpec& spec, const CovariantJet& jet, double tolerance) {
  const ScalarInvariants s = scalar_invariants(spec, jet);
  if (std::abs(s.gamma - 1.0) < tolerance && std::abs(s.a1) < tolerance) return;
  std::ostringstream os;
  os << "jet is not natural-parameterized: |u·u - 1| = " << std::abs(s.gamma - 1.0)
     << ", |u·u'| = " << std::abs(s.a1) << " (tolerance " << tolerance << ")";
  throw DomainError(os.str());
}

CovariantJet make_natural(const MetricSpec& spec, const CovariantJet& jet) {
  const MetricValue m = metric_at(spec, jet.x);
  const double gamma = dot(m, jet.u, jet.u);
  if (!(gamma > kNullThreshold))
    throw DomainError("make_natural requires a tangent with u·u > 0");
  CovariantJet out = jet;
  out.u = jet.u / std::sqrt(gamma);
  out.u_prime = jet.u_prime - dot(m, out.u, jet.u_prime) * out.u;
  const double a2 = dot(m, out.u_prime, out.u_prime);
  out.u_prime2 = jet.u_prime2 - (dot(m, out.u, jet.u_prime2) + a2) * out.u;
  out.u_prime3.reset();
  return out;
}

Covector euler_poisson_residual(const MetricSpec& spec, const CovariantJet& jet,
                                const LagrangianParams& params) {
  require_natural(spec, jet);
  if (!jet.u_prime3) throw DomainError("euler_poisson_residual needs a jet carrying u'''");
  const MetricValue m = metric_at(spec, jet.x);
  const double a2 = dot(m, jet.u_prime, jet.u_prime);
  const double rate_a2 = 2.0 * dot(m, jet.u_prime, jet.u_prime2);
  Covector residual = -3.0 * rate_a2 * lower(m, jet.u) +
                      (-3.0 * a2 + params.A) * lower(m, jet.u_prime) -
                      2.0 * lower(m, *jet.u_prime3);
  if (!spec.is_flat()) {
    const Curvature r = riemann_at(spec, jet.x);
    residual += r.force(jet.u, 2.0 * lower(m, jet.u_prime));
  }
  return residual;
}

}  // namespace zbw
