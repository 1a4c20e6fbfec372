#include "zbw/verify.hpp"

#include "zbw/errors.hpp"
#include "zbw/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>

namespace zbw {

bool VerifyReport::ok() const {
  for (const CheckResult& c : checks)
    if (!c.pass) return false;
  return true;
}

nlohmann::json VerifyReport::to_json() const {
  nlohmann::json out;
  out["seed"] = seed;
  out["ok"] = ok();
  out["checks"] = nlohmann::json::array();
  for (const CheckResult& c : checks) {
    out["checks"].push_back({{"name", c.name},
                             {"metric", c.metric},
                             {"tolerance", c.tolerance},
                             {"measured", c.measured},
                             {"samples", c.samples},
                             {"pass", c.pass}});
  }
  return out;
}

std::string VerifyReport::to_text() const {
  std::ostringstream os;
  os << "verify seed=" << seed << "\n";
  for (const CheckResult& c : checks) {
    os << (c.pass ? "PASS " : "FAIL ") << std::left << std::setw(28) << c.name << " "
       << std::setw(34) << c.metric << " measured=" << std::scientific << std::setprecision(3)
       << c.measured << " tol=" << c.tolerance << " n=" << c.samples << "\n";
  }
  os << (ok() ? "all checks passed" : "some checks FAILED") << "\n";
  return os.str();
}

namespace oracle {

namespace {

/// Coordinate jet of the cubic x(τ) = x + uτ + du τ²/2 + d2u τ³/6 at parameter τ.
CoordinateJet along_cubic(const CoordinateJet& c, double tau) {
  CoordinateJet out;
  out.x = c.x + c.u * tau + c.du * (tau * tau / 2.0) + c.d2u * (tau * tau * tau / 6.0);
  out.u = c.u + c.du * tau + c.d2u * (tau * tau / 2.0);
  out.du = c.du + c.d2u * tau;
  out.d2u = c.d2u;
  return out;
}

template <typename F>
Eigen::VectorXd central4(F&& f, double h) {
  return (8.0 * (f(h) - f(-h)) - (f(2.0 * h) - f(-2.0 * h))) / (12.0 * h);
}

}  // namespace

Covector pi_from_pi1_evolution(const MetricSpec& spec, const CovariantJet& jet,
                               const LagrangianParams& params, double h) {
  const CoordinateJet c = to_coordinate_jet(spec, jet);
  const auto pi1_at = [&](double tau) -> Eigen::VectorXd {
    return legendre_map(spec, to_covariant_jet(spec, along_cubic(c, tau)), params).pi1;
  };
  const Covector pi1 = pi1_at(0.0);
  const Covector dpi1 = central4(pi1_at, h);
  const Christoffel g = christoffel_at(spec, jet.x);
  const Covector pi1_prime = covariant_covector_rate(g, jet.u, pi1, dpi1);

  const MetricValue m = metric_at(spec, jet.x);
  const double gamma = dot(m, jet.u, jet.u);
  const double eta = dot_covectors(m, pi1, pi1);
  const double mu = dot(m, jet.u, jet.u_prime) / gamma;
  const Covector u_flat = lower(m, jet.u);
  return -pi1_prime - 0.75 * std::sqrt(gamma) * eta * u_flat - mu * pi1 +
         params.A / std::sqrt(gamma) * u_flat;
}

Vector u_prime2_along_curve(const MetricSpec& spec, const CovariantJet& jet, double h) {
  const CoordinateJet c = to_coordinate_jet(spec, jet);
  const auto up_at = [&](double tau) -> Eigen::VectorXd {
    return to_covariant_jet(spec, along_cubic(c, tau)).u_prime;
  };
  const Vector dup = central4(up_at, h);
  return covariant_vector_rate(christoffel_at(spec, jet.x), jet.u, jet.u_prime, dup);
}

}  // namespace oracle

namespace {

double inf_norm(const Eigen::VectorXd& v) { return v.size() ? v.lpNorm<Eigen::Infinity>() : 0.0; }
double inf_norm(const Eigen::MatrixXd& m) { return m.size() ? m.lpNorm<Eigen::Infinity>() : 0.0; }

/// Running maximum of one check over many samples.
class Accumulator {
 public:
  Accumulator(std::string name, std::string metric, double tolerance)
      : name_(std::move(name)), metric_(std::move(metric)), tol_(tolerance) {}

  void add(double measured) {
    // NaN must fail the check rather than vanish in std::max.
    if (!(measured <= worst_)) worst_ = std::isnan(measured) ? measured : std::max(worst_, measured);
    ++n_;
  }

  CheckResult result() const {
    return {name_, metric_, tol_, worst_, n_, !std::isnan(worst_) && worst_ <= tol_};
  }

 private:
  std::string name_;
  std::string metric_;
  double tol_;
  double worst_ = 0.0;
  std::size_t n_ = 0;
};

double fd_metric_derivative(const MetricSpec& spec, const Vector& x, int nu, int a, int b,
                            FiniteDifferenceStep step = {}) {
  Vector xp = x;
  Vector xm = x;
  const double h = step.at(x[nu]);
  xp[nu] += h;
  xm[nu] -= h;
  return (metric_at(spec, xp).g(a, b) - metric_at(spec, xm).g(a, b)) / (2.0 * h);
}

void geometry_checks(const MetricSpec& spec, JetSampler& sampler, int points,
                     std::vector<CheckResult>& out) {
  const std::string name = spec.name();
  const int n = spec.dimension();
  Accumulator inverse("metric_inverse", name, 1e-12);
  Accumulator symmetry("christoffel_symmetry", name, 0.0);
  Accumulator gamma_fd("christoffel_fd_vs_analytic", name, 1e-5);
  Accumulator riemann_fd("riemann_fd_vs_analytic", name, 1e-5);
  Accumulator flat("flat_curvature", name, 1e-10);
  Accumulator antisym("riemann_antisymmetry", name, 1e-9);
  Accumulator pairs("riemann_pair_symmetries", name, 1e-9);
  Accumulator bianchi("riemann_first_bianchi", name, 1e-9);
  Accumulator compat("metric_compatibility", name, 1e-6);
  Accumulator constant("constant_curvature_form", name, 1e-9);
  Accumulator kretschmann("schwarzschild_kretschmann", name, 1e-9);

  for (int p = 0; p < points; ++p) {
    const Vector x = sampler.point();
    const MetricValue m = metric_at(spec, x);
    inverse.add(inf_norm(Matrix(m.g * m.g_inv - Matrix::Identity(n, n))));

    const Christoffel g = christoffel_at(spec, x);
    const Christoffel g_fd = christoffel_at(spec, x, DerivativeMode::finite_difference);
    double asym = 0.0;
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c) asym = std::max(asym, std::abs(g(a, b, c) - g(a, c, b)));
    symmetry.add(asym);
    gamma_fd.add(relative_difference(g_fd.tensor(), g.tensor(), 1e-12));

    const Curvature r = riemann_at(spec, x);
    const Curvature r_fd = riemann_at(spec, x, DerivativeMode::finite_difference);
    riemann_fd.add(relative_difference(r_fd.tensor(), r.tensor(), 1e-12));
    if (spec.is_flat()) flat.add(std::max(r.tensor().max_abs(), r_fd.tensor().max_abs()));

    const DenseTensor<4> rl = r.lowered(m.g);
    const double scale = std::max(1.0, rl.max_abs());
    double e_anti = 0.0, e_pairs = 0.0, e_bianchi = 0.0;
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c)
          for (int d = 0; d < n; ++d) {
            e_anti = std::max(e_anti, std::abs(r(a, b, c, d) + r(c, b, a, d)));
            e_pairs = std::max({e_pairs, std::abs(rl(a, b, c, d) + rl(a, d, c, b)),
                                std::abs(rl(a, b, c, d) - rl(b, a, d, c))});
            e_bianchi = std::max(e_bianchi, std::abs(rl(a, b, c, d) + rl(b, c, a, d) + rl(c, a, b, d)));
          }
    antisym.add(e_anti / std::max(1.0, r.tensor().max_abs()));
    pairs.add(e_pairs / scale);
    bianchi.add(e_bianchi / scale);

    double e_compat = 0.0, dg_scale = 1.0;
    for (int nu = 0; nu < n; ++nu)
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
          const double dg = fd_metric_derivative(spec, x, nu, a, b);
          double rhs = 0.0;
          for (int s = 0; s < n; ++s) rhs += m.g(a, s) * g(s, nu, b) + m.g(b, s) * g(s, nu, a);
          e_compat = std::max(e_compat, std::abs(dg - rhs));
          dg_scale = std::max(dg_scale, std::abs(dg));
        }
    compat.add(e_compat / dg_scale);

    if (spec.kind() == MetricKind::constant_curvature) {
      const double k = spec.param("K");
      double e = 0.0;
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
          for (int c = 0; c < n; ++c)
            for (int d = 0; d < n; ++d) {
              const double form = -k * (m.g(a, d) * m.g(c, b) - m.g(c, d) * m.g(a, b));
              e = std::max(e, std::abs(rl(a, b, c, d) - form));
            }
      constant.add(e / scale);
    }
    if (spec.kind() == MetricKind::schwarzschild) {
      double kr = 0.0;
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
          for (int c = 0; c < n; ++c)
            for (int d = 0; d < n; ++d) {
              // Diagonal metric: raising is a componentwise product with g^{aa}.
              kr += rl(a, b, c, d) * rl(a, b, c, d) * m.g_inv(a, a) * m.g_inv(b, b) *
                    m.g_inv(c, c) * m.g_inv(d, d);
            }
      const double mass = spec.param("M");
      const double expect = 48.0 * mass * mass / std::pow(x[1], 6);
      kretschmann.add(std::abs(kr - expect) / expect);
    }
  }

  for (const Accumulator* a : {&inverse, &symmetry, &gamma_fd, &riemann_fd, &antisym, &pairs,
                               &bianchi, &compat})
    out.push_back(a->result());
  if (spec.is_flat()) out.push_back(flat.result());
  if (spec.kind() == MetricKind::constant_curvature) out.push_back(constant.result());
  if (spec.kind() == MetricKind::schwarzschild) out.push_back(kretschmann.result());
}

CoordinateJet rescaled(const CoordinateJet& c, double k) {
  // τ → τ/k: every derivative order picks up one more factor k.
  return {c.x, k * c.u, k * k * c.du, k * k * k * c.d2u, std::nullopt};
}

void lagrangian_checks(const MetricSpec& spec, JetSampler& sampler, int jets,
                       std::vector<CheckResult>& out) {
  const std::string name = spec.name();
  Accumulator z1("zermelo_z1", name, 1e-7);
  Accumulator z2("zermelo_z2", name, 1e-7);
  Accumulator homog("lagrangian_homogeneity", name, 1e-10);
  Accumulator k2inv("k2_reparameterization", name, 1e-10);
  Accumulator round("jet_round_trip", name, 1e-10);
  Accumulator orth("legendre_u_dot_pi1", name, 1e-12);
  Accumulator onimage("hamiltonian_on_image", name, 1e-9);

  for (int j = 0; j < jets; ++j) {
    const CovariantJet jet = sampler.jet();
    const LagrangianParams params{sampler.uniform(-3.0, 3.0)};
    const CoordinateJet c = to_coordinate_jet(spec, jet);

    const ZermeloResiduals z = zermelo_residuals(spec, c.x, c.u, c.du, params);
    const double scale = 1.0 + std::abs(z.value);
    z1.add(std::abs(z.z1) / scale);
    z2.add(std::abs(z.z2) / scale);

    const CovariantJet back = to_covariant_jet(spec, c);
    round.add(std::max({inf_norm(Vector(back.u_prime - jet.u_prime)),
                        inf_norm(Vector(back.u_prime2 - jet.u_prime2))}) /
              std::max({1.0, inf_norm(jet.u_prime), inf_norm(jet.u_prime2)}));

    const double l = lagrangian_value(spec, jet, params);
    const double k2 = scalar_invariants(spec, jet).k2;
    for (double k : {0.5, 2.0, 3.0}) {
      const CovariantJet r = to_covariant_jet(spec, rescaled(c, k));
      homog.add(std::abs(lagrangian_value(spec, r, params) - k * l) / std::max(1.0, std::abs(k * l)));
      k2inv.add(std::abs(scalar_invariants(spec, r).k2 - k2) / std::max(1.0, std::abs(k2)));
    }

    const CovariantMomenta p = legendre_map(spec, jet, params);
    orth.add(std::abs(jet.u.dot(p.pi1)));
    const PhaseState state{jet.x, jet.u, p.pi, p.pi1};
    onimage.add(std::abs(hamiltonian_value(spec, state, params)) / (1.0 + std::abs(params.A)));
  }
  for (const Accumulator* a : {&z1, &z2, &homog, &k2inv, &round, &orth, &onimage})
    out.push_back(a->result());
}

void pi_oracle_check(const MetricSpec& spec, JetSampler& sampler, int jets, BoxedPiForm form,
                     std::vector<CheckResult>& out) {
  Accumulator acc("boxed_pi_oracle", spec.name(), 1e-6);
  for (int j = 0; j < jets; ++j) {
    const CovariantJet jet = sampler.jet();
    const LagrangianParams params{sampler.uniform(-3.0, 3.0)};
    const Covector closed = legendre_map(spec, jet, params, form).pi;
    const Covector rebuilt = oracle::pi_from_pi1_evolution(spec, jet, params);
    acc.add(inf_norm(Vector(closed - rebuilt)) / std::max(1.0, inf_norm(rebuilt)));
  }
  out.push_back(acc.result());
}

void dixon_checks(const MetricSpec& spec, JetSampler& sampler, int states,
                  std::vector<CheckResult>& out) {
  if (spec.dimension() != 4) return;
  const std::string name = spec.name();
  const double s = spec.signature_sign();
  Accumulator antisym("spin_antisymmetry", name, 0.0);
  Accumulator sd("sigma_direct_zero", name, 1e-10);
  Accumulator sdual("sigma_dual_equals_pi1", name, 1e-10);
  Accumulator mdual("mathisson_dual", name, 1e-12);
  Accumulator mdirect("mathisson_direct_gamma_pi1", name, 1e-12);
  Accumulator r1("dixon_r1_identity", name, 1e-9);
  Accumulator r2("dixon_r2_identity", name, 1e-9);

  for (int i = 0; i < states; ++i) {
    const Vector x = sampler.point();
    const Vector u = sampler.tangent(x, sampler.uniform(0.5, 2.0));
    const Covector pi1 = sampler.orthogonal_covector(x, u);
    const MetricValue m = metric_at(spec, x);
    const double gamma = dot(m, u, u);

    const SpinBivector direct = spin_direct(spec, x, u, pi1);
    const SpinBivector dual = spin_dual(spec, x, u, pi1);
    antisym.add(std::max(inf_norm(Matrix(direct.components + direct.components.transpose())),
                         inf_norm(Matrix(dual.components + dual.components.transpose()))));

    const double pscale = std::max(1.0, std::sqrt(gamma) * inf_norm(pi1));
    sd.add(inf_norm(sigma_vector(spec, x, u, direct)) / pscale);
    sdual.add(inf_norm(Vector(sigma_vector(spec, x, u, dual) + s * std::sqrt(gamma) * pi1)) / pscale);
    mdual.add(inf_norm(mathisson_residual(spec, x, u, dual)));
    mdirect.add(inf_norm(Vector(mathisson_residual(spec, x, u, direct) - gamma * pi1)) /
                std::max(1.0, gamma * inf_norm(pi1)));

    // The r1/r2 relations are identities of the canonical vector field; test them at lifted random jets.
    const CovariantJet jet = sampler.jet();
    const LagrangianParams params{sampler.uniform(-3.0, 3.0)};
    const CovariantMomenta p = legendre_map(spec, jet, params);
    const PhaseState state{jet.x, jet.u, p.pi, p.pi1};
    const PhaseRates rates = canonical_rhs(spec, state, params, {});
    const DixonResiduals res = dixon_residuals(spec, state, rates, SpinConvention::direct);
    const double dscale = std::max({1.0, inf_norm(p.pi), inf_norm(p.pi1)});
    r1.add(inf_norm(res.r1) / dscale);
    r2.add(inf_norm(res.r2) / dscale);
  }
  for (const Accumulator* a : {&antisym, &sd, &sdual, &mdual, &mdirect, &r1, &r2})
    out.push_back(a->result());
}

}  // namespace

VerifyReport run_verify(const VerifyOptions& options) {
  VerifyReport report;
  report.seed = options.seed;
  bool matched = false;
  std::uint64_t stream = 0;
  for (const MetricSpec& spec : catalog_metrics()) {
    ++stream;
    if (options.metric && *options.metric != to_string(spec.kind())) continue;
    matched = true;
    // One independent generator per metric and suite keeps results stable under filtering.
    const auto seed_for = [&](std::uint64_t suite) {
      return options.seed * 1000003ULL + stream * 101ULL + suite;
    };
    JetSampler geo(spec, seed_for(1));
    geometry_checks(spec, geo, options.geometry_points, report.checks);
    JetSampler lag(spec, seed_for(2));
    lagrangian_checks(spec, lag, options.jets, report.checks);
    JetSampler pio(spec, seed_for(3));
    pi_oracle_check(spec, pio, options.pi_oracle_jets,
                    options.inject_boxed_pi_fault ? BoxedPiForm::as_printed : BoxedPiForm::restored,
                    report.checks);
    JetSampler dix(spec, seed_for(4));
    dixon_checks(spec, dix, options.jets, report.checks);
  }
  if (!matched) throw ConfigError("unknown metric for verify: " + options.metric.value_or(""));
  return report;
}

}  // namespace zbw
