#include "zbw/geometry.hpp"

#include "zbw/errors.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <sstream>

namespace zbw {

std::string to_string(MetricKind kind) {
  switch (kind) {
    case MetricKind::euclidean: return "euclidean";
    case MetricKind::minkowski: return "minkowski";
    case MetricKind::schwarzschild: return "schwarzschild";
    case MetricKind::constant_curvature: return "constant_curvature";
  }
  return "unknown";
}

MetricKind metric_kind_from_string(const std::string& name) {
  if (name == "euclidean") return MetricKind::euclidean;
  if (name == "minkowski") return MetricKind::minkowski;
  if (name == "schwarzschild") return MetricKind::schwarzschild;
  if (name == "constant_curvature") return MetricKind::constant_curvature;
  throw ConfigError("unknown metric kind '" + name + "'");
}

MetricSpec::MetricSpec(MetricKind kind, int dimension, std::vector<int> signature,
                       std::map<std::string, double> params)
    : kind_(kind), dimension_(dimension), signature_(std::move(signature)), params_(std::move(params)) {
  if (dimension_ < 2) throw ConfigError("metric dimension must be >= 2");
  if (static_cast<int>(signature_.size()) != dimension_)
    throw ConfigError("signature length must equal the metric dimension");
  for (int s : signature_)
    if (s != 1 && s != -1) throw ConfigError("signature entries must be +1 or -1");
}

MetricSpec MetricSpec::euclidean(int dimension) {
  return MetricSpec(MetricKind::euclidean, dimension, std::vector<int>(std::max(dimension, 0), 1), {});
}

MetricSpec MetricSpec::minkowski(int dimension) {
  std::vector<int> sig(std::max(dimension, 0), -1);
  if (!sig.empty()) sig[0] = 1;
  return MetricSpec(MetricKind::minkowski, dimension, std::move(sig), {});
}

MetricSpec MetricSpec::schwarzschild(double mass) {
  if (!(mass > 0.0)) throw ConfigError("schwarzschild mass M must be > 0");
  return MetricSpec(MetricKind::schwarzschild, 4, {1, -1, -1, -1}, {{"M", mass}});
}

MetricSpec MetricSpec::constant_curvature(int dimension, double curvature, std::vector<int> signature) {
  if (signature.empty()) signature.assign(std::max(dimension, 0), 1);
  if (!std::isfinite(curvature)) throw ConfigError("constant_curvature K must be finite");
  return MetricSpec(MetricKind::constant_curvature, dimension, std::move(signature), {{"K", curvature}});
}

double MetricSpec::param(const std::string& key) const {
  auto it = params_.find(key);
  if (it == params_.end()) throw ConfigError("metric " + name() + " has no parameter '" + key + "'");
  return it->second;
}

int MetricSpec::signature_sign() const {
  int s = 1;
  for (int v : signature_) s *= v;
  return s;
}

std::string MetricSpec::name() const {
  std::ostringstream os;
  os << to_string(kind_) << "(n=" << dimension_;
  for (const auto& [k, v] : params_) os << ", " << k << "=" << v;
  os << ")";
  return os.str();
}

namespace {

/// g, ∂_c g_ab stored (c, a, b), ∂_d ∂_c g_ab stored (d, c, a, b).
struct MetricJet {
  Matrix g;
  DenseTensor<3> dg;
  DenseTensor<4> ddg;
};

void check_shape(const MetricSpec& spec, const Vector& x) {
  if (x.size() != spec.dimension()) {
    std::ostringstream os;
    os << "point has " << x.size() << " components, metric " << spec.name() << " needs "
       << spec.dimension();
    throw DomainError(os.str());
  }
  for (int i = 0; i < x.size(); ++i)
    if (!std::isfinite(x[i])) throw DomainError("point has non-finite coordinates");
}

void check_admissible(const MetricSpec& spec, const Vector& x) {
  check_shape(spec, x);
  const double margin = admissibility_margin(spec, x);
  if (margin > 0.0) return;
  std::ostringstream os;
  os.precision(17);
  switch (spec.kind()) {
    case MetricKind::schwarzschild:
      os << "inadmissible point for " << spec.name() << ": radial coordinate r = " << x[1]
         << " violates r > 2M(1 + 1e-6) = " << 2.0 * spec.param("M") * (1.0 + kHorizonMargin);
      break;
    case MetricKind::constant_curvature:
      os << "inadmissible point for " << spec.name()
         << ": conformal factor denominator 1 + K*eta(x,x)/4 = " << margin + kHorizonMargin
         << " violates > 1e-6";
      break;
    default:
      os << "inadmissible point for " << spec.name();
  }
  throw DomainError(os.str());
}

MetricJet metric_jet(const MetricSpec& spec, const Vector& x) {
  const int n = spec.dimension();
  MetricJet jet{Matrix::Zero(n, n), DenseTensor<3>(n), DenseTensor<4>(n)};
  switch (spec.kind()) {
    case MetricKind::euclidean:
    case MetricKind::minkowski:
      for (int a = 0; a < n; ++a) jet.g(a, a) = spec.signature()[a];
      break;
    case MetricKind::schwarzschild: {
      const double m = spec.param("M");
      const double r = x[1];
      const double th = x[2];
      const double f = 1.0 - 2.0 * m / r;
      const double fp = 2.0 * m / (r * r);
      const double fpp = -4.0 * m / (r * r * r);
      const double s = std::sin(th);
      const double c = std::cos(th);
      jet.g(0, 0) = f;
      jet.g(1, 1) = -1.0 / f;
      jet.g(2, 2) = -r * r;
      jet.g(3, 3) = -r * r * s * s;
      // first derivatives: index 1 = r, index 2 = θ
      jet.dg(1, 0, 0) = fp;
      jet.dg(1, 1, 1) = fp / (f * f);
      jet.dg(1, 2, 2) = -2.0 * r;
      jet.dg(1, 3, 3) = -2.0 * r * s * s;
      jet.dg(2, 3, 3) = -2.0 * r * r * s * c;
      // second derivatives
      jet.ddg(1, 1, 0, 0) = fpp;
      jet.ddg(1, 1, 1, 1) = (fpp * f - 2.0 * fp * fp) / (f * f * f);
      jet.ddg(1, 1, 2, 2) = -2.0;
      jet.ddg(1, 1, 3, 3) = -2.0 * s * s;
      jet.ddg(1, 2, 3, 3) = -4.0 * r * s * c;
      jet.ddg(2, 1, 3, 3) = -4.0 * r * s * c;
      jet.ddg(2, 2, 3, 3) = -2.0 * r * r * (c * c - s * s);
      break;
    }
    case MetricKind::constant_curvature: {
      const double k = spec.param("K");
      const auto& eta = spec.signature();
      double q = 0.0;
      Vector y(n);
      for (int a = 0; a < n; ++a) {
        y[a] = eta[a] * x[a];
        q += eta[a] * x[a] * x[a];
      }
      const double d = 1.0 + 0.25 * k * q;
      const double conf = 1.0 / (d * d);
      const double d3 = 1.0 / (d * d * d);
      const double d4 = d3 / d;
      for (int a = 0; a < n; ++a) {
        jet.g(a, a) = conf * eta[a];
        for (int c = 0; c < n; ++c) {
          jet.dg(c, a, a) = -k * d3 * y[c] * eta[a];
          for (int e = 0; e < n; ++e) {
            double dd = 1.5 * k * k * d4 * y[e] * y[c];
            if (e == c) dd -= k * d3 * eta[c];
            jet.ddg(e, c, a, a) = dd * eta[a];
          }
        }
      }
      break;
    }
  }
  return jet;
}

MetricValue finish_metric(const MetricSpec& spec, Matrix g) {
  MetricValue m;
  m.det = g.determinant();
  if (!(std::abs(m.det) > kDetThreshold)) {
    std::ostringstream os;
    os << "metric " << spec.name() << " is degenerate at this point (|det g| = " << std::abs(m.det)
       << " <= 1e-12)";
    throw DomainError(os.str());
  }
  m.g_inv = g.inverse();
  m.g = std::move(g);
  return m;
}

/// Γ_{dbc} = ½(∂_b g_dc + ∂_c g_db − ∂_d g_bc), stored (d, b, c).
DenseTensor<3> christoffel_first_kind(int n, const DenseTensor<3>& dg) {
  DenseTensor<3> out(n);
  for (int d = 0; d < n; ++d)
    for (int b = 0; b < n; ++b)
      for (int c = b; c < n; ++c) {
        const double v = 0.5 * (dg(b, d, c) + dg(c, d, b) - dg(d, b, c));
        out(d, b, c) = v;
        out(d, c, b) = v;
      }
  return out;
}

Christoffel raise_first(const Matrix& g_inv, const DenseTensor<3>& first) {
  const int n = static_cast<int>(g_inv.rows());
  Christoffel out(n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = b; c < n; ++c) {
        double v = 0.0;
        for (int d = 0; d < n; ++d) v += g_inv(a, d) * first(d, b, c);
        out(a, b, c) = v;
        out(a, c, b) = v;
      }
  return out;
}

void check_step(const FiniteDifferenceStep& step) {
  if (!(step.relative >= 1e-12) || !std::isfinite(step.relative))
    throw ConfigError("finite-difference relative step must be >= 1e-12 (step underflow)");
}

}  // namespace

double FiniteDifferenceStep::at(double coordinate) const {
  return relative * std::max(1.0, std::abs(coordinate));
}

double admissibility_margin(const MetricSpec& spec, const Vector& x) {
  switch (spec.kind()) {
    case MetricKind::schwarzschild:
      return x[1] - 2.0 * spec.param("M") * (1.0 + kHorizonMargin);
    case MetricKind::constant_curvature: {
      double q = 0.0;
      for (int a = 0; a < x.size(); ++a) q += spec.signature()[a] * x[a] * x[a];
      return 1.0 + 0.25 * spec.param("K") * q - kHorizonMargin;
    }
    default:
      return std::numeric_limits<double>::infinity();
  }
}

MetricValue metric_at(const MetricSpec& spec, const Vector& x) {
  check_admissible(spec, x);
  return finish_metric(spec, metric_jet(spec, x).g);
}

Christoffel christoffel_at(const MetricSpec& spec, const Vector& x, DerivativeMode mode,
                           FiniteDifferenceStep step) {
  check_admissible(spec, x);
  const int n = spec.dimension();
  if (mode == DerivativeMode::analytic) {
    MetricJet jet = metric_jet(spec, x);
    MetricValue m = finish_metric(spec, jet.g);
    return raise_first(m.g_inv, christoffel_first_kind(n, jet.dg));
  }
  check_step(step);
  MetricValue m = metric_at(spec, x);
  DenseTensor<3> dg(n);
  for (int c = 0; c < n; ++c) {
    const double h = step.at(x[c]);
    Vector xp = x, xm = x;
    xp[c] += h;
    xm[c] -= h;
    const Matrix diff = (metric_at(spec, xp).g - metric_at(spec, xm).g) / (2.0 * h);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) dg(c, a, b) = diff(a, b);
  }
  return raise_first(m.g_inv, christoffel_first_kind(n, dg));
}

ChristoffelDerivative christoffel_derivative_at(const MetricSpec& spec, const Vector& x,
                                                DerivativeMode mode, FiniteDifferenceStep step) {
  check_admissible(spec, x);
  const int n = spec.dimension();
  ChristoffelDerivative out(n);
  if (mode == DerivativeMode::analytic) {
    MetricJet jet = metric_jet(spec, x);
    MetricValue m = finish_metric(spec, jet.g);
    const DenseTensor<3> first = christoffel_first_kind(n, jet.dg);
    for (int e = 0; e < n; ++e) {
      // ∂_e g^{ad} = −g^{ap} ∂_e g_{pq} g^{qd}
      Matrix dge(n, n);
      for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q) dge(p, q) = jet.dg(e, p, q);
      const Matrix dginv = -m.g_inv * dge * m.g_inv;
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
          for (int c = b; c < n; ++c) {
            double v = 0.0;
            for (int d = 0; d < n; ++d) {
              const double dfirst =
                  0.5 * (jet.ddg(e, b, d, c) + jet.ddg(e, c, d, b) - jet.ddg(e, d, b, c));
              v += dginv(a, d) * first(d, b, c) + m.g_inv(a, d) * dfirst;
            }
            out(e, a, b, c) = v;
            out(e, a, c, b) = v;
          }
    }
    return out;
  }
  check_step(step);
  for (int e = 0; e < n; ++e) {
    const double h = step.at(x[e]);
    Vector xp = x, xm = x;
    xp[e] += h;
    xm[e] -= h;
    const Christoffel gp = christoffel_at(spec, xp);
    const Christoffel gm = christoffel_at(spec, xm);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c) out(e, a, b, c) = (gp(a, b, c) - gm(a, b, c)) / (2.0 * h);
  }
  return out;
}

ChristoffelSecondDerivative christoffel_second_derivative_at(const MetricSpec& spec,
                                                             const Vector& x,
                                                             FiniteDifferenceStep step) {
  check_admissible(spec, x);
  check_step(step);
  const int n = spec.dimension();
  ChristoffelSecondDerivative out(n);
  if (spec.is_flat()) return out;
  for (int f = 0; f < n; ++f) {
    const double h = step.at(x[f]);
    Vector xp = x, xm = x;
    xp[f] += h;
    xm[f] -= h;
    const ChristoffelDerivative dp = christoffel_derivative_at(spec, xp);
    const ChristoffelDerivative dm = christoffel_derivative_at(spec, xm);
    for (int e = 0; e < n; ++e)
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
          for (int c = 0; c < n; ++c)
            out(f, e, a, b, c) = (dp(e, a, b, c) - dm(e, a, b, c)) / (2.0 * h);
  }
  return out;
}

Curvature riemann_at(const MetricSpec& spec, const Vector& x, DerivativeMode mode,
                     FiniteDifferenceStep step) {
  const int n = spec.dimension();
  const Christoffel g = christoffel_at(spec, x);
  const ChristoffelDerivative dg = christoffel_derivative_at(spec, x, mode, step);
  Curvature r(n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d) {
          double v = dg(c, d, a, b) - dg(a, d, c, b);
          for (int k = 0; k < n; ++k) v += g(d, c, k) * g(k, a, b) - g(d, a, k) * g(k, c, b);
          r(a, b, c, d) = v;
        }
  return r;
}

Vector Christoffel::contract(const Vector& v, const Vector& w) const {
  const int n = dimension();
  Vector out = Vector::Zero(n);
  for (int a = 0; a < n; ++a) {
    double s = 0.0;
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) s += data_(a, b, c) * v[b] * w[c];
    out[a] = s;
  }
  return out;
}

Covector Christoffel::contract_covector(const Covector& omega, const Vector& u) const {
  const int n = dimension();
  Covector out = Covector::Zero(n);
  for (int a = 0; a < n; ++a) {
    double s = 0.0;
    for (int r = 0; r < n; ++r)
      for (int b = 0; b < n; ++b) s += data_(r, a, b) * omega[r] * u[b];
    out[a] = s;
  }
  return out;
}

DenseTensor<4> Curvature::lowered(const Matrix& g) const {
  const int n = dimension();
  DenseTensor<4> out(n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d) {
          double v = 0.0;
          for (int k = 0; k < n; ++k) v += g(d, k) * data_(a, b, c, k);
          out(a, b, c, d) = v;
        }
  return out;
}

Covector Curvature::force(const Vector& u, const Covector& omega) const {
  const int n = dimension();
  Covector out = Covector::Zero(n);
  for (int a = 0; a < n; ++a) {
    double s = 0.0;
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d) s += data_(a, b, c, d) * u[c] * u[b] * omega[d];
    out[a] = s;
  }
  return out;
}

namespace {
void check_vectors(const Christoffel& gamma, std::initializer_list<const Eigen::VectorXd*> vs) {
  for (const auto* v : vs)
    if (v->size() != gamma.dimension())
      throw DomainError("vector dimension does not match the connection dimension");
}
}  // namespace

Vector covariant_velocity(const Christoffel& gamma, const Vector& u, const Vector& du_dtau) {
  check_vectors(gamma, {&u, &du_dtau});
  return du_dtau + gamma.contract(u, u);
}

Vector coordinate_velocity_rate(const Christoffel& gamma, const Vector& u, const Vector& u_prime) {
  check_vectors(gamma, {&u, &u_prime});
  return u_prime - gamma.contract(u, u);
}

Vector covariant_vector_rate(const Christoffel& gamma, const Vector& u, const Vector& w,
                             const Vector& dw_dtau) {
  check_vectors(gamma, {&u, &w, &dw_dtau});
  return dw_dtau + gamma.contract(u, w);
}

Covector covariant_covector_rate(const Christoffel& gamma, const Vector& u, const Covector& omega,
                                 const Covector& domega_dtau) {
  check_vectors(gamma, {&u, &omega, &domega_dtau});
  return domega_dtau - gamma.contract_covector(omega, u);
}

Covector coordinate_covector_rate(const Christoffel& gamma, const Vector& u,
                                  const Covector& omega, const Covector& omega_prime) {
  check_vectors(gamma, {&u, &omega, &omega_prime});
  return omega_prime + gamma.contract_covector(omega, u);
}

int levi_civita(int a, int b, int c, int d) {
  std::array<int, 4> p{a, b, c, d};
  for (int v : p)
    if (v < 0 || v > 3) return 0;
  int sign = 1;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) {
      if (p[i] == p[j]) return 0;
      if (p[i] > p[j]) sign = -sign;
    }
  return sign;
}

Matrix hodge_dual_bivector(const MetricSpec& spec, const Vector& x, const Matrix& b_lowered,
                           Variance out) {
  if (spec.dimension() != 4)
    throw DomainError("hodge_dual_bivector is defined only for n = 4 (metric " + spec.name() + ")");
  if (b_lowered.rows() != 4 || b_lowered.cols() != 4)
    throw DomainError("bivector must be 4x4");
  const MetricValue m = metric_at(spec, x);
  const Matrix b_upper = m.g_inv * b_lowered * m.g_inv.transpose();
  const double density = std::sqrt(std::abs(m.det));
  Matrix dual = Matrix::Zero(4, 4);
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      if (a == b) continue;
      double s = 0.0;
      for (int r = 0; r < 4; ++r)
        for (int t = 0; t < 4; ++t) s += levi_civita(a, b, r, t) * b_upper(r, t);
      dual(a, b) = 0.5 * density * s;
    }
  if (out == Variance::raise) return m.g_inv * dual * m.g_inv.transpose();
  return dual;
}

}  // namespace zbw
