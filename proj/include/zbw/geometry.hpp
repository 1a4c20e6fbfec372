#pragma once

// Metric catalog and differential-geometric primitives.
//
// Curvature convention (used everywhere in zbw):
//
//   R_{abc}^d = ∂_c Γ^d_{ab} − ∂_a Γ^d_{cb} + Γ^d_{cx} Γ^x_{ab} − Γ^d_{ax} Γ^x_{cb}
//
// which is the textbook R^d_{bca} with the free indices reordered, so R_{abc}^d is
// antisymmetric under a <-> c. For a space of constant sectional curvature K the
// fully lowered tensor R_{abcd} = g_{dx} R_{abc}^x equals
//
//   R_{abcd} = −K (g_{ad} g_{cb} − g_{cd} g_{ab}).

#include "zbw/tensor.hpp"

#include <map>
#include <string>
#include <vector>

namespace zbw {

enum class MetricKind { euclidean, minkowski, schwarzschild, constant_curvature };

std::string to_string(MetricKind kind);
MetricKind metric_kind_from_string(const std::string& name);

/// A named (pseudo)Riemannian metric from the built-in catalog.
///
/// - euclidean: g = identity in Cartesian coordinates.
/// - minkowski: g = diag(+1, −1, …, −1).
/// - schwarzschild (n = 4, coordinates t, r, θ, φ): g_tt = 1 − 2M/r,
///   g_rr = −1/(1 − 2M/r), g_θθ = −r², g_φφ = −r² sin²θ. Admissible for r > 2M(1 + 1e−6).
/// - constant_curvature: g = η / (1 + K η(x,x)/4)² with η = diag(signature). Admissible
///   while the conformal denominator stays above 1e−6.
class MetricSpec {
 public:
  static MetricSpec euclidean(int dimension);
  static MetricSpec minkowski(int dimension = 4);
  static MetricSpec schwarzschild(double mass);
  static MetricSpec constant_curvature(int dimension, double curvature,
                                       std::vector<int> signature = {});

  MetricKind kind() const { return kind_; }
  int dimension() const { return dimension_; }
  const std::vector<int>& signature() const { return signature_; }
  const std::map<std::string, double>& params() const { return params_; }
  double param(const std::string& key) const;
  bool is_flat() const { return kind_ == MetricKind::euclidean || kind_ == MetricKind::minkowski; }
  /// +1 if the signature has an even number of minus signs, −1 otherwise.
  int signature_sign() const;
  std::string name() const;

 private:
  MetricSpec(MetricKind kind, int dimension, std::vector<int> signature,
             std::map<std::string, double> params);

  MetricKind kind_;
  int dimension_;
  std::vector<int> signature_;
  std::map<std::string, double> params_;
};

struct MetricValue {
  Matrix g;
  Matrix g_inv;
  double det = 0.0;
};

inline constexpr double kDetThreshold = 1e-12;
inline constexpr double kHorizonMargin = 1e-6;

/// Evaluates g and g⁻¹ at x. Throws DomainError at inadmissible points.
MetricValue metric_at(const MetricSpec& spec, const Vector& x);

/// Distance to the admissibility boundary in the natural units of the metric
/// (r − 2M(1+1e−6) for Schwarzschild, conformal denominator − 1e−6 for
/// constant curvature, +∞ for flat metrics). Negative means inadmissible.
double admissibility_margin(const MetricSpec& spec, const Vector& x);

enum class DerivativeMode { analytic, finite_difference };

/// Central-difference step policy: h_i = relative · max(1, |x_i|).
struct FiniteDifferenceStep {
  double relative = 1e-5;
  double at(double coordinate) const;
};

/// Γ^a_{bc}, stored as (a, b, c).
class Christoffel {
 public:
  Christoffel() = default;
  explicit Christoffel(int n) : data_(n) {}

  int dimension() const { return data_.dimension(); }
  double operator()(int a, int b, int c) const { return data_(a, b, c); }
  double& operator()(int a, int b, int c) { return data_(a, b, c); }
  const DenseTensor<3>& tensor() const { return data_; }

  /// w^a = Γ^a_{bc} v^b w^c.
  Vector contract(const Vector& v, const Vector& w) const;
  /// (Γ·ω·u)_a = Γ^r_{ab} ω_r u^b.
  Covector contract_covector(const Covector& omega, const Vector& u) const;

 private:
  DenseTensor<3> data_;
};

/// ∂_e Γ^a_{bc}, stored as (e, a, b, c).
using ChristoffelDerivative = DenseTensor<4>;
/// ∂_f ∂_e Γ^a_{bc}, stored as (f, e, a, b, c).
using ChristoffelSecondDerivative = DenseTensor<5>;

/// R_{abc}^d in the convention documented at the top of this header, stored (a, b, c, d).
class Curvature {
 public:
  Curvature() = default;
  explicit Curvature(int n) : data_(n) {}

  int dimension() const { return data_.dimension(); }
  double operator()(int a, int b, int c, int d) const { return data_(a, b, c, d); }
  double& operator()(int a, int b, int c, int d) { return data_(a, b, c, d); }
  const DenseTensor<4>& tensor() const { return data_; }

  /// Fully lowered R_{abcd} = g_{dx} R_{abc}^x.
  DenseTensor<4> lowered(const Matrix& g) const;
  /// T_a = R_{abc}^d u^c u^b ω_d, the curvature force appearing in the momentum equation.
  Covector force(const Vector& u, const Covector& omega) const;

 private:
  DenseTensor<4> data_;
};

Christoffel christoffel_at(const MetricSpec& spec, const Vector& x,
                           DerivativeMode mode = DerivativeMode::analytic,
                           FiniteDifferenceStep step = {});

/// Analytic mode differentiates the closed-form second metric derivatives; finite-difference
/// mode differentiates the analytic christoffel_at by central differences.
ChristoffelDerivative christoffel_derivative_at(const MetricSpec& spec, const Vector& x,
                                                DerivativeMode mode = DerivativeMode::analytic,
                                                FiniteDifferenceStep step = {});

/// Central differences of the analytic ∂Γ. Only needed for third covariant derivatives.
ChristoffelSecondDerivative christoffel_second_derivative_at(const MetricSpec& spec,
                                                             const Vector& x,
                                                             FiniteDifferenceStep step = {});

Curvature riemann_at(const MetricSpec& spec, const Vector& x,
                     DerivativeMode mode = DerivativeMode::analytic,
                     FiniteDifferenceStep step = {});

/// u′ = du/dτ + Γ(u, u).
Vector covariant_velocity(const Christoffel& gamma, const Vector& u, const Vector& du_dtau);
/// du/dτ = u′ − Γ(u, u).
Vector coordinate_velocity_rate(const Christoffel& gamma, const Vector& u, const Vector& u_prime);

/// W′ = dW/dτ + Γ(u, W) for a vector field W along a curve with tangent u.
Vector covariant_vector_rate(const Christoffel& gamma, const Vector& u, const Vector& w,
                             const Vector& dw_dtau);

/// ω′_a = dω_a/dτ − Γ^r_{ab} ω_r u^b.
Covector covariant_covector_rate(const Christoffel& gamma, const Vector& u, const Covector& omega,
                                 const Covector& domega_dtau);
/// dω_a/dτ = ω′_a + Γ^r_{ab} ω_r u^b.
Covector coordinate_covector_rate(const Christoffel& gamma, const Vector& u,
                                  const Covector& omega, const Covector& omega_prime);

inline Covector lower(const MetricValue& m, const Vector& v) { return m.g * v; }
inline Vector raise(const MetricValue& m, const Covector& w) { return m.g_inv * w; }
inline double dot(const MetricValue& m, const Vector& a, const Vector& b) { return a.dot(m.g * b); }
inline double dot_covectors(const MetricValue& m, const Covector& a, const Covector& b) {
  return a.dot(m.g_inv * b);
}

/// Permutation symbol ε_{abcd} with ε_{0123} = +1.
int levi_civita(int a, int b, int c, int d);

enum class Variance { raise, lower };

/// (⋆B)_{ab} = ½ √|det g| ε_{abrs} B^{rs} for a lowered bivector B; n = 4 only.
/// `out` selects the index position of the returned components.
Matrix hodge_dual_bivector(const MetricSpec& spec, const Vector& x, const Matrix& b_lowered,
                           Variance out = Variance::lower);

}  // namespace zbw
