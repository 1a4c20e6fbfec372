#pragma once

// Seeded random admissible points, jets and states for the identity suites.

#include "zbw/hamiltonian.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace zbw {

/// The metrics the identity suites sweep: euclidean(4), minkowski(4), schwarzschild(M=1),
/// constant_curvature(4, K=0.3) and constant_curvature(4, K=−0.2, Lorentzian signature).
std::vector<MetricSpec> catalog_metrics();

class JetSampler {
 public:
  JetSampler(MetricSpec spec, std::uint64_t seed);

  const MetricSpec& spec() const { return spec_; }
  std::mt19937_64& rng() { return rng_; }
  double uniform(double lo, double hi);

  Vector point();
  /// Future-directed tangent with u·u = gamma; timelike in Lorentzian signature.
  Vector tangent(const Vector& x, double gamma);
  /// Random vector with O(1) orthonormal-frame components.
  Vector generic_vector(const Vector& x);
  /// Random jet with γ ∈ [0.5, 2] and O(1) u′, u″.
  CovariantJet jet();
  /// Random natural-parameter jet (γ = 1, u·u′ = 0, u·u″ = −u′·u′).
  CovariantJet natural_jet();
  /// Random covector π¹ with u·π¹ = 0.
  Covector orthogonal_covector(const Vector& x, const Vector& u);

 private:
  MetricSpec spec_;
  std::mt19937_64 rng_;
};

}  // namespace zbw
