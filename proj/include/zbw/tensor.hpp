#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

namespace zbw {

/// Contravariant components (upper index).
using Vector = Eigen::VectorXd;
/// Covariant components (lower index).
using Covector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Dense n×n×…×n array with row-major index order, used for Γ, ∂Γ and R.
template <std::size_t Rank>
class DenseTensor {
 public:
  DenseTensor() = default;
  explicit DenseTensor(int n) : n_(n), data_(size_for(n), 0.0) {}

  int dimension() const { return n_; }

  template <typename... Idx>
  double& operator()(Idx... idx) {
    static_assert(sizeof...(Idx) == Rank);
    return data_[offset(idx...)];
  }
  template <typename... Idx>
  double operator()(Idx... idx) const {
    static_assert(sizeof...(Idx) == Rank);
    return data_[offset(idx...)];
  }

  const std::vector<double>& data() const { return data_; }
  std::vector<double>& data() { return data_; }

  double max_abs() const {
    double m = 0.0;
    for (double v : data_) m = std::max(m, std::abs(v));
    return m;
  }

 private:
  static std::size_t size_for(int n) {
    std::size_t s = 1;
    for (std::size_t i = 0; i < Rank; ++i) s *= static_cast<std::size_t>(n);
    return s;
  }
  template <typename... Idx>
  std::size_t offset(Idx... idx) const {
    std::size_t off = 0;
    ((off = off * static_cast<std::size_t>(n_) + static_cast<std::size_t>(idx)), ...);
    return off;
  }

  int n_ = 0;
  std::vector<double> data_;
};

/// max |a_i - b_i| / max(max |b_i|, floor). Both tensors must share a dimension.
template <std::size_t Rank>
double relative_difference(const DenseTensor<Rank>& a, const DenseTensor<Rank>& b,
                           double floor = 1e-300) {
  double diff = 0.0;
  for (std::size_t i = 0; i < a.data().size(); ++i)
    diff = std::max(diff, std::abs(a.data()[i] - b.data()[i]));
  return diff / std::max(b.max_abs(), floor);
}

}  // namespace zbw
