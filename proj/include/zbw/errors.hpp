#pragma once

#include <stdexcept>
#include <string>

namespace zbw {

/// Inadmissible point, violated precondition, or signature-policy violation.
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Near-null tangent vector (|u·u| below the null threshold).
class SingularityError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Bad configuration: invalid step sizes, tolerances, scenario schema.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Numerical failure: step control gave up, non-finite values.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A post-condition the formulas guarantee did not hold; signals a regression.
class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace zbw
