#pragma once

#include <stdexcept>
#include <string>

namespace bcs {

/// Invalid arguments: wrong dimension, out-of-range parameters, bad orderings.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The coupling violates |U| < 2 e_min / b, which every critical-temperature
/// based operation relies on.
class AdmissibilityError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// A numerical procedure failed to deliver the requested accuracy.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class QuadratureError : public NumericalError {
 public:
  QuadratureError(const std::string& what, double previous, double last)
      : NumericalError(what), previous_(previous), last_(last) {}

  double previous_estimate() const noexcept { return previous_; }
  double last_estimate() const noexcept { return last_; }

 private:
  double previous_;
  double last_;
};

class RootError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace bcs
