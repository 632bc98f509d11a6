#pragma once

#include <stdexcept>
#include <string>

namespace funksphere {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A parameter (z, dimension, index, ...) lies outside the domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Stereographic projection evaluated at (or numerically at) the north pole.
class PoleError : public DomainError {
 public:
  using DomainError::DomainError;
};

// The grid cannot resolve the requested degree or bandlimit.
class ResolutionError : public Error {
 public:
  using Error::Error;
};

// Data violates the range condition of the Funk-Radon transform (odd energy).
class NotInRangeError : public Error {
 public:
  NotInRangeError(const std::string& what, double odd_fraction)
      : Error(what), odd_fraction_(odd_fraction) {}
  double odd_fraction() const noexcept { return odd_fraction_; }

 private:
  double odd_fraction_;
};

// Division by a Funk eigenvalue that is numerically zero.
class ConditioningError : public Error {
 public:
  using Error::Error;
};

// Malformed grid function file.
class FormatError : public Error {
 public:
  using Error::Error;
};

}  // namespace funksphere
