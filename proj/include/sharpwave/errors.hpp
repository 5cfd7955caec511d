#pragma once

#include <stdexcept>
#include <string>

namespace sharpwave {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/// A quadrature or truncation did not reach its accuracy target.
class AccuracyError : public std::runtime_error {
 public:
  explicit AccuracyError(const std::string& what) : std::runtime_error(what) {}
};

/// Geometric configuration on a measure-zero degenerate set
/// (e.g. parallel frequency pairs).
class DegenerateError : public std::domain_error {
 public:
  explicit DegenerateError(const std::string& what) : std::domain_error(what) {}
};

/// Data variant not supported by an operation (e.g. non-radial data for
/// the left-hand-side quadrature).
class UnsupportedData : public std::invalid_argument {
 public:
  explicit UnsupportedData(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace sharpwave
