#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace nearcloak {

enum class ErrorKind {
  range,              // order or argument outside the supported window
  singular_argument,  // function singular at the requested point
  domain,             // geometric point outside the region an operation accepts
  orientation,        // non-positive Jacobian determinant
  invalid_parameter,  // violated precondition on a model parameter
  shape,              // mismatched sample or grid lengths
  resonance,          // ill-conditioned boundary integral system
  insufficient_data,  // too few points for a regression
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library carries a machine-readable kind.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace nearcloak
