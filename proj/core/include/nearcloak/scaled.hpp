#pragma once

#include <complex>

namespace nearcloak {

using cplx = std::complex<double>;

/// A complex number stored as mantissa * exp(log_scale).
///
/// The mantissa has unit modulus unless the value is exactly zero, in which
/// case both parts are zero. Products and quotients never overflow; sums align
/// the smaller operand to the larger scale before adding.
class ScaledValue {
 public:
  ScaledValue() = default;
  ScaledValue(cplx value);  // NOLINT(google-explicit-constructor)
  ScaledValue(double value) : ScaledValue(cplx(value, 0.0)) {}  // NOLINT

  static ScaledValue from_parts(cplx mantissa, double log_scale);

  cplx mantissa() const { return mantissa_; }
  double log_scale() const { return log_scale_; }
  bool is_zero() const { return mantissa_ == cplx(0.0, 0.0); }

  /// Natural log of the modulus; -infinity for zero.
  double log_abs() const;

  /// The plain value. Overflows to infinity (or underflows to zero) when the
  /// scale is outside the double range.
  cplx value() const;

  ScaledValue operator-() const { return from_parts(-mantissa_, log_scale_); }
  ScaledValue& operator*=(const ScaledValue& rhs);
  ScaledValue& operator/=(const ScaledValue& rhs);
  ScaledValue& operator+=(const ScaledValue& rhs);
  ScaledValue& operator-=(const ScaledValue& rhs) { return *this += -rhs; }

  friend ScaledValue operator*(ScaledValue lhs, const ScaledValue& rhs) { return lhs *= rhs; }
  friend ScaledValue operator/(ScaledValue lhs, const ScaledValue& rhs) { return lhs /= rhs; }
  friend ScaledValue operator+(ScaledValue lhs, const ScaledValue& rhs) { return lhs += rhs; }
  friend ScaledValue operator-(ScaledValue lhs, const ScaledValue& rhs) { return lhs -= rhs; }

 private:
  void normalize();

  cplx mantissa_{0.0, 0.0};
  double log_scale_ = 0.0;
};

}  // namespace nearcloak
