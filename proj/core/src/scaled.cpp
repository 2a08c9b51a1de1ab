#include "nearcloak/scaled.hpp"

#include <cmath>
#include <limits>

namespace nearcloak {

ScaledValue::ScaledValue(cplx value) : mantissa_(value) { normalize(); }

ScaledValue ScaledValue::from_parts(cplx mantissa, double log_scale) {
  ScaledValue out;
  out.mantissa_ = mantissa;
  out.log_scale_ = log_scale;
  out.normalize();
  return out;
}

void ScaledValue::normalize() {
  const double magnitude = std::abs(mantissa_);
  if (magnitude == 0.0 || !std::isfinite(magnitude)) {
    if (magnitude == 0.0) {
      mantissa_ = cplx(0.0, 0.0);
      log_scale_ = 0.0;
    }
    return;
  }
  mantissa_ /= magnitude;
  log_scale_ += std::log(magnitude);
}

double ScaledValue::log_abs() const {
  if (is_zero()) return -std::numeric_limits<double>::infinity();
  return log_scale_ + std::log(std::abs(mantissa_));
}

cplx ScaledValue::value() const {
  if (is_zero()) return {0.0, 0.0};
  return mantissa_ * std::exp(log_scale_);
}

ScaledValue& ScaledValue::operator*=(const ScaledValue& rhs) {
  if (is_zero() || rhs.is_zero()) {
    *this = ScaledValue();
    return *this;
  }
  mantissa_ *= rhs.mantissa_;
  log_scale_ += rhs.log_scale_;
  normalize();
  return *this;
}

ScaledValue& ScaledValue::operator/=(const ScaledValue& rhs) {
  if (rhs.is_zero()) {
    mantissa_ = cplx(std::numeric_limits<double>::infinity(), 0.0);
    log_scale_ = 0.0;
    return *this;
  }
  if (is_zero()) return *this;
  mantissa_ /= rhs.mantissa_;
  log_scale_ -= rhs.log_scale_;
  normalize();
  return *this;
}

ScaledValue& ScaledValue::operator+=(const ScaledValue& rhs) {
  if (rhs.is_zero()) return *this;
  if (is_zero()) {
    *this = rhs;
    return *this;
  }
  const double top = std::max(log_scale_, rhs.log_scale_);
  mantissa_ = mantissa_ * std::exp(log_scale_ - top) +
              rhs.mantissa_ * std::exp(rhs.log_scale_ - top);
  log_scale_ = top;
  normalize();
  return *this;
}

}  // namespace nearcloak
