#pragma once

// Complex-argument Bessel, Hankel and Legendre functions.
//
// Values are returned as ScaledValue so that arguments with large imaginary
// part (where J grows like e^{|Im z|} and H^(1) decays like e^{-Im z}) can be
// combined without overflow.
//
// Supported window: 0 <= n <= kMaxOrder, |z| <= kMaxArgument. Hankel functions
// additionally require Im z >= 0 or Re z > 0 (the principal sheet used by the
// layered solver, where every argument has Im z >= 0).

#include <vector>

#include "nearcloak/scaled.hpp"

namespace nearcloak::specfun {

inline constexpr int kMaxOrder = 200;
inline constexpr double kMaxArgument = 1.0e5;

enum class Kind { J, H1 };

/// Values and first derivatives for orders 0..n_max at one argument.
struct Sequence {
  std::vector<ScaledValue> value;
  std::vector<ScaledValue> deriv;
};

ScaledValue bessel_j(int n, cplx z);
ScaledValue bessel_h1(int n, cplx z);
/// B_n'(z) = (n/z) B_n(z) - B_{n+1}(z), with B_0' = -B_1.
ScaledValue bessel_deriv(Kind kind, int n, cplx z);

/// J_0..J_{n_max} in one backward-recurrence pass. The *_orders builders
/// accept n_max up to kMaxOrder + 1 so derivatives exist at kMaxOrder.
std::vector<ScaledValue> bessel_j_orders(int n_max, cplx z);
/// H^(1)_0..H^(1)_{n_max} by forward recurrence.
std::vector<ScaledValue> hankel1_orders(int n_max, cplx z);
Sequence cylindrical(Kind kind, int n_max, cplx z);

ScaledValue spherical_bessel(Kind kind, int n, cplx z);
ScaledValue spherical_bessel_deriv(Kind kind, int n, cplx z);
std::vector<ScaledValue> spherical_j_orders(int n_max, cplx z);
std::vector<ScaledValue> spherical_h1_orders(int n_max, cplx z);
Sequence spherical(Kind kind, int n_max, cplx z);

/// P_n(x) by the Bonnet recurrence; |x| <= 1.
double legendre_p(int n, double x);
std::vector<double> legendre_orders(int n_max, double x);

/// Principal square root with the sign flipped if needed so Im >= 0
/// (and Re > 0 when the result is real).
cplx upper_sqrt(cplx w);

}  // namespace nearcloak::specfun
