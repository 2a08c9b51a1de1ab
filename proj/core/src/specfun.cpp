#include "nearcloak/specfun.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <utility>

#include "nearcloak/error.hpp"

namespace nearcloak::specfun {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEuler = std::numbers::egamma;
constexpr cplx kI{0.0, 1.0};

// Above this modulus the Hankel expansion is used for H_0 and H_1; its
// optimal truncation error is about e^{-2|z|}.
constexpr double kAsymptoticRadius = 17.0;

// Sequences are built one order past the request to form derivatives.
void check_order(int n, int limit = kMaxOrder) {
  if (n < 0 || n > limit) {
    throw Error(ErrorKind::range, "Bessel order " + std::to_string(n) + " outside [0, " +
                                      std::to_string(kMaxOrder) + "]");
  }
}

void check_argument(cplx z) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag()) || std::abs(z) > kMaxArgument) {
    throw Error(ErrorKind::range, "Bessel argument outside |z| <= 1e5");
  }
}

void check_hankel_argument(cplx z) {
  check_argument(z);
  if (z == cplx(0.0, 0.0)) {
    throw Error(ErrorKind::singular_argument, "Hankel function is singular at z = 0");
  }
  if (!(z.imag() >= 0.0 || z.real() > 0.0)) {
    throw Error(ErrorKind::range, "Hankel function requires Im z >= 0 or Re z > 0");
  }
}

int miller_start(int n_max, double modulus) {
  const double base = std::max(static_cast<double>(n_max), std::ceil(modulus));
  return static_cast<int>(base) + 20 + static_cast<int>(std::ceil(10.0 * std::cbrt(modulus)));
}

// r[n] = f_n / f_{n-1} for the minimal solution of
// f_{n-1} + f_{n+1} = ((2n + shift) / z) f_n, n = 1..top.
std::vector<cplx> backward_ratios(int top, cplx z, double shift) {
  std::vector<cplx> ratio(static_cast<std::size_t>(top) + 2, cplx(0.0, 0.0));
  cplx next(0.0, 0.0);
  for (int n = top; n >= 1; --n) {
    next = z / ((2.0 * n + shift) - z * next);
    ratio[static_cast<std::size_t>(n)] = next;
  }
  return ratio;
}

// e^{-iz} for Im z >= 0, e^{iz} otherwise: the exponential that grows like
// e^{|Im z|}, matching the generating-function sum used to normalise J.
ScaledValue growing_exponential(cplx z) {
  if (z.imag() >= 0.0) return ScaledValue::from_parts(std::exp(cplx(0.0, -z.real())), z.imag());
  return ScaledValue::from_parts(std::exp(cplx(0.0, z.real())), -z.imag());
}

// exp(iz) without overflow.
ScaledValue exp_iz(cplx z) { return ScaledValue::from_parts(std::exp(cplx(0.0, z.real())), -z.imag()); }

// J_0 from the ratio chain, normalised with
// e^{-iz} = J_0 + 2 sum_k (-i)^k J_k (or the conjugate identity below the axis).
ScaledValue normalised_j0(const std::vector<cplx>& ratio, int top, cplx z) {
  const cplx step = z.imag() >= 0.0 ? cplx(0.0, -1.0) : cplx(0.0, 1.0);
  cplx sum(1.0, 0.0);
  cplx product(1.0, 0.0);
  cplx power(1.0, 0.0);
  for (int k = 1; k <= top; ++k) {
    product *= ratio[static_cast<std::size_t>(k)];
    power *= step;
    sum += 2.0 * power * product;
  }
  return growing_exponential(z) / ScaledValue(sum);
}

ScaledValue hankel_asymptotic(int order, cplx z) {
  const double mu = 4.0 * order * order;
  cplx term(1.0, 0.0);
  cplx sum(1.0, 0.0);
  double previous = std::numeric_limits<double>::infinity();
  for (int k = 1; k < 80; ++k) {
    const double odd = 2.0 * k - 1.0;
    const cplx next = term * kI * (mu - odd * odd) / (8.0 * k * z);
    const double size = std::abs(next);
    if (size > previous) break;
    term = next;
    sum += term;
    previous = size;
    if (size < 1e-17 * std::abs(sum)) break;
  }
  const double phase = z.real() - order * kPi / 2.0 - kPi / 4.0;
  return ScaledValue::from_parts(std::sqrt(2.0 / (kPi * z)) * std::exp(cplx(0.0, phase)) * sum,
                                 -z.imag());
}

// H_0, H_1 as J + iY, with Y from the Neumann series over the Miller J_k.
// Used only where |Im z| is small enough that J + iY does not cancel.
std::pair<ScaledValue, ScaledValue> hankel01_neumann(cplx z) {
  const int top = miller_start(2, std::abs(z));
  const auto ratio = backward_ratios(top, z, 0.0);
  std::vector<cplx> j(static_cast<std::size_t>(top) + 1);
  j[0] = normalised_j0(ratio, top, z).value();
  for (int k = 1; k <= top; ++k) j[k] = j[k - 1] * ratio[static_cast<std::size_t>(k)];

  const cplx log_term = std::log(z / 2.0) + kEuler;
  cplx sum0(0.0, 0.0);
  cplx sum1(0.0, 0.0);
  double sign = -1.0;
  for (int k = 1; 2 * k + 1 <= top; ++k) {
    sum0 += sign * j[2 * k] / static_cast<double>(k);
    sum1 += sign * (j[2 * k - 1] - j[2 * k + 1]) / static_cast<double>(k);
    sign = -sign;
  }
  const cplx y0 = (2.0 / kPi) * log_term * j[0] - (4.0 / kPi) * sum0;
  const cplx y1 = (2.0 / kPi) * (log_term * j[1] - j[0] / z) + (2.0 / kPi) * sum1;
  return {ScaledValue(j[0] + kI * y0), ScaledValue(j[1] + kI * y1)};
}

// K_0(w), K_1(w) for Re w > 0, |w| > 2 by Steed's continued fraction
// (Temme's CF2), then H^(1)_nu(z) = (2/pi) i^{-nu-1} K_nu(-iz).
std::pair<ScaledValue, ScaledValue> hankel01_steed(cplx z) {
  const cplx w = -kI * z;
  cplx b = 2.0 * (1.0 + w);
  cplx d = 1.0 / b;
  cplx h = d;
  cplx delh = d;
  cplx q1(0.0, 0.0);
  cplx q2(1.0, 0.0);
  const double a1 = 0.25;
  cplx q(a1, 0.0);
  cplx c(a1, 0.0);
  double a = -a1;
  cplx s = 1.0 + q * delh;
  for (int i = 2; i <= 100000; ++i) {
    a -= 2.0 * (i - 1);
    c = -a * c / static_cast<double>(i);
    const cplx qnew = (q1 - b * q2) / a;
    q1 = q2;
    q2 = qnew;
    q += c * qnew;
    b += 2.0;
    d = 1.0 / (b + a * d);
    delh = (b * d - 1.0) * delh;
    h += delh;
    const cplx dels = q * delh;
    s += dels;
    if (std::abs(dels) < 1e-17 * std::abs(s)) break;
  }
  h *= a1;
  const ScaledValue k0 = ScaledValue::from_parts(
      std::sqrt(kPi / (2.0 * w)) * std::exp(cplx(0.0, -w.imag())) / s, -w.real());
  const ScaledValue k1 = k0 * ScaledValue((w + 0.5 - h) / w);
  return {k0 * ScaledValue(-2.0 * kI / kPi), k1 * ScaledValue(-2.0 / kPi)};
}

std::pair<ScaledValue, ScaledValue> hankel01(cplx z) {
  const double modulus = std::abs(z);
  if (modulus >= kAsymptoticRadius) return {hankel_asymptotic(0, z), hankel_asymptotic(1, z)};
  if (z.imag() <= 1.0 || modulus <= 2.0) return hankel01_neumann(z);
  return hankel01_steed(z);
}

ScaledValue scaled_sin(cplx z) {
  if (std::abs(z.imag()) < 20.0) return ScaledValue(std::sin(z));
  const double top = std::abs(z.imag());
  const cplx plus = std::exp(cplx(-z.imag() - top, z.real()));
  const cplx minus = std::exp(cplx(z.imag() - top, -z.real()));
  return ScaledValue::from_parts((plus - minus) / (2.0 * kI), top);
}

ScaledValue scaled_cos(cplx z) {
  if (std::abs(z.imag()) < 20.0) return ScaledValue(std::cos(z));
  const double top = std::abs(z.imag());
  const cplx plus = std::exp(cplx(-z.imag() - top, z.real()));
  const cplx minus = std::exp(cplx(z.imag() - top, -z.real()));
  return ScaledValue::from_parts((plus + minus) / 2.0, top);
}

// Shared derivative rule B_n' = (n/z) B_n - B_{n+1}; `values` holds orders 0..n_max+1.
std::vector<ScaledValue> derivatives(const std::vector<ScaledValue>& values, int n_max, cplx z) {
  std::vector<ScaledValue> out(static_cast<std::size_t>(n_max) + 1);
  for (int n = 0; n <= n_max; ++n) {
    const auto idx = static_cast<std::size_t>(n);
    out[idx] = n == 0 ? -values[1] : ScaledValue(static_cast<double>(n) / z) * values[idx] - values[idx + 1];
  }
  return out;
}

}  // namespace

std::vector<ScaledValue> bessel_j_orders(int n_max, cplx z) {
  check_order(n_max, kMaxOrder + 1);
  check_argument(z);
  std::vector<ScaledValue> out(static_cast<std::size_t>(n_max) + 1);
  if (z == cplx(0.0, 0.0)) {
    out[0] = ScaledValue(1.0);
    return out;
  }
  const int top = miller_start(n_max, std::abs(z));
  const auto ratio = backward_ratios(top, z, 0.0);
  ScaledValue current = normalised_j0(ratio, top, z);
  out[0] = current;
  for (int n = 1; n <= n_max; ++n) {
    current *= ScaledValue(ratio[static_cast<std::size_t>(n)]);
    out[static_cast<std::size_t>(n)] = current;
  }
  return out;
}

std::vector<ScaledValue> hankel1_orders(int n_max, cplx z) {
  check_order(n_max, kMaxOrder + 1);
  check_hankel_argument(z);
  const auto [h0, h1] = hankel01(z);
  std::vector<ScaledValue> out(static_cast<std::size_t>(n_max) + 1);
  out[0] = h0;
  if (n_max == 0) return out;
  out[1] = h1;
  cplx ratio = (h1 / h0).value();
  for (int n = 1; n < n_max; ++n) {
    ratio = 2.0 * n / z - 1.0 / ratio;
    out[static_cast<std::size_t>(n) + 1] = out[static_cast<std::size_t>(n)] * ScaledValue(ratio);
  }
  return out;
}

Sequence cylindrical(Kind kind, int n_max, cplx z) {
  check_order(n_max);
  const int extended = n_max + 1;
  auto values = kind == Kind::J ? bessel_j_orders(extended, z) : hankel1_orders(extended, z);
  Sequence out;
  if (kind == Kind::J && z == cplx(0.0, 0.0)) {
    out.deriv.assign(static_cast<std::size_t>(n_max) + 1, ScaledValue());
    if (n_max >= 1) out.deriv[1] = ScaledValue(0.5);
  } else {
    out.deriv = derivatives(values, n_max, z);
  }
  values.pop_back();
  out.value = std::move(values);
  return out;
}

ScaledValue bessel_j(int n, cplx z) {
  check_order(n);
  return bessel_j_orders(n, z)[static_cast<std::size_t>(n)];
}

ScaledValue bessel_h1(int n, cplx z) {
  check_order(n);
  return hankel1_orders(n, z)[static_cast<std::size_t>(n)];
}

ScaledValue bessel_deriv(Kind kind, int n, cplx z) {
  check_order(n);
  return cylindrical(kind, n, z).deriv[static_cast<std::size_t>(n)];
}

std::vector<ScaledValue> spherical_j_orders(int n_max, cplx z) {
  check_order(n_max, kMaxOrder + 1);
  check_argument(z);
  std::vector<ScaledValue> out(static_cast<std::size_t>(n_max) + 1);
  if (z == cplx(0.0, 0.0)) {
    out[0] = ScaledValue(1.0);
    return out;
  }
  const int top = miller_start(std::max(n_max, 1), std::abs(z));
  const auto ratio = backward_ratios(top, z, 1.0);

  // Anchor on whichever of j_0, j_1 is larger; they have no common zeros.
  ScaledValue anchor;
  int anchor_order = 0;
  if (std::abs(z) < 1.0) {
    anchor = ScaledValue(std::sin(z) / z);
  } else {
    const ScaledValue sine = scaled_sin(z);
    const ScaledValue j0 = sine / ScaledValue(z);
    const ScaledValue j1 = sine / ScaledValue(z * z) - scaled_cos(z) / ScaledValue(z);
    if (j0.log_abs() >= j1.log_abs()) {
      anchor = j0;
    } else {
      anchor = j1;
      anchor_order = 1;
    }
  }
  ScaledValue current = anchor;
  if (anchor_order == 1) {
    out[0] = anchor / ScaledValue(ratio[1]);
    if (n_max >= 1) out[1] = anchor;
  } else {
    out[0] = anchor;
  }
  for (int n = anchor_order + 1; n <= n_max; ++n) {
    current *= ScaledValue(ratio[static_cast<std::size_t>(n)]);
    out[static_cast<std::size_t>(n)] = current;
  }
  return out;
}

std::vector<ScaledValue> spherical_h1_orders(int n_max, cplx z) {
  check_order(n_max, kMaxOrder + 1);
  check_argument(z);
  if (z == cplx(0.0, 0.0)) {
    throw Error(ErrorKind::singular_argument, "spherical Hankel function is singular at z = 0");
  }
  std::vector<ScaledValue> out(static_cast<std::size_t>(n_max) + 1);
  out[0] = exp_iz(z) * ScaledValue(-kI / z);
  cplx ratio = 1.0 / z - kI;
  for (int n = 1; n <= n_max; ++n) {
    if (n > 1) ratio = (2.0 * n - 1.0) / z - 1.0 / ratio;
    out[static_cast<std::size_t>(n)] = out[static_cast<std::size_t>(n) - 1] * ScaledValue(ratio);
  }
  return out;
}

Sequence spherical(Kind kind, int n_max, cplx z) {
  check_order(n_max);
  const int extended = n_max + 1;
  auto values = kind == Kind::J ? spherical_j_orders(extended, z) : spherical_h1_orders(extended, z);
  Sequence out;
  if (kind == Kind::J && z == cplx(0.0, 0.0)) {
    out.deriv.assign(static_cast<std::size_t>(n_max) + 1, ScaledValue());
    if (n_max >= 1) out.deriv[1] = ScaledValue(1.0 / 3.0);
  } else {
    out.deriv = derivatives(values, n_max, z);
  }
  values.pop_back();
  out.value = std::move(values);
  return out;
}

ScaledValue spherical_bessel(Kind kind, int n, cplx z) {
  check_order(n);
  auto values = kind == Kind::J ? spherical_j_orders(n, z) : spherical_h1_orders(n, z);
  return values[static_cast<std::size_t>(n)];
}

ScaledValue spherical_bessel_deriv(Kind kind, int n, cplx z) {
  check_order(n);
  return spherical(kind, n, z).deriv[static_cast<std::size_t>(n)];
}

std::vector<double> legendre_orders(int n_max, double x) {
  if (n_max < 0) throw Error(ErrorKind::range, "Legendre degree must be non-negative");
  if (!(std::abs(x) <= 1.0)) throw Error(ErrorKind::domain, "Legendre argument outside [-1, 1]");
  std::vector<double> p(static_cast<std::size_t>(n_max) + 1);
  p[0] = 1.0;
  if (n_max >= 1) p[1] = x;
  for (int n = 1; n < n_max; ++n) {
    p[n + 1] = ((2.0 * n + 1.0) * x * p[n] - n * p[n - 1]) / (n + 1.0);
  }
  return p;
}

double legendre_p(int n, double x) { return legendre_orders(n, x)[static_cast<std::size_t>(n)]; }

cplx upper_sqrt(cplx w) {
  cplx root = std::sqrt(w);
  if (root.imag() < 0.0 || (root.imag() == 0.0 && root.real() < 0.0)) root = -root;
  return root;
}

}  // namespace nearcloak::specfun
