#include "nearcloak/mie.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <cmath>
#include <numbers>
#include <string>

#include "nearcloak/error.hpp"
#include "nearcloak/specfun.hpp"

namespace nearcloak::mie {

namespace {

using specfun::Kind;
using specfun::Sequence;

constexpr double kPi = std::numbers::pi;
constexpr cplx kI{0.0, 1.0};
constexpr double kTailTolerance = 1e-14;
// Incident-wave terms must also be negligible at r = rho, otherwise the
// layer expansion cannot match the closed-form incident field there.
constexpr double kIncidentTolerance = 1e-16;
constexpr double kBranchThreshold = 1e-12;
constexpr int kOrderCap = specfun::kMaxOrder - 1;

cplx pow_i(int n) {
  switch (((n % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

// i^n w_n: the modal coefficient of the incident plane wave.
cplx incident_weight(Dimension dim, int n) {
  return dim == Dimension::two ? pow_i(n) : pow_i(n) * (2.0 * n + 1.0);
}

double neumann_factor(Dimension dim, int n) {
  return dim == Dimension::two && n > 0 ? 2.0 : 1.0;
}

Sequence radial(Dimension dim, Kind kind, int n_max, cplx z) {
  return dim == Dimension::two ? specfun::cylindrical(kind, n_max, z)
                               : specfun::spherical(kind, n_max, z);
}

// cos(n theta) in 2D, P_n(cos theta) in 3D, n = 0..n_max.
std::vector<double> angular(Dimension dim, int n_max, double theta) {
  std::vector<double> out(static_cast<std::size_t>(n_max) + 1);
  if (dim == Dimension::three) return specfun::legendre_orders(n_max, std::clamp(std::cos(theta), -1.0, 1.0));
  for (int n = 0; n <= n_max; ++n) out[static_cast<std::size_t>(n)] = std::cos(n * theta);
  return out;
}

void check_rho(double k, double rho) {
  if (!(rho > 0.0) || !std::isfinite(rho)) throw Error(ErrorKind::invalid_parameter, "rho must be positive");
  if (!(k * rho <= specfun::kMaxArgument)) throw Error(ErrorKind::range, "k rho outside the supported window");
}

struct ModeResult {
  ScaledValue d;
  ScaledValue a, b, c;
  bool zero_core = false;
  cplx h_function;
};

ModeResult obstacle_mode(Dimension dim, SchemeKind kind, int n, const Sequence& j, const Sequence& h) {
  const auto i = static_cast<std::size_t>(n);
  const ScaledValue w = incident_weight(dim, n);
  ModeResult out;
  if (kind == SchemeKind::SH) {
    out.d = -w * j.deriv[i] / h.deriv[i];
    out.h_function = 0.0;
  } else {
    out.d = -w * j.value[i] / h.value[i];
    out.h_function = std::numeric_limits<double>::infinity();
  }
  return out;
}

struct LayerSequences {
  Sequence j_ext, h_ext;  // k rho
  Sequence j_in, h_in;    // k~ rho / 2
  Sequence j_out, h_out;  // k~ rho
  Sequence j_core;        // k2 rho / 2
  cplx inner_arg;         // k~ rho / 2
  cplx core_arg;          // k2 rho / 2
};

// J H' - J' H for the radial functions of the dimension.
ScaledValue radial_wronskian(Dimension dim, cplx z) {
  if (dim == Dimension::two) return ScaledValue(2.0 * kI / (kPi * z));
  return ScaledValue(kI / (z * z));
}

ModeResult layered_mode(Dimension dim, int n, const LayerWavenumbers& lw, const LayerSequences& s) {
  const auto i = static_cast<std::size_t>(n);
  const ScaledValue C0 = lw.C0;
  const ScaledValue A = lw.A;
  const ScaledValue w = incident_weight(dim, n);
  ModeResult out;

  const ScaledValue& core_j = s.j_core.value[i];
  const ScaledValue& core_jd = s.j_core.deriv[i];
  // J(x) = 0 up to a relative shift of x; a small-argument J_n is tiny but
  // has |J / (x J')| ~ 1/n, so it never qualifies.
  out.zero_core = core_j.log_abs() < std::log(kBranchThreshold * std::abs(s.core_arg)) + core_jd.log_abs();

  // Inner interface: b = upsilon0 a.
  ScaledValue upsilon0, inner_denominator;
  if (!out.zero_core) {
    const ScaledValue G = C0 * A * core_jd / core_j;
    inner_denominator = s.h_in.deriv[i] - G * s.h_in.value[i];
    upsilon0 = -(s.j_in.deriv[i] - G * s.j_in.value[i]) / inner_denominator;
  } else {
    upsilon0 = -s.j_in.value[i] / s.h_in.value[i];
  }

  // Outer interface.
  const ScaledValue outer = s.j_out.value[i] + upsilon0 * s.h_out.value[i];
  const ScaledValue outer_d = s.j_out.deriv[i] + upsilon0 * s.h_out.deriv[i];
  const ScaledValue H = outer_d / (C0 * outer);
  out.h_function = H.value();

  out.d = -w * (s.j_ext.deriv[i] - H * s.j_ext.value[i]) / (s.h_ext.deriv[i] - H * s.h_ext.value[i]);
  out.a = (w * s.j_ext.value[i] + out.d * s.h_ext.value[i]) / outer;
  out.b = upsilon0 * out.a;
  // a J + b H and a J' + b H' at the inner interface, rewritten through the
  // Wronskian; the direct sums cancel when the layer field is small there.
  const ScaledValue W = radial_wronskian(dim, s.inner_arg);
  if (!out.zero_core) {
    out.c = out.a * W / (inner_denominator * core_j);
  } else {
    out.c = -out.a * W / (s.h_in.value[i] * C0 * A * core_jd);
  }
  return out;
}

ModalSolution build(Dimension dim, const WaveParams& wave, double rho, SchemeKind kind,
                    const std::optional<LayerWavenumbers>& layer) {
  wave.validate(dim);
  check_rho(wave.k, rho);
  const double k = wave.k;
  const cplx kr(k * rho, 0.0);

  int n_max = std::min(initial_truncation(k, rho), kOrderCap);
  while (true) {
    LayerSequences seq;
    seq.j_ext = radial(dim, Kind::J, n_max, kr);
    seq.h_ext = radial(dim, Kind::H1, n_max, kr);
    if (layer) {
      const cplx z = layer->k_tilde * rho;
      seq.j_in = radial(dim, Kind::J, n_max, 0.5 * z);
      seq.h_in = radial(dim, Kind::H1, n_max, 0.5 * z);
      seq.j_out = radial(dim, Kind::J, n_max, z);
      seq.h_out = radial(dim, Kind::H1, n_max, z);
      seq.j_core = radial(dim, Kind::J, n_max, 0.5 * rho * layer->k2);
      seq.inner_arg = 0.5 * z;
      seq.core_arg = 0.5 * rho * layer->k2;
    }

    ModalSolution sol;
    sol.dim = dim;
    sol.scheme = kind;
    sol.k = k;
    sol.rho = rho;
    sol.n_max = n_max;
    sol.layer = layer;
    double log_max = -std::numeric_limits<double>::infinity();
    double log_last = log_max;
    for (int n = 0; n <= n_max; ++n) {
      const ModeResult m = layer ? layered_mode(dim, n, *layer, seq) : obstacle_mode(dim, kind, n, seq.j_ext, seq.h_ext);
      sol.d.push_back(m.d.value());
      sol.h_function.push_back(m.h_function);
      if (layer) {
        sol.a.push_back(m.a);
        sol.b.push_back(m.b);
        sol.c.push_back(m.c);
        sol.zero_core_branch.push_back(m.zero_core);
      }
      const double la = m.d.log_abs();
      if (!std::isfinite(la) && la > 0)
        throw Error(ErrorKind::range, "non-finite scattering coefficient at order " + std::to_string(n));
      log_max = std::max(log_max, la);
      log_last = la;
    }
    sol.truncation_tail = std::isfinite(log_max) ? std::exp(log_last - log_max) : 0.0;

    const auto top = static_cast<std::size_t>(n_max);
    const double incident_tail = std::exp(seq.j_ext.value[top].log_abs()) * std::abs(incident_weight(dim, n_max));
    if (sol.truncation_tail <= kTailTolerance && incident_tail <= kIncidentTolerance) return sol;
    if (n_max == kOrderCap)
      throw Error(ErrorKind::range, "modal series did not converge below order " + std::to_string(kOrderCap));
    n_max = std::min(kOrderCap, n_max + std::max(4, n_max / 4));
  }
}

// Radial factors and their r-derivatives of one region's modal sum.
FieldValue sum_modes(const ModalSolution& sol, const std::vector<ScaledValue>& coef, Kind kind, cplx wavenumber,
                     double r, const std::vector<double>& ang) {
  const Sequence f = radial(sol.dim, kind, sol.n_max, wavenumber * r);
  FieldValue out{};
  for (int n = 0; n <= sol.n_max; ++n) {
    const auto i = static_cast<std::size_t>(n);
    const double weight = neumann_factor(sol.dim, n) * ang[i];
    out.value += weight * (coef[i] * f.value[i]).value();
    out.radial_derivative += weight * wavenumber * (coef[i] * f.deriv[i]).value();
  }
  return out;
}

FieldValue scattered(const ModalSolution& sol, double r, const std::vector<double>& ang) {
  std::vector<ScaledValue> coef(sol.d.begin(), sol.d.end());
  return sum_modes(sol, coef, Kind::H1, sol.k, r, ang);
}

}  // namespace

WaveParams WaveParams::along_x(Dimension dim, double k) {
  WaveParams w;
  w.k = k;
  w.d = Point::Zero(rank(dim));
  w.d(0) = 1.0;
  return w;
}

void WaveParams::validate(Dimension dim) const {
  if (!(k > 0.0) || !std::isfinite(k)) throw Error(ErrorKind::invalid_parameter, "wavenumber must be positive");
  if (d.size() != rank(dim)) throw Error(ErrorKind::shape, "incident direction has the wrong dimension");
  if (!d.allFinite() || std::abs(d.norm() - 1.0) > 1e-12)
    throw Error(ErrorKind::invalid_parameter, "incident direction must be a unit vector");
}

std::string_view to_string(SchemeKind kind) {
  switch (kind) {
    case SchemeKind::SS: return "ss";
    case SchemeKind::SH: return "sh";
    case SchemeKind::FSS: return "fss";
    case SchemeKind::FSH: return "fsh";
    case SchemeKind::LayeredCustom: return "custom";
  }
  return "unknown";
}

SchemeKind scheme_from_string(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char ch) { return std::tolower(ch); });
  if (lower == "ss") return SchemeKind::SS;
  if (lower == "sh") return SchemeKind::SH;
  if (lower == "fss") return SchemeKind::FSS;
  if (lower == "fsh") return SchemeKind::FSH;
  if (lower == "custom") return SchemeKind::LayeredCustom;
  throw Error(ErrorKind::invalid_parameter, "unknown scheme '" + std::string(name) + "'");
}

void SchemeSpec::validate() const {
  switch (kind) {
    case SchemeKind::FSS:
      if (!(beta_coeff > 0.0)) throw Error(ErrorKind::invalid_parameter, "FSS needs beta > 0");
      break;
    case SchemeKind::FSH:
      if (!(C > 0.0 && delta > 0.0 && a > 0.0 && b > 0.0))
        throw Error(ErrorKind::invalid_parameter, "FSH needs C, delta, a, b > 0");
      break;
    case SchemeKind::LayeredCustom:
      if (!custom_layer) throw Error(ErrorKind::invalid_parameter, "custom scheme needs a layer medium");
      custom_layer->scalar_sigma();
      break;
    default:
      break;
  }
}

std::pair<double, cplx> SchemeSpec::layer(double rho) const {
  validate();
  switch (kind) {
    case SchemeKind::FSS: return {1.0, cplx(1.0, beta_coeff / (rho * rho))};
    case SchemeKind::FSH: return {C * std::pow(rho, 2.0 + 2.0 * delta), cplx(a, b)};
    case SchemeKind::LayeredCustom: return {custom_layer->scalar_sigma(), custom_layer->q};
    default: throw Error(ErrorKind::invalid_parameter, "obstacle schemes have no layer");
  }
}

MediumSpec default_core_physical(Dimension dim) { return MediumSpec::isotropic(dim, 1.0, 5.0); }

LayerWavenumbers LayerWavenumbers::make(double k, double sigma_l, cplx q_l, double sigma_a, cplx q_a) {
  if (!(sigma_l > 0.0 && sigma_a > 0.0)) throw Error(ErrorKind::invalid_parameter, "sigma must be positive");
  if (q_l == 0.0 || q_a == 0.0) throw Error(ErrorKind::invalid_parameter, "q must be nonzero");
  LayerWavenumbers out;
  out.sigma_l = sigma_l;
  out.q_l = q_l;
  out.sigma_a = sigma_a;
  out.q_a = q_a;
  out.k_tilde = k * specfun::upper_sqrt(q_l / sigma_l);
  out.k2 = k * specfun::upper_sqrt(q_a / sigma_a);
  out.C0 = 1.0 / specfun::upper_sqrt(sigma_l * q_l);
  out.A = specfun::upper_sqrt(sigma_a * q_a);
  return out;
}

cplx FarFieldPattern::gamma() const {
  if (dim == Dimension::two) return std::exp(kI * (kPi / 4)) / std::sqrt(8 * kPi * k);
  return 1.0 / (4 * kPi);
}

double FarFieldPattern::max_abs() const {
  double m = 0.0;
  for (const auto& v : amplitude) m = std::max(m, std::abs(v));
  return m;
}

int initial_truncation(double k, double rho) {
  const double x = k * rho;
  return static_cast<int>(std::ceil(x + 8.0 + 4.0 * std::cbrt(x)));
}

ModalSolution coeffs_sound_hard(Dimension dim, const WaveParams& wave, double rho) {
  return build(dim, wave, rho, SchemeKind::SH, std::nullopt);
}

ModalSolution coeffs_sound_soft(Dimension dim, const WaveParams& wave, double rho) {
  return build(dim, wave, rho, SchemeKind::SS, std::nullopt);
}

ModalSolution coeffs_layered(Dimension dim, const WaveParams& wave, double rho, const SchemeSpec& scheme,
                             const MediumSpec& core) {
  check_rho(wave.k, rho);
  if (scheme.is_obstacle()) throw Error(ErrorKind::invalid_parameter, "layered solve needs a layer scheme");
  if (core.dim() != rank(dim)) throw Error(ErrorKind::shape, "core medium dimension mismatch");
  const auto [sigma_l, q_l] = scheme.layer(rho);
  const auto lw = LayerWavenumbers::make(wave.k, sigma_l, q_l, core.scalar_sigma(), core.q);
  return build(dim, wave, rho, scheme.kind, lw);
}

ModalSolution solve(Dimension dim, const WaveParams& wave, double rho, const SchemeSpec& scheme,
                    const MediumSpec& core_physical) {
  switch (scheme.kind) {
    case SchemeKind::SS: return coeffs_sound_soft(dim, wave, rho);
    case SchemeKind::SH: return coeffs_sound_hard(dim, wave, rho);
    default:
      check_rho(wave.k, rho);
      return coeffs_layered(dim, wave, rho, scheme, media::virtual_core_params(core_physical, rho, dim));
  }
}

cplx far_field_at(const ModalSolution& sol, double theta) {
  const auto ang = angular(sol.dim, sol.n_max, theta);
  cplx sum{};
  if (sol.dim == Dimension::two) {
    for (int n = 0; n <= sol.n_max; ++n)
      sum += neumann_factor(sol.dim, n) * sol.d[static_cast<std::size_t>(n)] * pow_i(-n) * ang[static_cast<std::size_t>(n)];
    return std::sqrt(2.0 / (kPi * sol.k)) * std::exp(-kI * (kPi / 4)) * sum;
  }
  for (int n = 0; n <= sol.n_max; ++n)
    sum += sol.d[static_cast<std::size_t>(n)] * pow_i(-(n + 1)) * ang[static_cast<std::size_t>(n)];
  return sum / sol.k;
}

FarFieldPattern far_field(const ModalSolution& sol, std::span<const double> angles) {
  FarFieldPattern out;
  out.dim = sol.dim;
  out.k = sol.k;
  out.angles.assign(angles.begin(), angles.end());
  out.amplitude.reserve(angles.size());
  for (double t : angles) out.amplitude.push_back(far_field_at(sol, t));
  return out;
}

std::vector<double> observation_angles(Dimension dim, int count) {
  if (count < 1) throw Error(ErrorKind::invalid_parameter, "angle count must be positive");
  std::vector<double> out(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    out[static_cast<std::size_t>(i)] =
        dim == Dimension::two ? 2 * kPi * i / count : (count == 1 ? 0.0 : kPi * i / (count - 1));
  }
  return out;
}

FieldValue field_in_region(const ModalSolution& sol, Region region, double r, double theta) {
  if (!(r >= 0.0) || !std::isfinite(r)) throw Error(ErrorKind::domain, "radius must be non-negative");
  const auto ang = angular(sol.dim, sol.n_max, theta);
  switch (region) {
    case Region::exterior: {
      if (!(r > 0.0)) throw Error(ErrorKind::domain, "exterior expansion is singular at the origin");
      const double c = std::cos(theta);
      const cplx inc = std::exp(kI * (sol.k * r * c));
      FieldValue s = scattered(sol, r, ang);
      return {inc + s.value, kI * sol.k * c * inc + s.radial_derivative};
    }
    case Region::layer:
      if (!sol.layer) throw Error(ErrorKind::domain, "obstacle solutions have no layer");
      {
        FieldValue j = sum_modes(sol, sol.a, Kind::J, sol.layer->k_tilde, r, ang);
        FieldValue h = sum_modes(sol, sol.b, Kind::H1, sol.layer->k_tilde, r, ang);
        return {j.value + h.value, j.radial_derivative + h.radial_derivative};
      }
    case Region::core:
      if (!sol.layer) throw Error(ErrorKind::domain, "obstacle solutions have no core");
      return sum_modes(sol, sol.c, Kind::J, sol.layer->k2, r, ang);
  }
  return {};
}

FieldValue field_at(const ModalSolution& sol, double r, double theta) {
  if (!(r >= 0.0) || !std::isfinite(r)) throw Error(ErrorKind::domain, "radius must be non-negative");
  if (r >= sol.rho) return field_in_region(sol, Region::exterior, r, theta);
  if (sol.is_obstacle()) throw Error(ErrorKind::domain, "point lies inside the obstacle");
  return field_in_region(sol, r >= 0.5 * sol.rho ? Region::layer : Region::core, r, theta);
}

cplx scattered_field_at(const ModalSolution& sol, double r, double theta) {
  if (!(r >= sol.rho) || !std::isfinite(r)) throw Error(ErrorKind::domain, "scattered field needs r >= rho");
  return scattered(sol, r, angular(sol.dim, sol.n_max, theta)).value;
}

cplx field_at(const ModalSolution& sol, const WaveParams& wave, const Point& x) {
  wave.validate(sol.dim);
  if (x.size() != rank(sol.dim)) throw Error(ErrorKind::shape, "point has the wrong dimension");
  const double r = x.norm();
  const double theta = r > 0.0 ? std::acos(std::clamp(x.dot(wave.d) / r, -1.0, 1.0)) : 0.0;
  return field_at(sol, r, theta).value;
}

cplx leading_asymptotic(Dimension dim, const WaveParams& wave, double rho, double theta) {
  const double kr = wave.k * rho;
  const double c = std::cos(theta);
  // Snap the special angles where the bracket vanishes analytically.
  const double bracket = [&] {
    const double v = c / 2 - (dim == Dimension::two ? 0.25 : 1.0 / 3.0);
    return std::abs(v) < 1e-15 ? 0.0 : v;
  }();
  if (dim == Dimension::two)
    return kI * std::exp(-kI * (kPi / 4)) * std::sqrt(2 * kPi / wave.k) * bracket * kr * kr;
  return bracket * kr * kr * kr / wave.k;
}

}  // namespace nearcloak::mie
