#pragma once

// Separation-of-variables solver for concentric scatterers in the virtual
// space: sound-soft / sound-hard balls of radius rho, and a lossy layer on
// rho/2 <= r <= rho around a uniform core r < rho/2.
//
// Everything is axisymmetric about the incident direction d, so fields and
// amplitudes depend only on r and theta = angle(x, d). In 2D the modal sum
// runs over n >= 0 with Neumann weights (d_{-n} = d_n); in 3D it is the
// Legendre series with the (2n+1) factor folded into every coefficient.

#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "nearcloak/media.hpp"
#include "nearcloak/scaled.hpp"

namespace nearcloak::mie {

using media::MediumSpec;
using media::Point;

struct WaveParams {
  double k = 2.0;
  Point d;  // unit incident direction

  static WaveParams along_x(Dimension dim, double k = 2.0);
  /// Checks k > 0, |d| = 1 and the dimension of d.
  void validate(Dimension dim) const;
};

enum class SchemeKind { SS, SH, FSS, FSH, LayeredCustom };

std::string_view to_string(SchemeKind kind);
SchemeKind scheme_from_string(std::string_view name);

/// Lining choice. Layer parameters are virtual-space values on rho/2 <= r <= rho:
///   FSS: sigma_l = 1, q_l = 1 + i*beta_coeff/rho^2
///   FSH: sigma_l = C rho^(2+2 delta), q_l = a + i b
///   LayeredCustom: custom_layer as given (use media::virtual_core_params to
///   convert physical-space values).
struct SchemeSpec {
  SchemeKind kind = SchemeKind::SH;
  double beta_coeff = 2.5;
  double C = 1.0;
  double delta = 0.5;
  double a = 3.0;
  double b = 2.0;
  std::optional<MediumSpec> custom_layer;

  void validate() const;
  bool is_obstacle() const { return kind == SchemeKind::SS || kind == SchemeKind::SH; }
  /// Virtual (sigma_l, q_l) of the layer at this rho. Throws for obstacles.
  std::pair<double, cplx> layer(double rho) const;
};

/// Default cloaked contents: sigma' = 1, q' = 5 in physical space.
MediumSpec default_core_physical(Dimension dim);

struct LayerWavenumbers {
  double sigma_l = 1.0;
  cplx q_l{1.0, 0.0};
  double sigma_a = 1.0;
  cplx q_a{1.0, 0.0};
  cplx k_tilde;  // k sqrt(q_l / sigma_l), Im >= 0
  cplx k2;       // k sqrt(q_a / sigma_a), Im >= 0
  cplx C0;       // 1 / sqrt(sigma_l q_l)
  cplx A;        // sqrt(sigma_a q_a)

  static LayerWavenumbers make(double k, double sigma_l, cplx q_l, double sigma_a, cplx q_a);
};

struct ModalSolution {
  Dimension dim = Dimension::two;
  SchemeKind scheme = SchemeKind::SH;
  double k = 1.0;
  double rho = 1.0;
  int n_max = 0;
  std::vector<cplx> d;         // exterior scattering coefficients
  std::vector<ScaledValue> a;  // layer, J part (empty for obstacles)
  std::vector<ScaledValue> b;  // layer, H part
  std::vector<ScaledValue> c;  // core
  std::vector<bool> zero_core_branch;  // J_n(k2 rho/2) ~ 0 elimination used
  std::vector<cplx> h_function;        // interface admittance per mode (diagnostic)
  std::optional<LayerWavenumbers> layer;
  double truncation_tail = 0.0;  // |d_nmax| / max |d_n|

  bool is_obstacle() const { return !layer.has_value(); }
};

struct FarFieldPattern {
  Dimension dim = Dimension::two;
  double k = 1.0;
  std::vector<double> angles;
  std::vector<cplx> amplitude;

  /// 2D: e^{i pi/4} / sqrt(8 pi k); 3D: 1 / (4 pi).
  cplx gamma() const;
  double max_abs() const;
};

/// Initial truncation order ceil(k rho + 8 + 4 (k rho)^{1/3}).
int initial_truncation(double k, double rho);

ModalSolution coeffs_sound_hard(Dimension dim, const WaveParams& wave, double rho);
ModalSolution coeffs_sound_soft(Dimension dim, const WaveParams& wave, double rho);
/// core is the virtual-space medium in r < rho/2 (isotropic).
ModalSolution coeffs_layered(Dimension dim, const WaveParams& wave, double rho,
                             const SchemeSpec& scheme, const MediumSpec& core);
/// Dispatch on the scheme; `core_physical` is converted to virtual space.
ModalSolution solve(Dimension dim, const WaveParams& wave, double rho, const SchemeSpec& scheme,
                    const MediumSpec& core_physical);

cplx far_field_at(const ModalSolution& solution, double theta);
FarFieldPattern far_field(const ModalSolution& solution, std::span<const double> angles);

/// Equidistant angles: [0, 2 pi) in 2D, [0, pi] inclusive in 3D.
std::vector<double> observation_angles(Dimension dim, int count);

struct FieldValue {
  cplx value;
  cplx radial_derivative;  // du/dr
};

/// Total field at distance r and angle theta from d. r >= rho is exterior
/// (the interface belongs to it). Obstacles reject r < rho.
FieldValue field_at(const ModalSolution& solution, double r, double theta);
/// Same, evaluated in one named region (exterior/layer/core) regardless of r;
/// used to check interface conditions from both sides.
enum class Region { exterior, layer, core };
FieldValue field_in_region(const ModalSolution& solution, Region region, double r, double theta);
/// Scattered part u - u^i of the exterior field; r >= rho.
cplx scattered_field_at(const ModalSolution& solution, double r, double theta);
/// Cartesian evaluation with an explicit incident direction.
cplx field_at(const ModalSolution& solution, const WaveParams& wave, const Point& x);

/// Closed-form small-rho leading term of the sound-hard amplitude:
///   2D: i e^{-i pi/4} sqrt(2 pi/k) (cos(theta)/2 - 1/4) (k rho)^2
///   3D: (1/k) (cos(theta)/2 - 1/3) (k rho)^3
cplx leading_asymptotic(Dimension dim, const WaveParams& wave, double rho, double theta);

}  // namespace nearcloak::mie
