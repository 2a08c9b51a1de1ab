#pragma once

// 2D exterior sound-hard Helmholtz solver by the direct boundary integral
// equation (1/2 I - K) v = S[du^i/dnu], discretised with the Kress
// logarithmic-split Nystrom rule on 2n equispaced parameter nodes.

#include <functional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "nearcloak/mie.hpp"

namespace nearcloak::bie {

using Vec2 = Eigen::Vector2d;

/// Closed C^2 curve t in [0, 2 pi), counter-clockwise.
struct BoundaryCurve {
  std::function<Vec2(double)> z;
  std::function<Vec2(double)> dz;
  std::function<Vec2(double)> ddz;
  int n_points = 256;

  static BoundaryCurve circle(double radius, int n_points, Vec2 centre = Vec2::Zero());
  /// (cos t + 0.65 cos 2t - 0.65, 1.5 sin t), scaled.
  static BoundaryCurve kite(int n_points, double scale = 1.0);

  void validate() const;
};

struct DensitySolution {
  double k = 1.0;
  std::vector<double> params;   // t_j
  std::vector<Vec2> nodes;      // z(t_j)
  std::vector<Vec2> normals;    // unit outward normals
  std::vector<double> speeds;   // |z'(t_j)|
  std::vector<cplx> trace;        // v^s on the curve
  std::vector<cplx> neumann_data; // dv^s/dnu
  double rcond = 1.0;
  double residual = 0.0;  // relative residual of the dense solve
};

/// Plane-wave incidence: neumann data -du^i/dnu.
DensitySolution assemble_and_solve(const BoundaryCurve& curve, const mie::WaveParams& wave);
/// Arbitrary Neumann data dv/dnu sampled at the nodes.
DensitySolution assemble_and_solve(const BoundaryCurve& curve, double k, std::span<const cplx> neumann_data);

/// Far field of the radiating solution from its Cauchy data on the curve.
/// Angles are measured from wave.d.
mie::FarFieldPattern far_field_from_density(const DensitySolution& solution, const mie::WaveParams& wave,
                                            std::span<const double> angles);

/// Far field from trace/normal-derivative samples at angles 2 pi j / M on the
/// circle |x| = radius.
mie::FarFieldPattern far_field_from_cauchy_data(double radius, std::span<const cplx> trace,
                                                std::span<const cplx> normal_derivative,
                                                const mie::WaveParams& wave, std::span<const double> angles);

/// max_i |((1/2 I - K_0) 1)_i - 1| for the Laplace double layer on the curve.
double laplace_identity_error(const BoundaryCurve& curve);

/// Kress weights R_j(t_i) for |i - j| = m, m = 0..2n-1.
std::vector<double> log_weights(int n_points);

}  // namespace nearcloak::bie
