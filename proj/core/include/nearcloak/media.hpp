#pragma once

// Transformation-acoustics algebra: push-forward of (sigma, q) media under
// orientation-preserving maps, the radial blow-up map of a small ball onto
// the cloaking shell, and the physical <-> virtual rescaling of the interior.

#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "nearcloak/scaled.hpp"

namespace nearcloak {

enum class Dimension { two = 2, three = 3 };

inline int rank(Dimension dim) { return static_cast<int>(dim); }
Dimension dimension_from_int(int dim);

}  // namespace nearcloak

namespace nearcloak::media {

using Point = Eigen::VectorXd;

/// Acoustic medium {sigma, q}: sigma is the inverse mass-density tensor
/// (real symmetric positive definite), q the complex bulk modulus (Im q >= 0).
/// lower_bound/upper_bound are the extreme eigenvalues of sigma.
struct MediumSpec {
  Eigen::MatrixXd sigma;
  cplx q{1.0, 0.0};
  double lower_bound = 1.0;
  double upper_bound = 1.0;

  /// Validates symmetry, positivity and Im q >= 0; fills the bounds.
  static MediumSpec from_tensor(const Eigen::MatrixXd& sigma, cplx q);
  static MediumSpec isotropic(Dimension dim, double sigma, cplx q);
  static MediumSpec free_space(Dimension dim) { return isotropic(dim, 1.0, 1.0); }

  int dim() const { return static_cast<int>(sigma.rows()); }
  bool is_isotropic(double tol = 1e-14) const;
  /// The scalar value of an isotropic sigma; throws otherwise.
  double scalar_sigma() const;
};

/// The blow-up map B_rho -> B_R1 inside B_R2, identity on |x| = R2.
struct RadialMapSpec {
  double rho = 0.5;
  double inner_radius = 2.0;  // R1
  double outer_radius = 3.0;  // R2

  void validate() const;
  /// |y| as a function of |x| on [rho, R2].
  double radial_profile(double r) const;
  double radial_slope() const;
};

struct JacobianData {
  Eigen::MatrixXd matrix;  // dy_i/dx_j
  double determinant = 1.0;
};

Point radial_blowup(const RadialMapSpec& map, const Point& x);
Point radial_blowup_inverse(const RadialMapSpec& map, const Point& y);
/// Closed-form Jacobian of radial_blowup at x (rho <= |x| <= R2).
JacobianData radial_blowup_jacobian(const RadialMapSpec& map, const Point& x);

/// sigma~ = M sigma M^T / J, q~ = q / J.
MediumSpec push_forward(const MediumSpec& medium, const JacobianData& jac);

/// (F_rho)_* {I, 1} evaluated at a point y of the shell R1 <= |y| <= R2.
MediumSpec cloak_medium_at(const RadialMapSpec& map, const Point& y);

/// Interior rescaling under y = x / rho: physical contents in D_{1/2} become
/// virtual contents in D_{rho/2}. 2D: (sigma, q / rho^2); 3D: (sigma / rho, q / rho^3).
MediumSpec virtual_core_params(const MediumSpec& physical, double rho, Dimension dim);
/// Inverse of virtual_core_params.
MediumSpec physical_from_virtual(const MediumSpec& virtual_medium, double rho, Dimension dim);

/// One cell-centred sample of the physical device. `medium` is empty inside
/// the inner interface |y| < R1, where the contents are scheme parameters
/// rather than a transformation medium.
struct GridSample {
  Point position;
  std::optional<MediumSpec> medium;
};

/// Cell-centred grid over [-R2, R2]^N with `cells` cells per axis.
std::vector<GridSample> sample_grid(const RadialMapSpec& map, Dimension dim, int cells);

/// CSV with columns x, y[, z], the sigma upper triangle (row-major), re_q, im_q.
void write_grid_csv(std::ostream& out, std::span<const GridSample> samples, Dimension dim);

}  // namespace nearcloak::media
