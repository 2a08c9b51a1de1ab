#include "nearcloak/media.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>

#include "nearcloak/error.hpp"

namespace nearcloak {

Dimension dimension_from_int(int dim) {
  if (dim == 2) return Dimension::two;
  if (dim == 3) return Dimension::three;
  throw Error(ErrorKind::invalid_parameter, "dimension must be 2 or 3, got " + std::to_string(dim));
}

}  // namespace nearcloak

namespace nearcloak::media {

namespace {

constexpr double kRadiusSlack = 1e-12;

void require_point(const Point& p, const char* what) {
  if (p.size() != 2 && p.size() != 3)
    throw Error(ErrorKind::shape, std::string(what) + " must have 2 or 3 components");
  if (!p.allFinite()) throw Error(ErrorKind::invalid_parameter, std::string(what) + " is not finite");
}

}  // namespace

MediumSpec MediumSpec::from_tensor(const Eigen::MatrixXd& sigma, cplx q) {
  if (sigma.rows() != sigma.cols() || (sigma.rows() != 2 && sigma.rows() != 3))
    throw Error(ErrorKind::shape, "sigma must be 2x2 or 3x3");
  if (!sigma.allFinite() || !std::isfinite(q.real()) || !std::isfinite(q.imag()))
    throw Error(ErrorKind::invalid_parameter, "medium parameters must be finite");
  const double scale = sigma.cwiseAbs().maxCoeff();
  if ((sigma - sigma.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
    throw Error(ErrorKind::invalid_parameter, "sigma is not symmetric");
  if (q.imag() < 0.0) throw Error(ErrorKind::invalid_parameter, "Im q must be non-negative");

  MediumSpec out;
  out.sigma = 0.5 * (sigma + sigma.transpose());
  out.q = q;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(out.sigma, Eigen::EigenvaluesOnly);
  out.lower_bound = eig.eigenvalues().minCoeff();
  out.upper_bound = eig.eigenvalues().maxCoeff();
  if (!(out.lower_bound > 0.0))
    throw Error(ErrorKind::invalid_parameter, "sigma is not positive definite");
  return out;
}

MediumSpec MediumSpec::isotropic(Dimension dim, double sigma, cplx q) {
  if (!(sigma > 0.0)) throw Error(ErrorKind::invalid_parameter, "sigma must be positive");
  const int n = rank(dim);
  return from_tensor(sigma * Eigen::MatrixXd::Identity(n, n), q);
}

bool MediumSpec::is_isotropic(double tol) const {
  const double s = sigma(0, 0);
  const int n = dim();
  return (sigma - s * Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff() <= tol * std::abs(s);
}

double MediumSpec::scalar_sigma() const {
  if (!is_isotropic()) throw Error(ErrorKind::invalid_parameter, "sigma is anisotropic");
  return sigma(0, 0);
}

void RadialMapSpec::validate() const {
  if (!(rho > 0.0 && rho < inner_radius && inner_radius < outer_radius) || !std::isfinite(outer_radius))
    throw Error(ErrorKind::invalid_parameter, "radial map requires 0 < rho < R1 < R2");
}

double RadialMapSpec::radial_profile(double r) const {
  const double span = outer_radius - rho;
  return (inner_radius - rho) / span * outer_radius + (outer_radius - inner_radius) / span * r;
}

double RadialMapSpec::radial_slope() const {
  return (outer_radius - inner_radius) / (outer_radius - rho);
}

Point radial_blowup(const RadialMapSpec& map, const Point& x) {
  map.validate();
  require_point(x, "x");
  const double r = x.norm();
  if (r < map.rho * (1 - kRadiusSlack) || r > map.outer_radius * (1 + kRadiusSlack))
    throw Error(ErrorKind::domain, "point lies outside rho <= |x| <= R2");
  return map.radial_profile(r) / r * x;
}

Point radial_blowup_inverse(const RadialMapSpec& map, const Point& y) {
  map.validate();
  require_point(y, "y");
  const double r = y.norm();
  if (r < map.inner_radius * (1 - kRadiusSlack) || r > map.outer_radius * (1 + kRadiusSlack))
    throw Error(ErrorKind::domain, "point lies outside R1 <= |y| <= R2");
  const double offset = map.radial_profile(0.0);
  // Clamp so that |y| = R1 or R2 lands exactly on the end of [rho, R2].
  const double x_radius = std::clamp((r - offset) / map.radial_slope(), map.rho, map.outer_radius);
  return x_radius / r * y;
}

JacobianData radial_blowup_jacobian(const RadialMapSpec& map, const Point& x) {
  map.validate();
  require_point(x, "x");
  const double r = x.norm();
  if (r < map.rho * (1 - kRadiusSlack) || r > map.outer_radius * (1 + kRadiusSlack))
    throw Error(ErrorKind::domain, "point lies outside rho <= |x| <= R2");
  const auto n = x.size();
  const Point xhat = x / r;
  const Eigen::MatrixXd radial = xhat * xhat.transpose();
  const double stretch = map.radial_profile(r) / r;  // tangential
  const double slope = map.radial_slope();             // radial
  JacobianData out;
  out.matrix = slope * radial + stretch * (Eigen::MatrixXd::Identity(n, n) - radial);
  out.determinant = slope * std::pow(stretch, static_cast<double>(n - 1));
  return out;
}

MediumSpec push_forward(const MediumSpec& medium, const JacobianData& jac) {
  if (jac.matrix.rows() != medium.sigma.rows() || jac.matrix.cols() != medium.sigma.cols())
    throw Error(ErrorKind::shape, "Jacobian size does not match the medium dimension");
  if (!(jac.determinant > 0.0))
    throw Error(ErrorKind::orientation, "push-forward needs a positive Jacobian determinant");
  const Eigen::MatrixXd sigma = jac.matrix * medium.sigma * jac.matrix.transpose() / jac.determinant;
  return MediumSpec::from_tensor(0.5 * (sigma + sigma.transpose()), medium.q / jac.determinant);
}

MediumSpec cloak_medium_at(const RadialMapSpec& map, const Point& y) {
  const Point x = radial_blowup_inverse(map, y);
  const auto dim = dimension_from_int(static_cast<int>(y.size()));
  return push_forward(MediumSpec::free_space(dim), radial_blowup_jacobian(map, x));
}

MediumSpec virtual_core_params(const MediumSpec& physical, double rho, Dimension dim) {
  if (!(rho > 0.0)) throw Error(ErrorKind::invalid_parameter, "rho must be positive");
  if (physical.dim() != rank(dim)) throw Error(ErrorKind::shape, "medium dimension mismatch");
  const double s = physical.scalar_sigma();
  if (dim == Dimension::two) return MediumSpec::isotropic(dim, s, physical.q / (rho * rho));
  return MediumSpec::isotropic(dim, s / rho, physical.q / (rho * rho * rho));
}

MediumSpec physical_from_virtual(const MediumSpec& virtual_medium, double rho, Dimension dim) {
  if (!(rho > 0.0)) throw Error(ErrorKind::invalid_parameter, "rho must be positive");
  if (virtual_medium.dim() != rank(dim)) throw Error(ErrorKind::shape, "medium dimension mismatch");
  const double s = virtual_medium.scalar_sigma();
  if (dim == Dimension::two) return MediumSpec::isotropic(dim, s, virtual_medium.q * (rho * rho));
  return MediumSpec::isotropic(dim, s * rho, virtual_medium.q * (rho * rho * rho));
}

std::vector<GridSample> sample_grid(const RadialMapSpec& map, Dimension dim, int cells) {
  map.validate();
  if (cells < 1) throw Error(ErrorKind::invalid_parameter, "grid needs at least one cell per axis");
  const int n = rank(dim);
  const double half = map.outer_radius;
  const double h = 2.0 * half / cells;
  const auto centre = [&](int i) { return -half + (i + 0.5) * h; };
  const int nz = n == 3 ? cells : 1;

  std::vector<GridSample> out;
  out.reserve(static_cast<std::size_t>(cells) * cells * nz);
  for (int iz = 0; iz < nz; ++iz) {
    for (int iy = 0; iy < cells; ++iy) {
      for (int ix = 0; ix < cells; ++ix) {
        Point p(n);
        p(0) = centre(ix);
        p(1) = centre(iy);
        if (n == 3) p(2) = centre(iz);
        const double r = p.norm();
        GridSample s{p, std::nullopt};
        if (r > map.outer_radius) {
          s.medium = MediumSpec::free_space(dim);
        } else if (r >= map.inner_radius) {
          s.medium = cloak_medium_at(map, p);
        }
        out.push_back(std::move(s));
      }
    }
  }
  return out;
}

void write_grid_csv(std::ostream& out, std::span<const GridSample> samples, Dimension dim) {
  const int n = rank(dim);
  out << "# nearcloak-csv v1 media\n";
  out << (n == 2 ? "x,y,sigma_11,sigma_12,sigma_22,re_q,im_q\n"
                 : "x,y,z,sigma_11,sigma_12,sigma_13,sigma_22,sigma_23,sigma_33,re_q,im_q\n");
  char buf[32];
  const auto put = [&](double v, bool last) {
    if (std::isnan(v)) {
      out << "nan";
    } else {
      std::snprintf(buf, sizeof buf, "%.17g", v);
      out << buf;
    }
    out << (last ? '\n' : ',');
  };
  const double nan = std::nan("");
  for (const auto& s : samples) {
    if (s.position.size() != n) throw Error(ErrorKind::shape, "sample dimension mismatch");
    for (int i = 0; i < n; ++i) put(s.position(i), false);
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) put(s.medium ? s.medium->sigma(i, j) : nan, false);
    put(s.medium ? s.medium->q.real() : nan, false);
    put(s.medium ? s.medium->q.imag() : nan, true);
  }
}

}  // namespace nearcloak::media
