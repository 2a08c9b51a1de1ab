#include "nearcloak/bie.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "nearcloak/error.hpp"

namespace nearcloak::bie {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEuler = std::numbers::egamma;
constexpr cplx kI{0.0, 1.0};
constexpr double kMaxCondition = 1e12;

struct Geometry {
  std::vector<double> t;
  std::vector<Vec2> z, dz, ddz;
};

Geometry sample(const BoundaryCurve& curve) {
  curve.validate();
  const int m = curve.n_points;
  Geometry g;
  for (int j = 0; j < m; ++j) {
    const double t = 2 * kPi * j / m;
    g.t.push_back(t);
    g.z.push_back(curve.z(t));
    g.dz.push_back(curve.dz(t));
    g.ddz.push_back(curve.ddz(t));
    if (g.dz.back().norm() <= 0.0) throw Error(ErrorKind::invalid_parameter, "curve parametrisation is singular");
  }
  return g;
}

// Unnormalised outward normal (z2', -z1') for a counter-clockwise curve.
Vec2 scaled_normal(const Vec2& dz) { return {dz(1), -dz(0)}; }

cplx hankel0(double x) { return {std::cyl_bessel_j(0.0, x), std::cyl_neumann(0.0, x)}; }
cplx hankel1(double x) { return {std::cyl_bessel_j(1.0, x), std::cyl_neumann(1.0, x)}; }

Vec2 rotate(const Eigen::VectorXd& d, double theta) {
  const double c = std::cos(theta), s = std::sin(theta);
  return {c * d(0) - s * d(1), s * d(0) + c * d(1)};
}

void require_2d(const mie::WaveParams& wave) { wave.validate(Dimension::two); }

}  // namespace

BoundaryCurve BoundaryCurve::circle(double radius, int n_points, Vec2 centre) {
  if (!(radius > 0.0)) throw Error(ErrorKind::invalid_parameter, "circle radius must be positive");
  BoundaryCurve c;
  c.n_points = n_points;
  c.z = [=](double t) { return Vec2(centre(0) + radius * std::cos(t), centre(1) + radius * std::sin(t)); };
  c.dz = [=](double t) { return Vec2(-radius * std::sin(t), radius * std::cos(t)); };
  c.ddz = [=](double t) { return Vec2(-radius * std::cos(t), -radius * std::sin(t)); };
  return c;
}

BoundaryCurve BoundaryCurve::kite(int n_points, double scale) {
  if (!(scale > 0.0)) throw Error(ErrorKind::invalid_parameter, "kite scale must be positive");
  BoundaryCurve c;
  c.n_points = n_points;
  c.z = [=](double t) { return Vec2(scale * (std::cos(t) + 0.65 * std::cos(2 * t) - 0.65), scale * 1.5 * std::sin(t)); };
  c.dz = [=](double t) { return Vec2(scale * (-std::sin(t) - 1.3 * std::sin(2 * t)), scale * 1.5 * std::cos(t)); };
  c.ddz = [=](double t) { return Vec2(scale * (-std::cos(t) - 2.6 * std::cos(2 * t)), scale * -1.5 * std::sin(t)); };
  return c;
}

void BoundaryCurve::validate() const {
  if (!z || !dz || !ddz) throw Error(ErrorKind::invalid_parameter, "curve parametrisation is incomplete");
  if (n_points < 4 || n_points % 2 != 0 || n_points > 2048)
    throw Error(ErrorKind::invalid_parameter, "node count must be even and in [4, 2048]");
}

std::vector<double> log_weights(int n_points) {
  const int n = n_points / 2;
  std::vector<double> r(static_cast<std::size_t>(n_points));
  for (int j = 0; j < n_points; ++j) {
    const double s = kPi * j / n;
    double sum = 0.0;
    for (int m = 1; m < n; ++m) sum += std::cos(m * s) / m;
    r[static_cast<std::size_t>(j)] = -2 * kPi / n * sum - kPi / (static_cast<double>(n) * n) * std::cos(n * s);
  }
  return r;
}

DensitySolution assemble_and_solve(const BoundaryCurve& curve, double k, std::span<const cplx> neumann_data) {
  if (!(k > 0.0)) throw Error(ErrorKind::invalid_parameter, "wavenumber must be positive");
  const Geometry g = sample(curve);
  const int m = curve.n_points;
  if (neumann_data.size() != static_cast<std::size_t>(m))
    throw Error(ErrorKind::shape, "Neumann data length does not match the node count");
  const int n = m / 2;
  const auto R = log_weights(m);
  const double h = kPi / n;

  Eigen::MatrixXcd A(m, m);  // 1/2 I - K
  Eigen::MatrixXcd S(m, m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      const double w_log = R[static_cast<std::size_t>(std::abs(i - j))];
      const Vec2& dzj = g.dz[static_cast<std::size_t>(j)];
      const double speed = dzj.norm();
      cplx L, M;
      if (i == j) {
        const Vec2& ddz = g.ddz[static_cast<std::size_t>(j)];
        const double L2 = (dzj(1) * ddz(0) - dzj(0) * ddz(1)) / (4 * kPi * speed * speed);
        const cplx M2 = (kI / 4.0 - kEuler / (2 * kPi) - std::log(k * speed / 2) / (2 * kPi)) * speed;
        L = h * L2;
        M = w_log * (-speed / (4 * kPi)) + h * M2;
      } else {
        const Vec2 diff = g.z[static_cast<std::size_t>(i)] - g.z[static_cast<std::size_t>(j)];
        const double r = diff.norm();
        const double proj = scaled_normal(dzj).dot(diff);
        const double lg = std::log(4 * std::pow(std::sin((g.t[static_cast<std::size_t>(i)] - g.t[static_cast<std::size_t>(j)]) / 2), 2));
        const cplx L_full = kI * k / 4.0 * proj * hankel1(k * r) / r;
        const double L1 = -k / (4 * kPi) * proj * std::cyl_bessel_j(1.0, k * r) / r;
        const cplx M_full = kI / 4.0 * hankel0(k * r) * speed;
        const double M1 = -std::cyl_bessel_j(0.0, k * r) * speed / (4 * kPi);
        L = w_log * L1 + h * (L_full - L1 * lg);
        M = w_log * M1 + h * (M_full - M1 * lg);
      }
      A(i, j) = (i == j ? 0.5 : 0.0) - L;
      S(i, j) = M;
    }
  }

  Eigen::VectorXcd g_n(m);
  for (int j = 0; j < m; ++j) g_n(j) = neumann_data[static_cast<std::size_t>(j)];
  const Eigen::VectorXcd rhs = -(S * g_n);

  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(A);
  DensitySolution out;
  out.rcond = lu.rcond();
  if (!(out.rcond > 0.0) || 1.0 / out.rcond > kMaxCondition)
    throw Error(ErrorKind::resonance, "boundary integral system is near-singular (k close to a resonance?)");
  const Eigen::VectorXcd v = lu.solve(rhs);
  const double rhs_norm = rhs.norm();
  out.residual = rhs_norm > 0.0 ? (A * v - rhs).norm() / rhs_norm : (A * v).norm();

  out.k = k;
  out.params = g.t;
  out.nodes = g.z;
  for (int j = 0; j < m; ++j) {
    const Vec2& dzj = g.dz[static_cast<std::size_t>(j)];
    out.speeds.push_back(dzj.norm());
    out.normals.push_back(scaled_normal(dzj) / dzj.norm());
    out.trace.push_back(v(j));
    out.neumann_data.push_back(g_n(j));
  }
  return out;
}

DensitySolution assemble_and_solve(const BoundaryCurve& curve, const mie::WaveParams& wave) {
  require_2d(wave);
  const Geometry g = sample(curve);
  const Vec2 d(wave.d(0), wave.d(1));
  std::vector<cplx> data;
  data.reserve(g.z.size());
  for (std::size_t j = 0; j < g.z.size(); ++j) {
    const Vec2 nu = scaled_normal(g.dz[j]).normalized();
    data.push_back(-kI * wave.k * d.dot(nu) * std::exp(kI * (wave.k * d.dot(g.z[j]))));
  }
  return assemble_and_solve(curve, wave.k, data);
}

namespace {

// gamma * sum_j w_j [v dE/dnu - dv/dnu E], E = exp(-i k xhat.y).
cplx cauchy_far_field(double k, const Vec2& xhat, std::span<const Vec2> nodes, std::span<const Vec2> normals,
                      std::span<const double> weights, std::span<const cplx> v, std::span<const cplx> dv) {
  cplx sum{};
  for (std::size_t j = 0; j < nodes.size(); ++j) {
    const cplx e = std::exp(-kI * (k * xhat.dot(nodes[j])));
    const cplx de = -kI * k * xhat.dot(normals[j]) * e;
    sum += weights[j] * (v[j] * de - dv[j] * e);
  }
  return std::exp(kI * (kPi / 4)) / std::sqrt(8 * kPi * k) * sum;
}

mie::FarFieldPattern empty_pattern(double k, std::span<const double> angles) {
  mie::FarFieldPattern p;
  p.dim = Dimension::two;
  p.k = k;
  p.angles.assign(angles.begin(), angles.end());
  return p;
}

}  // namespace

mie::FarFieldPattern far_field_from_density(const DensitySolution& sol, const mie::WaveParams& wave,
                                            std::span<const double> angles) {
  require_2d(wave);
  const std::size_t m = sol.nodes.size();
  std::vector<double> weights(m);
  for (std::size_t j = 0; j < m; ++j) weights[j] = 2 * kPi / static_cast<double>(m) * sol.speeds[j];
  auto p = empty_pattern(wave.k, angles);
  for (double theta : angles) {
    p.amplitude.push_back(cauchy_far_field(wave.k, rotate(wave.d, theta), sol.nodes, sol.normals, weights,
                                           sol.trace, sol.neumann_data));
  }
  return p;
}

mie::FarFieldPattern far_field_from_cauchy_data(double radius, std::span<const cplx> trace,
                                                std::span<const cplx> normal_derivative,
                                                const mie::WaveParams& wave, std::span<const double> angles) {
  require_2d(wave);
  if (!(radius > 0.0)) throw Error(ErrorKind::invalid_parameter, "sampling radius must be positive");
  if (trace.size() != normal_derivative.size() || trace.empty())
    throw Error(ErrorKind::shape, "trace and normal-derivative samples must have equal nonzero length");
  const std::size_t m = trace.size();
  std::vector<Vec2> nodes(m), normals(m);
  std::vector<double> weights(m, 2 * kPi * radius / static_cast<double>(m));
  for (std::size_t j = 0; j < m; ++j) {
    const double t = 2 * kPi * static_cast<double>(j) / static_cast<double>(m);
    normals[j] = Vec2(std::cos(t), std::sin(t));
    nodes[j] = radius * normals[j];
  }
  auto p = empty_pattern(wave.k, angles);
  for (double theta : angles)
    p.amplitude.push_back(cauchy_far_field(wave.k, rotate(wave.d, theta), nodes, normals, weights, trace,
                                           normal_derivative));
  return p;
}

double laplace_identity_error(const BoundaryCurve& curve) {
  const Geometry g = sample(curve);
  const int m = curve.n_points;
  const double h = 2 * kPi / m;
  double worst = 0.0;
  for (int i = 0; i < m; ++i) {
    double k_one = 0.0;
    for (int j = 0; j < m; ++j) {
      const Vec2& dzj = g.dz[static_cast<std::size_t>(j)];
      if (i == j) {
        const Vec2& ddz = g.ddz[static_cast<std::size_t>(j)];
        k_one += h * (dzj(1) * ddz(0) - dzj(0) * ddz(1)) / (4 * kPi * dzj.squaredNorm());
      } else {
        const Vec2 diff = g.z[static_cast<std::size_t>(i)] - g.z[static_cast<std::size_t>(j)];
        k_one += h * scaled_normal(dzj).dot(diff) / (2 * kPi * diff.squaredNorm());
      }
    }
    worst = std::max(worst, std::abs(0.5 - k_one - 1.0));
  }
  return worst;
}

}  // namespace nearcloak::bie
