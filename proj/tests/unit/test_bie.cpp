#include <cmath>
#include <numbers>

#include "doctest.h"
#include "nearcloak/bie.hpp"
#include "nearcloak/error.hpp"
#include "nearcloak/mie.hpp"

using namespace nearcloak;
using namespace nearcloak::bie;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr cplx kI{0.0, 1.0};

mie::WaveParams wave2(double k, double angle = 0.0) {
  auto w = mie::WaveParams::along_x(Dimension::two, k);
  w.d << std::cos(angle), std::sin(angle);
  return w;
}

double max_rel(const mie::FarFieldPattern& got, const mie::FarFieldPattern& want) {
  double err = 0.0;
  for (std::size_t i = 0; i < want.amplitude.size(); ++i)
    err = std::max(err, std::abs(got.amplitude[i] - want.amplitude[i]));
  return err / want.max_abs();
}

cplx gamma2(double k) { return std::exp(kI * kPi / 4.0) / std::sqrt(8 * kPi * k); }

}  // namespace

TEST_SUITE("bie") {
  TEST_CASE("circle trace matches the modal scattered field") {
    const double rho = 0.5;
    const auto w = wave2(2.0, 0.4);
    const auto sol = assemble_and_solve(BoundaryCurve::circle(rho, 256), w);
    CHECK(sol.residual <= 1e-12);
    const auto modal = mie::coeffs_sound_hard(Dimension::two, w, rho);
    double err = 0.0, scale = 0.0;
    for (std::size_t j = 0; j < sol.trace.size(); ++j) {
      const cplx want = mie::scattered_field_at(modal, rho, sol.params[j] - 0.4);
      err = std::max(err, std::abs(sol.trace[j] - want));
      scale = std::max(scale, std::abs(want));
    }
    CHECK(err / scale <= 1e-8);
  }

  TEST_CASE("zero data gives zero density and zero far field") {
    const auto curve = BoundaryCurve::kite(64);
    const std::vector<cplx> zeros(64, cplx{});
    const auto sol = assemble_and_solve(curve, 2.0, zeros);
    for (const cplx& v : sol.trace) CHECK(v == cplx{});
    const auto angles = mie::observation_angles(Dimension::two, 10);
    for (const cplx& a : far_field_from_density(sol, wave2(2.0), angles).amplitude) CHECK(a == cplx{});
    const std::vector<cplx> z16(16, cplx{});
    for (const cplx& a : far_field_from_cauchy_data(4.0, z16, z16, wave2(2.0), angles).amplitude) CHECK(a == cplx{});
  }

  TEST_CASE("circle far field agrees with the modal solution") {
    const auto angles = mie::observation_angles(Dimension::two, 100);
    for (double rho : {0.5, 0.1, 0.01}) {
      for (double k : {1.0, 2.0, 5.0}) {
        const auto w = wave2(k);
        const auto bie_ff = far_field_from_density(assemble_and_solve(BoundaryCurve::circle(rho, 256), w), w, angles);
        const auto mie_ff = mie::far_field(mie::coeffs_sound_hard(Dimension::two, w, rho), angles);
        CAPTURE(rho);
        CAPTURE(k);
        CHECK(max_rel(bie_ff, mie_ff) <= 1e-6);
      }
    }
  }

  TEST_CASE("incident-only term equals the closed-form disk integral") {
    const double rho = 0.7, k = 2.0;
    const auto w = wave2(k, 0.3);
    const auto full = assemble_and_solve(BoundaryCurve::circle(rho, 128), w);
    DensitySolution only = full;
    std::fill(only.trace.begin(), only.trace.end(), cplx{});
    const auto angles = mie::observation_angles(Dimension::two, 37);
    const auto ff = far_field_from_density(only, w, angles);
    for (std::size_t i = 0; i < angles.size(); ++i) {
      const double t = angles[i] + 0.3;
      const Eigen::Vector2d xhat(std::cos(t), std::sin(t));
      const Eigen::Vector2d d(w.d(0), w.d(1));
      const double wn = k * (d - xhat).norm();
      const double disk = wn > 1e-12 ? 2 * kPi * rho * std::cyl_bessel_j(1.0, wn * rho) / wn : kPi * rho * rho;
      const cplx want = gamma2(k) * k * k * (d.dot(xhat) - 1.0) * disk;
      CHECK(std::abs(ff.amplitude[i] - want) <= 1e-10 * std::max(std::abs(want), 1e-3));
    }
  }

  TEST_CASE("kite self-convergence") {
    const auto w = wave2(2.0);
    const auto angles = mie::observation_angles(Dimension::two, 100);
    const auto a = far_field_from_density(assemble_and_solve(BoundaryCurve::kite(256), w), w, angles);
    const auto b = far_field_from_density(assemble_and_solve(BoundaryCurve::kite(512), w), w, angles);
    CHECK(max_rel(a, b) * b.max_abs() <= 1e-9);
  }

  TEST_CASE("spectral convergence on the kite") {
    const auto w = wave2(2.0);
    const auto angles = mie::observation_angles(Dimension::two, 50);
    const auto ref = far_field_from_density(assemble_and_solve(BoundaryCurve::kite(256), w), w, angles);
    std::vector<double> err;
    for (int n : {12, 24, 40, 80}) err.push_back(max_rel(far_field_from_density(assemble_and_solve(BoundaryCurve::kite(n), w), w, angles), ref));
    for (std::size_t i = 1; i < err.size(); ++i) CHECK(err[i] < err[i - 1]);
    // The effective algebraic order over a doubling keeps growing with n,
    // which no fixed algebraic rate does.
    const double p_low = std::log(err[0] / err[1]) / std::log(2.0);
    const double p_high = std::log(err[2] / err[3]) / std::log(2.0);
    CAPTURE(p_low);
    CAPTURE(p_high);
    CHECK(p_high > p_low + 4.0);
    CHECK(err[3] < 1e-11);
  }

  TEST_CASE("Cauchy data on an enclosing circle") {
    const double R3 = 4.0, rho = 0.5, k = 2.0;
    const auto w = wave2(k);
    const auto modal = mie::coeffs_sound_hard(Dimension::two, w, rho);
    const int m = 128;
    std::vector<cplx> u(m), du(m);
    for (int j = 0; j < m; ++j) {
      const double t = 2 * kPi * j / m;
      const auto total = mie::field_in_region(modal, mie::Region::exterior, R3, t);
      const cplx inc = std::exp(kI * (k * R3 * std::cos(t)));
      u[j] = total.value - inc;
      du[j] = total.radial_derivative - kI * k * std::cos(t) * inc;
    }
    const auto angles = mie::observation_angles(Dimension::two, 100);
    CHECK(max_rel(far_field_from_cauchy_data(R3, u, du, w, angles), mie::far_field(modal, angles)) <= 1e-8);
    std::vector<cplx> shorter(m - 1);
    CHECK_THROWS_AS(far_field_from_cauchy_data(R3, u, shorter, w, angles), Error);
  }

  TEST_CASE("radiating point source") {
    const double R3 = 4.0, k = 3.0;
    const Eigen::Vector2d y0(0.3, -0.2);
    const auto w = wave2(k, 1.0);
    const int m = 160;
    std::vector<cplx> u(m), du(m);
    for (int j = 0; j < m; ++j) {
      const double t = 2 * kPi * j / m;
      const Eigen::Vector2d nu(std::cos(t), std::sin(t));
      const Eigen::Vector2d diff = R3 * nu - y0;
      const double r = diff.norm();
      u[j] = kI / 4.0 * cplx(std::cyl_bessel_j(0.0, k * r), std::cyl_neumann(0.0, k * r));
      du[j] = -kI * k / 4.0 * cplx(std::cyl_bessel_j(1.0, k * r), std::cyl_neumann(1.0, k * r)) * diff.dot(nu) / r;
    }
    const auto angles = mie::observation_angles(Dimension::two, 40);
    const auto ff = far_field_from_cauchy_data(R3, u, du, w, angles);
    for (std::size_t i = 0; i < angles.size(); ++i) {
      const double t = angles[i] + 1.0;
      const cplx want = gamma2(k) * std::exp(-kI * k * (std::cos(t) * y0(0) + std::sin(t) * y0(1)));
      CHECK(std::abs(ff.amplitude[i] - want) <= 1e-8 * std::abs(want));
    }
  }

  TEST_CASE("Laplace double layer reproduces the Gauss identity") {
    CHECK(laplace_identity_error(BoundaryCurve::circle(0.8, 64)) <= 1e-12);
    CHECK(laplace_identity_error(BoundaryCurve::kite(128)) <= 1e-10);
  }

  TEST_CASE("resonance and input validation") {
    // k = first zero of J_0 on the unit circle: the direct equation is singular.
    bool flagged = false;
    try {
      assemble_and_solve(BoundaryCurve::circle(1.0, 128), wave2(2.404825557695773));
    } catch (const Error& e) {
      flagged = e.kind() == ErrorKind::resonance;
    }
    CHECK(flagged);
    CHECK_THROWS_AS(assemble_and_solve(BoundaryCurve::circle(1.0, 31), wave2(2.0)), Error);
    CHECK_THROWS_AS(assemble_and_solve(BoundaryCurve::circle(1.0, 4096), wave2(2.0)), Error);
    std::vector<cplx> wrong(10);
    CHECK_THROWS_AS(assemble_and_solve(BoundaryCurve::circle(1.0, 32), 2.0, wrong), Error);
  }
}
