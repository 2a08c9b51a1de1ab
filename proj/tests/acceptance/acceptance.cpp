// One PASS/FAIL line per acceptance criterion; exits nonzero if any fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "nearcloak/analysis.hpp"
#include "nearcloak/bie.hpp"
#include "nearcloak/media.hpp"
#include "nearcloak/mie.hpp"
#include "nearcloak/specfun.hpp"

using namespace nearcloak;

namespace {

constexpr double kPi = std::numbers::pi;
const cplx kI(0.0, 1.0);

struct Verdict {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!detail.empty()) detail += "; ";
    detail += what;
    if (!ok) {
      pass = false;
      detail += " [fail]";
    }
  }
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::vector<double> dyadic(int from, int to) {
  std::vector<double> out;
  for (int j = from; j <= to; ++j) out.push_back(std::ldexp(1.0, -j));
  return out;
}

mie::SchemeSpec scheme(mie::SchemeKind kind) {
  mie::SchemeSpec s;
  s.kind = kind;
  return s;
}

analysis::SweepOptions opts(Dimension dim) {
  analysis::SweepOptions o;
  o.core_physical = mie::default_core_physical(dim);
  return o;
}

analysis::SweepResult run_sweep(mie::SchemeKind kind, Dimension dim, std::span<const double> rho) {
  return analysis::sweep(scheme(kind), dim, mie::WaveParams::along_x(dim, 2.0), rho, opts(dim));
}

Verdict rate(mie::SchemeKind kind, Dimension dim, double lo, double hi, double time_limit) {
  Verdict v;
  const Stopwatch clock;
  const auto res = run_sweep(kind, dim, dyadic(3, 10));
  const double t = clock.seconds();
  v.require(res.fit.exponent >= lo && res.fit.exponent <= hi, "exponent " + fmt("%.4f", res.fit.exponent));
  if (time_limit > 0) v.require(t < time_limit, "time " + fmt("%.3f", t) + " s");
  return v;
}

Verdict c1() { return rate(mie::SchemeKind::SH, Dimension::two, 1.9, 2.1, 5.0); }
Verdict c2() { return rate(mie::SchemeKind::SH, Dimension::three, 2.9, 3.1, 5.0); }

Verdict c3() {
  Verdict v;
  for (auto dim : {Dimension::two, Dimension::three}) {
    const auto w = mie::WaveParams::along_x(dim, 2.0);
    const auto sol = mie::coeffs_sound_hard(dim, w, 0.01);
    const cplx series = mie::far_field_at(sol, kPi);
    const cplx lead = mie::leading_asymptotic(dim, w, 0.01, kPi);
    const double rel = std::abs(series - lead) / std::abs(lead);
    v.require(rel <= 5e-3, std::to_string(rank(dim)) + "D rel " + fmt("%.3e", rel));
  }
  return v;
}

Verdict c4() {
  Verdict v;
  // k = 2, so k rho <= 0.02 means rho <= 0.01.
  const std::vector<double> rho{0.01, 0.005, 0.0025, 0.00125, 0.000625};
  for (auto dim : {Dimension::two, Dimension::three}) {
    const auto rows = analysis::special_angle_suppression(dim, mie::WaveParams::along_x(dim, 2.0), rho);
    double lo = 1e300, hi = 0.0;
    for (std::size_t i = 1; i < rows.size(); ++i) {
      const double f = rows[i - 1].ratio / rows[i].ratio;
      lo = std::min(lo, f);
      hi = std::max(hi, f);
    }
    v.require(lo >= 3.2 && hi <= 4.8,
              std::to_string(rank(dim)) + "D factor " + fmt("%.3f", lo) + ".." + fmt("%.3f", hi));
  }
  return v;
}

Verdict c5() {
  Verdict v;
  const auto rho = dyadic(4, 12);
  for (auto dim : {Dimension::two, Dimension::three}) {
    const auto w = mie::WaveParams::along_x(dim, 2.0);
    const auto core = mie::default_core_physical(dim);
    std::vector<double> diff;
    bool bounded = true;
    for (double r : rho) {
      const auto a = mie::solve(dim, w, r, scheme(mie::SchemeKind::FSH), core);
      const auto b = mie::coeffs_sound_hard(dim, w, r);
      diff.push_back(std::abs(a.d[0] - b.d[0]));
      if (dim == Dimension::two) {
        const double bound = kPi * w.k * std::abs(std::sqrt(cplx(3.0, 2.0))) * std::pow(r, 2.5);
        bounded = bounded && diff.back() <= bound;
      }
    }
    const double slope = analysis::fit_decay(rho, diff, analysis::FitModel::power_law, rho.size()).exponent;
    const double need = dim == Dimension::two ? 2.4 : 3.4;
    v.require(slope >= need, std::to_string(rank(dim)) + "D slope " + fmt("%.3f", slope));
    if (dim == Dimension::two) v.require(bounded, "2D explicit bound");
  }
  return v;
}

Verdict c6() {
  Verdict v;
  const auto rho = dyadic(3, 10);
  const double e2 = run_sweep(mie::SchemeKind::FSH, Dimension::two, rho).fit.exponent;
  const double e3 = run_sweep(mie::SchemeKind::FSH, Dimension::three, rho).fit.exponent;
  v.require(e2 >= 1.9 && e2 <= 2.1, "2D exponent " + fmt("%.4f", e2));
  v.require(e3 >= 2.9 && e3 <= 3.1, "3D exponent " + fmt("%.4f", e3));
  return v;
}

// Pearson correlation of |A| against 1 / |log10 rho|.
double inverse_log_correlation(std::span<const double> rho, std::span<const double> amp) {
  const std::size_t n = rho.size();
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = 1.0 / std::abs(std::log10(rho[i]));
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < n; ++i) mx += x[i] / n, my += amp[i] / n;
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sxy += (x[i] - mx) * (amp[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (amp[i] - my) * (amp[i] - my);
  }
  return sxy / std::sqrt(sxx * syy);
}

Verdict c7() {
  Verdict v;
  const auto rho = dyadic(4, 10);
  const auto res = run_sweep(mie::SchemeKind::SS, Dimension::two, rho);
  const double r = inverse_log_correlation(rho, res.max_amplitude);
  const auto inv = analysis::fit_decay(res, analysis::FitModel::inverse_log, rho.size());
  const auto pow = analysis::fit_decay(res, analysis::FitModel::power_law, rho.size());
  const double ratio = pow.residual / inv.residual;
  v.require(r >= 0.99, "correlation " + fmt("%.5f", r));
  v.require(ratio >= 10.0, "residual ratio " + fmt("%.1f", ratio));
  return v;
}

Verdict c8() {
  Verdict v;
  const auto rho = dyadic(4, 12);
  for (auto dim : {Dimension::two, Dimension::three}) {
    const auto diff =
        analysis::compare_schemes(run_sweep(mie::SchemeKind::FSS, dim, rho), run_sweep(mie::SchemeKind::SS, dim, rho));
    bool monotone = true;
    for (std::size_t i = 1; i < diff.size(); ++i) monotone = monotone && diff[i] < diff[i - 1];
    v.require(monotone, std::to_string(rank(dim)) + "D monotone, last " + fmt("%.3e", diff.back()));
  }
  return v;
}

double max_rel(const mie::FarFieldPattern& got, const mie::FarFieldPattern& want) {
  double err = 0.0;
  for (std::size_t i = 0; i < want.amplitude.size(); ++i)
    err = std::max(err, std::abs(got.amplitude[i] - want.amplitude[i]));
  return err / want.max_abs();
}

Verdict c9() {
  Verdict v;
  const Stopwatch clock;
  const auto w = mie::WaveParams::along_x(Dimension::two, 2.0);
  const auto angles = mie::observation_angles(Dimension::two, 100);
  const auto circle = bie::far_field_from_density(bie::assemble_and_solve(bie::BoundaryCurve::circle(0.5, 256), w), w, angles);
  const auto modal = mie::far_field(mie::coeffs_sound_hard(Dimension::two, w, 0.5), angles);
  const double circle_err = max_rel(circle, modal);
  const auto a = bie::far_field_from_density(bie::assemble_and_solve(bie::BoundaryCurve::kite(256), w), w, angles);
  const auto b = bie::far_field_from_density(bie::assemble_and_solve(bie::BoundaryCurve::kite(512), w), w, angles);
  double kite_err = 0.0;
  for (std::size_t i = 0; i < a.amplitude.size(); ++i)
    kite_err = std::max(kite_err, std::abs(a.amplitude[i] - b.amplitude[i]));
  const double t = clock.seconds();
  v.require(circle_err <= 1e-6, "circle rel " + fmt("%.2e", circle_err));
  v.require(kite_err <= 1e-9, "kite 256/512 " + fmt("%.2e", kite_err));
  v.require(t < 2.0, "time " + fmt("%.3f", t) + " s");
  return v;
}

Verdict c10() {
  using namespace specfun;
  Verdict v;
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> order(1, 20);
  std::uniform_real_distribution<double> mod(0.1, 30.0), arg(-0.45 * kPi, kPi), upper(0.0, kPi);
  const int samples = 10000;
  double wr_worst = 0.0, rec_worst = 0.0;
  const Stopwatch clock;
  for (int i = 0; i < samples; ++i) {
    const int n = order(rng);
    const cplx z = std::polar(mod(rng), arg(rng));
    const auto jj = cylindrical(Kind::J, n + 1, z);
    const auto hh = cylindrical(Kind::H1, n + 1, z);
    // J Y' - J' Y = (J H' - J' H) / i, evaluated without cancellation; the
    // Wronskian is sampled in the upper half-plane where it is well conditioned.
    const cplx zw = std::polar(std::abs(z), upper(rng));
    const auto jw = cylindrical(Kind::J, n, zw);
    const auto hw = cylindrical(Kind::H1, n, zw);
    const cplx w = ((jw.value[n] * hw.deriv[n] - jw.deriv[n] * hw.value[n]) / ScaledValue(kI)).value();
    const cplx want = 2.0 / (kPi * zw);
    wr_worst = std::max(wr_worst, std::abs(w - want) / std::abs(want));
    for (const auto* f : {&jj.value, &hh.value}) {
      const ScaledValue lhs = (*f)[n - 1] + (*f)[n + 1];
      const ScaledValue rhs = ScaledValue(2.0 * n / z) * (*f)[n];
      const double scale = std::max({lhs.log_abs(), rhs.log_abs(), (*f)[n - 1].log_abs(), (*f)[n + 1].log_abs()});
      rec_worst = std::max(rec_worst, std::exp((lhs - rhs).log_abs() - scale));
    }
  }
  const double t = clock.seconds();

  double asym_worst = 0.0;
  std::uniform_real_distribution<double> re(-40.0, 40.0), im(15.0, 60.0);
  for (int i = 0; i < 500; ++i) {
    const cplx z(re(rng), im(rng));
    for (int n = 0; n <= 3; ++n) {
      const cplx phase = z - n * kPi / 2 - kPi / 4;
      const ScaledValue amp(std::sqrt(2.0 / (kPi * z)));
      const ScaledValue j_lead = amp * ScaledValue::from_parts(std::exp(cplx(0.0, -phase.real())) / 2.0, phase.imag());
      const ScaledValue h_lead = amp * ScaledValue::from_parts(std::exp(cplx(0.0, phase.real())), -phase.imag());
      const double scaled_err = std::max(std::exp((bessel_j(n, z) - j_lead).log_abs() - j_lead.log_abs()),
                                         std::exp((bessel_h1(n, z) - h_lead).log_abs() - h_lead.log_abs()));
      asym_worst = std::max(asym_worst, scaled_err * std::abs(z) / 10.0);
    }
  }

  bool round_trip = true;
  std::uniform_real_distribution<double> u(-1e3, 1e3);
  for (int i = 0; i < 1000; ++i) {
    const cplx x(u(rng), u(rng));
    const ScaledValue s(x);
    round_trip = round_trip && std::abs(ScaledValue(s.value()).mantissa() - s.mantissa()) <= 4e-16 &&
                 std::abs(s.mantissa()) >= 0.5 && std::abs(s.mantissa()) <= 2.0;
  }

  v.require(wr_worst <= 1e-9, "wronskian " + fmt("%.2e", wr_worst));
  v.require(rec_worst <= 1e-9, "recurrence " + fmt("%.2e", rec_worst));
  v.require(asym_worst <= 1.0, "asymptotic err*|z|/10 " + fmt("%.3f", asym_worst));
  v.require(round_trip, "scaled round trip");
  v.require(t < 1.0, "1e4 samples " + fmt("%.3f", t) + " s");
  return v;
}

Verdict c11() {
  using namespace media;
  Verdict v;
  std::mt19937_64 rng(11);
  std::normal_distribution<double> g;
  std::uniform_real_distribution<double> pert(-0.3, 0.3);
  auto direction = [&](int n) {
    Point p(n);
    for (int i = 0; i < n; ++i) p(i) = g(rng);
    return Point(p / p.norm());
  };
  auto jacobian = [&](int n) {
    Eigen::MatrixXd m = Eigen::MatrixXd::Identity(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m(i, j) += pert(rng);
    return m;
  };

  double comp_worst = 0.0, bij_worst = 0.0;
  bool monotone = true, spd = true;
  for (int n : {2, 3}) {
    const auto dim = dimension_from_int(n);
    for (int i = 0; i < 200; ++i) {
      const Eigen::MatrixXd s = jacobian(n);
      const auto m = MediumSpec::from_tensor(s * s.transpose(), {1.3, 0.4});
      const Eigen::MatrixXd F = jacobian(n), G = jacobian(n);
      if (F.determinant() <= 0 || G.determinant() <= 0) continue;
      const auto step = push_forward(push_forward(m, {G, G.determinant()}), {F, F.determinant()});
      const Eigen::MatrixXd FG = F * G;
      const auto direct = push_forward(m, {FG, FG.determinant()});
      comp_worst = std::max({comp_worst, (step.sigma - direct.sigma).norm() / direct.sigma.norm(),
                             std::abs(step.q - direct.q) / std::abs(direct.q)});
    }

    const RadialMapSpec map{0.1, 2.0, 3.0};
    const Point dir = direction(n);
    double prev = 0.0;
    for (int i = 0; i <= 400; ++i) {
      const double r = std::min(map.rho + (map.outer_radius - map.rho) * i / 400.0, map.outer_radius);
      const Point x = r * dir;
      const Point y = radial_blowup(map, x);
      monotone = monotone && y.norm() > prev;
      prev = y.norm();
      bij_worst = std::max(bij_worst, (radial_blowup_inverse(map, y) - x).norm());
    }
    monotone = monotone && std::abs(radial_blowup(map, map.rho * dir).norm() - map.inner_radius) < 1e-12;

    for (const auto& cell : sample_grid(map, dim, 40)) {
      if (!cell.medium) continue;
      const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(cell.medium->sigma);
      spd = spd && (cell.medium->sigma - cell.medium->sigma.transpose()).norm() == 0.0 && eig.eigenvalues().minCoeff() > 0.0;
    }
  }

  // Cloak tensor eigenvalues at |y| = R1 as rho shrinks. In 2D the tangential
  // eigenvalue (R1 / rho) / slope grows like 1/rho; in 3D it is 1 / slope,
  // bounded, while the radial one vanishes like rho^2.
  const auto rho = dyadic(4, 12);
  std::vector<double> largest[2], smallest[2];
  for (int n : {2, 3}) {
    for (double r : rho) {
      const RadialMapSpec map{r, 2.0, 3.0};
      Point y = Point::Zero(n);
      y(0) = map.inner_radius;
      const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(cloak_medium_at(map, y).sigma);
      largest[n - 2].push_back(eig.eigenvalues().maxCoeff());
      smallest[n - 2].push_back(eig.eigenvalues().minCoeff());
    }
  }
  auto fitted = [&](const std::vector<double>& values) {
    return analysis::fit_decay(rho, values, analysis::FitModel::power_law, rho.size()).exponent;
  };
  const double grow2 = fitted(largest[0]), big3 = fitted(largest[1]), small3 = fitted(smallest[1]);

  v.require(comp_worst <= 1e-10, "composition " + fmt("%.2e", comp_worst));
  v.require(monotone && bij_worst <= 1e-12, "bijectivity " + fmt("%.2e", bij_worst));
  v.require(spd, "SPD grid");
  v.require(std::abs(grow2 + 1.0) <= 0.1, "2D largest eigenvalue slope " + fmt("%.4f", grow2));
  v.require(std::abs(big3) <= 0.1 && std::abs(small3 - 2.0) <= 0.1,
            "3D largest/smallest slopes " + fmt("%.4f", big3) + "/" + fmt("%.4f", small3));
  return v;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Verdict()>>> criteria{
      {"2D sound-hard decay rate", c1},
      {"3D sound-hard decay rate", c2},
      {"leading-order constants", c3},
      {"special-angle suppression", c4},
      {"finite sound-hard coefficient convergence", c5},
      {"finite sound-hard near-cloak rate", c6},
      {"sound-soft inverse-log law", c7},
      {"finite sound-soft approaches sound-soft", c8},
      {"boundary integral oracle agreement", c9},
      {"special-function invariants", c10},
      {"transformation-media invariants", c11},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v.pass = false;
      v.detail = std::string("exception: ") + e.what();
    }
    failures += v.pass ? 0 : 1;
    std::printf("%s %2zu %s: %s\n", v.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, v.detail.c_str());
  }
  std::printf("%d of %zu criteria failed\n", failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
