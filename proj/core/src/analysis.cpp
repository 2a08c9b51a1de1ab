#include "nearcloak/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <future>
#include <numbers>
#include <ostream>

#include "nearcloak/error.hpp"

namespace nearcloak::analysis {

namespace {

constexpr double kPi = std::numbers::pi;

std::string annotate(const std::string& message, double rho) {
  return message + " (rho = " + format_number(rho) + ")";
}

mie::MediumSpec core_for(const mie::MediumSpec& core, Dimension dim) {
  if (core.dim() == rank(dim)) return core;
  return mie::MediumSpec::isotropic(dim, core.scalar_sigma(), core.q);
}

double max_far_field(const mie::ModalSolution& sol, std::span<const double> angles) {
  double m = 0.0;
  for (double t : angles) m = std::max(m, std::abs(mie::far_field_at(sol, t)));
  return m;
}

}  // namespace

std::string_view to_string(FitModel model) {
  return model == FitModel::power_law ? "power_law" : "inverse_log";
}

FitModel fit_model_from_string(std::string_view name) {
  if (name == "power_law" || name == "power-law") return FitModel::power_law;
  if (name == "inverse_log" || name == "inverse-log") return FitModel::inverse_log;
  throw Error(ErrorKind::invalid_parameter, "unknown fit model '" + std::string(name) + "'");
}

std::vector<double> geometric_rhos(double start, double factor, int count) {
  if (!(start > 0.0) || !(factor > 0.0 && factor < 1.0) || count < 1)
    throw Error(ErrorKind::invalid_parameter, "rho series needs start > 0, 0 < factor < 1, count >= 1");
  std::vector<double> out;
  double r = start;
  for (int i = 0; i < count; ++i, r *= factor) out.push_back(r);
  return out;
}

SweepResult sweep(const mie::SchemeSpec& scheme, Dimension dim, const mie::WaveParams& wave,
                  std::span<const double> rho_values, const SweepOptions& options) {
  scheme.validate();
  wave.validate(dim);
  if (rho_values.empty()) throw Error(ErrorKind::insufficient_data, "sweep needs at least one rho");
  for (std::size_t i = 0; i < rho_values.size(); ++i) {
    const double r = rho_values[i];
    if (!(r > 0.0) || !(r < options.inner_radius))
      throw Error(ErrorKind::invalid_parameter, annotate("rho must lie in (0, R1)", r));
    if (i > 0 && !(r < rho_values[i - 1]))
      throw Error(ErrorKind::invalid_parameter, "rho values must be strictly decreasing");
  }
  const auto angles = mie::observation_angles(dim, options.angle_count);
  const auto core = core_for(options.core_physical, dim);

  const auto one = [&](double rho) {
    try {
      return max_far_field(mie::solve(dim, wave, rho, scheme, core), angles);
    } catch (const Error& e) {
      throw Error(e.kind(), annotate(e.what(), rho));
    }
  };

  SweepResult out;
  out.scheme = scheme;
  out.dim = dim;
  out.k = wave.k;
  out.rho_values.assign(rho_values.begin(), rho_values.end());
  if (options.parallel && rho_values.size() > 1) {
    std::vector<std::future<double>> jobs;
    for (double r : rho_values) jobs.push_back(std::async(std::launch::async, one, r));
    for (auto& j : jobs) out.max_amplitude.push_back(j.get());
  } else {
    for (double r : rho_values) out.max_amplitude.push_back(one(r));
  }
  if (out.rho_values.size() >= 3) out.fit = fit_decay(out, FitModel::power_law);
  return out;
}

std::size_t default_fit_count(std::size_t count) { return (2 * count + 2) / 3; }

FitResult fit_decay(std::span<const double> rho, std::span<const double> amplitude, FitModel model,
                    std::optional<std::size_t> use_smallest) {
  if (rho.size() != amplitude.size()) throw Error(ErrorKind::shape, "rho and amplitude lengths differ");
  const std::size_t used = use_smallest.value_or(default_fit_count(rho.size()));
  if (used < 3 || used > rho.size()) throw Error(ErrorKind::insufficient_data, "fit needs at least 3 points");

  // Take the `used` smallest rho values regardless of input order.
  std::vector<std::size_t> order(rho.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return rho[a] < rho[b]; });
  order.resize(used);

  std::vector<double> x, y;
  for (std::size_t i : order) {
    const double r = rho[i], a = amplitude[i];
    if (!(r > 0.0) || !(a > 0.0) || !std::isfinite(a))
      throw Error(ErrorKind::invalid_parameter, "fit needs positive rho and amplitude");
    if (model == FitModel::power_law) {
      x.push_back(std::log(r));
      y.push_back(std::log(a));
    } else {
      if (r == 1.0) throw Error(ErrorKind::invalid_parameter, "inverse-log fit is singular at rho = 1");
      x.push_back(1.0 / std::abs(std::log(r)));
      y.push_back(a);
    }
  }

  const double n = static_cast<double>(used);
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < used; ++i) mx += x[i], my += y[i];
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < used; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (!(sxx > 0.0)) throw Error(ErrorKind::insufficient_data, "fit needs distinct rho values");

  FitResult out;
  out.model = model;
  out.points_used = used;
  out.exponent = sxy / sxx;
  out.intercept = my - out.exponent * mx;
  out.correlation = syy > 0.0 ? sxy / std::sqrt(sxx * syy) : 1.0;
  double ss = 0.0;
  for (std::size_t i = 0; i < used; ++i) {
    const double pred = out.intercept + out.exponent * x[i];
    const double fitted = model == FitModel::power_law ? std::exp(pred) : pred;
    const double actual = model == FitModel::power_law ? std::exp(y[i]) : y[i];
    ss += std::pow((fitted - actual) / actual, 2);
  }
  out.residual = std::sqrt(ss / n);
  return out;
}

FitResult fit_decay(const SweepResult& result, FitModel model, std::optional<std::size_t> use_smallest) {
  return fit_decay(result.rho_values, result.max_amplitude, model, use_smallest);
}

std::vector<double> compare_schemes(const SweepResult& a, const SweepResult& b) {
  if (a.rho_values != b.rho_values) throw Error(ErrorKind::shape, "sweeps use different rho grids");
  std::vector<double> out;
  for (std::size_t i = 0; i < a.rho_values.size(); ++i)
    out.push_back(std::abs(a.max_amplitude[i] - b.max_amplitude[i]));
  return out;
}

double special_angle(Dimension dim) {
  return dim == Dimension::two ? kPi / 3 : std::acos(2.0 / 3.0);
}

std::vector<SuppressionRow> special_angle_suppression(Dimension dim, const mie::WaveParams& wave,
                                                      std::span<const double> rho_values, int angle_count) {
  const auto angles = mie::observation_angles(dim, angle_count);
  const double theta = special_angle(dim);
  std::vector<SuppressionRow> out;
  for (double rho : rho_values) {
    const auto sol = mie::coeffs_sound_hard(dim, wave, rho);
    SuppressionRow row;
    row.rho = rho;
    row.special_amplitude = std::abs(mie::far_field_at(sol, theta));
    row.max_amplitude = max_far_field(sol, angles);
    row.ratio = row.special_amplitude / row.max_amplitude;
    out.push_back(row);
  }
  return out;
}

double near_field_deviation(const mie::ModalSolution& a, const mie::ModalSolution& b, double radius,
                            int sample_count) {
  if (a.dim != b.dim || a.k != b.k) throw Error(ErrorKind::shape, "solutions use different dimension or k");
  if (!(radius >= std::max(a.rho, b.rho)))
    throw Error(ErrorKind::domain, "radius lies inside a scatterer");
  double worst = 0.0;
  for (double t : mie::observation_angles(a.dim, sample_count))
    worst = std::max(worst, std::abs(mie::scattered_field_at(a, radius, t) - mie::scattered_field_at(b, radius, t)));
  return worst;
}

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

void write_far_field_csv(std::ostream& out, const mie::FarFieldPattern& p) {
  out << "# nearcloak-csv v1 far_field\n";
  out << "theta,re_A,im_A,abs_A\n";
  for (std::size_t i = 0; i < p.angles.size(); ++i) {
    const cplx a = p.amplitude[i];
    out << format_number(p.angles[i]) << ',' << format_number(a.real()) << ',' << format_number(a.imag()) << ','
        << format_number(std::abs(a)) << '\n';
  }
}

void write_sweep_csv(std::ostream& out, const SweepResult& r, const FitResult& fit) {
  out << "# nearcloak-csv v1 sweep\n";
  out << "rho,max_abs_A\n";
  for (std::size_t i = 0; i < r.rho_values.size(); ++i)
    out << format_number(r.rho_values[i]) << ',' << format_number(r.max_amplitude[i]) << '\n';
  out << "# model," << to_string(fit.model) << '\n';
  out << "# fitted_exponent," << format_number(fit.exponent) << '\n';
  out << "# fit_residual," << format_number(fit.residual) << '\n';
  out << "# correlation," << format_number(fit.correlation) << '\n';
  out << "# points_used," << fit.points_used << '\n';
}

void write_comparison_csv(std::ostream& out, const SweepResult& a, const SweepResult& b) {
  const auto diff = compare_schemes(a, b);
  out << "# nearcloak-csv v1 compare\n";
  out << "rho,max_abs_A_" << mie::to_string(a.scheme.kind) << ",max_abs_A_" << mie::to_string(b.scheme.kind)
      << ",abs_difference\n";
  for (std::size_t i = 0; i < diff.size(); ++i)
    out << format_number(a.rho_values[i]) << ',' << format_number(a.max_amplitude[i]) << ','
        << format_number(b.max_amplitude[i]) << ',' << format_number(diff[i]) << '\n';
}

void write_suppression_csv(std::ostream& out, std::span<const SuppressionRow> rows) {
  out << "# nearcloak-csv v1 suppression\n";
  out << "rho,abs_A_special,max_abs_A,ratio\n";
  for (const auto& r : rows)
    out << format_number(r.rho) << ',' << format_number(r.special_amplitude) << ','
        << format_number(r.max_amplitude) << ',' << format_number(r.ratio) << '\n';
}

void write_sweep_json(std::ostream& out, const SweepResult& r, const FitResult& fit) {
  out << "{\"scheme\":\"" << mie::to_string(r.scheme.kind) << "\",\"dim\":" << rank(r.dim)
      << ",\"k\":" << format_number(r.k) << ",\"model\":\"" << to_string(fit.model)
      << "\",\"exponent\":" << format_number(fit.exponent) << ",\"residual\":" << format_number(fit.residual)
      << ",\"correlation\":" << format_number(fit.correlation) << ",\"points_used\":" << fit.points_used << "}\n";
}

}  // namespace nearcloak::analysis
