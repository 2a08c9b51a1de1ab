#pragma once

// rho-sweeps of the discrete far-field maximum, decay-law regression, scheme
// comparisons and the CSV/JSON artifacts built from them.

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "nearcloak/mie.hpp"

namespace nearcloak::analysis {

enum class FitModel { power_law, inverse_log };

std::string_view to_string(FitModel model);
FitModel fit_model_from_string(std::string_view name);

/// power_law: log|A| = exponent * log(rho) + intercept.
/// inverse_log: |A| = exponent / |ln rho| + intercept.
/// residual is the RMS relative misfit of the fitted |A| against the data;
/// correlation is Pearson's r of the regressed coordinates.
struct FitResult {
  FitModel model = FitModel::power_law;
  double exponent = 0.0;
  double intercept = 0.0;
  double residual = 0.0;
  double correlation = 0.0;
  std::size_t points_used = 0;
};

struct SweepOptions {
  int angle_count = 100;
  mie::MediumSpec core_physical = mie::default_core_physical(Dimension::two);
  double inner_radius = 2.0;  // every rho must stay below R1
  bool parallel = true;
};

struct SweepResult {
  mie::SchemeSpec scheme;
  Dimension dim = Dimension::two;
  double k = 2.0;
  std::vector<double> rho_values;     // strictly decreasing
  std::vector<double> max_amplitude;  // max over the angle grid of |A|
  FitResult fit;                      // power-law fit with the default range
};

/// start, start*factor, ... (count values).
std::vector<double> geometric_rhos(double start, double factor, int count);

/// Runs the scheme at every rho. The core medium in options is taken in
/// physical space and resized to the caller's dimension when needed.
SweepResult sweep(const mie::SchemeSpec& scheme, Dimension dim, const mie::WaveParams& wave,
                  std::span<const double> rho_values, const SweepOptions& options = {});

/// Default fit range: the ceil(2/3 * count) smallest rho.
std::size_t default_fit_count(std::size_t count);

FitResult fit_decay(std::span<const double> rho, std::span<const double> amplitude, FitModel model,
                    std::optional<std::size_t> use_smallest = std::nullopt);
FitResult fit_decay(const SweepResult& result, FitModel model,
                    std::optional<std::size_t> use_smallest = std::nullopt);

/// | max|A|_a - max|A|_b | per rho.
std::vector<double> compare_schemes(const SweepResult& a, const SweepResult& b);

/// pi/3 in 2D, arccos(2/3) in 3D.
double special_angle(Dimension dim);

struct SuppressionRow {
  double rho = 0.0;
  double special_amplitude = 0.0;
  double max_amplitude = 0.0;
  double ratio = 0.0;
};

/// Sound-hard |A(theta*)| / max|A| per rho.
std::vector<SuppressionRow> special_angle_suppression(Dimension dim, const mie::WaveParams& wave,
                                                      std::span<const double> rho_values, int angle_count = 100);

/// sup over sampled angles of |u^s_a - u^s_b| on |x| = radius.
double near_field_deviation(const mie::ModalSolution& a, const mie::ModalSolution& b, double radius,
                            int sample_count);

/// %.17g, with "nan" / "inf" / "-inf" spelled out.
std::string format_number(double value);

void write_far_field_csv(std::ostream& out, const mie::FarFieldPattern& pattern);
void write_sweep_csv(std::ostream& out, const SweepResult& result, const FitResult& fit);
void write_comparison_csv(std::ostream& out, const SweepResult& a, const SweepResult& b);
void write_suppression_csv(std::ostream& out, std::span<const SuppressionRow> rows);
/// Flat JSON object: scheme, dim, k, model, exponent, residual, correlation.
void write_sweep_json(std::ostream& out, const SweepResult& result, const FitResult& fit);

}  // namespace nearcloak::analysis
