#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

namespace nearcloak::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kUsage = 1;
inline constexpr int kParseError = 2;   // unknown subcommand or malformed flags
inline constexpr int kInvalidParameter = 3;
inline constexpr int kIoError = 4;
inline constexpr int kNumericalError = 5;

/// Every knob of every subcommand. Flags override values loaded from --config.
struct ExperimentConfig {
  std::string command;        // mie | sweep | bie | media | compare
  std::string scheme = "sh";  // ss | sh | fss | fsh | custom
  std::string scheme_b = "ss";
  int dim = 2;
  double k = 2.0;
  double incident_angle = 0.0;  // d = (cos, sin[, 0])
  double rho = 0.01;
  double rho_start = 0.5;
  double rho_factor = 0.5;
  int rho_count = 8;
  std::vector<double> rho_list;  // overrides the geometric series when non-empty
  int angles = 100;
  std::string fit = "power_law";
  int fit_count = 0;  // 0: default range
  std::string output = "-";
  std::string summary;  // optional JSON summary path (sweep)

  double beta = 2.5;
  double C = 1.0;
  double delta = 0.5;
  double a = 3.0;
  double b = 2.0;
  double layer_sigma = 1.0;  // custom scheme, virtual space
  double layer_q_re = 1.0;
  double layer_q_im = 0.0;
  double core_sigma = 1.0;  // physical space
  double core_q_re = 5.0;
  double core_q_im = 0.0;

  std::string curve = "circle";  // circle | kite
  double radius = 0.5;           // circle radius or kite scale
  int n_points = 256;

  double r1 = 2.0;
  double r2 = 3.0;
  int cells = 64;
};

NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE_WITH_DEFAULT(ExperimentConfig, command, scheme, scheme_b, dim, k, incident_angle,
                                                rho, rho_start, rho_factor, rho_count, rho_list, angles, fit,
                                                fit_count, output, summary, beta, C, delta, a, b, layer_sigma,
                                                layer_q_re, layer_q_im, core_sigma, core_q_re, core_q_im, curve,
                                                radius, n_points, r1, r2, cells)

/// Runs the tool; CSV goes to `out` when the output path is "-".
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace nearcloak::cli
