#include "cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include "CLI11.hpp"
#include "nearcloak/analysis.hpp"
#include "nearcloak/bie.hpp"
#include "nearcloak/error.hpp"
#include "nearcloak/media.hpp"
#include "nearcloak/mie.hpp"

namespace nearcloak::cli {

namespace {

struct IoFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct UsageFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::invalid_parameter:
    case ErrorKind::shape:
    case ErrorKind::domain:
    case ErrorKind::orientation:
      return kInvalidParameter;
    default:
      return kNumericalError;
  }
}

int report(std::ostream& err, int code, std::string_view kind, const std::string& message) {
  nlohmann::json rec{{"error", {{"kind", kind}, {"message", message}, {"exit_code", code}}}};
  err << rec.dump() << '\n';
  return code;
}

// Output sink: "-" is the caller's stream, anything else a file.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (path.empty() || path == "-") return;
    file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
    if (!*file_) throw IoFailure("cannot open output file '" + path + "'");
    stream_ = file_.get();
  }
  std::ostream& get() { return *stream_; }
  void finish(const std::string& path) {
    stream_->flush();
    if (!*stream_) throw IoFailure("failed writing '" + path + "'");
  }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_;
};

Dimension dimension(const ExperimentConfig& c) { return dimension_from_int(c.dim); }

mie::WaveParams wave(const ExperimentConfig& c) {
  const auto dim = dimension(c);
  auto w = mie::WaveParams::along_x(dim, c.k);
  w.d(0) = std::cos(c.incident_angle);
  w.d(1) = std::sin(c.incident_angle);
  w.validate(dim);
  return w;
}

mie::SchemeSpec scheme(const ExperimentConfig& c, const std::string& name) {
  mie::SchemeSpec s;
  s.kind = mie::scheme_from_string(name);
  s.beta_coeff = c.beta;
  s.C = c.C;
  s.delta = c.delta;
  s.a = c.a;
  s.b = c.b;
  if (s.kind == mie::SchemeKind::LayeredCustom)
    s.custom_layer = media::MediumSpec::isotropic(dimension(c), c.layer_sigma, {c.layer_q_re, c.layer_q_im});
  s.validate();
  return s;
}

media::MediumSpec core(const ExperimentConfig& c) {
  return media::MediumSpec::isotropic(dimension(c), c.core_sigma, {c.core_q_re, c.core_q_im});
}

std::vector<double> rho_values(const ExperimentConfig& c) {
  if (!c.rho_list.empty()) return c.rho_list;
  return analysis::geometric_rhos(c.rho_start, c.rho_factor, c.rho_count);
}

analysis::SweepResult run_sweep(const ExperimentConfig& c, const std::string& scheme_name) {
  analysis::SweepOptions opt;
  opt.angle_count = c.angles;
  opt.core_physical = core(c);
  opt.inner_radius = c.r1;
  return analysis::sweep(scheme(c, scheme_name), dimension(c), wave(c), rho_values(c), opt);
}

std::optional<std::size_t> fit_count(const ExperimentConfig& c) {
  if (c.fit_count < 0) throw Error(ErrorKind::invalid_parameter, "fit count must be non-negative");
  if (c.fit_count == 0) return std::nullopt;
  return static_cast<std::size_t>(c.fit_count);
}

void cmd_mie(const ExperimentConfig& c, std::ostream& out) {
  const auto dim = dimension(c);
  const auto sol = mie::solve(dim, wave(c), c.rho, scheme(c, c.scheme), core(c));
  const auto pattern = mie::far_field(sol, mie::observation_angles(dim, c.angles));
  Sink sink(c.output, out);
  analysis::write_far_field_csv(sink.get(), pattern);
  sink.finish(c.output);
}

void cmd_sweep(const ExperimentConfig& c, std::ostream& out) {
  const auto result = run_sweep(c, c.scheme);
  const auto fit = analysis::fit_decay(result, analysis::fit_model_from_string(c.fit), fit_count(c));
  Sink sink(c.output, out);
  analysis::write_sweep_csv(sink.get(), result, fit);
  sink.finish(c.output);
  if (!c.summary.empty()) {
    Sink js(c.summary, out);
    analysis::write_sweep_json(js.get(), result, fit);
    js.finish(c.summary);
  }
}

void cmd_compare(const ExperimentConfig& c, std::ostream& out) {
  const auto a = run_sweep(c, c.scheme);
  const auto b = run_sweep(c, c.scheme_b);
  Sink sink(c.output, out);
  analysis::write_comparison_csv(sink.get(), a, b);
  sink.finish(c.output);
}

void cmd_bie(const ExperimentConfig& c, std::ostream& out) {
  if (c.dim != 2) throw Error(ErrorKind::invalid_parameter, "the boundary integral solver is 2D only");
  bie::BoundaryCurve curve;
  if (c.curve == "circle") {
    curve = bie::BoundaryCurve::circle(c.radius, c.n_points);
  } else if (c.curve == "kite") {
    curve = bie::BoundaryCurve::kite(c.n_points, c.radius);
  } else {
    throw Error(ErrorKind::invalid_parameter, "unknown curve '" + c.curve + "'");
  }
  const auto w = wave(c);
  const auto sol = bie::assemble_and_solve(curve, w);
  const auto pattern = bie::far_field_from_density(sol, w, mie::observation_angles(Dimension::two, c.angles));
  Sink sink(c.output, out);
  analysis::write_far_field_csv(sink.get(), pattern);
  sink.finish(c.output);
}

void cmd_media_sample(const ExperimentConfig& c, std::ostream& out) {
  media::RadialMapSpec map{c.rho, c.r1, c.r2};
  const auto dim = dimension(c);
  const auto grid = media::sample_grid(map, dim, c.cells);
  Sink sink(c.output, out);
  media::write_grid_csv(sink.get(), grid, dim);
  sink.finish(c.output);
}

void dispatch(const ExperimentConfig& c, std::ostream& out) {
  if (c.command == "mie") return cmd_mie(c, out);
  if (c.command == "sweep") return cmd_sweep(c, out);
  if (c.command == "compare") return cmd_compare(c, out);
  if (c.command == "bie") return cmd_bie(c, out);
  if (c.command == "media sample") return cmd_media_sample(c, out);
  if (c.command == "media") throw UsageFailure("media needs a subcommand: sample");
  throw UsageFailure("unknown command '" + c.command + "'");
}

// Finds --config before CLI11 runs so file values become the option defaults.
std::optional<std::string> config_path(int argc, const char* const* argv) {
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--config" && i + 1 < argc) return std::string(argv[i + 1]);
    if (arg.rfind("--config=", 0) == 0) return arg.substr(9);
  }
  return std::nullopt;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoFailure("cannot read config file '" + path + "'");
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::invalid_parameter, std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw Error(ErrorKind::invalid_parameter, "config must be a JSON object");
  const nlohmann::json known = ExperimentConfig{};
  for (const auto& [key, value] : j.items())
    if (!known.contains(key)) throw Error(ErrorKind::invalid_parameter, "unknown config key '" + key + "'");
  try {
    return j.get<ExperimentConfig>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::invalid_parameter, std::string("bad config value: ") + e.what());
  }
}

void add_physics(CLI::App* app, ExperimentConfig& c) {
  app->add_option("--scheme", c.scheme, "ss | sh | fss | fsh | custom");
  app->add_option("--dim", c.dim, "2 or 3");
  app->add_option("--k", c.k, "wavenumber");
  app->add_option("--incident-angle", c.incident_angle, "angle of d from +x (radians)");
  app->add_option("--angles", c.angles, "observation directions");
  app->add_option("--output,-o", c.output, "output path, - for stdout");
  app->add_option("--beta", c.beta, "FSS: q_l = 1 + i beta / rho^2");
  app->add_option("--C", c.C, "FSH: sigma_l = C rho^(2 + 2 delta)");
  app->add_option("--delta", c.delta, "FSH exponent");
  app->add_option("--a", c.a, "FSH: Re q_l");
  app->add_option("--b", c.b, "FSH: Im q_l");
  app->add_option("--layer-sigma", c.layer_sigma, "custom layer sigma (virtual space)");
  app->add_option("--layer-q-re", c.layer_q_re, "custom layer Re q");
  app->add_option("--layer-q-im", c.layer_q_im, "custom layer Im q");
  app->add_option("--core-sigma", c.core_sigma, "cloaked contents sigma (physical space)");
  app->add_option("--core-q-re", c.core_q_re, "cloaked contents Re q");
  app->add_option("--core-q-im", c.core_q_im, "cloaked contents Im q");
}

void add_rho_series(CLI::App* app, ExperimentConfig& c) {
  app->add_option("--rho-start", c.rho_start, "first rho");
  app->add_option("--rho-factor", c.rho_factor, "ratio between consecutive rho");
  app->add_option("--rho-count", c.rho_count, "number of rho values");
  app->add_option("--rho-list", c.rho_list, "explicit decreasing rho values");
  app->add_option("--r1", c.r1, "inner cloak radius (rho must stay below it)");
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  ExperimentConfig cfg;
  try {
    if (auto path = config_path(argc, argv)) cfg = load_config(*path);
  } catch (const IoFailure& e) {
    return report(err, kIoError, "io", e.what());
  } catch (const Error& e) {
    return report(err, kInvalidParameter, to_string(e.kind()), e.what());
  }

  CLI::App app{"Near-cloaking scattering simulator", "nearcloak"};
  app.require_subcommand(0, 1);
  std::string config_file;
  bool dump = false;
  app.add_option("--config", config_file, "JSON config; flags given on the command line override it");
  app.add_flag("--dump-config", dump, "print the effective config as JSON and exit");

  auto* mie_cmd = app.add_subcommand("mie", "far field of one scheme at one rho");
  add_physics(mie_cmd, cfg);
  mie_cmd->add_option("--rho", cfg.rho, "regularisation parameter");

  auto* sweep_cmd = app.add_subcommand("sweep", "max |A| over a rho series with a decay fit");
  add_physics(sweep_cmd, cfg);
  add_rho_series(sweep_cmd, cfg);
  sweep_cmd->add_option("--fit", cfg.fit, "power_law | inverse_log");
  sweep_cmd->add_option("--fit-count", cfg.fit_count, "fit the N smallest rho (0: default)");
  sweep_cmd->add_option("--summary", cfg.summary, "also write a JSON summary here");

  auto* compare_cmd = app.add_subcommand("compare", "per-rho difference of two schemes");
  add_physics(compare_cmd, cfg);
  add_rho_series(compare_cmd, cfg);
  compare_cmd->add_option("--scheme-b", cfg.scheme_b, "second scheme");

  auto* bie_cmd = app.add_subcommand("bie", "boundary integral sound-hard far field (2D)");
  bie_cmd->add_option("--curve", cfg.curve, "circle | kite");
  bie_cmd->add_option("--radius", cfg.radius, "circle radius or kite scale");
  bie_cmd->add_option("--n-points", cfg.n_points, "quadrature nodes (even)");
  bie_cmd->add_option("--k", cfg.k, "wavenumber");
  bie_cmd->add_option("--incident-angle", cfg.incident_angle, "angle of d from +x (radians)");
  bie_cmd->add_option("--angles", cfg.angles, "observation directions");
  bie_cmd->add_option("--output,-o", cfg.output, "output path, - for stdout");

  auto* media_cmd = app.add_subcommand("media", "transformation media");
  auto* sample_cmd = media_cmd->add_subcommand("sample", "sample the cloak medium on a grid");
  sample_cmd->add_option("--rho", cfg.rho, "regularisation parameter");
  sample_cmd->add_option("--r1", cfg.r1, "inner cloak radius");
  sample_cmd->add_option("--r2", cfg.r2, "outer cloak radius");
  sample_cmd->add_option("--cells", cfg.cells, "cells per axis");
  sample_cmd->add_option("--dim", cfg.dim, "2 or 3");
  sample_cmd->add_option("--output,-o", cfg.output, "output path, - for stdout");

  if (argc <= 1) {
    err << app.help();
    return kUsage;
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    return report(err, kParseError, "parse", e.what());
  }

  if (mie_cmd->parsed()) cfg.command = "mie";
  if (sweep_cmd->parsed()) cfg.command = "sweep";
  if (compare_cmd->parsed()) cfg.command = "compare";
  if (bie_cmd->parsed()) cfg.command = "bie";
  if (media_cmd->parsed()) cfg.command = sample_cmd->parsed() ? "media sample" : "media";

  if (dump) {
    out << nlohmann::json(cfg).dump(2) << '\n';
    return kOk;
  }
  if (cfg.command.empty()) {
    err << app.help();
    return kUsage;
  }
  try {
    dispatch(cfg, out);
  } catch (const UsageFailure& e) {
    if (cfg.command == "media") err << media_cmd->help();
    return report(err, cfg.command == "media" ? kUsage : kParseError, "usage", e.what());
  } catch (const IoFailure& e) {
    return report(err, kIoError, "io", e.what());
  } catch (const Error& e) {
    return report(err, exit_code(e.kind()), to_string(e.kind()), e.what());
  } catch (const std::exception& e) {
    return report(err, kNumericalError, "internal", e.what());
  }
  return kOk;
}

}  // namespace nearcloak::cli
