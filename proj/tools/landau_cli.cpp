// Command-line front end: runs the verification suites and writes their
// reports and data files. Exit codes: 0 all checks pass, 1 at least one
// check failed, 2 usage or configuration error.

#include <cmath>
#include <exception>
#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "landau/commands.hpp"
#include "landau/config.hpp"
#include "landau/report.hpp"

namespace {

struct CliOptions {
  std::string config_path;
  std::vector<std::pair<std::string, std::string>> overrides;
  std::vector<std::string> tol_overrides;
};

void add_override_flag(CLI::App& app, CliOptions& opts, const std::string& flag,
                       const std::string& key, const std::string& help) {
  app.add_option_function<std::string>(
         flag,
         [&opts, key](const std::string& value) {
           opts.overrides.emplace_back(key, value);
         },
         help)
      ->expected(1);
}

landau::RunConfig build_config(const CliOptions& opts) {
  landau::RunConfig cfg = landau::load_config(opts.config_path);
  for (const auto& [key, value] : opts.overrides)
    landau::apply_override(cfg, key, value);
  for (const std::string& spec : opts.tol_overrides) {
    const auto eq = spec.find('=');
    if (eq == std::string::npos)
      throw landau::ConfigError("--tol expects name=value, got '" + spec + "'");
    landau::apply_override(cfg, "tol." + spec.substr(0, eq),
                           spec.substr(eq + 1));
  }
  cfg.validate();
  return cfg;
}

int finish(const landau::Report& report, const landau::RunConfig& cfg,
           bool already_written) {
  if (!already_written) report.write(cfg.out_dir, cfg.format);
  std::cout << report.to_text();
  return report.all_pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Verification suites for the magnetic-oscillator equivalence"};
  app.require_subcommand(1);

  CliOptions opts;
  app.add_option("--config", opts.config_path, "key=value configuration file");
  add_override_flag(app, opts, "--out", "out", "output directory");
  add_override_flag(app, opts, "--format", "format", "report format: json|csv");
  add_override_flag(app, opts, "--seed", "seed", "seed for random-state checks");
  add_override_flag(app, opts, "--grid-n", "grid-n", "grid points per side");
  add_override_flag(app, opts, "--grid-l", "grid-l", "grid extent L");
  add_override_flag(app, opts, "--dt", "dt", "integrator / propagator step");
  add_override_flag(app, opts, "--max-quanta", "max-quanta",
                    "expansion cutoff on total quanta");
  add_override_flag(app, opts, "--quad-order", "quad-order",
                    "Gauss-Hermite order");
  add_override_flag(app, opts, "--taps", "taps",
                    "rotation resampling stencil width (4, 5, 6 or 8)");
  add_override_flag(app, opts, "--theta", "theta",
                    "comma-separated angle list for coefficient tables");
  add_override_flag(app, opts, "--q", "q", "charge");
  add_override_flag(app, opts, "--B", "B", "field strength");
  add_override_flag(app, opts, "--mass", "mass", "mass");
  add_override_flag(app, opts, "--c", "c", "speed of light");
  add_override_flag(app, opts, "--hbar", "hbar", "Planck constant (reduced)");
  app.add_option("--tol", opts.tol_overrides,
                 "tolerance override, name=value (repeatable)");

  CLI::App* classical = app.add_subcommand(
      "classical-equiv", "trajectory equivalence and energy conservation");
  CLI::App* canonicity = app.add_subcommand(
      "canonicity", "symplectic and Kamiltonian residuals");
  CLI::App* hermite = app.add_subcommand(
      "hermite-verify", "Hermite recurrence, basis and quadrature checks");

  CLI::App* coefficients = app.add_subcommand(
      "coefficients", "rotated-state expansion tables with closed-form audit");
  int coef_n = 1, coef_m = 0;
  coefficients->add_option("--n", coef_n, "first source quantum number");
  coefficients->add_option("--m", coef_m, "second source quantum number");

  CLI::App* propagate = app.add_subcommand(
      "propagate", "dual-path split-step propagation of a superposition");
  std::string state_spec = "0,0,1";
  double k_long = 0.0;
  double t_end = -1.0;
  propagate->add_option("--state", state_spec,
                        "terms n1,n2,re[,im] separated by ';'");
  propagate->add_option("--k", k_long, "longitudinal wavenumber");
  propagate->add_option("--t-end", t_end,
                        "evolution time (default: one cyclotron period)");

  CLI::App* spectrum = app.add_subcommand(
      "spectrum", "stationarity of mapped eigenstate energies");
  CLI::App* full = app.add_subcommand(
      "report", "every suite at desk scale plus the errata table");

  // Let shared options appear after the subcommand name too.
  for (CLI::App* sub :
       {classical, canonicity, hermite, coefficients, propagate, spectrum, full})
    sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    const landau::RunConfig cfg = build_config(opts);
    if (classical->parsed())
      return finish(landau::run_classical_suite(cfg), cfg, false);
    if (canonicity->parsed())
      return finish(landau::run_canonicity_suite(cfg), cfg, false);
    if (hermite->parsed())
      return finish(landau::run_hermite_suite(cfg), cfg, false);
    if (coefficients->parsed()) {
      if (coef_n < 0 || coef_m < 0 || coef_n + coef_m > cfg.max_quanta)
        throw landau::ConfigError("coefficients: need 0 <= n, m and n+m <= " +
                                  std::to_string(cfg.max_quanta));
      return finish(landau::run_coefficients_suite(cfg, coef_n, coef_m), cfg,
                    false);
    }
    if (propagate->parsed()) {
      const landau::FockSuperposition state =
          landau::parse_state_spec(state_spec, k_long);
      const double w = landau::cyclotron_frequency(cfg.field);
      const double period = w == 0.0 ? 1.0 : 2.0 * M_PI / std::abs(w);
      const double horizon = t_end < 0.0 ? period : t_end;
      return finish(landau::run_propagate_suite(cfg, state, horizon), cfg,
                    false);
    }
    if (spectrum->parsed())
      return finish(landau::run_spectrum_suite(cfg, 3), cfg, false);
    if (full->parsed()) return finish(landau::run_report(cfg), cfg, true);
    std::cerr << "error: no subcommand selected\n";
    return 2;
  } catch (const landau::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
