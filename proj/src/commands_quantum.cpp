#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include "landau/classical.hpp"
#include "landau/commands.hpp"
#include "landau/core.hpp"
#include "landau/hermite.hpp"
#include "landau/io.hpp"
#include "landau/quantum_grid.hpp"

namespace landau {
namespace {

double elapsed_ms(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now() - start)
      .count();
}

double period_of(const FieldParams& f) {
  const double w = cyclotron_frequency(f);
  return w == 0.0 ? 1.0 : 2.0 * M_PI / std::abs(w);
}

/// The five pinned superpositions (total quanta <= 3) used by the heavy
/// dual-path block; deterministic so reports reproduce bit-for-bit.
std::vector<std::pair<std::string, FockSuperposition>> pinned_states() {
  using C = std::complex<double>;
  std::vector<std::pair<std::string, FockSuperposition>> out;
  auto push = [&out](const std::string& name,
                     std::vector<std::pair<FockLabel, C>> terms) {
    FockSuperposition s;
    s.terms = std::move(terms);
    s.normalize();
    out.emplace_back(name, std::move(s));
  };
  push("ground", {{{0, 0, 0.0}, C(1.0, 0.0)}});
  push("one-plus-one", {{{1, 0, 0.0}, C(1.0, 0.0)}, {{0, 1, 0.0}, C(1.0, 0.0)}});
  push("two-mixed", {{{1, 1, 0.0}, C(1.0, 0.0)}, {{2, 0, 0.0}, C(0.0, 0.5)}});
  push("three-mixed", {{{3, 0, 0.0}, C(1.0, 0.0)},
                       {{0, 3, 0.0}, C(0.3, 0.4)},
                       {{1, 1, 0.0}, C(0.2, 0.0)}});
  push("two-one", {{{2, 1, 0.0}, C(1.0, 0.0)}, {{0, 0, 0.0}, C(0.0, 0.6)}});
  return out;
}

}  // namespace

Report run_propagate_suite(const RunConfig& cfg, const FockSuperposition& state_in,
                           double t_end) {
  Report report("propagate", cfg.seed);
  if (!(t_end >= 0.0)) throw ConfigError("propagate: t-end must be >= 0");
  const FieldParams& f = cfg.field;
  FockSuperposition state = state_in;
  state.normalize();
  const GridSpec gspec{cfg.grid_n, cfg.grid_l};
  PropagatorOptions opts;
  opts.taps = cfg.taps;
  std::filesystem::create_directories(cfg.out_dir);

  const WaveGrid initial = apply_map_t(state, 0.0, gspec, f);
  const double norm0 = grid_norm(initial);

  std::ostringstream res_csv, norm_csv, en_csv;
  res_csv << "t,residual\n";
  norm_csv << "t,norm\n";
  en_csv << "t,energy\n";
  double worst_res = 0.0;
  double worst_drift = 0.0;
  WaveGrid last = initial;
  const auto record = [&](const WaveGrid& g, double t) {
    const WaveGrid exact = apply_map_t(propagate_fock(state, t, f), t, gspec, f);
    const double res = grid_distance(exact, g);
    const double nrm = grid_norm(g);
    worst_res = std::max(worst_res, res);
    worst_drift = std::max(worst_drift, std::abs(nrm - norm0));
    res_csv << format_full(t) << ',' << format_full(res) << '\n';
    norm_csv << format_full(t) << ',' << format_full(nrm) << '\n';
    en_csv << format_full(t) << ','
           << format_full(energy_expectation(g, f)) << '\n';
  };
  record(initial, 0.0);

  const long long total_steps = std::llround(t_end / cfg.dt);
  std::string diagnostic;
  if (total_steps > 0) {
    try {
      SplitStepPropagator prop(initial, cfg.dt, f, opts);
      const long long n_check = std::min<long long>(16, total_steps);
      long long done = 0;
      for (long long c = 1; c <= n_check; ++c) {
        const long long target = total_steps * c / n_check;
        prop.advance(static_cast<int>(target - done));
        done = target;
        last = prop.grid();
        record(last, done * cfg.dt);
      }
    } catch (const std::exception& e) {
      diagnostic = e.what();
    }
  }

  atomic_write(cfg.out_dir + "/residual_series.csv", res_csv.str());
  atomic_write(cfg.out_dir + "/norm_series.csv", norm_csv.str());
  atomic_write(cfg.out_dir + "/energy_series.csv", en_csv.str());
  write_density_csv(cfg.out_dir + "/density_final.csv", last);
  write_grid_csv(cfg.out_dir + "/grid_final.csv", last);
  atomic_write(cfg.out_dir + "/grid_final_meta.json", grid_meta_json(last));

  if (diagnostic.empty()) {
    report.add("propagate/stability", "max |norm(t) - norm(0)| over the run",
               worst_drift, cfg.tolerance("norm-drift"));
  } else {
    report.add("propagate/stability", "propagator error: " + diagnostic, 1.0,
               cfg.tolerance("norm-drift"));
  }
  report.add("propagate/consistency",
             "dual-path residual, t_end=" + format_full(t_end), worst_res,
             cfg.tolerance("consistency"));
  report.info("propagate/final-energy", "energy_expectation at t_end",
              energy_expectation(last, f));
  return report;
}

Report run_spectrum_suite(const RunConfig& cfg, int max_total) {
  Report report("spectrum", cfg.seed);
  const FieldParams& f = cfg.field;
  const double period = period_of(f);
  const GridSpec gspec{cfg.grid_n, cfg.grid_l};

  std::vector<FockLabel> labels;
  for (int total = 0; total <= max_total; ++total)
    for (int n1 = total; n1 >= 0; --n1) labels.push_back({n1, total - n1, 0.0});
  labels.push_back({0, 0, 1.0});

  std::ostringstream table;
  table << "n1,n2,k,measured,predicted,discrepancy\n";
  for (const FockLabel& label : labels) {
    FockSuperposition state;
    state.k = label.k;
    state.terms.emplace_back(label, std::complex<double>(1.0, 0.0));

    double e0 = 0.0;
    double worst = 0.0;
    for (int i = 0; i < 8; ++i) {
      const double t = period * i / 7.0;
      const WaveGrid g = apply_map_t(propagate_fock(state, t, f), t, gspec, f);
      const double e = energy_expectation(g, f);
      if (i == 0) e0 = e;
      worst = std::max(worst, std::abs(e - e0));
    }
    const double predicted = spectrum_energy(label, f);
    const std::string tag = std::to_string(label.n1) + "-" +
                            std::to_string(label.n2) +
                            (label.k != 0.0 ? "-k" : "");
    report.add("spectrum/stationarity-" + tag,
               "8 times over one period, E(0)=" + format_full(e0), worst,
               cfg.tolerance("stationarity"));
    report.info("spectrum/discrepancy-" + tag,
                "measured " + format_full(e0) + " vs closed form " +
                    format_full(predicted),
                std::abs(e0 - predicted));
    table << label.n1 << ',' << label.n2 << ',' << format_full(label.k) << ','
          << format_full(e0) << ',' << format_full(predicted) << ','
          << format_full(std::abs(e0 - predicted)) << '\n';
  }
  std::filesystem::create_directories(cfg.out_dir);
  atomic_write(cfg.out_dir + "/spectrum_table.csv", table.str());
  return report;
}

Report run_quantum_suite(const RunConfig& cfg) {
  Report report("quantum", cfg.seed);
  const FieldParams& f = cfg.field;
  const double period = period_of(f);
  const GridSpec base{cfg.grid_n, cfg.grid_l};
  PropagatorOptions opts;
  opts.taps = cfg.taps;
  const auto states = pinned_states();

  // Norm preservation of the analytic-resampled map at 20 times.
  {
    const FockSuperposition& probe = states[3].second;
    const WaveGrid g0 = apply_map_t(probe, 0.0, base, f);
    const double n0 = grid_norm(g0);
    double worst = 0.0;
    for (int i = 1; i <= 20; ++i) {
      const double t = -period + 2.0 * period * i / 20.0;
      worst = std::max(
          worst, std::abs(grid_norm(apply_map_t(probe, t, base, f)) - n0));
    }
    report.add("quantum/map-norm", "20 times in [-T,T], mixed 3-quanta state",
               worst, cfg.tolerance("map-norm"));
  }

  // Dual-path consistency over one cyclotron period for the pinned states.
  const auto start = std::chrono::steady_clock::now();
  for (const auto& [name, state] : states) {
    try {
      const double r =
          consistency_residual(state, period, cfg.dt, base, f, opts);
      report.add("quantum/consistency-" + name,
                 "one period, N=" + std::to_string(cfg.grid_n) +
                     ", dt=" + format_full(cfg.dt),
                 r, cfg.tolerance("consistency"));
    } catch (const std::exception& e) {
      report.add("quantum/consistency-" + name,
                 std::string("propagator error: ") + e.what(), 1.0,
                 cfg.tolerance("consistency"));
    }
  }

  // Halving dx on the second state must shrink the residual at least 4x.
  // The pair runs over a shorter window with a halved step so the
  // resampling error stays well above the dt^2 splitting floor on the
  // fine grid; both runs share the window so the ratio is meaningful.
  try {
    const double t_ref = period / 8.0;
    const double dt_ref = cfg.dt / 2.0;
    const GridSpec fine{cfg.grid_n * 2, cfg.grid_l};
    const double r_coarse =
        consistency_residual(states[1].second, t_ref, dt_ref, base, f, opts);
    const double r_fine =
        consistency_residual(states[1].second, t_ref, dt_ref, fine, f, opts);
    report.add("quantum/grid-refinement",
               "N=" + std::to_string(cfg.grid_n) + " residual " +
                   format_full(r_coarse) + ", N=" +
                   std::to_string(fine.n) + " residual " + format_full(r_fine),
               4.0 * r_fine / std::max(r_coarse, 1e-300), 1.0);
  } catch (const std::exception& e) {
    report.add("quantum/grid-refinement",
               std::string("propagator error: ") + e.what(), 1.0, 1.0);
  }
  report.info("quantum/runtime-ms", "budget 180000 ms", elapsed_ms(start));
  return report;
}

namespace {

/// Evidence runs for the errata table. Each entry measures the defect of
/// the printed form against the implemented, verified one and records the
/// tolerance that the printed form violates.
void build_errata(Report& report, const RunConfig& cfg, double audit_max) {
  // Probe parameters chosen so that unit coincidences cannot mask a
  // defect: mass, alpha and omega_osc all differ from 1.
  FieldParams probe;
  probe.charge = 1.0;
  probe.mass = 1.3;
  probe.field = 4.0;
  probe.light_speed = 1.0;
  probe.hbar = 1.0;
  const double w = cyclotron_frequency(probe);
  const double w_osc = oscillator_frequency(probe);

  // Rotation exponential: printed transverse block has +sin in both
  // off-diagonal slots, which is not orthogonal and disagrees with the
  // series for exp(t*Omega).
  {
    double worst = 0.0;
    for (int i = 0; i <= 100; ++i) {
      const double t = (-2.0 * M_PI + 4.0 * M_PI * i / 100.0) / w;
      const double c = std::cos(w * t), s = std::sin(w * t);
      Eigen::Matrix3d printed = Eigen::Matrix3d::Identity();
      printed(0, 0) = c;
      printed(0, 1) = s;
      printed(1, 0) = s;
      printed(1, 1) = c;
      const Eigen::Matrix3d series =
          matrix_exp_series(Generator3(w).matrix(), t, 1e-14);
      worst = std::max(worst, (printed - series).cwiseAbs().maxCoeff());
    }
    report.errata({"rotation-exponential",
                   "transverse block [[cos, +sin], [+sin, cos]]",
                   "transverse block [[cos, -sin], [+sin, cos]] (orthogonal, "
                   "matches the series for the antisymmetric generator)",
                   worst, cfg.tolerance("rotation-series")});
  }

  // Transformed oscillator: printed K has no 1/m on the momenta, uses
  // omega^2 instead of (omega/2)^2, and names an undefined z_3. Evidence:
  // integrating the printed K and comparing with the mapped trajectory of
  // the magnetic problem diverges at once.
  {
    const PhaseState s0{{1.0, 0.5, -0.2}, {0.3, -0.4, 0.25}};
    const double dt = 1e-3;
    const double t_end = 2.0 * M_PI / w;
    const auto printed_field = [&](const Vector6d& z) {
      Vector6d d;
      d[0] = z[3];
      d[1] = z[4];
      d[2] = z[5];
      d[3] = -probe.mass * w * w * z[0];
      d[4] = -probe.mass * w * w * z[1];
      d[5] = 0.0;
      return d;
    };
    const auto mag_field = [&](const Vector6d& z) {
      return magnetic_eom(z, probe);
    };
    const Trajectory mag = integrate(mag_field, s0.packed(), t_end, dt);
    const Trajectory alt = integrate(
        printed_field, to_oscillator_frame(s0, 0.0, probe).packed(), t_end, dt);
    double worst = 0.0;
    for (std::size_t i = 0; i < mag.y.size(); ++i) {
      const OscillatorState mapped =
          to_oscillator_frame(PhaseState::unpack(mag.y[i]), mag.t[i], probe);
      worst = std::max(worst,
                       (mapped.packed() - alt.y[i]).cwiseAbs().maxCoeff());
    }
    report.errata({"oscillator-transform",
                   "Q3 = z3 (z3 undefined); K = (1/2)|Pbar|^2 + "
                   "(m omega^2/2)|Qbar|^2 + (1/2)P3^2",
                   "Q3 = x3; K = (1/2m)|Pbar|^2 + (m/2)(omega/2)^2|Qbar|^2 + "
                   "(1/2m)P3^2",
                   worst, cfg.tolerance("classical-equiv")});
  }

  // Printed eigenfunction: alpha = sqrt(m^(3/2) omega / hbar) with the
  // cyclotron omega, Gaussian e^{-x^2/2} unscaled. Evidence: relative
  // defect of the printed function in the oscillator eigen-equation.
  {
    const double alpha_p = std::sqrt(std::pow(probe.mass, 1.5) * w / probe.hbar);
    const auto psi_printed = [&](double x) {
      const double norm =
          std::sqrt(alpha_p / (std::sqrt(M_PI) * 2.0));  // n=1: 2^1 1!
      return norm * hermite_poly(1, alpha_p * x) * std::exp(-0.5 * x * x);
    };
    const double x = 0.7;
    const double h = 1e-4;
    const double psi = psi_printed(x);
    const double lap = (psi_printed(x + h) - 2.0 * psi + psi_printed(x - h)) /
                       (h * h);
    const double energy = eigen_energy(1, probe);
    const double h_psi = -probe.hbar * probe.hbar / (2.0 * probe.mass) * lap +
                         0.5 * probe.mass * w_osc * w_osc * x * x * psi;
    report.errata({"oscillator-eigenfunction",
                   "alpha = sqrt(m^(3/2) omega/hbar), Gaussian e^{-x^2/2}",
                   "alpha = sqrt(m omega_osc/hbar) with omega_osc = omega/2, "
                   "Gaussian e^{-alpha^2 x^2/2}",
                   std::abs(h_psi - energy * psi) / std::abs(energy * psi),
                   cfg.tolerance("eigen-residual")});
  }

  // Printed spectrum drops the frequency factor on the oscillator quanta.
  {
    FieldParams fp = probe;
    fp.mass = 1.0;  // keep the grid scale simple for the sampled state
    const double wo = std::abs(oscillator_frequency(fp));
    FockSuperposition ground;
    ground.terms.emplace_back(FockLabel{0, 0, 0.0},
                              std::complex<double>(1.0, 0.0));
    const WaveGrid g = sample_fock(ground, GridSpec{64, 16.0}, fp);
    const double measured = energy_expectation(g, fp);
    const double printed = fp.hbar * 1.0;  // hbar(n1+1/2) + hbar(n2+1/2)
    report.errata({"energy-spectrum",
                   "E = hbar(n1+1/2) + hbar(n2+1/2) + hbar^2 k^2/2m",
                   "E = hbar omega_osc (n1+n2+1) + hbar^2 k^2/2m (here "
                   "omega_osc = " +
                       format_full(wo) + ")",
                   std::abs(measured - printed),
                   cfg.tolerance("stationarity")});
  }

  // Printed transformed operator adds a longitudinal term with a single
  // hbar on top of the full Laplacian. Evidence: the longitudinal phase
  // law it implies diverges from the verified dual-path one.
  {
    const double k = 2.0, t = 1.0, m = 1.0;
    const double extra_phase = k * k * t / (2.0 * m);  // (hbar k^2/2m) t/hbar
    const double mismatch =
        std::abs(std::complex<double>(std::cos(extra_phase), std::sin(extra_phase)) -
                 std::complex<double>(1.0, 0.0));
    report.errata({"transformed-operator",
                   "K-hat = -(hbar^2/2m) Laplacian - (hbar/2m) d^2/dQ3^2 + "
                   "(m omega^2/2)|Qbar|^2",
                   "K-hat = -(hbar^2/2m) Laplacian + (m/2)(omega/2)^2|Qbar|^2 "
                   "(no extra longitudinal term)",
                   mismatch, cfg.tolerance("consistency")});
  }

  // Printed unitary kernel e^{iF2} omits /hbar: reconstructing a 1D
  // Gaussian through the printed kernel at hbar = 1/2 lands on a dilated
  // state, not the claimed one. Trapezoid quadrature on a wide grid.
  {
    const double hbar = 0.5;
    const int n = 1024;
    const double x_max = 20.0, p_max = 20.0;
    const double dx = 2.0 * x_max / n, dp = 2.0 * p_max / n;
    const double pi4 = std::pow(M_PI, -0.25);
    std::vector<std::complex<double>> tilde(n, {0.0, 0.0});
    for (int i = 0; i < n; ++i) {
      const double p = -p_max + i * dp;
      std::complex<double> acc(0.0, 0.0);
      for (int j = 0; j < n; ++j) {
        const double q = -x_max + j * dx;
        const double phi = pi4 * std::exp(-0.5 * q * q);
        const double ph = -p * q / hbar;
        acc += phi * std::complex<double>(std::cos(ph), std::sin(ph));
      }
      tilde[i] = acc * dx / std::sqrt(2.0 * M_PI * hbar);
    }
    double dist_sq = 0.0;
    for (int j = 0; j < n; ++j) {
      const double x = -x_max + j * dx;
      std::complex<double> acc(0.0, 0.0);
      for (int i = 0; i < n; ++i) {
        const double p = -p_max + i * dp;
        const double ph = p * x;  // printed kernel: no /hbar
        acc += tilde[i] * std::complex<double>(std::cos(ph), std::sin(ph));
      }
      const std::complex<double> rec = acc * dp / std::sqrt(2.0 * M_PI);
      const double target = pi4 * std::exp(-0.5 * x * x);
      dist_sq += std::norm(rec - target) * dx;
    }
    report.errata({"unitary-map-kernel",
                   "Psi = (2 pi)^{-3/2} integral of Phi-tilde e^{i F2} dP",
                   "kernel e^{i F2/hbar} with prefactor (2 pi hbar)^{-3/2}; "
                   "as printed the t=0 reconstruction misses the state at "
                   "hbar = 1/2",
                   std::sqrt(dist_sq), cfg.tolerance("consistency")});
  }

  // Closed-form expansion coefficients: single monomial with exponents
  // (n1+l1, n2+l2) at angle omega t, plus a normalizer that cannot repair
  // it. The audit tables carry per-entry discrepancies.
  report.errata({"expansion-exponents",
                 "C = cos^(n1+l1)(omega t) sin^(n2+l2)(omega t)",
                 "no single monomial matches the quadrature oracle; see the "
                 "audit tables for per-entry values",
                 audit_max, cfg.tolerance("audit-flag")});
  report.errata({"expansion-normalizer",
                 "D = C sqrt((l1+l2)! ((n1+n2)-(l1+l2))! / (n1! n2!)), with "
                 "stray s1^n1 s2^n2 factors retained in the expansion",
                 "normalization cannot repair the exponents; oracle tables "
                 "stand",
                 audit_max, cfg.tolerance("audit-flag")});
}

}  // namespace

Report run_report(const RunConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();
  Report all("report", cfg.seed);
  all.merge(run_classical_suite(cfg));
  all.merge(run_canonicity_suite(cfg));
  all.merge(run_rotation_suite(cfg));
  all.merge(run_hermite_suite(cfg));
  all.merge(run_coefficients_suite(cfg, 1, 0));
  const Report ent = run_entangle_sweep(cfg, 10);
  all.merge(ent);
  all.merge(run_quantum_suite(cfg));
  all.merge(run_spectrum_suite(cfg, 3));
  {
    FockSuperposition probe;
    probe.terms = {{{1, 0, 0.0}, {1.0, 0.0}}, {{0, 1, 0.0}, {1.0, 0.0}}};
    all.merge(run_propagate_suite(cfg, probe, period_of(cfg.field)));
  }

  double audit_max = 0.0;
  for (const CheckResult& c : ent.checks())
    if (c.id == "entangle/audit-max-discrepancy") audit_max = c.measured;
  build_errata(all, cfg, audit_max);

  all.info("report/runtime-ms", "budget 300000 ms", elapsed_ms(start));
  all.write(cfg.out_dir, cfg.format);
  atomic_write(cfg.out_dir + "/summary.txt", all.to_text());
  return all;
}

}  // namespace landau
