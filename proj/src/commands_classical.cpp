#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <random>
#include <sstream>
#include <vector>

#include "landau/classical.hpp"
#include "landau/commands.hpp"
#include "landau/core.hpp"
#include "landau/entangle.hpp"
#include "landau/hermite.hpp"
#include "landau/io.hpp"

namespace landau {
namespace {

double period_of(const FieldParams& f) {
  const double w = cyclotron_frequency(f);
  return w == 0.0 ? 1.0 : 2.0 * M_PI / std::abs(w);
}

double elapsed_ms(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now() - start)
      .count();
}

std::string format_ms(double ms) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.1f", ms);
  return buf;
}

}  // namespace

Report run_classical_suite(const RunConfig& cfg) {
  Report report("classical", cfg.seed);
  const FieldParams& f = cfg.field;
  const double t_end = 10.0 * period_of(f);
  const auto mag_field = [&f](const Vector6d& z) { return magnetic_eom(z, f); };
  const auto osc_field = [&f](const Vector6d& z) {
    return oscillator_eom(z, f);
  };

  const PhaseState s0{{1.0, 0.5, -0.2}, {0.3, -0.4, 0.25}};
  const double dev = equivalence_deviation(s0, t_end, cfg.dt, f);
  report.add("classical/equivalence", "10 periods, dt=" + format_full(cfg.dt),
             dev, cfg.tolerance("classical-equiv"));

  // Energy drift along each trajectory, relative to the initial value.
  const Trajectory mag = integrate(mag_field, s0.packed(), t_end, cfg.dt);
  const OscillatorState q0 = to_oscillator_frame(s0, 0.0, f);
  const Trajectory osc = integrate(osc_field, q0.packed(), t_end, cfg.dt);
  const double h0 = magnetic_hamiltonian(s0, f);
  const double k0 = oscillator_hamiltonian(q0, f);
  double h_drift = 0.0;
  double k_drift = 0.0;
  for (std::size_t i = 0; i < mag.y.size(); ++i) {
    h_drift = std::max(
        h_drift,
        std::abs(magnetic_hamiltonian(PhaseState::unpack(mag.y[i]), f) - h0));
    k_drift = std::max(
        k_drift,
        std::abs(oscillator_hamiltonian(OscillatorState::unpack(osc.y[i]), f) -
                 k0));
  }
  report.add("classical/energy-h-drift", "relative to t=0",
             h_drift / std::max(1.0, std::abs(h0)),
             cfg.tolerance("energy-drift"));
  report.add("classical/energy-k-drift", "relative to t=0",
             k_drift / std::max(1.0, std::abs(k0)),
             cfg.tolerance("energy-drift"));

  // Step halving: the deviation must shrink like dt^4. The probe runs at
  // the configured step or a coarse floor, whichever keeps the integrator
  // error above roundoff so the ratio is meaningful.
  const double dt_probe = std::max(cfg.dt, 0.02 * period_of(f) / (2.0 * M_PI));
  const double t_probe = 2.0 * period_of(f);
  const double d1 = equivalence_deviation(s0, t_probe, dt_probe, f);
  const double d2 = equivalence_deviation(s0, t_probe, dt_probe / 2.0, f);
  const double ratio = d2 > 0.0 ? d1 / d2 : 16.0;
  report.add("classical/convergence-ratio",
             "halving ratio " + format_full(ratio) +
                 " at dt=" + format_full(dt_probe),
             std::max(ratio / 16.0, 16.0 / ratio) - 1.0,
             cfg.tolerance("convergence"));

  // One-period trajectories and the Kamiltonian residual series.
  const double t_csv = period_of(f);
  const Trajectory mag1 = integrate(mag_field, s0.packed(), t_csv, cfg.dt);
  const Trajectory osc1 = integrate(osc_field, q0.packed(), t_csv, cfg.dt);
  std::filesystem::create_directories(cfg.out_dir);
  write_trajectory_csv(cfg.out_dir + "/trajectory_magnetic.csv", mag1, false);
  write_trajectory_csv(cfg.out_dir + "/trajectory_oscillator.csv", osc1, true);
  {
    std::ostringstream csv;
    csv << "t,kamiltonian_residual\n";
    double worst = 0.0;
    for (std::size_t i = 0; i < mag1.y.size(); i += 50) {
      const PhaseState s = PhaseState::unpack(mag1.y[i]);
      const double r = kamiltonian_residual(s, mag1.t[i], f);
      worst = std::max(worst, r);
      csv << format_full(mag1.t[i]) << ',' << format_full(r) << '\n';
    }
    atomic_write(cfg.out_dir + "/kamiltonian_residual.csv", csv.str());
    report.add("classical/kamiltonian-on-trajectory",
               "sampled along one period", worst, cfg.tolerance("kamiltonian"));
  }
  return report;
}

Report run_canonicity_suite(const RunConfig& cfg) {
  Report report("canonicity", cfg.seed);
  const FieldParams& f = cfg.field;
  const double period = period_of(f);

  double worst_symp = 0.0;
  double worst_t = 0.0;
  for (int i = 0; i < 50; ++i) {
    const double t = -4.0 * period + 8.0 * period * i / 49.0;
    const double r = symplectic_check(t, f);
    if (r > worst_symp) {
      worst_symp = r;
      worst_t = t;
    }
  }
  report.add("canonicity/symplectic",
             "50 times in [-4T,4T], worst at t=" + format_full(worst_t),
             worst_symp, cfg.tolerance("symplectic"));

  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> coord(-2.0, 2.0);
  std::uniform_real_distribution<double> when(-period, period);
  double worst_kam = 0.0;
  double worst_df2 = 0.0;
  for (int i = 0; i < 100; ++i) {
    PhaseState s;
    for (int j = 0; j < 3; ++j) {
      s.x[j] = coord(rng);
      s.p[j] = coord(rng);
    }
    const double t = when(rng);
    worst_kam = std::max(worst_kam, kamiltonian_residual(s, t, f));

    // The analytic time derivative of the generating function against a
    // central difference at fixed (x, P).
    const OscillatorState q = to_oscillator_frame(s, t, f);
    const double h = 1e-6;
    const double fd = (generating_function(s.x, q.p, t + h, f) -
                       generating_function(s.x, q.p, t - h, f)) /
                      (2.0 * h);
    worst_df2 = std::max(worst_df2, std::abs(df2_dt_analytic(s, f) - fd));
  }
  report.add("canonicity/kamiltonian", "100 seeded random states", worst_kam,
             cfg.tolerance("kamiltonian"));
  report.add("canonicity/df2-analytic-vs-fd", "central difference, step 1e-6",
             worst_df2, cfg.tolerance("kamiltonian"));
  return report;
}

Report run_hermite_suite(const RunConfig& cfg) {
  Report report("hermite", cfg.seed);
  const FieldParams& f = cfg.field;
  const double sqrt_pi = std::sqrt(M_PI);

  // Generating-function identity at seeded (s, z) pairs.
  {
    const auto start = std::chrono::steady_clock::now();
    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> s_dist(-1.0, 1.0);
    std::uniform_real_distribution<double> z_dist(-3.0, 3.0);
    double worst = 0.0;
    for (int i = 0; i < 30; ++i) {
      const double s = s_dist(rng);
      const double z = z_dist(rng);
      const double sum = generating_partial_sum(s, z, 40);
      const double target = std::exp(2.0 * s * z - s * s);
      worst = std::max(worst, std::abs(sum - target));
    }
    const double ms = elapsed_ms(start);
    report.add("hermite/generating-function",
               "30 pairs, 40 terms, " + format_ms(ms) + " ms", worst,
               cfg.tolerance("generating-function"));
    report.info("hermite/generating-function-runtime-ms", "budget 1000 ms",
                ms);
  }

  // Orthonormality of the oscillator eigenfunctions. Dressed functions on
  // a trapezoid grid: the integrand decays like e^{-z^2}, so equispaced
  // trapezoid sums converge to machine accuracy, while Gauss-Hermite
  // weights paired with the Gaussian-free chains lose the extreme-node
  // cancellation once the degree grows (the nodes live in the
  // dimensionless variable; the alpha factors cancel the Jacobian).
  const Quadrature quad = gauss_hermite(cfg.quad_order);
  {
    const double h = 0.05, lim = 12.0;
    const int slices = static_cast<int>(std::lround(2.0 * lim / h));
    std::vector<std::vector<double>> dressed(slices + 1);
    for (int i = 0; i <= slices; ++i)
      dressed[i] = hermite_function_all(20, -lim + h * i);
    double worst = 0.0;
    for (int mdeg = 0; mdeg <= 20; ++mdeg) {
      for (int n = mdeg; n <= 20; ++n) {
        double acc = 0.0;
        for (int i = 0; i <= slices; ++i)
          acc += h * dressed[i][mdeg] * dressed[i][n];
        worst = std::max(worst, std::abs(acc - (mdeg == n ? 1.0 : 0.0)));
      }
    }
    report.add("hermite/orthonormality", "m,n <= 20, trapezoid overlap",
               worst, cfg.tolerance("orthonormality"));
  }

  // Eigen-equation residual by central differences.
  {
    const HermiteBasis basis = oscillator_basis(f, 20);
    const double w_osc = std::abs(oscillator_frequency(f));
    const double step = 1e-4;
    double worst = 0.0;
    for (int n : {0, 1, 2, 5, 10, 20}) {
      const double energy = eigen_energy(n, f);
      for (int i = 0; i < 20; ++i) {
        const double x = -2.5 + 5.0 * i / 19.0;
        const double psi = eigenfunction(n, x, basis);
        if (std::abs(psi) < 1e-3) continue;
        const double lap =
            (eigenfunction(n, x + step, basis) - 2.0 * psi +
             eigenfunction(n, x - step, basis)) /
            (step * step);
        const double h_psi = -f.hbar * f.hbar / (2.0 * f.mass) * lap +
                             0.5 * f.mass * w_osc * w_osc * x * x * psi;
        worst = std::max(worst,
                         std::abs(h_psi - energy * psi) / std::abs(energy * psi));
      }
    }
    report.add("hermite/eigen-residual", "n in {0,1,2,5,10,20}, fd step 1e-4",
               worst, cfg.tolerance("eigen-residual"));
  }

  // Quadrature sanity: weight sums and an exact even moment.
  {
    double worst_sum = 0.0;
    for (int order : {1, 5, 32, 64, 128, 300}) {
      const Quadrature q = gauss_hermite(order);
      double sum = 0.0;
      for (double w : q.weights) sum += w;
      worst_sum = std::max(worst_sum, std::abs(sum - sqrt_pi));
    }
    report.add("hermite/weight-sum", "orders {1,5,32,64,128,300} vs sqrt(pi)",
               worst_sum, 1e-12);

    double moment = 0.0;
    for (std::size_t i = 0; i < quad.nodes.size(); ++i)
      moment += quad.weights[i] * std::pow(quad.nodes[i], 8);
    report.add("hermite/moment-z8", "Gaussian 8th moment, 105 sqrt(pi)/16",
               std::abs(moment - 105.0 * sqrt_pi / 16.0), 1e-12);
  }

  // Coefficient extraction: H_10 via the circle-contour trapezoid applied
  // to the generating function, against the recurrence.
  {
    const double z = 0.7;
    const double r = 2.0;
    const int big_m = 64;
    const int n = 10;
    double acc = 0.0;
    for (int k = 0; k < big_m; ++k) {
      const double phi = 2.0 * M_PI * k / big_m;
      const std::complex<double> s =
          r * std::complex<double>(std::cos(phi), std::sin(phi));
      const std::complex<double> gen = std::exp(2.0 * s * z - s * s);
      acc += (gen * std::complex<double>(std::cos(n * phi),
                                         -std::sin(n * phi)))
                 .real();
    }
    double fact = 1.0;
    for (int k = 2; k <= n; ++k) fact *= k;
    const double extracted = fact * acc / (big_m * std::pow(r, n));
    const double target = hermite_poly(n, z);
    report.add("hermite/coefficient-extraction",
               "H_10(0.7) from the generating series",
               std::abs(extracted - target) / std::abs(target), 1e-9);
  }
  return report;
}

Report run_rotation_suite(const RunConfig& cfg) {
  Report report("rotation", cfg.seed);
  const double w = cyclotron_frequency(cfg.field);
  const double w_probe = w == 0.0 ? 1.0 : w;
  double worst = 0.0;
  for (int i = 0; i <= 200; ++i) {
    const double t = (-4.0 * M_PI + 8.0 * M_PI * i / 200.0) / std::abs(w_probe);
    const Eigen::Matrix3d closed = rotation(t, w_probe);
    const Eigen::Matrix3d series =
        matrix_exp_series(Generator3(w_probe).matrix(), t, 1e-14);
    worst = std::max(worst, (closed - series).cwiseAbs().maxCoeff());
  }
  report.add("rotation/closed-vs-series", "201 times, |omega t| <= 4 pi",
             worst, cfg.tolerance("rotation-series"));
  return report;
}

Report run_coefficients_suite(const RunConfig& cfg, int n, int m) {
  Report report("coefficients", cfg.seed);
  std::filesystem::create_directories(cfg.out_dir);
  double worst_unitarity = 0.0;
  double worst_audit = 0.0;
  int flagged = 0;
  for (std::size_t idx = 0; idx < cfg.thetas.size(); ++idx) {
    const double theta = cfg.thetas[idx];
    const CoefficientTable table =
        expand_rotated_state(n, m, theta, cfg.quad_order, cfg.max_quanta);
    const std::string path = cfg.out_dir + "/coefficients_" +
                             std::to_string(n) + "_" + std::to_string(m) +
                             "_theta" + std::to_string(idx) + ".json";
    atomic_write(path, table.to_json());

    const std::string tag = " theta=" + format_full(theta);
    worst_unitarity =
        std::max(worst_unitarity, std::abs(table.sum_sq_oracle() - 1.0));
    worst_audit = std::max(worst_audit, table.max_abs_diff());
    for (const auto& e : table.entries)
      if (e.abs_diff > cfg.tolerance("audit-flag")) ++flagged;
    if (table.accuracy_warning)
      report.info("coefficients/accuracy-warning-theta" + std::to_string(idx),
                  "quadrature order marginal for" + tag, 1.0);
    if (theta == 0.0) {
      double dev = 0.0;
      for (const auto& e : table.entries) {
        const double target = (e.target1 == n && e.target2 == m) ? 1.0 : 0.0;
        dev = std::max(dev, std::abs(e.oracle - target));
      }
      report.add("coefficients/identity-theta" + std::to_string(idx),
                 "oracle at theta=0", dev, cfg.tolerance("identity"));
    }
    const double leak_lo =
        n + m >= 1 ? quanta_leakage(n, m, theta, n + m - 1, cfg.quad_order)
                   : 0.0;
    const double leak_hi =
        quanta_leakage(n, m, theta, n + m + 1, cfg.quad_order);
    report.add("coefficients/leakage-theta" + std::to_string(idx),
               "totals N-1 and N+1" + tag, std::max(leak_lo, leak_hi),
               cfg.tolerance("leakage"));
  }
  report.add("coefficients/unitarity",
             std::to_string(cfg.thetas.size()) + " angles", worst_unitarity,
             cfg.tolerance("unitarity"));
  report.info("coefficients/audit-max-discrepancy",
              "closed form vs oracle; flagged entries: " +
                  std::to_string(flagged),
              worst_audit);

  if (n + m <= 6 && cfg.thetas.size() >= 2) {
    // Composition in the conserved subspace: expanding through an
    // intermediate angle must match the direct single-angle expansion.
    const double t1 = cfg.thetas[0];
    const double t2 = cfg.thetas[1];
    const int total = n + m;
    std::vector<CoefficientTable> step2;
    CoefficientTable direct =
        expand_rotated_state(n, m, t1 + t2, cfg.quad_order, cfg.max_quanta);
    for (int a = 0; a <= total; ++a)
      step2.push_back(expand_rotated_state(a, total - a, t2, cfg.quad_order,
                                           cfg.max_quanta));
    const CoefficientTable first =
        expand_rotated_state(n, m, t1, cfg.quad_order, cfg.max_quanta);
    double worst = 0.0;
    for (int b = 0; b <= total; ++b) {
      double acc = 0.0;
      for (int a = 0; a <= total; ++a)
        acc += first.entries[a].oracle * step2[a].entries[b].oracle;
      worst = std::max(worst, std::abs(acc - direct.entries[b].oracle));
    }
    report.add("coefficients/composition",
               "sequential vs direct, total quanta " + std::to_string(total),
               worst, cfg.tolerance("composition"));
  }
  return report;
}

Report run_entangle_sweep(const RunConfig& cfg, int max_total) {
  Report report("entangle", cfg.seed);
  const auto start = std::chrono::steady_clock::now();
  double worst_unitarity = 0.0;
  double worst_leak = 0.0;
  double worst_identity = 0.0;
  double worst_audit = 0.0;
  int flagged = 0;
  for (int total = 0; total <= max_total; ++total) {
    for (int n = 0; n <= total; ++n) {
      const int m = total - n;
      for (double theta : cfg.thetas) {
        const CoefficientTable table =
            expand_rotated_state(n, m, theta, cfg.quad_order, cfg.max_quanta);
        worst_unitarity =
            std::max(worst_unitarity, std::abs(table.sum_sq_oracle() - 1.0));
        worst_audit = std::max(worst_audit, table.max_abs_diff());
        for (const auto& e : table.entries)
          if (e.abs_diff > cfg.tolerance("audit-flag")) ++flagged;
        if (total >= 1)
          worst_leak = std::max(worst_leak, quanta_leakage(n, m, theta,
                                                           total - 1,
                                                           cfg.quad_order));
        worst_leak = std::max(
            worst_leak, quanta_leakage(n, m, theta, total + 1, cfg.quad_order));
        worst_leak = std::max(
            worst_leak, quanta_leakage(n, m, theta, total + 2, cfg.quad_order));
      }
      const CoefficientTable id =
          expand_rotated_state(n, m, 0.0, cfg.quad_order, cfg.max_quanta);
      for (const auto& e : id.entries) {
        const double target = (e.target1 == n && e.target2 == m) ? 1.0 : 0.0;
        worst_identity = std::max(worst_identity, std::abs(e.oracle - target));
      }
    }
  }
  report.add("entangle/unitarity",
             "totals <= " + std::to_string(max_total) + ", " +
                 std::to_string(cfg.thetas.size()) + " angles",
             worst_unitarity, cfg.tolerance("unitarity"));
  report.add("entangle/leakage", "totals N-1, N+1, N+2", worst_leak,
             cfg.tolerance("leakage"));
  report.add("entangle/identity", "theta=0 against the Kronecker delta",
             worst_identity, cfg.tolerance("identity"));

  // Composition for every source with total quanta <= 6.
  {
    const double t1 = 0.3;
    const double t2 = 0.45;
    double worst = 0.0;
    for (int total = 0; total <= std::min(max_total, 6); ++total) {
      std::vector<CoefficientTable> first;
      std::vector<CoefficientTable> step2;
      std::vector<CoefficientTable> direct;
      for (int a = 0; a <= total; ++a) {
        first.push_back(expand_rotated_state(a, total - a, t1, cfg.quad_order,
                                             cfg.max_quanta));
        step2.push_back(expand_rotated_state(a, total - a, t2, cfg.quad_order,
                                             cfg.max_quanta));
        direct.push_back(expand_rotated_state(a, total - a, t1 + t2,
                                              cfg.quad_order, cfg.max_quanta));
      }
      for (int n = 0; n <= total; ++n) {
        for (int b = 0; b <= total; ++b) {
          double acc = 0.0;
          for (int a = 0; a <= total; ++a)
            acc += first[n].entries[a].oracle * step2[a].entries[b].oracle;
          worst =
              std::max(worst, std::abs(acc - direct[n].entries[b].oracle));
        }
      }
    }
    report.add("entangle/composition", "0.3 then 0.45 vs 0.75, totals <= 6",
               worst, cfg.tolerance("composition"));
  }
  report.info("entangle/audit-max-discrepancy",
              "flagged entries: " + std::to_string(flagged), worst_audit);
  report.info("entangle/runtime-ms", "budget 60000 ms", elapsed_ms(start));
  return report;
}

FockSuperposition parse_state_spec(const std::string& text, double k) {
  FockSuperposition state;
  state.k = k;
  std::stringstream terms(text);
  std::string term;
  while (std::getline(terms, term, ';')) {
    if (term.empty()) continue;
    std::stringstream fields(term);
    std::string field;
    std::vector<double> values;
    while (std::getline(fields, field, ',')) {
      try {
        std::size_t pos = 0;
        values.push_back(std::stod(field, &pos));
        if (pos != field.size()) throw ConfigError("trailing characters");
      } catch (const std::exception&) {
        throw ConfigError("bad state term '" + term + "': field '" + field +
                          "' is not a number");
      }
    }
    if (values.size() != 3 && values.size() != 4)
      throw ConfigError("bad state term '" + term +
                        "': expected n1,n2,re[,im]");
    const double n1 = values[0];
    const double n2 = values[1];
    if (n1 < 0 || n2 < 0 || n1 != std::floor(n1) || n2 != std::floor(n2))
      throw ConfigError("bad state term '" + term +
                        "': levels must be non-negative integers");
    state.terms.emplace_back(
        FockLabel{static_cast<int>(n1), static_cast<int>(n2), k},
        std::complex<double>(values[2], values.size() == 4 ? values[3] : 0.0));
  }
  if (state.terms.empty())
    throw ConfigError("state '" + text + "' has no terms");
  return state;
}

}  // namespace landau
