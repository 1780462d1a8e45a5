#pragma once

#include <complex>
#include <memory>
#include <string>
#include <vector>

#include "landau/core.hpp"
#include "landau/entangle.hpp"
#include "landau/fft2d.hpp"
#include "landau/resample.hpp"

namespace landau {

struct GridSpec {
  int n = 256;        // points per side, >= 16
  double extent = 24.0;  // physical box edge length L
};

/// Complex amplitudes on the uniform transverse grid. Row-major with
/// column = x1 index, row = x2 index; point (r,c) sits at
/// (-L/2 + c dx, -L/2 + r dx), dx = L/N. The longitudinal plane-wave
/// factor e^{i k x3} is carried analytically in k_long.
struct WaveGrid {
  int n = 0;
  double extent = 0.0;
  double k_long = 0.0;
  std::vector<std::complex<double>> amp;
  bool truncation_warning = false;
  double interp_error_bound = 0.0;  // set by the interpolating map path

  double dx() const { return extent / n; }
  double coord(int i) const { return -0.5 * extent + i * dx(); }
  std::complex<double>& at(int row, int col) {
    return amp[static_cast<std::size_t>(row) * n + col];
  }
  const std::complex<double>& at(int row, int col) const {
    return amp[static_cast<std::size_t>(row) * n + col];
  }
};

/// Finite superposition over Fock labels (n1,n2), one shared longitudinal
/// wavenumber.
struct FockSuperposition {
  std::vector<std::pair<FockLabel, std::complex<double>>> terms;
  double k = 0.0;

  /// Scales amplitudes so the squared norm is 1; throws on zero state.
  void normalize();
  double squared_norm() const;
};

/// hbar*omega_osc*(n1+1/2) + hbar*omega_osc*(n2+1/2) + hbar^2 k^2/2m; the
/// oscillator part depends only on omega^2, so |omega_osc| is used.
double spectrum_energy(const FockLabel& label, const FieldParams& f);

/// Pointwise evaluation of the superposition on the grid; raises the
/// truncation warning when the boundary amplitude exceeds 1e-8 of the
/// peak. Throws std::invalid_argument for n < 16 or extent <= 0.
WaveGrid sample_fock(const FockSuperposition& state, const GridSpec& spec,
                     const FieldParams& f);

/// The unitary map T_t: evaluates the oscillator-frame state at rotated
/// coordinates U(-t/2)x. The superposition source is evaluated
/// analytically at the rotated points (exact); the grid source is
/// bilinearly interpolated with an a-priori error bound recorded on the
/// result.
WaveGrid apply_map_t(const FockSuperposition& state, double t, const GridSpec& spec,
                     const FieldParams& f);
WaveGrid apply_map_t(const WaveGrid& grid, double t, const FieldParams& f);

/// Exact oscillator-frame evolution: each amplitude gains
/// e^{-i E(n1,n2,k) t / hbar}.
FockSuperposition propagate_fock(const FockSuperposition& state, double t,
                                 const FieldParams& f);

struct PropagatorOptions {
  int taps = 6;                  // rotation resampling stencil width
  double norm_drift_tol = 1e-6;  // per-step instability threshold
  double spectral_phase_cap = 0.5;   // occupied-bandwidth phase per step
  double rotation_phase_cap = 0.1;   // cap on dt * |omega|
};

/// Split-step propagator for the lab-frame generator: Strang splitting
/// half-kinetic (spectral), full potential (pointwise), full rotation
/// (resampled coordinate rotation by omega dt/2), half-kinetic. Adjacent
/// half-kinetic factors merge inside one advance() call. The longitudinal
/// free phase is exact and applied when the grid is read out.
class SplitStepPropagator {
 public:
  /// Validates the step against the rotation cap (dt|omega| < 0.1) and the
  /// occupied spectral bandwidth of the initial state (phase per step
  /// < 0.5); violations throw std::invalid_argument. Norm drift beyond
  /// norm_drift_tol in one step throws std::runtime_error mid-advance.
  SplitStepPropagator(const WaveGrid& initial, double dt, const FieldParams& f,
                      const PropagatorOptions& opts = {});

  void advance(int steps);
  double time() const { return steps_done_ * dt_; }
  int steps_done() const { return steps_done_; }

  /// Current state including the analytic longitudinal phase.
  WaveGrid grid() const;

 private:
  void kinetic_phase(double step_fraction);

  WaveGrid state_;
  double dt_;
  FieldParams field_;
  PropagatorOptions opts_;
  Fft2d fft_;
  RotationResampler rotate_;
  std::vector<std::complex<double>> scratch_;
  std::vector<double> kinetic_half_re_, kinetic_half_im_;
  int steps_done_ = 0;
  double last_norm_ = 0.0;
};

/// Convenience wrapper: t_end/dt steps (rounded), then read out. t_end = 0
/// returns the input unchanged.
WaveGrid propagate_grid(const WaveGrid& grid, double t_end, double dt,
                        const FieldParams& f, const PropagatorOptions& opts = {});

/// Grid L2 norm dx^2 * sum |psi|^2 and distance sqrt(dx^2 sum |a-b|^2).
double grid_norm(const WaveGrid& grid);
double grid_distance(const WaveGrid& a, const WaveGrid& b);
std::complex<double> grid_inner(const WaveGrid& a, const WaveGrid& b);

/// L2 distance between apply_map_t(propagate_fock(state, t), t) and
/// propagate_grid(apply_map_t(state, 0), t): the dual-path check of the
/// solution mapping.
double consistency_residual(const FockSuperposition& state, double t, double dt,
                            const GridSpec& spec, const FieldParams& f,
                            const PropagatorOptions& opts = {});

/// <psi, H psi> with spectral derivatives: kinetic + isotropic potential +
/// rotation term (omega/2) L_z + analytic longitudinal kinetic part.
double energy_expectation(const WaveGrid& grid, const FieldParams& f);

/// CSV export (columns i,j,re,im) and metadata JSON {"N":..,"L":..,"dx":..}.
void write_grid_csv(const std::string& path, const WaveGrid& grid);
std::string grid_meta_json(const WaveGrid& grid);
/// Density |psi|^2 as an N-row CSV matrix for plotting.
void write_density_csv(const std::string& path, const WaveGrid& grid);

}  // namespace landau
