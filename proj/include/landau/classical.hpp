#pragma once

#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "landau/core.hpp"

namespace landau {

using Vector6d = Eigen::Matrix<double, 6, 1>;

/// Lab-frame phase point (x, p) of the magnetic problem.
struct PhaseState {
  Eigen::Vector3d x = Eigen::Vector3d::Zero();
  Eigen::Vector3d p = Eigen::Vector3d::Zero();

  Vector6d packed() const;
  static PhaseState unpack(const Vector6d& z);
};

/// Rotating-frame phase point (q, p) of the equivalent oscillator.
struct OscillatorState {
  Eigen::Vector3d q = Eigen::Vector3d::Zero();
  Eigen::Vector3d p = Eigen::Vector3d::Zero();

  Vector6d packed() const;
  static OscillatorState unpack(const Vector6d& z);
};

/// Magnetic Hamiltonian (1/2m)|p - (m/2) Omega x|^2.
double magnetic_hamiltonian(const PhaseState& s, const FieldParams& f);

/// Oscillator Hamiltonian: transverse harmonic oscillator at half the
/// cyclotron frequency plus free longitudinal motion.
double oscillator_hamiltonian(const OscillatorState& s, const FieldParams& f);

/// Type-2 generating function F2(x, P, t) = <x, U(-t/2) P> of the frame
/// change.
double generating_function(const Eigen::Vector3d& x, const Eigen::Vector3d& big_p,
                           double t, const FieldParams& f);

/// Frame change induced by F2: q = U(t/2) x, p_osc = U(t/2) p.
OscillatorState to_oscillator_frame(const PhaseState& s, double t, const FieldParams& f);
PhaseState from_oscillator_frame(const OscillatorState& s, double t, const FieldParams& f);

/// Hamiltonian vector fields (time-independent in their own frames).
Vector6d magnetic_eom(const Vector6d& z, const FieldParams& f);
Vector6d oscillator_eom(const Vector6d& z, const FieldParams& f);

/// Uniform-step trajectory samples, including the initial point.
struct Trajectory {
  double dt = 0.0;
  std::vector<double> t;
  std::vector<Vector6d> y;
};

/// Classic fixed-step RK4 sampling every step, t in [0, t_end]. Throws
/// std::invalid_argument for dt <= 0 or t_end <= 0 and std::runtime_error
/// naming the step time if the state leaves the finite range.
Trajectory integrate(const std::function<Vector6d(const Vector6d&)>& field,
                     const Vector6d& y0, double t_end, double dt);

/// |K(q,p) - H(x,p) - dF2/dt| at the transformed point; analytically zero.
/// dF2/dt is a central finite difference in t (step 1e-6) at fixed (x, P),
/// not the analytic expression, so the analytic claim can be tested
/// against this independently.
double kamiltonian_residual(const PhaseState& s, double t, const FieldParams& f);

/// Analytic dF2/dt = (1/2)<pbar, Omega0 xbar> expressed through the old
/// momentum p = U(-t/2) P; compared against the finite difference in tests.
double df2_dt_analytic(const PhaseState& s, const FieldParams& f);

/// Max-norm defect |M J M^T - J| of the frame map's Jacobian at time t,
/// with the Jacobian taken by central differences about `base`.
double symplectic_residual(const PhaseState& base, double t, const FieldParams& f,
                           double fd_step = 1e-4);

/// Worst symplectic_residual over a fixed spread of base states (the map
/// is linear, so the spread doubles as a linearity check).
double symplectic_check(double t, const FieldParams& f);

/// Max phase-space deviation between the directly integrated magnetic
/// trajectory and the inverse-mapped oscillator trajectory started from the
/// same state. Both trajectories use the same fixed step.
double equivalence_deviation(const PhaseState& s0, double t_end, double dt,
                             const FieldParams& f);

/// CSV export, 17 significant digits. Columns t,x1,x2,x3,p1,p2,p3 or
/// t,q1,q2,q3,p1,p2,p3. Writes to a temporary file and renames.
void write_trajectory_csv(const std::string& path, const Trajectory& traj,
                          bool oscillator_frame);

}  // namespace landau
