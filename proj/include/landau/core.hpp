#pragma once

#include <Eigen/Dense>

namespace landau {

/// Charge, mass, field strength and unit constants for a particle in a
/// uniform magnetic field along z. Gaussian-style convention: the
/// cyclotron frequency is q*B/(m*c).
struct FieldParams {
  double charge = 1.0;
  double mass = 1.0;
  double field = 2.0;
  double light_speed = 1.0;
  double hbar = 1.0;
};

/// q*B/(m*c). Throws std::invalid_argument when mass or light_speed <= 0.
double cyclotron_frequency(const FieldParams& f);

/// Oscillator frequency of the equivalent system: half the cyclotron
/// frequency.
double oscillator_frequency(const FieldParams& f);

/// Antisymmetric generator Omega of the field rotation. For a z-aligned
/// field the transverse block is [[0, -w], [w, 0]] and the third row and
/// column vanish; the general constructor builds the cross-product matrix
/// of an arbitrary frequency vector.
class Generator3 {
 public:
  explicit Generator3(double omega_z);
  explicit Generator3(const Eigen::Vector3d& omega);

  const Eigen::Matrix3d& matrix() const { return mat_; }
  const Eigen::Vector3d& omega() const { return omega_; }

 private:
  Eigen::Vector3d omega_;
  Eigen::Matrix3d mat_;
};

/// Orthogonal rotation U(t) = exp(t*Omega) for the z-aligned generator,
/// carrying its angle omega*t. Closed form: transverse block
/// [[cos, -sin], [sin, cos]], unity on the z axis.
class Rotation3 {
 public:
  Rotation3(double t, double omega_z);

  const Eigen::Matrix3d& matrix() const { return mat_; }
  double angle() const { return angle_; }

  Eigen::Vector3d operator*(const Eigen::Vector3d& v) const { return mat_ * v; }

 private:
  double angle_;
  Eigen::Matrix3d mat_;
};

/// exp(t*Omega) in closed form for a z-aligned generator.
Eigen::Matrix3d rotation(double t, double omega_z);

/// Planar rotation [[cos a, -sin a], [sin a, cos a]].
Eigen::Matrix2d rotation2(double angle);

/// Truncated power series for exp(t*M); independent oracle for `rotation`.
/// Terms are added until the term norm falls below tol (tol > 0 required);
/// throws std::runtime_error if 200 terms do not reach it.
Eigen::Matrix3d matrix_exp_series(const Eigen::Matrix3d& m, double t, double tol);

}  // namespace landau
