#include "landau/core.hpp"

#include <cmath>
#include <stdexcept>

namespace landau {

double cyclotron_frequency(const FieldParams& f) {
  if (f.mass <= 0.0) throw std::invalid_argument("cyclotron_frequency: mass must be > 0");
  if (f.light_speed <= 0.0) throw std::invalid_argument("cyclotron_frequency: light_speed must be > 0");
  return f.charge * f.field / (f.mass * f.light_speed);
}

double oscillator_frequency(const FieldParams& f) { return 0.5 * cyclotron_frequency(f); }

Generator3::Generator3(double omega_z) : Generator3(Eigen::Vector3d(0.0, 0.0, omega_z)) {}

Generator3::Generator3(const Eigen::Vector3d& omega) : omega_(omega) {
  // Cross-product matrix: mat * v = omega x v. Antisymmetric by construction.
  mat_ << 0.0, -omega.z(), omega.y(),
      omega.z(), 0.0, -omega.x(),
      -omega.y(), omega.x(), 0.0;
}

Eigen::Matrix2d rotation2(double angle) {
  const double c = std::cos(angle), s = std::sin(angle);
  Eigen::Matrix2d r;
  r << c, -s, s, c;
  return r;
}

Eigen::Matrix3d rotation(double t, double omega_z) {
  const double a = omega_z * t;
  Eigen::Matrix3d u = Eigen::Matrix3d::Identity();
  u.topLeftCorner<2, 2>() = rotation2(a);
  return u;
}

Rotation3::Rotation3(double t, double omega_z)
    : angle_(omega_z * t), mat_(rotation(t, omega_z)) {}

Eigen::Matrix3d matrix_exp_series(const Eigen::Matrix3d& m, double t, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("matrix_exp_series: tol must be > 0");
  const Eigen::Matrix3d a = t * m;
  Eigen::Matrix3d sum = Eigen::Matrix3d::Identity();
  Eigen::Matrix3d term = Eigen::Matrix3d::Identity();
  for (int k = 1; k <= 200; ++k) {
    term = (term * a) / static_cast<double>(k);
    sum += term;
    if (term.cwiseAbs().maxCoeff() < tol) return sum;
  }
  throw std::runtime_error("matrix_exp_series: no convergence within 200 terms");
}

}  // namespace landau
