#include "landau/classical.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "landau/io.hpp"

namespace landau {

Vector6d PhaseState::packed() const {
  Vector6d z;
  z << x, p;
  return z;
}

PhaseState PhaseState::unpack(const Vector6d& z) {
  return PhaseState{z.head<3>(), z.tail<3>()};
}

Vector6d OscillatorState::packed() const {
  Vector6d z;
  z << q, p;
  return z;
}

OscillatorState OscillatorState::unpack(const Vector6d& z) {
  return OscillatorState{z.head<3>(), z.tail<3>()};
}

double magnetic_hamiltonian(const PhaseState& s, const FieldParams& f) {
  const Generator3 gen(cyclotron_frequency(f));
  const Eigen::Vector3d v = s.p - 0.5 * f.mass * (gen.matrix() * s.x);
  return v.squaredNorm() / (2.0 * f.mass);
}

double oscillator_hamiltonian(const OscillatorState& s, const FieldParams& f) {
  const double w = oscillator_frequency(f);
  const double transverse = s.p.head<2>().squaredNorm() / (2.0 * f.mass) +
                            0.5 * f.mass * w * w * s.q.head<2>().squaredNorm();
  return transverse + s.p.z() * s.p.z() / (2.0 * f.mass);
}

double generating_function(const Eigen::Vector3d& x, const Eigen::Vector3d& big_p,
                           double t, const FieldParams& f) {
  return x.dot(rotation(-0.5 * t, cyclotron_frequency(f)) * big_p);
}

OscillatorState to_oscillator_frame(const PhaseState& s, double t, const FieldParams& f) {
  const Eigen::Matrix3d u = rotation(0.5 * t, cyclotron_frequency(f));
  return OscillatorState{u * s.x, u * s.p};
}

PhaseState from_oscillator_frame(const OscillatorState& s, double t, const FieldParams& f) {
  const Eigen::Matrix3d u = rotation(-0.5 * t, cyclotron_frequency(f));
  return PhaseState{u * s.q, u * s.p};
}

Vector6d magnetic_eom(const Vector6d& z, const FieldParams& f) {
  const Generator3 gen(cyclotron_frequency(f));
  const Eigen::Vector3d x = z.head<3>(), p = z.tail<3>();
  const Eigen::Vector3d v = p - 0.5 * f.mass * (gen.matrix() * x);
  Vector6d dz;
  dz.head<3>() = v / f.mass;
  dz.tail<3>() = -0.5 * (gen.matrix() * v);
  return dz;
}

Vector6d oscillator_eom(const Vector6d& z, const FieldParams& f) {
  const double w = oscillator_frequency(f);
  const Eigen::Vector3d q = z.head<3>(), p = z.tail<3>();
  Vector6d dz;
  dz.head<3>() = p / f.mass;
  dz.tail<3>() = Eigen::Vector3d(-f.mass * w * w * q.x(), -f.mass * w * w * q.y(), 0.0);
  return dz;
}

Trajectory integrate(const std::function<Vector6d(const Vector6d&)>& field,
                     const Vector6d& y0, double t_end, double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("integrate: dt must be > 0");
  if (!(t_end > 0.0)) throw std::invalid_argument("integrate: t_end must be > 0");
  const int steps = std::max(1, static_cast<int>(std::llround(t_end / dt)));
  Trajectory traj;
  traj.dt = dt;
  traj.t.reserve(steps + 1);
  traj.y.reserve(steps + 1);
  traj.t.push_back(0.0);
  traj.y.push_back(y0);
  Vector6d y = y0;
  for (int i = 0; i < steps; ++i) {
    const Vector6d k1 = field(y);
    const Vector6d k2 = field(y + 0.5 * dt * k1);
    const Vector6d k3 = field(y + 0.5 * dt * k2);
    const Vector6d k4 = field(y + dt * k3);
    y += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    const double tn = (i + 1) * dt;
    if (!y.allFinite())
      throw std::runtime_error("integrate: state diverged at t = " + format_full(tn));
    traj.t.push_back(tn);
    traj.y.push_back(y);
  }
  return traj;
}

double df2_dt_analytic(const PhaseState& s, const FieldParams& f) {
  const Generator3 gen(cyclotron_frequency(f));
  // (1/2)<pbar, Omega0 xbar> = -(1/2)<x, Omega p>.
  return 0.5 * s.p.dot(gen.matrix() * s.x);
}

double kamiltonian_residual(const PhaseState& s, double t, const FieldParams& f) {
  const double k = oscillator_hamiltonian(to_oscillator_frame(s, t, f), f);
  const Eigen::Vector3d big_p = to_oscillator_frame(s, t, f).p;
  const double ht = 1e-6;
  const double df2_dt = (generating_function(s.x, big_p, t + ht, f) -
                         generating_function(s.x, big_p, t - ht, f)) /
                        (2.0 * ht);
  return std::abs(k - magnetic_hamiltonian(s, f) - df2_dt);
}

double symplectic_residual(const PhaseState& base, double t, const FieldParams& f,
                           double fd_step) {
  const Vector6d z0 = base.packed();
  Eigen::Matrix<double, 6, 6> jac;
  for (int j = 0; j < 6; ++j) {
    Vector6d zp = z0, zm = z0;
    zp[j] += fd_step;
    zm[j] -= fd_step;
    const Vector6d fp = to_oscillator_frame(PhaseState::unpack(zp), t, f).packed();
    const Vector6d fm = to_oscillator_frame(PhaseState::unpack(zm), t, f).packed();
    jac.col(j) = (fp - fm) / (2.0 * fd_step);
  }
  Eigen::Matrix<double, 6, 6> j2 = Eigen::Matrix<double, 6, 6>::Zero();
  j2.topRightCorner<3, 3>() = Eigen::Matrix3d::Identity();
  j2.bottomLeftCorner<3, 3>() = -Eigen::Matrix3d::Identity();
  return (jac * j2 * jac.transpose() - j2).cwiseAbs().maxCoeff();
}

double symplectic_check(double t, const FieldParams& f) {
  // Fixed spread of base states; the map is linear so these must agree.
  const double coords[10][6] = {
      {0, 0, 0, 0, 0, 0},   {1, 0, 0, 0, 0, 0},    {0, 1, 0, 0, 1, 0},
      {1, -1, 2, 0.5, 0, 1}, {-2, 0.3, 0, 1, 1, -1}, {0.1, 0.2, 0.3, 0.4, 0.5, 0.6},
      {3, 0, -1, 0, -2, 0}, {0, -3, 0, 2, 0, 0.7},  {1.5, 1.5, -1.5, -1.5, 1.5, -1.5},
      {-0.7, 2.2, 0.9, -1.3, 0.8, 2.1}};
  double worst = 0.0;
  for (const auto& c : coords) {
    Vector6d z;
    z << c[0], c[1], c[2], c[3], c[4], c[5];
    worst = std::max(worst, symplectic_residual(PhaseState::unpack(z), t, f));
  }
  return worst;
}

double equivalence_deviation(const PhaseState& s0, double t_end, double dt,
                             const FieldParams& f) {
  const auto mag = [&f](const Vector6d& z) { return magnetic_eom(z, f); };
  const auto osc = [&f](const Vector6d& z) { return oscillator_eom(z, f); };
  const Trajectory th = integrate(mag, s0.packed(), t_end, dt);
  const Trajectory tk = integrate(osc, to_oscillator_frame(s0, 0.0, f).packed(), t_end, dt);
  double worst = 0.0;
  for (std::size_t i = 0; i < th.t.size(); ++i) {
    const OscillatorState mapped =
        to_oscillator_frame(PhaseState::unpack(th.y[i]), th.t[i], f);
    worst = std::max(worst, (mapped.packed() - tk.y[i]).cwiseAbs().maxCoeff());
  }
  return worst;
}

void write_trajectory_csv(const std::string& path, const Trajectory& traj,
                          bool oscillator_frame) {
  std::ostringstream out;
  out << (oscillator_frame ? "t,q1,q2,q3,p1,p2,p3" : "t,x1,x2,x3,p1,p2,p3") << '\n';
  for (std::size_t i = 0; i < traj.t.size(); ++i) {
    out << format_full(traj.t[i]);
    for (int j = 0; j < 6; ++j) out << ',' << format_full(traj.y[i][j]);
    out << '\n';
  }
  atomic_write(path, out.str());
}

}  // namespace landau
