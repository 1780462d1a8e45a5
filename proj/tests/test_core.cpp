#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "landau/core.hpp"

using namespace landau;

namespace {
double max_abs_diff(const Eigen::Matrix3d& a, const Eigen::Matrix3d& b) {
  return (a - b).cwiseAbs().maxCoeff();
}
}  // namespace

// ---------------------------------------------------------------- frequency

TEST_CASE("cyclotron frequency is qB/mc") {
  FieldParams f;
  f.charge = 1.0;
  f.field = 1.0;
  f.mass = 1.0;
  f.light_speed = 1.0;
  CHECK(cyclotron_frequency(f) == doctest::Approx(1.0).epsilon(1e-15));

  f.charge = 2.0;
  f.field = 3.0;
  f.mass = 1.5;
  CHECK(cyclotron_frequency(f) == doctest::Approx(4.0).epsilon(1e-15));
  CHECK(oscillator_frequency(f) == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("default parameters give omega = 2, larmor 1") {
  CHECK(cyclotron_frequency(FieldParams{}) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(oscillator_frequency(FieldParams{}) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("frequency sign follows the sign of qB, no absolute values") {
  FieldParams f;
  f.charge = -1.0;
  f.field = 1.0;
  f.mass = 1.0;
  f.light_speed = 1.0;
  CHECK(cyclotron_frequency(f) == doctest::Approx(-1.0).epsilon(1e-15));
}

TEST_CASE("nonpositive mass or c rejected") {
  FieldParams f;
  f.mass = 0.0;
  CHECK_THROWS_AS(cyclotron_frequency(f), std::invalid_argument);
  f.mass = 1.0;
  f.light_speed = -1.0;
  CHECK_THROWS_AS(cyclotron_frequency(f), std::invalid_argument);
}

// ---------------------------------------------------------------- generator

TEST_CASE("generator is antisymmetric with the z-aligned block layout") {
  const Generator3 gen(2.0);
  const Eigen::Matrix3d& m = gen.matrix();
  CHECK(max_abs_diff(m.transpose(), -m) == 0.0);
  CHECK(m(0, 1) == -2.0);
  CHECK(m(1, 0) == 2.0);
  CHECK(m.row(2).norm() == 0.0);
  CHECK(m.col(2).norm() == 0.0);
}

TEST_CASE("general generator is the cross-product matrix") {
  const Eigen::Vector3d w(0.3, -1.2, 2.5);
  const Generator3 gen(w);
  const Eigen::Vector3d v(1.0, 2.0, -0.5);
  CHECK((gen.matrix() * v - w.cross(v)).norm() < 1e-15);
  CHECK(max_abs_diff(gen.matrix().transpose(), -gen.matrix()) == 0.0);
}

// ----------------------------------------------------------------- rotation

TEST_CASE("rotation at t = 0 is the identity") {
  CHECK(max_abs_diff(rotation(0.0, 1.7), Eigen::Matrix3d::Identity()) == 0.0);
}

TEST_CASE("quarter and half turns match the series-derived blocks") {
  // omega t = pi/2: transverse block [[0,-1],[1,0]]; the series oracle
  // pins these signs down.
  const Eigen::Matrix3d q = rotation(M_PI / 2.0, 1.0);
  CHECK(q(0, 0) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(q(0, 1) == doctest::Approx(-1.0).epsilon(1e-15));
  CHECK(q(1, 0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(q(1, 1) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(q(2, 2) == 1.0);

  const Eigen::Matrix3d h = rotation(M_PI, 1.0);
  CHECK(h(0, 0) == doctest::Approx(-1.0).epsilon(1e-15));
  CHECK(h(1, 1) == doctest::Approx(-1.0).epsilon(1e-15));
  CHECK(max_abs_diff(h, rotation(M_PI / 2.0, 1.0) * rotation(M_PI / 2.0, 1.0)) < 1e-15);
}

TEST_CASE("orthogonality over t in [-10/omega, 10/omega]") {
  const double omega = 2.0;
  for (int i = 0; i < 100; ++i) {
    const double t = -10.0 / omega + 20.0 / omega * i / 99.0;
    const Eigen::Matrix3d u = rotation(t, omega);
    CHECK(max_abs_diff(u.transpose() * u, Eigen::Matrix3d::Identity()) < 1e-12);
  }
}

TEST_CASE("group property") {
  const double omega = 1.3;
  const double t1 = 0.7, t2 = -2.9;
  CHECK(max_abs_diff(rotation(t1, omega) * rotation(t2, omega),
                     rotation(t1 + t2, omega)) < 1e-12);
}

TEST_CASE("transpose equals the reversed rotation exactly") {
  const Eigen::Matrix3d u = rotation(0.83, 1.9);
  const Eigen::Matrix3d r = rotation(-0.83, 1.9);
  CHECK((u.transpose() - r).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("Rotation3 carries the angle") {
  const Rotation3 rot(0.5, 3.0);
  CHECK(rot.angle() == doctest::Approx(1.5).epsilon(1e-15));
  CHECK(max_abs_diff(rot.matrix(), rotation(0.5, 3.0)) == 0.0);
  const Eigen::Vector3d mapped = rot * Eigen::Vector3d(1.0, 0.0, 2.0);
  CHECK(mapped.z() == 2.0);
}

// ------------------------------------------------------------ series oracle

TEST_CASE("series oracle: zero matrix exponentiates to identity") {
  CHECK(max_abs_diff(matrix_exp_series(Eigen::Matrix3d::Zero(), 5.0, 1e-14),
                     Eigen::Matrix3d::Identity()) == 0.0);
}

TEST_CASE("series oracle at quarter turn and full period") {
  const Generator3 gen(1.0);
  const Eigen::Matrix3d q = matrix_exp_series(gen.matrix(), M_PI / 2.0, 1e-14);
  CHECK(q(0, 1) == doctest::Approx(-1.0).epsilon(1e-13));
  CHECK(q(1, 0) == doctest::Approx(1.0).epsilon(1e-13));
  const Eigen::Matrix3d full = matrix_exp_series(gen.matrix(), 2.0 * M_PI, 1e-14);
  CHECK(max_abs_diff(full, Eigen::Matrix3d::Identity()) < 1e-13);
}

TEST_CASE("closed form matches the series oracle over |omega t| <= 4 pi") {
  const double omega = 1.0;
  const Generator3 gen(omega);
  for (int i = 0; i < 100; ++i) {
    const double t = -4.0 * M_PI + 8.0 * M_PI * i / 99.0;
    CHECK(max_abs_diff(rotation(t, omega),
                       matrix_exp_series(gen.matrix(), t, 1e-14)) < 1e-10);
  }
}

TEST_CASE("series oracle rejects bad tolerance and diverging horizons") {
  const Generator3 gen(1.0);
  CHECK_THROWS_AS(matrix_exp_series(gen.matrix(), 1.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(matrix_exp_series(gen.matrix(), 1.0, -1e-10), std::invalid_argument);
  CHECK_THROWS_AS(matrix_exp_series(gen.matrix(), 1000.0, 1e-14), std::runtime_error);
}

// -------------------------------------------------- printed-form arbitration

TEST_CASE("the +sin/+sin off-diagonal variant is not the exponential") {
  // The variant with +sin in both off-diagonal slots fails orthogonality
  // away from multiples of pi/2 and disagrees with the series; this is the
  // evidence behind the errata entry for the printed block.
  const double omega = 1.0;
  const double t = M_PI / 4.0;
  Eigen::Matrix3d printed = Eigen::Matrix3d::Identity();
  const double c = std::cos(omega * t), s = std::sin(omega * t);
  printed(0, 0) = c;
  printed(0, 1) = s;
  printed(1, 0) = s;
  printed(1, 1) = c;
  CHECK(max_abs_diff(printed.transpose() * printed, Eigen::Matrix3d::Identity()) >
        0.9);
  const Generator3 gen(omega);
  CHECK(max_abs_diff(printed, matrix_exp_series(gen.matrix(), t, 1e-14)) >
        2.0 * s - 1e-12);
}
