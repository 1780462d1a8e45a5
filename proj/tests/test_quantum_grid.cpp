#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <filesystem>
#include <fstream>
#include <vector>

#include "landau/fft2d.hpp"
#include "landau/quantum_grid.hpp"

using namespace landau;
using C = std::complex<double>;

namespace {

FockSuperposition single(int n1, int n2, double k = 0.0) {
  FockSuperposition s;
  s.k = k;
  s.terms.emplace_back(FockLabel{n1, n2, k}, C(1.0, 0.0));
  return s;
}

// Spectral partial derivative along axis (0 = x1/columns, 1 = x2/rows).
WaveGrid spectral_derivative(const WaveGrid& g, int axis) {
  WaveGrid out = g;
  Fft2d fft(g.n);
  fft.forward(out.amp);
  for (int r = 0; r < g.n; ++r) {
    const double k2 = Fft2d::frequency(r, g.n, g.extent);
    for (int col = 0; col < g.n; ++col) {
      const double k1 = Fft2d::frequency(col, g.n, g.extent);
      out.at(r, col) *= C(0.0, axis == 0 ? k1 : k2);
    }
  }
  fft.inverse(out.amp);
  return out;
}

}  // namespace

// ------------------------------------------------------------------- spectrum

TEST_CASE("spectrum energies at the default parameters") {
  const FieldParams f;  // omega_osc = 1
  CHECK(spectrum_energy({0, 0, 0.0}, f) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(spectrum_energy({1, 2, 0.0}, f) == doctest::Approx(4.0).epsilon(1e-15));
  CHECK(spectrum_energy({0, 0, 2.0}, f) == doctest::Approx(3.0).epsilon(1e-15));
  CHECK_THROWS_AS(spectrum_energy({-1, 0, 0.0}, f), std::invalid_argument);
}

// ------------------------------------------------------------------- sampling

TEST_CASE("sampled ground state is normalized on the default grid") {
  const FieldParams f;
  const WaveGrid g = sample_fock(single(0, 0), GridSpec{256, 24.0}, f);
  CHECK(std::abs(grid_norm(g) - 1.0) < 1e-8);
  CHECK_FALSE(g.truncation_warning);
}

TEST_CASE("sampled eigenstates are orthogonal") {
  const FieldParams f;
  const GridSpec spec{128, 20.0};
  const WaveGrid a = sample_fock(single(0, 0), spec, f);
  const WaveGrid b = sample_fock(single(2, 0), spec, f);
  CHECK(std::abs(grid_inner(a, b)) < 1e-8);
}

TEST_CASE("nodal line of the (3,0) state sits on x1 = 0") {
  const FieldParams f;
  const WaveGrid g = sample_fock(single(3, 0), GridSpec{128, 20.0}, f);
  const int zero_col = 64;  // coord(64) = 0 on this grid
  CHECK(g.coord(zero_col) == doctest::Approx(0.0).epsilon(1e-14));
  for (int r = 0; r < g.n; r += 16)
    CHECK(std::abs(g.at(r, zero_col)) < 1e-12);
}

TEST_CASE("tight boxes raise the truncation warning") {
  const FieldParams f;
  CHECK(sample_fock(single(3, 3), GridSpec{32, 4.0}, f).truncation_warning);
  CHECK_FALSE(sample_fock(single(0, 0), GridSpec{64, 16.0}, f).truncation_warning);
}

TEST_CASE("grid geometry helpers") {
  const FieldParams f;
  const WaveGrid g = sample_fock(single(0, 0), GridSpec{64, 16.0}, f);
  CHECK(g.dx() == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(g.coord(0) == doctest::Approx(-8.0).epsilon(1e-15));
  CHECK(g.coord(32) == doctest::Approx(0.0).epsilon(1e-15));
}

// ------------------------------------------------------------------- the map

TEST_CASE("map at t = 0 is exactly the plain sampling") {
  const FieldParams f;
  const GridSpec spec{128, 20.0};
  const FockSuperposition s = single(2, 1);
  const WaveGrid direct = sample_fock(s, spec, f);
  const WaveGrid mapped = apply_map_t(s, 0.0, spec, f);
  for (std::size_t i = 0; i < direct.amp.size(); ++i)
    CHECK(mapped.amp[i] == direct.amp[i]);
}

TEST_CASE("isotropic ground state is invariant under the map") {
  const FieldParams f;
  const GridSpec spec{128, 20.0};
  const WaveGrid still = sample_fock(single(0, 0), spec, f);
  for (double t : {0.4, 1.7, -2.2})
    CHECK(grid_distance(apply_map_t(single(0, 0), t, spec, f), still) < 1e-12);
}

TEST_CASE("quarter rotation carries (1,0) onto (0,1)") {
  // omega = 2, so t = pi/2 gives a map angle omega t/2 = pi/2.
  const FieldParams f;
  const GridSpec spec{128, 20.0};
  const WaveGrid rotated = apply_map_t(single(1, 0), M_PI / 2.0, spec, f);
  const WaveGrid target = sample_fock(single(0, 1), spec, f);
  CHECK(grid_distance(rotated, target) < 1e-10);
}

TEST_CASE("analytic map preserves the norm at 20 times") {
  const FieldParams f;
  const GridSpec spec{128, 20.0};
  FockSuperposition s;
  s.terms = {{{3, 0, 0.0}, C(1.0, 0.0)},
             {{0, 3, 0.0}, C(0.3, 0.4)},
             {{1, 1, 0.0}, C(0.2, 0.0)}};
  s.normalize();
  const double n0 = grid_norm(apply_map_t(s, 0.0, spec, f));
  for (int i = 1; i <= 20; ++i) {
    const double t = -M_PI + 2.0 * M_PI * i / 20.0;
    CHECK(std::abs(grid_norm(apply_map_t(s, t, spec, f)) - n0) < 1e-10);
  }
}

TEST_CASE("interpolating grid map tracks the analytic one within its bound") {
  const FieldParams f;
  const GridSpec spec{128, 20.0};
  const FockSuperposition s = single(1, 1);
  const double t = 0.35;
  const WaveGrid start = sample_fock(s, spec, f);
  const WaveGrid interp = apply_map_t(start, t, f);
  const WaveGrid exact = apply_map_t(s, t, spec, f);
  CHECK(interp.interp_error_bound > 0.0);
  // The bound is pointwise, so compare the worst node, not the L2 distance.
  double worst = 0.0;
  for (std::size_t i = 0; i < interp.amp.size(); ++i)
    worst = std::max(worst, std::abs(interp.amp[i] - exact.amp[i]));
  CHECK(worst < interp.interp_error_bound);
}

// ------------------------------------------------------------ fock evolution

TEST_CASE("fock phases recur after the oscillator period") {
  const FieldParams f;  // omega_osc = 1: all energies are integers
  FockSuperposition s;
  s.terms = {{{0, 0, 0.0}, C(0.8, 0.0)}, {{1, 1, 0.0}, C(0.0, 0.6)}};
  const FockSuperposition evolved = propagate_fock(s, 2.0 * M_PI, f);
  for (std::size_t i = 0; i < s.terms.size(); ++i)
    CHECK(std::abs(evolved.terms[i].second - s.terms[i].second) < 1e-12);

  // Half a period flips both phases here: E = 1 and E = 3.
  const FockSuperposition half = propagate_fock(s, M_PI, f);
  for (std::size_t i = 0; i < s.terms.size(); ++i)
    CHECK(std::abs(half.terms[i].second + s.terms[i].second) < 1e-12);
}

TEST_CASE("normalize scales to unit norm and rejects the zero state") {
  FockSuperposition s;
  s.terms = {{{0, 0, 0.0}, C(3.0, 0.0)}, {{1, 0, 0.0}, C(0.0, 4.0)}};
  s.normalize();
  CHECK(s.squared_norm() == doctest::Approx(1.0).epsilon(1e-14));
  FockSuperposition zero;
  CHECK_THROWS_AS(zero.normalize(), std::invalid_argument);
}

// ------------------------------------------------------------------ propagator

TEST_CASE("free gaussian spreads like the analytic solution when B = 0") {
  FieldParams f;
  f.field = 0.0;
  const int n = 128;
  const double extent = 16.0;
  const double sigma = 1.0;  // keeps the dispersed tail clear of the boundary
  WaveGrid g;
  g.n = n;
  g.extent = extent;
  g.amp.resize(static_cast<std::size_t>(n) * n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) {
      const double x = g.coord(c), y = g.coord(r);
      g.at(r, c) = std::exp(-(x * x + y * y) / (2.0 * sigma * sigma)) /
                   (std::sqrt(M_PI) * sigma);
    }

  const double t = 1.0;
  const WaveGrid out = propagate_grid(g, t, 1e-3, f);
  const C a(1.0, t / (sigma * sigma));  // hbar = m = 1
  double worst = 0.0;
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) {
      const double x = g.coord(c), y = g.coord(r);
      const C exact = std::exp(-(x * x + y * y) / (2.0 * sigma * sigma * a)) /
                      (std::sqrt(M_PI) * sigma * a);
      worst = std::max(worst, std::abs(out.at(r, c) - exact));
    }
  CHECK(worst < 1e-6);
}

TEST_CASE("split-step propagation preserves the norm over 1000 steps") {
  const FieldParams f;
  const GridSpec spec{128, 20.0};
  FockSuperposition s;
  s.terms = {{{1, 0, 0.0}, C(1.0, 0.0)}, {{0, 1, 0.0}, C(1.0, 0.0)}};
  s.normalize();
  const WaveGrid start = apply_map_t(s, 0.0, spec, f);
  const double n0 = grid_norm(start);
  const WaveGrid out = propagate_grid(start, 1.0, 1e-3, f);
  // The rotation resampler is not exactly unitary; at this resolution it
  // dissipates about 3e-8 of the norm per step (measured 2.9e-5 over the run).
  CHECK(std::abs(grid_norm(out) - n0) < 1e-4);
}

TEST_CASE("dual paths agree exactly at t = 0") {
  const FieldParams f;
  CHECK(consistency_residual(single(1, 0), 0.0, 1e-3, GridSpec{64, 16.0}, f) ==
        0.0);
}

TEST_CASE("dual paths agree for a superposition over one cyclotron period") {
  const FieldParams f;  // omega = 2: period pi
  FockSuperposition s;
  s.terms = {{{1, 0, 0.0}, C(1.0, 0.0)}, {{0, 1, 0.0}, C(1.0, 0.0)}};
  s.normalize();
  const double r =
      consistency_residual(s, M_PI, 1e-3, GridSpec{256, 24.0}, f);
  CHECK(r < 1e-4);  // measured 7.2e-6; fails loudly if either path regresses
}

TEST_CASE("ground-state dual path reaches 1e-6 with the tight stencil") {
  const FieldParams f;
  PropagatorOptions opts;
  opts.taps = 8;
  const double r = consistency_residual(single(0, 0), M_PI, 5e-4,
                                        GridSpec{256, 24.0}, f, opts);
  CHECK(r < 1e-6);
}

TEST_CASE("momentum components rotate with the map") {
  // Spectral gradients of the mapped state must equal the rotation of the
  // mapped gradients: grad(T_t phi) = U(t/2) T_t(grad phi).
  const FieldParams f;  // alpha = 1
  const GridSpec spec{128, 20.0};
  const double t = 0.8;
  const double half = cyclotron_frequency(f) * t / 2.0;

  const WaveGrid mapped = apply_map_t(single(1, 0), t, spec, f);
  const WaveGrid g1 = spectral_derivative(mapped, 0);
  const WaveGrid g2 = spectral_derivative(mapped, 1);

  // d/dx1 (psi_1 psi_0) = sqrt(1/2)(0,0) - (2,0); d/dx2 = -sqrt(1/2)(1,1).
  FockSuperposition d1, d2;
  d1.terms = {{{0, 0, 0.0}, C(std::sqrt(0.5), 0.0)},
              {{2, 0, 0.0}, C(-1.0, 0.0)}};
  d2.terms = {{{1, 1, 0.0}, C(-std::sqrt(0.5), 0.0)}};
  const WaveGrid m1 = apply_map_t(d1, t, spec, f);
  const WaveGrid m2 = apply_map_t(d2, t, spec, f);

  double worst = 0.0;
  const double c = std::cos(half), s = std::sin(half);
  for (std::size_t i = 0; i < mapped.amp.size(); ++i) {
    worst = std::max(worst,
                     std::abs(g1.amp[i] - (c * m1.amp[i] - s * m2.amp[i])));
    worst = std::max(worst,
                     std::abs(g2.amp[i] - (s * m1.amp[i] + c * m2.amp[i])));
  }
  CHECK(worst < 1e-8);
}

TEST_CASE("energy expectation matches the closed form and stays put") {
  const FieldParams f;
  const GridSpec spec{128, 20.0};
  for (double t : {0.0, 0.6, 1.9}) {
    const WaveGrid g =
        apply_map_t(propagate_fock(single(1, 0), t, f), t, spec, f);
    CHECK(std::abs(energy_expectation(g, f) - 2.0) < 1e-6);
  }
  // Longitudinal plane wave adds hbar^2 k^2 / 2m = 2.
  const WaveGrid with_k = apply_map_t(single(0, 0, 2.0), 0.0, spec, f);
  CHECK(std::abs(energy_expectation(with_k, f) - 3.0) < 1e-6);
}

// -------------------------------------------------------------------- guards

TEST_CASE("rotation cap rejects an oversized step") {
  const FieldParams f;  // omega = 2
  const WaveGrid g = sample_fock(single(0, 0), GridSpec{64, 16.0}, f);
  CHECK_THROWS_AS(SplitStepPropagator(g, 0.06, f), std::invalid_argument);
}

TEST_CASE("occupied-bandwidth cap rejects a carrier near nyquist") {
  const FieldParams f;
  WaveGrid g = sample_fock(single(0, 0), GridSpec{256, 24.0}, f);
  for (int r = 0; r < g.n; ++r)
    for (int c = 0; c < g.n; ++c) {
      const double ph = 32.0 * g.coord(c);
      g.at(r, c) *= C(std::cos(ph), std::sin(ph));
    }
  CHECK_THROWS_AS(SplitStepPropagator(g, 1e-3, f), std::invalid_argument);
}

TEST_CASE("norm drift beyond the instability tolerance throws mid-advance") {
  const FieldParams f;
  const WaveGrid g = sample_fock(single(0, 0), GridSpec{64, 16.0}, f);
  PropagatorOptions opts;
  opts.norm_drift_tol = 1e-18;  // below the roundoff floor: must trip
  SplitStepPropagator prop(g, 1e-3, f, opts);
  CHECK_THROWS_AS(prop.advance(50), std::runtime_error);
}

TEST_CASE("grid validation rejects tiny and empty boxes") {
  const FieldParams f;
  CHECK_THROWS_AS(sample_fock(single(0, 0), GridSpec{8, 16.0}, f),
                  std::invalid_argument);
  CHECK_THROWS_AS(sample_fock(single(0, 0), GridSpec{64, 0.0}, f),
                  std::invalid_argument);
}

// ------------------------------------------------------------------- exports

TEST_CASE("grid exports carry indices, amplitudes and metadata") {
  const FieldParams f;
  const WaveGrid g = sample_fock(single(0, 0), GridSpec{16, 8.0}, f);
  const std::string dir =
      (std::filesystem::temp_directory_path() / "landau_grid_test").string();
  std::filesystem::create_directories(dir);

  write_grid_csv(dir + "/grid.csv", g);
  std::ifstream in(dir + "/grid.csv");
  std::string header;
  std::getline(in, header);
  CHECK(header == "i,j,re,im");
  int rows = 0;
  for (std::string line; std::getline(in, line);) ++rows;
  CHECK(rows == 16 * 16);

  write_density_csv(dir + "/density.csv", g);
  std::ifstream din(dir + "/density.csv");
  rows = 0;
  for (std::string line; std::getline(din, line);) ++rows;
  CHECK(rows == 16);

  const std::string meta = grid_meta_json(g);
  CHECK(meta.find("\"N\": 16") != std::string::npos);
  CHECK(meta.find("\"L\": 8") != std::string::npos);
  CHECK(meta.find("\"dx\": 0.5") != std::string::npos);
  std::filesystem::remove_all(dir);
}
