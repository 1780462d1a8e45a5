#include "landau/hermite.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

namespace landau {

namespace {
constexpr double kPiQuarterInv = 0.7511255444649425;  // pi^(-1/4)
constexpr int kQuadratureCap = 300;

// Shared normalized recurrence; seed chooses Gaussian-dressed or bare form.
std::vector<double> normalized_chain(int n_max, double z, double seed) {
  std::vector<double> h(n_max + 1);
  h[0] = seed;
  if (n_max >= 1) h[1] = z * std::sqrt(2.0) * seed;
  for (int n = 1; n < n_max; ++n)
    h[n + 1] = z * std::sqrt(2.0 / (n + 1)) * h[n] - std::sqrt(n / (n + 1.0)) * h[n - 1];
  return h;
}
}  // namespace

double hermite_poly(int n, double z) {
  if (n < 0) throw std::invalid_argument("hermite_poly: n must be >= 0");
  double hm1 = 0.0, h = 1.0;
  for (int k = 0; k < n; ++k) {
    const double next = 2.0 * z * h - 2.0 * k * hm1;
    hm1 = h;
    h = next;
  }
  return h;
}

double generating_partial_sum(double s, double z, int n_terms) {
  if (n_terms < 0) throw std::invalid_argument("generating_partial_sum: n_terms must be >= 0");
  double hm1 = 0.0, h = 1.0;  // H_n chain
  double factor = 1.0;        // s^n / n!
  double sum = 0.0;
  for (int n = 0; n <= n_terms; ++n) {
    sum += factor * h;
    const double next = 2.0 * z * h - 2.0 * n * hm1;
    hm1 = h;
    h = next;
    factor *= s / (n + 1);
  }
  return sum;
}

std::vector<double> hermite_function_all(int n_max, double z) {
  if (n_max < 0) throw std::invalid_argument("hermite_function_all: n_max must be >= 0");
  return normalized_chain(n_max, z, kPiQuarterInv * std::exp(-0.5 * z * z));
}

double hermite_function(int n, double z) { return hermite_function_all(n, z)[n]; }

std::vector<double> hermite_bare_all(int n_max, double z) {
  if (n_max < 0) throw std::invalid_argument("hermite_bare_all: n_max must be >= 0");
  return normalized_chain(n_max, z, kPiQuarterInv);
}

double hermite_bare(int n, double z) { return hermite_bare_all(n, z)[n]; }

HermiteBasis oscillator_basis(const FieldParams& f, int max_degree) {
  return HermiteBasis{max_degree,
                      std::sqrt(f.mass * std::abs(oscillator_frequency(f)) / f.hbar)};
}

double eigenfunction(int n, double x, const HermiteBasis& basis) {
  if (!(basis.alpha > 0.0)) throw std::invalid_argument("eigenfunction: alpha must be > 0");
  if (n < 0 || n > basis.max_degree)
    throw std::out_of_range("eigenfunction: degree outside basis");
  return std::sqrt(basis.alpha) * hermite_function(n, basis.alpha * x);
}

double eigen_energy(int n, const FieldParams& f) {
  return f.hbar * oscillator_frequency(f) * (n + 0.5);
}

Quadrature gauss_hermite(int order) {
  if (order < 1) throw std::invalid_argument("gauss_hermite: order must be >= 1");
  if (order > kQuadratureCap) throw std::invalid_argument("gauss_hermite: order above cap 300");
  Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(order, order);
  for (int k = 1; k < order; ++k) {
    const double b = std::sqrt(0.5 * k);
    jacobi(k, k - 1) = b;
    jacobi(k - 1, k) = b;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(jacobi);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("gauss_hermite: eigensolve failed");
  Quadrature quad;
  quad.nodes.resize(order);
  quad.weights.resize(order);
  const double total = std::sqrt(M_PI);  // integral of the weight e^{-z^2}
  for (int i = 0; i < order; ++i) {
    quad.nodes[i] = solver.eigenvalues()[i];
    const double v0 = solver.eigenvectors()(0, i);
    quad.weights[i] = total * v0 * v0;
  }
  return quad;
}

}  // namespace landau
