#pragma once

#include <vector>

#include "landau/core.hpp"

namespace landau {

/// Physicists' Hermite polynomial H_n(z) by the three-term recurrence.
/// Raw values overflow for large n at large |z|; fine for the n <= 60
/// range used here.
double hermite_poly(int n, double z);

/// Partial sum sum_{n=0}^{n_terms} s^n/n! H_n(z) of the Hermite generating
/// function; converges to exp(2 s z - s^2).
double generating_partial_sum(double s, double z, int n_terms);

/// Orthonormal Hermite functions h_n(z) = H_n(z) e^{-z^2/2} /
/// sqrt(2^n n! sqrt(pi)), computed by the normalized recurrence
/// h_{n+1} = z sqrt(2/(n+1)) h_n - sqrt(n/(n+1)) h_{n-1}. Overflow safe:
/// the Gaussian is folded into the seed.
double hermite_function(int n, double z);
std::vector<double> hermite_function_all(int n_max, double z);

/// Same functions without the Gaussian factor, h_n(z) e^{+z^2/2}; this is
/// the polynomial part matching quadrature weights that absorb e^{-z^2}.
double hermite_bare(int n, double z);
std::vector<double> hermite_bare_all(int n_max, double z);

/// Scaled oscillator eigenbasis: psi_n(x) = sqrt(alpha) h_n(alpha x).
struct HermiteBasis {
  int max_degree = 0;
  double alpha = 1.0;  // inverse length scale, > 0
};

/// Basis of the transverse oscillator: alpha = sqrt(m * omega_osc / hbar).
HermiteBasis oscillator_basis(const FieldParams& f, int max_degree);

/// psi_n(x) for the basis; throws std::out_of_range when n is outside
/// [0, max_degree] and std::invalid_argument for alpha <= 0.
double eigenfunction(int n, double x, const HermiteBasis& basis);

/// Energy of level n: hbar * omega_osc * (n + 1/2).
double eigen_energy(int n, const FieldParams& f);

/// Gauss-Hermite rule: integrates f(z) e^{-z^2} as sum w_i f(z_i); the
/// weights absorb the Gaussian. Nodes ascend.
struct Quadrature {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Golub-Welsch construction. Throws std::invalid_argument for order < 1
/// or order > 300.
Quadrature gauss_hermite(int order);

/// sum_i w_i f(z_i) g(z_i): the L2 pairing of f*Gaussian-half and
/// g*Gaussian-half when f and g are Gaussian-free parts.
template <class F, class G>
double overlap_1d(F&& f, G&& g, const Quadrature& quad) {
  double acc = 0.0;
  for (std::size_t i = 0; i < quad.nodes.size(); ++i)
    acc += quad.weights[i] * f(quad.nodes[i]) * g(quad.nodes[i]);
  return acc;
}

}  // namespace landau
