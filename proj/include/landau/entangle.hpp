#pragma once

#include <string>
#include <vector>

namespace landau {

/// 2D oscillator occupation numbers plus optional longitudinal wavenumber.
struct FockLabel {
  int n1 = 0;
  int n2 = 0;
  double k = 0.0;
};

/// Trigonometric exponents of the closed-form coefficient. The printed
/// formula uses cos^(n1+l1) sin^(n2+l2); the rule is replaceable so the
/// audit can compare alternatives without touching the oracle.
struct TrigExponents {
  int cos_exp = 0;
  int sin_exp = 0;
};

TrigExponents printed_exponents(int n1, int n2, int l1, int l2);

/// Closed-form coefficient as printed: cos^a sin^b times
/// sqrt((l1+l2)! ((n1+n2)-(l1+l2))! / (n1! n2!)); binomial factors are the
/// caller's. Throws std::out_of_range unless 0 <= l1 <= n1, 0 <= l2 <= n2.
double coefficient_closed_form(int n1, int n2, int l1, int l2, double theta);
double coefficient_closed_form(int n1, int n2, int l1, int l2, double theta,
                               const TrigExponents& exponents);

/// Quadrature result with a flag raised when the rule cannot be exact for
/// the polynomial degree involved.
struct OracleValue {
  double value = 0.0;
  bool accuracy_warning = false;
};

/// <psi_l1(x1) psi_l2(x2), psi_n((R(theta)x)_1) psi_m((R(theta)x)_2)> by
/// tensor-product Gauss-Hermite quadrature; R(theta) is the plane rotation
/// [[cos,-sin],[sin,cos]]. The Gaussian factors are rotation invariant, so
/// the integrand reduces to bare Hermite parts under the e^{-|z|^2} weight.
OracleValue coefficient_oracle(int n, int m, int l1, int l2, double theta,
                               int quad_order);

struct CoefficientEntry {
  int target1 = 0;
  int target2 = 0;
  double oracle = 0.0;
  double closed_form = 0.0;
  double abs_diff = 0.0;
};

/// Expansion of the rotated (n,m) product state over the degenerate
/// subspace n1'+n2' = n+m. Oracle values are authoritative; the printed
/// closed form (summed over its l1,l2 with the caller-side binomials) is
/// attached per target for the audit.
struct CoefficientTable {
  int n = 0;
  int m = 0;
  double theta = 0.0;
  bool accuracy_warning = false;
  std::vector<CoefficientEntry> entries;

  double sum_sq_oracle() const;
  double max_abs_diff() const;
  std::string to_json() const;
};

/// Throws std::invalid_argument for negative indices or n+m > cutoff.
CoefficientTable expand_rotated_state(int n, int m, double theta,
                                      int quad_order = 64, int cutoff = 20);

/// Max |<psi_a psi_b, rotated state>| over a+b = probe_total; should
/// vanish since rotations preserve total quanta. Throws
/// std::invalid_argument when probe_total == n+m.
double quanta_leakage(int n, int m, double theta, int probe_total,
                      int quad_order = 64);

}  // namespace landau
