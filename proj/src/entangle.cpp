#include "landau/entangle.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "landau/hermite.hpp"
#include "landau/io.hpp"

namespace landau {

namespace {

void check_labels(int n1, int n2, int l1, int l2) {
  if (n1 < 0 || n2 < 0) throw std::out_of_range("coefficient: source indices must be >= 0");
  if (l1 < 0 || l1 > n1 || l2 < 0 || l2 > n2)
    throw std::out_of_range("coefficient: need 0 <= l1 <= n1 and 0 <= l2 <= n2");
}

double binomial(int n, int k) {
  double acc = 1.0;
  for (int i = 1; i <= k; ++i) acc *= static_cast<double>(n - k + i) / i;
  return acc;
}

double log_factorial(int n) { return std::lgamma(n + 1.0); }

// Oracle coefficients for every target with a+b = total, computed in one
// pass over the tensor quadrature nodes. targets[a] pairs (a, total - a).
std::vector<double> oracle_row(int n, int m, double theta, int total, int quad_order) {
  const Quadrature quad = gauss_hermite(quad_order);
  const double c = std::cos(theta), s = std::sin(theta);
  std::vector<double> coef(total + 1, 0.0);
  std::vector<std::vector<double>> bare_left(quad.nodes.size());
  for (std::size_t i = 0; i < quad.nodes.size(); ++i)
    bare_left[i] = hermite_bare_all(total, quad.nodes[i]);
  const int src_max = std::max(n, m);
  for (std::size_t i = 0; i < quad.nodes.size(); ++i) {
    const double x1 = quad.nodes[i];
    for (std::size_t j = 0; j < quad.nodes.size(); ++j) {
      const double x2 = quad.nodes[j];
      const double y1 = c * x1 - s * x2;
      const double y2 = s * x1 + c * x2;
      const std::vector<double> b1 = hermite_bare_all(src_max, y1);
      const std::vector<double> b2 = hermite_bare_all(src_max, y2);
      const double w_src = quad.weights[i] * quad.weights[j] * b1[n] * b2[m];
      for (int a = 0; a <= total; ++a)
        coef[a] += w_src * bare_left[i][a] * bare_left[j][total - a];
    }
  }
  return coef;
}

}  // namespace

TrigExponents printed_exponents(int n1, int n2, int l1, int l2) {
  return TrigExponents{n1 + l1, n2 + l2};
}

double coefficient_closed_form(int n1, int n2, int l1, int l2, double theta) {
  return coefficient_closed_form(n1, n2, l1, l2, theta,
                                 printed_exponents(n1, n2, l1, l2));
}

double coefficient_closed_form(int n1, int n2, int l1, int l2, double theta,
                               const TrigExponents& exponents) {
  check_labels(n1, n2, l1, l2);
  const int a = l1 + l2;
  const int b = (n1 + n2) - (l1 + l2);
  const double root = std::exp(0.5 * (log_factorial(a) + log_factorial(b) -
                                      log_factorial(n1) - log_factorial(n2)));
  return std::pow(std::cos(theta), exponents.cos_exp) *
         std::pow(std::sin(theta), exponents.sin_exp) * root;
}

OracleValue coefficient_oracle(int n, int m, int l1, int l2, double theta,
                               int quad_order) {
  if (n < 0 || m < 0 || l1 < 0 || l2 < 0)
    throw std::out_of_range("coefficient_oracle: indices must be >= 0");
  OracleValue result;
  result.accuracy_warning = quad_order < (n + m + l1 + l2) / 2 + 1;
  const Quadrature quad = gauss_hermite(quad_order);
  const double c = std::cos(theta), s = std::sin(theta);
  const int src_max = std::max(n, m);
  double acc = 0.0;
  for (std::size_t i = 0; i < quad.nodes.size(); ++i) {
    const double x1 = quad.nodes[i];
    const std::vector<double> t1 = hermite_bare_all(l1, x1);
    for (std::size_t j = 0; j < quad.nodes.size(); ++j) {
      const double x2 = quad.nodes[j];
      const std::vector<double> t2 = hermite_bare_all(l2, x2);
      const std::vector<double> b1 = hermite_bare_all(src_max, c * x1 - s * x2);
      const std::vector<double> b2 = hermite_bare_all(src_max, s * x1 + c * x2);
      acc += quad.weights[i] * quad.weights[j] * t1[l1] * t2[l2] * b1[n] * b2[m];
    }
  }
  result.value = acc;
  return result;
}

double CoefficientTable::sum_sq_oracle() const {
  double acc = 0.0;
  for (const auto& e : entries) acc += e.oracle * e.oracle;
  return acc;
}

double CoefficientTable::max_abs_diff() const {
  double worst = 0.0;
  for (const auto& e : entries) worst = std::max(worst, e.abs_diff);
  return worst;
}

std::string CoefficientTable::to_json() const {
  std::ostringstream out;
  out << "{\"source\": [" << n << ", " << m << "], \"theta\": " << format_full(theta)
      << ", \"entries\": [";
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const auto& e = entries[i];
    if (i) out << ", ";
    out << "{\"target\": [" << e.target1 << ", " << e.target2
        << "], \"oracle\": " << format_full(e.oracle)
        << ", \"closed_form\": " << format_full(e.closed_form)
        << ", \"abs_diff\": " << format_full(e.abs_diff) << "}";
  }
  out << "]}";
  return out.str();
}

CoefficientTable expand_rotated_state(int n, int m, double theta, int quad_order,
                                      int cutoff) {
  if (n < 0 || m < 0) throw std::invalid_argument("expand_rotated_state: indices must be >= 0");
  if (n + m > cutoff)
    throw std::invalid_argument("expand_rotated_state: n+m exceeds cutoff");
  const int total = n + m;
  CoefficientTable table;
  table.n = n;
  table.m = m;
  table.theta = theta;
  table.accuracy_warning = quad_order < total + 1;
  const std::vector<double> oracle = oracle_row(n, m, theta, total, quad_order);
  table.entries.resize(total + 1);
  for (int a = 0; a <= total; ++a) {
    CoefficientEntry& e = table.entries[a];
    e.target1 = a;
    e.target2 = total - a;
    e.oracle = oracle[a];
    // Printed closed form: sum the (l1, l2) pairs landing on this target,
    // with the binomial factors that sit outside the square-root factor.
    double printed = 0.0;
    for (int l1 = std::max(0, a - m); l1 <= std::min(n, a); ++l1) {
      const int l2 = a - l1;
      printed += binomial(n, l1) * binomial(m, l2) *
                 coefficient_closed_form(n, m, l1, l2, theta);
    }
    e.closed_form = printed;
    e.abs_diff = std::abs(printed - e.oracle);
  }
  return table;
}

double quanta_leakage(int n, int m, double theta, int probe_total, int quad_order) {
  if (n < 0 || m < 0) throw std::invalid_argument("quanta_leakage: indices must be >= 0");
  if (probe_total < 0) throw std::invalid_argument("quanta_leakage: probe_total must be >= 0");
  if (probe_total == n + m)
    throw std::invalid_argument("quanta_leakage: probe_total equals source total");
  const std::vector<double> coef = oracle_row(n, m, theta, probe_total, quad_order);
  double worst = 0.0;
  for (double v : coef) worst = std::max(worst, std::abs(v));
  return worst;
}

}  // namespace landau
