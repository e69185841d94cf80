#pragma once
// Infinite and truncated products of rational factors, including the
// gamma-function closed form for prod_{j>=M} P(j)/Q(j) and certified tail
// bounds for truncations.

#include <complex>
#include <functional>
#include <string>
#include <vector>

namespace kacgap {

struct RationalProductSpec {
  std::vector<std::complex<double>> numerator_roots;   // roots of P
  std::vector<std::complex<double>> denominator_roots; // roots of Q
  int start_index = 1;                                 // M
  double leading_ratio = 1.0;                          // must be 1
};

struct ProductResult {
  double value = 0.0;
  long long truncation_index = -1; // -1 means closed form
  double tail_bound = 0.0;         // absolute bound on the log-error

  bool closed_form() const { return truncation_index < 0; }
};

// All complex roots (with multiplicity) of sum_k coefficients[k] x^k, via the
// companion-matrix eigenvalues, then conjugate symmetrization. Each returned
// root r satisfies |P(r)| <= tolerance * ||coefficients||_1 * max(1,|r|)^deg.
std::vector<std::complex<double>> poly_roots(const std::vector<double> &coefficients,
                                             double tolerance = 1e-8);

// Closed form of prod_{j=M}^inf P(j)/Q(j) = prod_n Gamma(M - q_n) / Gamma(M - p_n),
// where p_n are the numerator roots and q_n the denominator roots. Requires
// matching degrees, leading_ratio == 1 and equal root sums (convergence).
ProductResult gamma_product_limit(const RationalProductSpec &spec);

// value = prod_{k=M}^{K} factor(k) with factor in (0, 1]; tail_majorant a must
// dominate sup_{k>K} k^2 (1 - factor(k)); then
// tail_bound = a / (K (1 - a/K^2)) and the infinite product lies in
// [value * exp(-tail_bound), value].
ProductResult truncated_product(const std::function<double(long long)> &factor, long long M,
                                long long K, double tail_majorant);

} // namespace kacgap
