#pragma once
// Spectra of the m-block correlation operators of the uniform sphere measure
// and the quantitative near-independence bounds between disjoint coordinate
// blocks.

#include "kacgap/polynomial.hpp"

#include <cstdint>
#include <vector>

namespace kacgap {

struct CorrelationSpectrum {
  int N = 0;
  int m = 0;
  std::vector<double> eigenvalues; // kappa(k), k = 0..k_max
};

// k-th eigenvalue of the m-block correlation operator:
// (-1)^k Gamma((N-m)/2) Gamma(m/2+k) / (Gamma((N-m)/2+k) Gamma(m/2)).
double kappa(int N, int m, int k);

CorrelationSpectrum correlation_spectrum(int N, int m, int k_max = 20);

struct CorrelationCheck {
  double lhs_mc = 0.0;     // |<(f o pi_A)(g o pi_B)>| by Monte Carlo
  double lhs_eigen = 0.0;  // same via the eigen-expansion
  double rhs = 0.0;        // (m/(N-m)) ||f|| ||g||
  double mc_sigma = 0.0;   // standard error of lhs_mc
};

// f, g are radial polynomials in s = |y|^2 on the m-coordinate marginal; both
// must be mean-zero against that marginal. Blocks A and B are the first and
// second m coordinates.
CorrelationCheck correlation_bound_check(int N, int m, const Polynomial &f, const Polynomial &g,
                                         std::uint64_t rng_seed, int samples = 1000000);

// Closed-form operator-norm bounds on the averaged block projections:
// order 1: 1/N + 3/(N(N+1)); order 2: 2/(N-1) + 8N/((N-2)(N-4)^2).
double projection_sum_bound(int N, int order);

struct PairNormBounds {
  double lower = 0.0;
  double value = 0.0;
  double upper = 0.0;
};

// ||sum_j phi(v_j)||^2 = N ||phi||^2 + N(N-1) <phi, K phi> for phi orthogonal
// to 1 and v^2, with the sandwich
// N (1 - 15/((N+1)(N+3))) ||phi||^2 <= value <= N (1 + 3/(N+1)) ||phi||^2.
PairNormBounds pair_norm_equivalence(int N, const Polynomial &phi);

} // namespace kacgap
