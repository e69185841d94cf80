#pragma once
// Gauss quadrature rules via recurrence coefficients and the Golub-Welsch
// symmetric tridiagonal eigensolve.

#include <vector>

namespace kacgap {

struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights; // sum to the total mass of the weight function
};

// Weight (1-x)^a (1+x)^b on [-1, 1]; a, b > -1. Weights sum to
// 2^{a+b+1} B(a+1, b+1).
GaussRule gauss_jacobi(int n, double a, double b);

// Weight x^b (1-x)^a on [0, 1]; weights sum to B(b+1, a+1).
GaussRule gauss_jacobi01(int n, double a, double b);

// Weight x^alpha e^{-x} on [0, inf); weights sum to Gamma(alpha+1).
GaussRule gauss_laguerre(int n, double alpha);

} // namespace kacgap
