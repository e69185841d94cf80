#pragma once
// Special functions: complex log-gamma (Lanczos), log-beta, trigonometric
// moments of cos^a sin^b over the circle.

#include <complex>

namespace kacgap {

// Principal-branch log Gamma(z) via a Lanczos approximation (g = 7, 9
// coefficients), with the reflection formula for Re(z) < 0.5.
std::complex<double> log_gamma(std::complex<double> z);

// log B(a, b) = lgamma(a) + lgamma(b) - lgamma(a+b), a, b > 0.
double log_beta(double a, double b);

// (1/2pi) \int_0^{2pi} cos^a(t) sin^b(t) dt. Zero unless a and b are both
// even; a, b >= 0.
double trig_moment(int a, int b);

} // namespace kacgap
