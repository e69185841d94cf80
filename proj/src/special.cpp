#include "kacgap/special.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace kacgap {

namespace {
// Lanczos coefficients, g = 7, 9 terms.
constexpr double kLanczos[9] = {
    0.99999999999980993,      676.5203681218851,     -1259.1392167224028,
    771.32342877765313,       -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,     9.9843695780195716e-6, 1.5056327351493116e-7};
} // namespace

std::complex<double> log_gamma(std::complex<double> z) {
  const double pi = std::numbers::pi;
  if (z.real() < 0.5) {
    // Reflection: log Gamma(z) = log(pi / sin(pi z)) - log Gamma(1 - z).
    if (z.imag() == 0.0 && z.real() == std::floor(z.real()))
      throw std::domain_error("log_gamma: pole at non-positive integer");
    return std::log(pi) - std::log(std::sin(pi * z)) - log_gamma(1.0 - z);
  }
  z -= 1.0;
  std::complex<double> x = kLanczos[0];
  for (int i = 1; i < 9; ++i) x += kLanczos[i] / (z + static_cast<double>(i));
  const std::complex<double> t = z + 7.5;
  return 0.5 * std::log(2.0 * pi) + (z + 0.5) * std::log(t) - t + std::log(x);
}

double log_beta(double a, double b) {
  if (a <= 0.0 || b <= 0.0) throw std::domain_error("log_beta: arguments must be positive");
  return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
}

double trig_moment(int a, int b) {
  if (a < 0 || b < 0) throw std::domain_error("trig_moment: negative exponent");
  if (a % 2 != 0 || b % 2 != 0) return 0.0;
  // (1/2pi) * 2 B((a+1)/2, (b+1)/2) / ... = Gamma((a+1)/2) Gamma((b+1)/2) /
  // (pi * Gamma((a+b)/2 + 1)).
  return std::exp(std::lgamma(0.5 * (a + 1)) + std::lgamma(0.5 * (b + 1)) -
                  std::lgamma(0.5 * (a + b) + 1.0)) /
         std::numbers::pi;
}

} // namespace kacgap
