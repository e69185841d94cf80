#pragma once
// Dense univariate polynomials in the monomial basis; degree cap 16 for the
// operations that promise exactness.

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace kacgap {

struct Polynomial {
  // coeffs[k] multiplies x^k.
  std::vector<double> coeffs;

  Polynomial() = default;
  explicit Polynomial(std::vector<double> c) : coeffs(std::move(c)) {}

  int degree() const {
    for (int k = static_cast<int>(coeffs.size()) - 1; k >= 0; --k)
      if (coeffs[k] != 0.0) return k;
    return 0;
  }

  double operator()(double x) const {
    double acc = 0.0;
    for (std::size_t k = coeffs.size(); k-- > 0;) acc = acc * x + coeffs[k];
    return acc;
  }

  double coeff(std::size_t k) const { return k < coeffs.size() ? coeffs[k] : 0.0; }

  Polynomial &operator+=(const Polynomial &o) {
    if (o.coeffs.size() > coeffs.size()) coeffs.resize(o.coeffs.size(), 0.0);
    for (std::size_t k = 0; k < o.coeffs.size(); ++k) coeffs[k] += o.coeffs[k];
    return *this;
  }

  Polynomial &operator*=(double s) {
    for (double &c : coeffs) c *= s;
    return *this;
  }

  friend Polynomial operator+(Polynomial a, const Polynomial &b) { return a += b; }
  friend Polynomial operator*(Polynomial a, double s) { return a *= s; }
  friend Polynomial operator*(double s, Polynomial a) { return a *= s; }

  friend Polynomial operator*(const Polynomial &a, const Polynomial &b) {
    if (a.coeffs.empty() || b.coeffs.empty()) return Polynomial{};
    std::vector<double> c(a.coeffs.size() + b.coeffs.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.coeffs.size(); ++i)
      for (std::size_t j = 0; j < b.coeffs.size(); ++j) c[i + j] += a.coeffs[i] * b.coeffs[j];
    return Polynomial{std::move(c)};
  }
};

} // namespace kacgap
