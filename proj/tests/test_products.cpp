#include <doctest.h>

#include "kacgap/bounds.hpp"
#include "kacgap/products.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

using namespace kacgap;

namespace {

RationalProductSpec uniform_factor_spec() {
  // 1 - (4j+1)/((j-1)^2(j+1)) = (j^3 - j^2 - 5j) / ((j-1)^2 (j+1))
  RationalProductSpec spec;
  spec.numerator_roots = poly_roots({0.0, -5.0, -1.0, 1.0});
  spec.denominator_roots = poly_roots({1.0, -1.0, -1.0, 1.0});
  spec.start_index = 3;
  return spec;
}

double uniform_factor(long long j) {
  const double d = static_cast<double>(j);
  return 1.0 - (4.0 * d + 1.0) / ((d - 1.0) * (d - 1.0) * (d + 1.0));
}

} // namespace

TEST_CASE("poly_roots solves small polynomials") {
  // x^3 - x^2 - 5x -> {0, (1 +- sqrt(21))/2}
  auto roots = poly_roots({0.0, -5.0, -1.0, 1.0});
  REQUIRE(roots.size() == 3);
  std::vector<double> re;
  for (auto r : roots) {
    CHECK(std::abs(r.imag()) < 1e-9);
    re.push_back(r.real());
  }
  std::sort(re.begin(), re.end());
  const double s21 = std::sqrt(21.0);
  CHECK(re[0] == doctest::Approx((1.0 - s21) / 2.0).epsilon(1e-10));
  CHECK(re[1] == doctest::Approx(0.0).epsilon(1e-10));
  CHECK(re[2] == doctest::Approx((1.0 + s21) / 2.0).epsilon(1e-10));

  auto lin = poly_roots({-1.0, 1.0});
  REQUIRE(lin.size() == 1);
  CHECK(lin[0].real() == doctest::Approx(1.0));

  auto quad = poly_roots({1.0, 0.0, 1.0}); // x^2 + 1 -> conjugate pair
  REQUIRE(quad.size() == 2);
  CHECK(quad[0] == std::conj(quad[1]));
  CHECK(std::abs(std::abs(quad[0].imag()) - 1.0) < 1e-10);

  CHECK_THROWS(poly_roots({0.0}));
}

TEST_CASE("gamma closed form of the uniform-bound product") {
  const auto spec = uniform_factor_spec();
  const ProductResult res = gamma_product_limit(spec);
  CHECK(res.closed_form());
  // 3 / (Gamma((5+sqrt(21))/2) Gamma((5-sqrt(21))/2))
  const double s21 = std::sqrt(21.0);
  const double ref = 3.0 / (std::tgamma((5.0 + s21) / 2.0) * std::tgamma((5.0 - s21) / 2.0));
  CHECK(res.value == doctest::Approx(ref).epsilon(1e-12));
  CHECK(std::abs(res.value - 0.03881503614) < 1e-9);

  // Brute-force partial product as an independent oracle.
  double partial = 0.0;
  for (long long j = 3; j <= 1000000; ++j) partial += std::log(uniform_factor(j));
  CHECK(std::abs(std::exp(partial) - res.value) < 1e-6);
}

TEST_CASE("gamma closed form: identity and invariances") {
  RationalProductSpec spec;
  spec.numerator_roots = {{0.5, 0.0}, {-2.0, 0.0}};
  spec.denominator_roots = spec.numerator_roots;
  spec.start_index = 5;
  CHECK(gamma_product_limit(spec).value == doctest::Approx(1.0).epsilon(1e-14));

  // Permutation of roots leaves the value unchanged.
  auto base = uniform_factor_spec();
  const double v0 = gamma_product_limit(base).value;
  std::swap(base.numerator_roots[0], base.numerator_roots[2]);
  std::swap(base.denominator_roots[0], base.denominator_roots[1]);
  CHECK(gamma_product_limit(base).value == doctest::Approx(v0).epsilon(1e-12));
}

TEST_CASE("gamma closed form rejects poles and mismatches") {
  RationalProductSpec spec;
  spec.numerator_roots = {{3.0, 0.0}};  // factor vanishes at j = 3
  spec.denominator_roots = {{3.0, 0.0}};
  spec.start_index = 3;
  CHECK_THROWS(gamma_product_limit(spec));

  RationalProductSpec bad;
  bad.numerator_roots = {{0.0, 0.0}, {1.0 - std::sqrt(21.0), 0.0}};
  bad.denominator_roots = {{-1.5, 0.0}}; // degree mismatch
  bad.start_index = 3;
  CHECK_THROWS(gamma_product_limit(bad));
}

TEST_CASE("truncated products with certified tails") {
  // prod_{k>=2} (1 - 1/k^2) telescopes to 1/2.
  const ProductResult half = truncated_product(
      [](long long k) { return 1.0 - 1.0 / (static_cast<double>(k) * k); }, 2, 100000, 1.0);
  CHECK(std::abs(half.value - 0.5) < 1e-4);
  CHECK(half.tail_bound > 0.0);
  CHECK(half.tail_bound < 2e-5);

  // Empty range gives the neutral element with tail control only.
  const ProductResult empty = truncated_product(
      [](long long) { return 0.5; }, 10, 5, 2.0);
  CHECK(empty.value == doctest::Approx(1.0));

  // Enlarging K can only decrease the value and shrink the tail bound.
  auto fac = [](long long k) { return 1.0 - 2.0 / (static_cast<double>(k) * k); };
  const ProductResult a = truncated_product(fac, 3, 1000, 2.1);
  const ProductResult b = truncated_product(fac, 3, 10000, 2.1);
  CHECK(b.value <= a.value);
  CHECK(b.tail_bound < a.tail_bound);

  CHECK_THROWS(truncated_product([](long long) { return -0.1; }, 2, 10, 1.0));
}

TEST_CASE("truncated induction-coefficient product, both rate exponents") {
  auto run = [](double gamma) {
    return truncated_product(
        [gamma](long long k) {
          return 1.0 - a_coeff(k, gamma) / (static_cast<double>(k) * k);
        },
        11, 1000000, 5.0 * (1.0 + gamma) * 1.0001);
  };
  // Constant-rate value: independent long-double log-sum oracle.
  const ProductResult g0 = run(0.0);
  long double acc = 0.0L;
  for (long long k = 11; k <= 1000000; ++k)
    acc += std::log1p(-static_cast<long double>(a_coeff(k, 0.0)) / ((long double)k * k));
  CHECK(g0.value == doctest::Approx((double)std::exp(acc)).epsilon(1e-10));
  CHECK(std::abs(g0.value - 0.5067931) < 5e-4);

  const ProductResult gh = run(0.5);
  CHECK(std::abs(gh.value - 0.4022428) < 5e-4);
  CHECK(gh.tail_bound < 1e-4);
}
