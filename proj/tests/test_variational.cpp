#include <doctest.h>

#include "kacgap/bounds.hpp"
#include "kacgap/sphere.hpp"
#include "kacgap/variational.hpp"

#include <cmath>

using namespace kacgap;

TEST_CASE("profile orthogonalization") {
  const int N = 9;
  const SphereSpec spec{N, 1.0};
  // v^4 case: coefficients from the exact moment formula.
  TrialProfile q;
  q.N = N;
  q.coefficients = {0.0, 0.0, 1.0};
  const TrialProfile o = orthogonalize(q);
  const double m4 = moment_monomial(spec, {4});
  const double m6 = moment_monomial(spec, {6});
  const double m2 = moment_monomial(spec, {2}); // = 1
  const double b = (m6 - m4) / (m4 - m2 * m2);  // <v^4, v^2-1>/||v^2-1||^2
  CHECK(o.coefficients[2] == doctest::Approx(1.0));
  CHECK(o.coefficients[1] == doctest::Approx(-b).epsilon(1e-12));
  CHECK(o.coefficients[0] == doctest::Approx(-m4 + b).epsilon(1e-12));
  CHECK(o.orthogonalized);

  // The removed span collapses to zero.
  TrialProfile eta;
  eta.N = N;
  eta.coefficients = {-1.0, 1.0};
  const TrialProfile z = orthogonalize(eta);
  CHECK(std::abs(z.coefficients[0]) < 1e-14);
  CHECK(std::abs(z.coefficients[1]) < 1e-14);

  // Idempotence.
  const TrialProfile oo = orthogonalize(o);
  for (std::size_t j = 0; j < o.coefficients.size(); ++j)
    CHECK(oo.coefficients[j] == doctest::Approx(o.coefficients[j]).epsilon(1e-14));
}

TEST_CASE("quartic eigenprofile Rayleigh quotient at constant rates") {
  for (int N = 3; N <= 12; ++N) {
    TrialProfile f0;
    f0.N = N;
    f0.coefficients = {-3.0 * N / (N + 2.0), 0.0, 1.0};
    f0.orthogonalized = true;
    const double e = dirichlet_form_A(f0, 0.0);
    const double n2 = profile_sum_norm2(f0);
    CHECK(e / n2 == doctest::Approx((N + 2.0) / (2.0 * (N - 1.0))).epsilon(1e-9));
  }
  // phi = 0 gives a zero form; non-orthogonalized input is rejected.
  TrialProfile zero;
  zero.N = 6;
  zero.coefficients = {0.0, 0.0, 0.0};
  zero.orthogonalized = true;
  CHECK(dirichlet_form_A(zero, 0.5) == doctest::Approx(0.0));
  TrialProfile raw;
  raw.N = 6;
  raw.coefficients = {0.0, 0.0, 1.0};
  CHECK_THROWS(dirichlet_form_A(raw, 0.0));
}

TEST_CASE("dirichlet form is stable under quadrature refinement") {
  TrialProfile p;
  p.N = 8;
  p.coefficients = {0.0, 0.3, -1.0, 0.0, 0.25};
  const TrialProfile o = orthogonalize(p);
  for (double g : {0.0, 0.5, 1.0}) {
    const double a = dirichlet_form_A(o, g, 64);
    const double b = dirichlet_form_A(o, g, 128);
    CHECK(std::abs(a - b) < 1e-8 * std::max(1.0, std::abs(a)));
  }
}

TEST_CASE("rayleigh_min: exact value at constant rates, ordering elsewhere") {
  for (int N = 3; N <= 10; ++N) {
    const RayleighResult r = rayleigh_min(N, 0.0, 4);
    CHECK(r.value == doctest::Approx((N + 2.0) / (2.0 * (N - 1.0))).epsilon(1e-9));
  }
  // Upper bound dominates the rigorous lower bound where the gap is unknown.
  CHECK(hat_delta_lb(10, 0.5) <= rayleigh_min(10, 0.5, 8).value);
  // Nested trial spaces: value non-increasing in degree.
  double prev = rayleigh_min(7, 0.5, 4).value;
  for (int d : {6, 8, 10, 12}) {
    const double cur = rayleigh_min(7, 0.5, d).value;
    CHECK(cur <= prev + 1e-12);
    prev = cur;
  }
  // The returned profile reproduces the quotient.
  const RayleighResult r = rayleigh_min(6, 0.5, 6);
  CHECK(dirichlet_form_A(r.profile, 0.5) / profile_sum_norm2(r.profile) ==
        doctest::Approx(r.value).epsilon(1e-10));
  CHECK_THROWS(rayleigh_min(6, 0.5, 3));
  CHECK_THROWS(rayleigh_min(6, 0.5, 14));
}

TEST_CASE("two-particle closed form holds for every rate exponent") {
  for (double g : {0.0, 0.5, 1.0}) {
    const RayleighResult r = rayleigh_min(2, g, 4);
    CHECK(r.value == doctest::Approx(std::pow(2.0, g + 1.0)).epsilon(1e-9));
  }
}

TEST_CASE("linearized collision operator gap") {
  LinearizedModel m;
  m.gamma = 0.0;
  m.basis_size = 16;
  CHECK(linearized_gap(m) == doctest::Approx(0.5).epsilon(1e-6));

  // Hard-sphere value: consistent with the rigorous lower bound, and the
  // Galerkin values at two large basis sizes agree closely (the square-root
  // rate kernel converges more slowly than polynomial rates).
  LinearizedModel h32{0.5, 32, 0};
  LinearizedModel h48{0.5, 48, 0};
  LinearizedModel h64{0.5, 64, 0};
  const double v32 = linearized_gap(h32);
  const double v48 = linearized_gap(h48);
  const double v64 = linearized_gap(h64);
  CHECK(v48 <= v32 + 1e-12);             // nested Galerkin spaces
  CHECK(v64 <= v48 + 1e-12);
  CHECK(std::abs(v48 - v64) < 1e-4);     // convergence plateau
  CHECK(v64 >= lambda_lb(0.5).value);    // upper bound above lower bound
  CHECK(v64 > 0.0);                      // nullspace directions excluded

  LinearizedModel bad{0.5, 3, 0};
  CHECK_THROWS(linearized_gap(bad));
}

TEST_CASE("exact spectra at constant rates") {
  for (int N = 3; N <= 8; ++N) {
    const SpectrumResult s = exact_maxwellian_spectrum(N, 4);
    CHECK(s.gap == doctest::Approx((N + 2.0) / (2.0 * (N - 1.0))).epsilon(1e-9));
    CHECK(s.alignment == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(s.retained_dimension > 0);
    for (double ev : s.eigenvalues) CHECK(ev >= s.gap - 1e-9);
  }
  CHECK(exact_maxwellian_spectrum(3, 4).gap == doctest::Approx(1.25).epsilon(1e-9));
  CHECK(exact_maxwellian_spectrum(4, 4).gap == doctest::Approx(1.0).epsilon(1e-9));
  // Enlarging the sector does not move the gap at these sizes.
  const SpectrumResult s6 = exact_maxwellian_spectrum(6, 6);
  CHECK(s6.gap == doctest::Approx(0.8).epsilon(1e-9));
  CHECK_THROWS(exact_maxwellian_spectrum(9, 4));
  CHECK_THROWS(exact_maxwellian_spectrum(6, 10));
}

TEST_CASE("three pipelines agree at constant rates") {
  for (int N : {4, 6}) {
    const double exact = exact_maxwellian_spectrum(N, 4).gap;
    const double ray = rayleigh_min(N, 0.0, 4).value;
    CHECK(exact == doctest::Approx(ray).epsilon(1e-9));
    CHECK(hat_delta_lb(N, 0.0) <= exact + 1e-12);
  }
}
