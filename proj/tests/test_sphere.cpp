#include <doctest.h>

#include "kacgap/sphere.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace kacgap;

TEST_CASE("uniform sphere sampling: radius and low moments") {
  {
    const SphereSpec spec{2, 1.0};
    const auto pts = sample_uniform(spec, 42, 1000);
    for (const auto &p : pts)
      CHECK(std::abs(p.velocities.squaredNorm() - 2.0) < 1e-12 * 2.0);
  }
  {
    const SphereSpec spec{3, 1.0};
    const int n = 200000;
    const auto pts = sample_uniform(spec, 7, n);
    double s = 0.0, s2 = 0.0;
    for (const auto &p : pts) {
      const double x = p.velocities[0] * p.velocities[0];
      s += x;
      s2 += x * x;
    }
    const double mean = s / n;
    const double sigma = std::sqrt((s2 / n - mean * mean) / n);
    CHECK(std::abs(mean - 1.0) < 3.0 * sigma);
  }
  {
    const SphereSpec spec{10, 1.0};
    const double exact = moment_monomial(spec, {4});
    const int n = 200000;
    const auto pts = sample_uniform(spec, 9, n);
    double s = 0.0, s2 = 0.0;
    for (const auto &p : pts) {
      const double x = std::pow(p.velocities[0], 4);
      s += x;
      s2 += x * x;
    }
    const double mean = s / n;
    const double sigma = std::sqrt((s2 / n - mean * mean) / n);
    CHECK(std::abs(mean - exact) < 3.0 * sigma);
  }
}

TEST_CASE("marginal density values and Gaussian proximity") {
  const MarginalDensity d4 = make_marginal(SphereSpec{4, 1.0}, 1);
  Eigen::VectorXd w(1);
  w << 0.0;
  CHECK(marginal_density_eval(d4, w) == doctest::Approx(1.0 / std::numbers::pi).epsilon(1e-12));
  w << 2.0; // support boundary |v| = sqrt(N)
  CHECK(marginal_density_eval(d4, w) == doctest::Approx(0.0));

  // Density integrates to 1 against its own quadrature.
  const MarginalDensity d10 = make_marginal(SphereSpec{10, 1.0}, 1);
  const QuadratureRule q = quadrature_rule(d10, 64);
  CHECK(q.weights.sum() == doctest::Approx(1.0).epsilon(1e-12));

  // N = 100: within 5% of the unit Gaussian on the bulk |v| <= 2.5. The
  // agreement cannot extend to |v| <= 10: the marginal vanishes at the
  // support edge |v| = sqrt(N) = 10 while the Gaussian does not.
  const MarginalDensity d100 = make_marginal(SphereSpec{100, 1.0}, 1);
  double worst = 0.0;
  for (double v = -2.5; v <= 2.5; v += 0.01) {
    Eigen::VectorXd x(1);
    x << v;
    const double rho = marginal_density_eval(d100, x);
    const double m = std::exp(-0.5 * v * v) / std::sqrt(2.0 * std::numbers::pi);
    worst = std::max(worst, std::abs(rho / m - 1.0));
  }
  CHECK(worst < 0.05);
  Eigen::VectorXd edge(1);
  edge << 10.0;
  CHECK(marginal_density_eval(d100, edge) == doctest::Approx(0.0));
}

TEST_CASE("Gaussian domination of the marginal") {
  std::vector<double> grid;
  for (double v = -3.1; v <= 3.15; v += 0.01) grid.push_back(v);
  CHECK(gaussian_domination_check(10, grid) <= std::exp(2.0));
  std::vector<double> wide;
  for (double v = -31.0; v <= 31.0; v += 0.05) wide.push_back(v);
  CHECK(gaussian_domination_check(1000, wide) <= 1.1);
  CHECK(gaussian_domination_check(1000, {50.0}) == doctest::Approx(0.0)); // outside support
}

TEST_CASE("monomial moments") {
  const SphereSpec spec{7, 1.0};
  CHECK(moment_monomial(spec, {2}) == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(moment_monomial(spec, {1}) == doctest::Approx(0.0));
  CHECK(moment_monomial(spec, {2, 3}) == doctest::Approx(0.0));
  // Trace identity: sum_j E[v_j^2 v_1^2] = N E[v_1^2].
  double acc = moment_monomial(spec, {4});
  for (int j = 1; j < 7; ++j) acc += moment_monomial(spec, {2, 2});
  CHECK(acc == doctest::Approx(7.0 * moment_monomial(spec, {2})).epsilon(1e-12));
  // Energy scaling: each power of v^2 carries a factor E.
  const SphereSpec spec2{7, 2.0};
  CHECK(moment_monomial(spec2, {4}) ==
        doctest::Approx(4.0 * moment_monomial(spec, {4})).epsilon(1e-12));
}

TEST_CASE("quadrature rules against closed-form moments") {
  const SphereSpec spec{10, 1.0};
  const MarginalDensity one = make_marginal(spec, 1);
  const QuadratureRule q1 = quadrature_rule(one, 32);
  double m2 = 0.0, m4 = 0.0;
  for (int i = 0; i < q1.weights.size(); ++i) {
    const double v = q1.points(i, 0);
    m2 += q1.weights[i] * v * v;
    m4 += q1.weights[i] * v * v * v * v;
  }
  CHECK(m2 == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(m4 == doctest::Approx(moment_monomial(spec, {4})).epsilon(1e-10));

  const MarginalDensity two = make_marginal(spec, 2);
  const QuadratureRule q2 = quadrature_rule(two, 32);
  double e2 = 0.0, cross = 0.0;
  for (int i = 0; i < q2.weights.size(); ++i) {
    const double a = q2.points(i, 0), b = q2.points(i, 1);
    e2 += q2.weights[i] * (a * a + b * b);
    cross += q2.weights[i] * a * a * b * b;
  }
  CHECK(e2 == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(cross == doctest::Approx(moment_monomial(spec, {2, 2})).epsilon(1e-10));
}

TEST_CASE("averaging operator on polynomials") {
  const int N = 9;
  const SphereSpec spec{N, 1.0};
  // K v^2 = -(v^2 - N)/(N - 1)
  const Polynomial kv2 = k_apply_polynomial(spec, Polynomial{{0.0, 0.0, 1.0}});
  CHECK(kv2.coeff(0) == doctest::Approx(static_cast<double>(N) / (N - 1)).epsilon(1e-13));
  CHECK(kv2.coeff(2) == doctest::Approx(-1.0 / (N - 1)).epsilon(1e-13));
  // K 1 = 1
  const Polynomial k1 = k_apply_polynomial(spec, Polynomial{{1.0}});
  CHECK(k1.coeff(0) == doctest::Approx(1.0));
  // K v^4 = 3 (v^2 - N)^2 / (N^2 - 1)
  const Polynomial kv4 = k_apply_polynomial(spec, Polynomial{{0.0, 0.0, 0.0, 0.0, 1.0}});
  const double c = 3.0 / (static_cast<double>(N) * N - 1.0);
  CHECK(kv4.coeff(4) == doctest::Approx(c).epsilon(1e-12));
  CHECK(kv4.coeff(2) == doctest::Approx(-2.0 * N * c).epsilon(1e-12));
  CHECK(kv4.coeff(0) == doctest::Approx(N * N * c).epsilon(1e-12));
  // Odd part is annihilated.
  const Polynomial kv3 = k_apply_polynomial(spec, Polynomial{{0.0, 1.0, 0.0, 1.0}});
  CHECK(kv3.coeff(1) == doctest::Approx(0.0));
  CHECK(kv3.coeff(3) == doctest::Approx(0.0));

  // (1 - v^2)^4 expands in (N - v^2)^k with the classical coefficients.
  Polynomial p{{1.0, 0.0, -1.0}};
  Polynomial p4 = (p * p) * (p * p);
  const Polynomial kp4 = k_apply_polynomial(spec, p4);
  const double n1 = N - 1.0, n3 = N + 1.0, n5 = N + 3.0, n7 = N + 5.0;
  std::vector<double> expect = {1.0, -4.0 / n1, 18.0 / (n1 * n3), -60.0 / (n1 * n3 * n5),
                                105.0 / (n1 * n3 * n5 * n7)};
  // Evaluate both sides on a grid instead of matching coefficients.
  for (double v = -2.0; v <= 2.0; v += 0.37) {
    double ref = 0.0, basis = 1.0;
    for (int k = 0; k <= 4; ++k) {
      ref += expect[k] * basis;
      basis *= (N - v * v);
    }
    CHECK(kp4(v) == doctest::Approx(ref).epsilon(1e-11));
  }

  // Self-adjointness on the one-coordinate marginal.
  const MarginalDensity den = make_marginal(spec, 1);
  const QuadratureRule q = quadrature_rule(den, 48);
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  for (int trial = 0; trial < 5; ++trial) {
    Polynomial f{{unif(rng), 0.0, unif(rng), 0.0, unif(rng)}};
    Polynomial g{{unif(rng), 0.0, unif(rng), 0.0, unif(rng), 0.0, unif(rng)}};
    const Polynomial kf = k_apply_polynomial(spec, f);
    const Polynomial kg = k_apply_polynomial(spec, g);
    double a = 0.0, b = 0.0;
    for (int i = 0; i < q.weights.size(); ++i) {
      const double v = q.points(i, 0);
      a += q.weights[i] * f(v) * kg(v);
      b += q.weights[i] * kf(v) * g(v);
    }
    CHECK(a == doctest::Approx(b).epsilon(1e-10));
  }
}

TEST_CASE("pair projection preserves integrals") {
  for (int N = 3; N <= 8; ++N) {
    const SphereSpec spec{N, 1.0};
    const MarginalDensity den = make_marginal(spec, 2);
    const QuadratureRule q = quadrature_rule(den, 40);
    for (int ke : {2, 4}) {
      // proj is a polynomial in s = v_j^2 + v_l^2; evaluate directly.
      const Polynomial proj = project_pair_polynomial(spec, ke);
      double integral = 0.0;
      for (int i = 0; i < q.weights.size(); ++i) {
        const double s = q.points(i, 0) * q.points(i, 0) + q.points(i, 1) * q.points(i, 1);
        double acc = 0.0;
        for (std::size_t k = proj.coeffs.size(); k-- > 0;) acc = acc * s + proj.coeffs[k];
        integral += q.weights[i] * acc;
      }
      CHECK(integral == doctest::Approx(moment_monomial(spec, {ke})).epsilon(1e-10));
    }
  }
}

TEST_CASE("collision weight inequalities on random sphere points") {
  for (double gamma : {0.1, 0.5, 0.9}) {
    for (int N : {5, 12, 40}) {
      const SphereSpec spec{N, 1.0};
      const auto pts = sample_uniform(spec, 1234 + N, 2000);
      const double lower = std::pow((N - 1.0) / N, 1.0 - gamma);
      for (const auto &p : pts) {
        double avg = 0.0;
        for (int k = 0; k < N; ++k)
          avg += std::pow((N - p.velocities[k] * p.velocities[k]) / (N - 1.0), gamma);
        avg /= N;
        CHECK(avg >= lower - 1e-12);
        CHECK(avg <= 1.0 + 1e-12);
      }
      // Squeeze: 1-(1-g)/(N-1) <= ((N-1)/N)^{1-g} <= 1-(1-g)/N.
      CHECK(lower >= 1.0 - (1.0 - gamma) / (N - 1.0) - 1e-12);
      CHECK(lower <= 1.0 - (1.0 - gamma) / N + 1e-12);
    }
  }
}
