#include "kacgap/correlation.hpp"

#include "kacgap/gauss.hpp"
#include "kacgap/sphere.hpp"

#include <cmath>
#include <stdexcept>

namespace kacgap {

double kappa(int N, int m, int k) {
  if (m < 1 || 2 * m > N || N < 3) throw std::invalid_argument("kappa: need m >= 1, 2m <= N, N >= 3");
  if (N == 3 && m == 2) throw std::invalid_argument("kappa: N=3, m=2 excluded");
  if (k < 0) throw std::invalid_argument("kappa: k >= 0");
  if (k == 0) return 1.0;
  const double half_nm = 0.5 * (N - m);
  const double half_m = 0.5 * m;
  const double log_abs = std::lgamma(half_nm) + std::lgamma(half_m + k) -
                         std::lgamma(half_nm + k) - std::lgamma(half_m);
  return (k % 2 ? -1.0 : 1.0) * std::exp(log_abs);
}

CorrelationSpectrum correlation_spectrum(int N, int m, int k_max) {
  CorrelationSpectrum s;
  s.N = N;
  s.m = m;
  s.eigenvalues.reserve(k_max + 1);
  for (int k = 0; k <= k_max; ++k) s.eigenvalues.push_back(kappa(N, m, k));
  return s;
}

namespace {

// Orthonormal radial polynomials e_0..e_kmax in s = |y|^2 under the
// m-coordinate marginal, by Gram-Schmidt on {1, s, s^2, ...} over a radial
// Gauss-Jacobi rule (s = N x, weight x^{m/2-1} (1-x)^{(N-m-2)/2}).
struct RadialBasis {
  std::vector<double> s_nodes;
  std::vector<double> weights; // probability weights
  std::vector<Polynomial> e;   // orthonormal polynomials in s

  RadialBasis(int N, int m, int k_max) {
    const int n = std::max(4 * (k_max + 2), 16);
    GaussRule g = gauss_jacobi01(n, 0.5 * (N - m - 2), 0.5 * m - 1.0);
    double mass = 0.0;
    for (double w : g.weights) mass += w;
    s_nodes.resize(n);
    weights.resize(n);
    for (int i = 0; i < n; ++i) {
      s_nodes[i] = N * g.nodes[i];
      weights[i] = g.weights[i] / mass;
    }
    for (int k = 0; k <= k_max; ++k) {
      std::vector<double> c(k + 1, 0.0);
      c[k] = 1.0;
      Polynomial p{std::move(c)};
      for (const Polynomial &prev : e) p += prev * (-inner(p, prev));
      const double nrm = std::sqrt(inner(p, p));
      if (!(nrm > 1e-14)) throw std::runtime_error("RadialBasis: degenerate basis");
      e.push_back(p * (1.0 / nrm));
    }
  }

  double inner(const Polynomial &a, const Polynomial &b) const {
    double acc = 0.0;
    for (std::size_t i = 0; i < s_nodes.size(); ++i)
      acc += weights[i] * a(s_nodes[i]) * b(s_nodes[i]);
    return acc;
  }
};

} // namespace

CorrelationCheck correlation_bound_check(int N, int m, const Polynomial &f, const Polynomial &g,
                                         std::uint64_t rng_seed, int samples) {
  if (2 * m > N || m < 1) throw std::invalid_argument("correlation_bound_check: need 2m <= N");
  const int deg = std::max(f.degree(), g.degree());
  RadialBasis basis(N, m, deg + 1);

  const double mean_f = basis.inner(f, Polynomial{{1.0}});
  const double mean_g = basis.inner(g, Polynomial{{1.0}});
  if (std::abs(mean_f) > 1e-8 || std::abs(mean_g) > 1e-8)
    throw std::invalid_argument("correlation_bound_check: inputs must be mean-zero");

  CorrelationCheck out;
  const double norm_f = std::sqrt(basis.inner(f, f));
  const double norm_g = std::sqrt(basis.inner(g, g));
  out.rhs = static_cast<double>(m) / (N - m) * norm_f * norm_g;

  // Eigen-expansion: <(f o pi_A)(g o pi_B)> = sum_k kappa(k) <f, e_k><g, e_k>.
  double lhs = 0.0;
  for (int k = 1; k <= deg + 1; ++k)
    lhs += kappa(N, m, k) * basis.inner(f, basis.e[k]) * basis.inner(g, basis.e[k]);
  out.lhs_eigen = std::abs(lhs);

  // Monte Carlo on the sphere: disjoint blocks A = [0, m), B = [m, 2m).
  SphereSpec spec{N, 1.0};
  std::mt19937_64 rng(rng_seed);
  double acc = 0.0, acc2 = 0.0;
  for (int i = 0; i < samples; ++i) {
    const SpherePoint p = sample_one(spec, rng);
    double sa = 0.0, sb = 0.0;
    for (int j = 0; j < m; ++j) {
      sa += p.velocities[j] * p.velocities[j];
      sb += p.velocities[m + j] * p.velocities[m + j];
    }
    const double val = f(sa) * g(sb);
    acc += val;
    acc2 += val * val;
  }
  const double mean = acc / samples;
  const double var = std::max(0.0, acc2 / samples - mean * mean);
  out.lhs_mc = std::abs(mean);
  out.mc_sigma = std::sqrt(var / samples);
  return out;
}

double projection_sum_bound(int N, int order) {
  if (order == 1) {
    if (N < 2) throw std::invalid_argument("projection_sum_bound: N >= 2 for order 1");
    const double Nd = N;
    return 1.0 / Nd + 3.0 / (Nd * (Nd + 1.0));
  }
  if (order == 2) {
    if (N < 5) throw std::invalid_argument("projection_sum_bound: N >= 5 for order 2 (poles at N=2,4)");
    const double Nd = N;
    return 2.0 / (Nd - 1.0) + 8.0 * Nd / ((Nd - 2.0) * (Nd - 4.0) * (Nd - 4.0));
  }
  throw std::invalid_argument("projection_sum_bound: order in {1, 2}");
}

PairNormBounds pair_norm_equivalence(int N, const Polynomial &phi) {
  SphereSpec spec{N, 1.0};
  const MarginalDensity den = make_marginal(spec, 1);
  const int deg = std::max(phi.degree(), 2);
  const QuadratureRule rule = quadrature_rule(den, std::min(512, 2 * deg + 8));
  auto inner = [&](auto &&a, auto &&b) {
    double acc = 0.0;
    for (int i = 0; i < rule.weights.size(); ++i) {
      const double v = rule.points(i, 0);
      acc += rule.weights[i] * a(v) * b(v);
    }
    return acc;
  };
  const auto one = [](double) { return 1.0; };
  const auto vsq = [](double v) { return v * v; };
  const double norm2 = inner(phi, phi);
  if (norm2 == 0.0) return PairNormBounds{0.0, 0.0, 0.0};
  if (std::abs(inner(phi, one)) > 1e-8 * std::sqrt(norm2) ||
      std::abs(inner(phi, vsq)) > 1e-8 * std::sqrt(norm2) * static_cast<double>(N))
    throw std::invalid_argument("pair_norm_equivalence: phi must be orthogonal to 1 and v^2");

  const Polynomial kphi = k_apply_polynomial(spec, phi);
  const double cross = inner(phi, kphi);
  PairNormBounds out;
  out.value = N * norm2 + static_cast<double>(N) * (N - 1) * cross;
  out.lower = N * (1.0 - 15.0 / ((N + 1.0) * (N + 3.0))) * norm2;
  out.upper = N * (1.0 + 3.0 / (N + 1.0)) * norm2;
  return out;
}

} // namespace kacgap
