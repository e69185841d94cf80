#include "kacgap/sphere.hpp"

#include "kacgap/special.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace kacgap {

double SphereSpec::radius() const { return std::sqrt(n_particles * energy); }

void SphereSpec::validate() const {
  if (n_particles < 2) throw std::invalid_argument("SphereSpec: N >= 2 required");
  if (!(energy > 0.0)) throw std::invalid_argument("SphereSpec: E > 0 required");
}

MarginalDensity make_marginal(const SphereSpec &spec, int m) {
  spec.validate();
  const int N = spec.n_particles;
  if (m < 1 || m >= N) throw std::invalid_argument("make_marginal: 1 <= m <= N-1 required");
  MarginalDensity den;
  den.sphere = spec;
  den.m = m;
  // Density on the radius-sqrt(N) ball (E = 1):
  //   f(w) = pi^{-m/2} N^{-m/2} Gamma(N/2)/Gamma((N-m)/2) (1-|w|^2/N)^{(N-m-2)/2}.
  den.log_normalization = -0.5 * m * std::log(std::numbers::pi * N) +
                          std::lgamma(0.5 * N) - std::lgamma(0.5 * (N - m));
  return den;
}

double marginal_density_eval(const MarginalDensity &den, const Eigen::VectorXd &w) {
  if (w.size() != den.m) throw std::invalid_argument("marginal_density_eval: wrong dimension");
  const int N = den.sphere.n_particles;
  const double E = den.sphere.energy;
  // Scale to the E = 1 sphere: f_E(w) = E^{-m/2} f_1(w / sqrt(E)).
  const double s = w.squaredNorm() / E;
  const double arg = 1.0 - s / N;
  if (arg <= 0.0) return 0.0;
  const double log_val =
      den.log_normalization + 0.5 * (N - den.m - 2) * std::log(arg) - 0.5 * den.m * std::log(E);
  return std::exp(log_val);
}

double gaussian_domination_check(int N, const std::vector<double> &grid) {
  if (N < 5) throw std::invalid_argument("gaussian_domination_check: N >= 5 required");
  const MarginalDensity den = make_marginal(SphereSpec{N, 1.0}, 1);
  double max_ratio = 0.0;
  Eigen::VectorXd w(1);
  for (double v : grid) {
    w[0] = v;
    const double rho = marginal_density_eval(den, w);
    if (rho == 0.0) continue;
    const double gauss =
        std::exp(-0.5 * v * v) / std::sqrt(2.0 * std::numbers::pi);
    max_ratio = std::max(max_ratio, rho / gauss);
  }
  return max_ratio;
}

SpherePoint sample_one(const SphereSpec &spec, std::mt19937_64 &rng) {
  const int N = spec.n_particles;
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::VectorXd v(N);
  double norm2 = 0.0;
  do {
    for (int i = 0; i < N; ++i) v[i] = gauss(rng);
    norm2 = v.squaredNorm();
  } while (norm2 == 0.0);
  v *= spec.radius() / std::sqrt(norm2);
  return SpherePoint{std::move(v)};
}

std::vector<SpherePoint> sample_uniform(const SphereSpec &spec, std::uint64_t rng_seed,
                                        int count) {
  spec.validate();
  if (count < 1) throw std::invalid_argument("sample_uniform: count >= 1 required");
  std::mt19937_64 rng(rng_seed);
  std::vector<SpherePoint> out;
  out.reserve(count);
  for (int i = 0; i < count; ++i) out.push_back(sample_one(spec, rng));
  return out;
}

double moment_monomial(const SphereSpec &spec, const std::vector<int> &exponents) {
  spec.validate();
  const int N = spec.n_particles;
  if (static_cast<int>(exponents.size()) > N)
    throw std::invalid_argument("moment_monomial: more exponents than coordinates");
  long long half_sum = 0;
  for (int e : exponents) {
    if (e < 0) throw std::invalid_argument("moment_monomial: negative exponent");
    if (e % 2 != 0) return 0.0; // antipodal symmetry
    half_sum += e / 2;
  }
  if (half_sum > 60) throw std::invalid_argument("moment_monomial: total degree too large");
  if (half_sum == 0) return 1.0;
  // (NE)^A Gamma(N/2)/Gamma(N/2+A) prod_i Gamma(e_i/2 + 1/2)/Gamma(1/2).
  double log_val = half_sum * std::log(static_cast<double>(N) * spec.energy) +
                   std::lgamma(0.5 * N) - std::lgamma(0.5 * N + half_sum);
  const double lg_half = std::lgamma(0.5);
  for (int e : exponents)
    if (e > 0) log_val += std::lgamma(0.5 * e + 0.5) - lg_half;
  return std::exp(log_val);
}

QuadratureRule quadrature_rule(const MarginalDensity &den, int nodes) {
  if (nodes < 4 || nodes > 512) throw std::invalid_argument("quadrature_rule: nodes in [4, 512]");
  const int N = den.sphere.n_particles;
  const double scale = std::sqrt(den.sphere.energy);
  QuadratureRule rule;
  if (den.m == 1) {
    // v = sqrt(NE) t with weight (1-t^2)^{(N-3)/2} on [-1, 1].
    const double a = 0.5 * (N - 3);
    GaussRule g = gauss_jacobi(nodes, a, a);
    double mass = 0.0;
    for (double w : g.weights) mass += w;
    rule.points.resize(nodes, 1);
    rule.weights.resize(nodes);
    for (int i = 0; i < nodes; ++i) {
      rule.points(i, 0) = std::sqrt(static_cast<double>(N)) * scale * g.nodes[i];
      rule.weights[i] = g.weights[i] / mass;
    }
    return rule;
  }
  if (den.m == 2) {
    // |w|^2 = N E x with radial weight (1-x)^{(N-4)/2} on [0,1], crossed with
    // equispaced angles (exact for trig polynomials of degree < n_ang).
    const int n_ang = 2 * nodes + 2;
    GaussRule g = gauss_jacobi01(nodes, 0.5 * (N - 4), 0.0);
    double mass = 0.0;
    for (double w : g.weights) mass += w;
    rule.points.resize(nodes * n_ang, 2);
    rule.weights.resize(nodes * n_ang);
    int idx = 0;
    for (int i = 0; i < nodes; ++i) {
      const double r = std::sqrt(static_cast<double>(N) * g.nodes[i]) * scale;
      const double wr = g.weights[i] / (mass * n_ang);
      for (int j = 0; j < n_ang; ++j, ++idx) {
        const double phi = 2.0 * std::numbers::pi * j / n_ang;
        rule.points(idx, 0) = r * std::cos(phi);
        rule.points(idx, 1) = r * std::sin(phi);
        rule.weights[idx] = wr;
      }
    }
    return rule;
  }
  throw std::invalid_argument("quadrature_rule: only m in {1, 2} supported");
}

Polynomial k_apply_polynomial(const SphereSpec &spec, const Polynomial &poly) {
  spec.validate();
  const int N = spec.n_particles;
  if (poly.degree() > 16) throw std::invalid_argument("k_apply_polynomial: degree cap 16");
  // K v^{2k} = c_k (N - v^2)^k with c_k = prod_{i=1..k} (2i-1)/(N-3+2i);
  // odd monomials are annihilated.
  Polynomial out{{0.0}};
  const int kmax = poly.degree() / 2;
  for (int k = 0; k <= kmax; ++k) {
    const double b = poly.coeff(2 * k);
    if (b == 0.0) continue;
    double ck = 1.0;
    for (int i = 1; i <= k; ++i) ck *= (2.0 * i - 1.0) / (N - 3.0 + 2.0 * i);
    // Expand (N - v^2)^k.
    std::vector<double> term(2 * k + 1, 0.0);
    double binom = 1.0;
    for (int l = 0; l <= k; ++l) {
      term[2 * l] = binom * std::pow(static_cast<double>(N), k - l) * ((l % 2) ? -1.0 : 1.0);
      binom *= static_cast<double>(k - l) / (l + 1.0);
    }
    out += Polynomial{std::move(term)} * (b * ck);
  }
  return out;
}

Polynomial project_pair_polynomial(const SphereSpec &spec, int k_exponent) {
  spec.validate();
  const int N = spec.n_particles;
  if (N < 3) throw std::invalid_argument("project_pair_polynomial: N >= 3 required");
  const double Nd = N;
  if (k_exponent == 2) {
    // (N - s)/(N - 2)
    return Polynomial{{Nd / (Nd - 2.0), -1.0 / (Nd - 2.0)}};
  }
  if (k_exponent == 4) {
    // 3 (N - s)^2 / ((N - 2) N)
    const double c = 3.0 / ((Nd - 2.0) * Nd);
    return Polynomial{{c * Nd * Nd, -2.0 * c * Nd, c}};
  }
  throw std::invalid_argument("project_pair_polynomial: k_exponent in {2, 4}");
}

} // namespace kacgap
