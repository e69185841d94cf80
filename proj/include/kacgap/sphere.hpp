#pragma once
// Geometry and measure theory of the energy sphere S^{N-1}(sqrt(NE)):
// sampling, marginal densities, moments, quadrature against the one- and
// two-coordinate marginals, and exact polynomial action of the averaging
// operators.

#include "kacgap/gauss.hpp"
#include "kacgap/polynomial.hpp"

#include <Eigen/Dense>
#include <cstdint>
#include <random>
#include <vector>

namespace kacgap {

struct SphereSpec {
  int n_particles = 2;      // N
  double energy = 1.0;      // E, mean energy per particle

  double radius() const;    // sqrt(N E)
  void validate() const;    // throws on invalid N, E
};

struct SpherePoint {
  Eigen::VectorXd velocities;
};

struct MarginalDensity {
  SphereSpec sphere;
  int m = 1;                // number of retained coordinates, 1 <= m <= N-1
  double log_normalization; // log of the density prefactor at E = 1
};

MarginalDensity make_marginal(const SphereSpec &spec, int m);

// Joint density of the first m coordinates at w (length m). Zero outside the
// ball |w|^2 <= N E.
double marginal_density_eval(const MarginalDensity &den, const Eigen::VectorXd &w);

// sup over the grid of rho_N(v) / M(v), with M the standard unit Gaussian.
// Grid points outside the support contribute 0. Requires N >= 5.
double gaussian_domination_check(int N, const std::vector<double> &grid);

std::vector<SpherePoint> sample_uniform(const SphereSpec &spec, std::uint64_t rng_seed,
                                        int count);
SpherePoint sample_one(const SphereSpec &spec, std::mt19937_64 &rng);

// Exact value of \int prod_i v_i^{e_i} dsigma over S^{N-1}(sqrt(NE)).
// Odd exponents give 0. Exponent vector may be shorter than N (implicit 0s).
double moment_monomial(const SphereSpec &spec, const std::vector<int> &exponents);

struct QuadratureRule {
  Eigen::MatrixXd points;   // nodes x m
  Eigen::VectorXd weights;  // probability weights, sum to 1
};

// Gauss-type rule for the m-coordinate marginal of the sphere, m in {1, 2}.
// For m = 1: Gauss-Gegenbauer in v. For m = 2: radial Gauss-Jacobi crossed
// with equispaced angles. Exact for polynomials of degree <= 2*nodes - 1.
QuadratureRule quadrature_rule(const MarginalDensity &den, int nodes);

// Averaging operator K of the one-coordinate marginal applied to a
// polynomial: even monomials v^{2k} map to c_k (N - v^2)^k, odd monomials to
// zero. Assumes E = 1 (radius sqrt(N)).
Polynomial k_apply_polynomial(const SphereSpec &spec, const Polynomial &poly);

// Conditional expectation of v_k^{k_exponent} (k_exponent in {2, 4}) given a
// disjoint coordinate pair, as a polynomial in s = v_j^2 + v_l^2:
//   E[v_k^2 | s] = (N - s)/(N - 2),  E[v_k^4 | s] = 3 (N - s)^2 / ((N - 2) N).
Polynomial project_pair_polynomial(const SphereSpec &spec, int k_exponent);

} // namespace kacgap
