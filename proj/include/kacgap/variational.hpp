#pragma once
// Variational upper bounds and exact spectra: Rayleigh quotients over sums of
// one-particle profiles, the exact constant-rate generator spectrum on
// symmetric polynomials, and Hermite-Galerkin bounds for the linearized
// collision operator's gap.

#include "kacgap/polynomial.hpp"

#include <Eigen/Dense>
#include <vector>

namespace kacgap {

struct TrialProfile {
  // phi(v) = sum_j coefficients[j] v^{2j}.
  std::vector<double> coefficients;
  int N = 3;
  bool orthogonalized = false;

  int even_degree() const { return static_cast<int>(coefficients.size()) - 1; }
  double eval(double v) const {
    double acc = 0.0;
    const double s = v * v;
    for (std::size_t j = coefficients.size(); j-- > 0;) acc = acc * s + coefficients[j];
    return acc;
  }
};

struct LinearizedModel {
  double gamma = 0.0;
  int basis_size = 16;      // number of retained even Hermite directions
  int quadrature_order = 0; // 0 = auto (>= 2*basis_size)
};

// Removes the projections onto span{1, v^2 - 1} under the one-coordinate
// marginal of the N-sphere (E = 1).
TrialProfile orthogonalize(const TrialProfile &profile);

// Dirichlet form of f = sum_j phi(v_j) for the pair-collision generator with
// rate exponent gamma, via the exact pair reduction. theta_nodes controls the
// angular grid (the rotation average itself is exact for polynomials).
double dirichlet_form_A(const TrialProfile &profile, double gamma, int theta_nodes = 64);

// Squared norm of f = sum_j phi(v_j): N ||phi||^2 + N(N-1) <phi, K phi>.
double profile_sum_norm2(const TrialProfile &profile);

struct RayleighResult {
  double value = 0.0;
  TrialProfile profile;
};

// Minimum Rayleigh quotient over even profiles of degree <= degree (degree in
// [4, 12]); upper bound on the profile-sum gap.
RayleighResult rayleigh_min(int N, double gamma, int degree);

// Smallest Rayleigh value of the negated linearized collision operator on an
// even Hermite basis orthogonal to {1, v^2}; upper bound on its gap.
double linearized_gap(const LinearizedModel &model);

struct SpectrumResult {
  std::vector<double> eigenvalues; // ascending, nonzero modes only
  double gap = 0.0;                // smallest nonzero eigenvalue
  double alignment = 0.0;          // |<gap eigenvector, f0>| / (norms)
  int retained_dimension = 0;
};

// Exact generator spectrum at constant collision rates (gamma = 0) on the
// symmetric-polynomial sector of total degree <= max_degree (even part),
// N in [3, 8], max_degree <= 8.
SpectrumResult exact_maxwellian_spectrum(int N, int max_degree);

} // namespace kacgap
