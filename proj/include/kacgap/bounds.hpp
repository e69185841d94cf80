#pragma once
// Closed-form constants and certified product lower bounds for the spectral
// gap of the Kac walk: the full gap, its restriction to sums of one-particle
// profiles, and the induced lower bound on the linearized collision
// operator's gap.

#include <optional>
#include <string>

namespace kacgap {

inline constexpr int kAutoBase = 0; // n0 = kAutoBase requests the auto scan

struct GapBoundInputs {
  int N = 2;
  double gamma = 0.0;
  int n0 = kAutoBase;
  void validate() const;
};

struct LambdaBound {
  double value = 0.0;            // certified lower bound
  int n0 = 0;                    // induction base selected
  double tail_certificate = 0.0; // log-error bound of the truncated product
  long long truncation_index = 0;
};

struct BoundReport {
  int N = 0;
  double gamma = 0.0;
  int n0_used = 0;
  double a_n = 0.0;
  std::optional<double> c_n;    // undefined for N <= 4
  double mu_n = 0.0;
  double uniform_lb = 0.0;
  double hat_delta_lb = 0.0;
  double delta_lb = 0.0;
  double lambda_lb = 0.0;
  double delta2 = 0.0;          // 2^{gamma+1}
  double tail_certificate = 0.0;
};

// A_N = (p(N) + gamma q(N))/r(N); p, q, r evaluated integer-exactly for
// N <= 10^5 and in long double beyond.
double a_coeff(long long N, double gamma);

// C_N = sqrt(15)(1-gamma)/(N-1)^2 N^{5/2}
//       [2/(N-1) + 8N/((N-2)(N-4)^2)]^{1/2} (1 - 15/((N+1)(N+3)))^{-1/2}.
double c_coeff(long long N, double gamma);

// mu_N = 1/N + 3/(N(N+1)).
double mu(int N);

// 4 N^{gamma-1} prod_{j=3}^{N} [1 - (4j+1)/((j-1)^2(j+1))]; N = 2 returns
// 2^{gamma+1}.
double uniform_gap_lb(int N, double gamma);

// Induction bound for the profile-sum gap:
// 4 N0^{gamma-1} prod_{j=3}^{N0} u_j prod_{k=N0+1}^{N} (1 - A_k/k^2),
// with fallback to uniform_gap_lb for N <= N0. n0 = kAutoBase scans
// N0 in [6, 64] for the best admissible base (A_k < k^2 for all k >= N0).
double hat_delta_lb(int N, double gamma, int n0 = kAutoBase);

// Same pipeline with (A_k + C_k) in place of A_k (full-gap version); N0 >= 5.
double delta_lb(int N, double gamma, int n0 = kAutoBase);

// inf over N of hat_delta_lb with a certified infinite-product tail:
// a lower bound for the linearized gap.
LambdaBound lambda_lb(double gamma);

struct WeightPolyBounds {
  double m_value = 0.0;        // 1 + g(1-v^2)/(N-1) - (1-g)((1-v^2)/(N-1))^2
  double km_lb = 0.0;          // 1 - (2-gamma)/(N-1)^2
  double km_lb_refined = 0.0;  // + (1-gamma)(2N-1)/((N-1)^3(N+1))
};

WeightPolyBounds weight_poly_bounds(int N, double gamma, double v);

BoundReport make_report(const GapBoundInputs &in);

} // namespace kacgap
