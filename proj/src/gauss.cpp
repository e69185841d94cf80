#include "kacgap/gauss.hpp"

#include "kacgap/special.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

namespace kacgap {

namespace {

// Build a Gauss rule from monic three-term recurrence coefficients:
// p_{k+1} = (x - alpha_k) p_k - beta_k p_{k-1}, beta_k > 0 for k >= 1,
// mu0 = integral of the weight.
GaussRule golub_welsch(const std::vector<double> &alpha, const std::vector<double> &beta,
                       double mu0) {
  const int n = static_cast<int>(alpha.size());
  Eigen::VectorXd diag(n), sub(n - 1 > 0 ? n - 1 : 0);
  for (int i = 0; i < n; ++i) diag[i] = alpha[i];
  for (int i = 0; i + 1 < n; ++i) {
    if (beta[i + 1] <= 0.0) throw std::runtime_error("golub_welsch: nonpositive beta");
    sub[i] = std::sqrt(beta[i + 1]);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    // Weight via the Christoffel function 1/sum_k p_k(x)^2 over the
    // orthonormal polynomials; unlike the eigenvector first component this
    // stays accurate when the weight underflows toward the extreme nodes.
    const double x = es.eigenvalues()[i];
    double pm1 = 0.0, p0 = 1.0 / std::sqrt(mu0), sumsq = p0 * p0;
    for (int k = 0; k + 1 < n; ++k) {
      const double p1 = ((x - alpha[k]) * p0 - (k > 0 ? std::sqrt(beta[k]) : 0.0) * pm1) /
                        std::sqrt(beta[k + 1]);
      pm1 = p0;
      p0 = p1;
      sumsq += p1 * p1;
    }
    rule.nodes[i] = x;
    rule.weights[i] = 1.0 / sumsq;
  }
  return rule;
}

} // namespace

GaussRule gauss_jacobi(int n, double a, double b) {
  if (n < 1) throw std::invalid_argument("gauss_jacobi: n >= 1 required");
  if (a <= -1.0 || b <= -1.0) throw std::invalid_argument("gauss_jacobi: a, b > -1 required");
  std::vector<double> alpha(n), beta(n);
  const double apb = a + b;
  alpha[0] = (b - a) / (apb + 2.0);
  beta[0] = 0.0;
  for (int k = 1; k < n; ++k) {
    const double t = 2.0 * k + apb;
    alpha[k] = (b * b - a * a) / (t * (t + 2.0));
    if (k == 1)
      beta[k] = 4.0 * (a + 1.0) * (b + 1.0) / ((apb + 2.0) * (apb + 2.0) * (apb + 3.0));
    else
      beta[k] = 4.0 * k * (k + a) * (k + b) * (k + apb) / (t * t * (t + 1.0) * (t - 1.0));
  }
  const double mu0 = std::exp((apb + 1.0) * std::log(2.0) + log_beta(a + 1.0, b + 1.0));
  return golub_welsch(alpha, beta, mu0);
}

GaussRule gauss_jacobi01(int n, double a, double b) {
  // Map [-1,1] with weight (1-t)^a (1+t)^b to [0,1] with x = (1+t)/2, so the
  // weight becomes 2^{a+b+1} x^b (1-x)^a dx / 2... i.e. divide mass by
  // 2^{a+b+1}.
  GaussRule r = gauss_jacobi(n, a, b);
  const double scale = std::exp(-(a + b + 1.0) * std::log(2.0)) /*mass factor*/;
  for (auto &x : r.nodes) x = 0.5 * (1.0 + x);
  for (auto &w : r.weights) w *= scale;
  return r;
}

GaussRule gauss_laguerre(int n, double alpha) {
  if (n < 1) throw std::invalid_argument("gauss_laguerre: n >= 1 required");
  if (alpha <= -1.0) throw std::invalid_argument("gauss_laguerre: alpha > -1 required");
  std::vector<double> a(n), b(n);
  for (int k = 0; k < n; ++k) {
    a[k] = 2.0 * k + alpha + 1.0;
    b[k] = k == 0 ? 0.0 : k * (k + alpha);
  }
  return golub_welsch(a, b, std::exp(std::lgamma(alpha + 1.0)));
}

} // namespace kacgap
