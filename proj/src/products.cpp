#include "kacgap/products.hpp"

#include "kacgap/special.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace kacgap {

std::vector<std::complex<double>> poly_roots(const std::vector<double> &coefficients,
                                             double tolerance) {
  // Strip trailing zero coefficients to find the true degree.
  int deg = static_cast<int>(coefficients.size()) - 1;
  while (deg >= 0 && coefficients[deg] == 0.0) --deg;
  if (deg < 1) throw std::invalid_argument("poly_roots: degree >= 1 with nonzero leading coefficient required");

  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(deg, deg);
  for (int i = 1; i < deg; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < deg; ++i) companion(i, deg - 1) = -coefficients[i] / coefficients[deg];
  Eigen::EigenSolver<Eigen::MatrixXd> es(companion);

  std::vector<std::complex<double>> roots(deg);
  for (int i = 0; i < deg; ++i) roots[i] = es.eigenvalues()[i];

  // Symmetrize conjugate pairs: real coefficients force the root multiset to
  // be closed under conjugation; pair positive- and negative-imaginary roots
  // and replace each pair by an exact conjugate pair.
  double scale = 0.0;
  for (const auto &r : roots) scale = std::max(scale, std::abs(r));
  const double im_tol = 1e-10 * std::max(1.0, scale);
  std::vector<std::complex<double>> pos, neg, out;
  for (const auto &r : roots) {
    if (std::abs(r.imag()) <= im_tol)
      out.emplace_back(r.real(), 0.0);
    else if (r.imag() > 0.0)
      pos.push_back(r);
    else
      neg.push_back(r);
  }
  auto key = [](const std::complex<double> &z) {
    return std::make_pair(z.real(), std::abs(z.imag()));
  };
  std::sort(pos.begin(), pos.end(), [&](auto &a, auto &b) { return key(a) < key(b); });
  std::sort(neg.begin(), neg.end(), [&](auto &a, auto &b) { return key(a) < key(b); });
  if (pos.size() == neg.size()) {
    for (std::size_t i = 0; i < pos.size(); ++i) {
      const double re = 0.5 * (pos[i].real() + neg[i].real());
      const double im = 0.5 * (pos[i].imag() - neg[i].imag());
      out.emplace_back(re, im);
      out.emplace_back(re, -im);
    }
  } else {
    // Fall back to raw eigenvalues (should not happen for real inputs).
    for (const auto &r : pos) out.push_back(r);
    for (const auto &r : neg) out.push_back(r);
  }

  // Residual check.
  double norm1 = 0.0;
  for (double c : coefficients) norm1 += std::abs(c);
  for (const auto &r : out) {
    std::complex<double> val = 0.0;
    for (int k = deg; k >= 0; --k) val = val * r + coefficients[k];
    const double bound = tolerance * norm1 * std::pow(std::max(1.0, std::abs(r)), deg);
    if (std::abs(val) > bound) throw std::runtime_error("poly_roots: residual exceeds tolerance");
  }
  return out;
}

ProductResult gamma_product_limit(const RationalProductSpec &spec) {
  const auto &mu = spec.numerator_roots;
  const auto &nu = spec.denominator_roots;
  if (mu.size() != nu.size())
    throw std::invalid_argument("gamma_product_limit: degree mismatch between P and Q");
  if (std::abs(spec.leading_ratio - 1.0) > 1e-12)
    throw std::invalid_argument("gamma_product_limit: leading coefficient ratio must be 1");
  std::complex<double> sum_mu = 0.0, sum_nu = 0.0;
  for (const auto &z : mu) sum_mu += z;
  for (const auto &z : nu) sum_nu += z;
  if (std::abs(sum_mu - sum_nu) > 1e-9)
    throw std::invalid_argument("gamma_product_limit: root sums differ; product does not converge");

  const double M = static_cast<double>(spec.start_index);
  auto check_pole = [&](const std::complex<double> &root) {
    const std::complex<double> arg = M - root;
    if (std::abs(arg.imag()) < 1e-12 && arg.real() <= 0.5 &&
        std::abs(arg.real() - std::round(arg.real())) < 1e-12)
      throw std::invalid_argument("gamma_product_limit: Gamma pole at M - root");
    // A root exactly at an integer j >= M makes some factor vanish.
    if (std::abs(root.imag()) < 1e-12 && root.real() >= M - 1e-12 &&
        std::abs(root.real() - std::round(root.real())) < 1e-12)
      throw std::invalid_argument("gamma_product_limit: root coincides with a product index");
  };
  std::complex<double> log_value = 0.0;
  for (const auto &z : nu) {
    check_pole(z);
    log_value += log_gamma(M - z);
  }
  for (const auto &z : mu) {
    check_pole(z);
    log_value -= log_gamma(M - z);
  }
  if (std::abs(log_value.imag()) > 1e-9)
    throw std::runtime_error("gamma_product_limit: imaginary parts failed to cancel");
  ProductResult res;
  res.value = std::exp(log_value.real());
  res.truncation_index = -1;
  res.tail_bound = 0.0;
  return res;
}

ProductResult truncated_product(const std::function<double(long long)> &factor, long long M,
                                long long K, double tail_majorant) {
  if (tail_majorant < 0.0) throw std::invalid_argument("truncated_product: negative tail majorant");
  if (K >= 1 && tail_majorant >= static_cast<double>(K) * static_cast<double>(K))
    throw std::invalid_argument("truncated_product: tail majorant must satisfy a < K^2");
  long double log_sum = 0.0L;
  for (long long k = M; k <= K; ++k) {
    const double f = factor(k);
    if (!(f > 0.0) || f > 1.0)
      throw std::invalid_argument("truncated_product: factor outside (0, 1] at k=" + std::to_string(k));
    log_sum += std::log1p(static_cast<long double>(f) - 1.0L);
  }
  ProductResult res;
  res.value = static_cast<double>(std::exp(log_sum));
  res.truncation_index = K;
  const double Kd = static_cast<double>(std::max<long long>(K, 1));
  res.tail_bound = tail_majorant / (Kd * (1.0 - tail_majorant / (Kd * Kd)));
  return res;
}

} // namespace kacgap
