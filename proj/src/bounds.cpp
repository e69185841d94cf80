#include "kacgap/bounds.hpp"

#include "kacgap/products.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace kacgap {

namespace {

constexpr long long kTailK = 1000000; // truncation index for infinite products
constexpr int kBaseLo = 6, kBaseHi = 64;

#if defined(__SIZEOF_INT128__)
using wide_int = __int128;
#else
using wide_int = long long;
#endif

long double poly_p(long double n) {
  // 5N^7 + 31N^6 + 15N^5 + 131N^4 + 256N^3 - 102N^2
  return ((((((5.0L * n + 31.0L) * n + 15.0L) * n + 131.0L) * n + 256.0L) * n - 102.0L) * n) * n;
}
long double poly_q(long double n) {
  // 5N^7 - 5N^6 - 87N^5 - 211N^4 - 164N^3 + 78N^2
  return ((((((5.0L * n - 5.0L) * n - 87.0L) * n - 211.0L) * n - 164.0L) * n + 78.0L) * n) * n;
}
long double poly_r(long double n) {
  return (n * n + 4.0L * n - 12.0L) * (n - 1.0L) * (n - 1.0L) * (n - 1.0L) * (n + 1.0L) *
         (n - 2.0L);
}

wide_int ipoly_p(wide_int n) {
  return ((((((5 * n + 31) * n + 15) * n + 131) * n + 256) * n - 102) * n) * n;
}
wide_int ipoly_q(wide_int n) {
  return ((((((5 * n - 5) * n - 87) * n - 211) * n - 164) * n + 78) * n) * n;
}
wide_int ipoly_r(wide_int n) {
  return (n * n + 4 * n - 12) * (n - 1) * (n - 1) * (n - 1) * (n + 1) * (n - 2);
}

// 1 - (4j+1)/((j-1)^2 (j+1))
double uniform_factor(long long j) {
  const double jd = static_cast<double>(j);
  return 1.0 - (4.0 * jd + 1.0) / ((jd - 1.0) * (jd - 1.0) * (jd + 1.0));
}

double log_uniform_product(int n_hi) {
  long double acc = 0.0L;
  for (long long j = 3; j <= n_hi; ++j) acc += std::log1p(uniform_factor(j) - 1.0L);
  return static_cast<double>(acc);
}

// Certified majorant for sup_{k > K} A_k (or A_k + C_k): the coefficient
// approaches its limit smoothly, so sample the window [K, 10K] and take the
// max with the limit, plus a small safety margin.
double tail_majorant(double gamma, bool with_c) {
  double sup = 5.0 * (1.0 + gamma);
  for (long long k = kTailK; k <= 10 * kTailK; k += 997) {
    double v = a_coeff(k, gamma);
    if (with_c) v += c_coeff(k, gamma);
    sup = std::max(sup, v);
  }
  return sup * (1.0 + 1e-9);
}

struct InductionTables {
  // log prod_{k=n0+1}^{K} (1 - A_k/k^2) for each candidate base, or NaN if
  // some factor in that range is nonpositive.
  std::vector<double> log_tail;  // indexed by n0 in [kBaseLo, kBaseHi]
  std::vector<bool> admissible;
};

InductionTables build_tables(double gamma, bool with_c, long long K) {
  InductionTables t;
  t.log_tail.assign(kBaseHi - kBaseLo + 1, 0.0);
  t.admissible.assign(kBaseHi - kBaseLo + 1, true);
  long double acc = 0.0L;
  long long bad_above = 0; // largest k with a nonpositive factor
  // Accumulate from the top so each candidate base reads a suffix sum.
  for (long long k = K; k > kBaseLo; --k) {
    double coeff = a_coeff(k, gamma);
    if (with_c && k >= 5) coeff += c_coeff(k, gamma);
    const double f = 1.0 - coeff / (static_cast<double>(k) * static_cast<double>(k));
    if (f <= 0.0) {
      bad_above = std::max(bad_above, k);
      acc = std::numeric_limits<long double>::quiet_NaN();
    } else if (!std::isnan(static_cast<double>(acc))) {
      acc += std::log1p(static_cast<long double>(f) - 1.0L);
    }
    if (k - 1 >= kBaseLo && k - 1 <= kBaseHi) t.log_tail[k - 1 - kBaseLo] = static_cast<double>(acc);
  }
  for (int n0 = kBaseLo; n0 <= kBaseHi; ++n0) {
    double coeff_at_base = a_coeff(n0, gamma);
    if (with_c && n0 >= 5) coeff_at_base += c_coeff(n0, gamma);
    const bool base_ok = coeff_at_base < static_cast<double>(n0) * n0;
    t.admissible[n0 - kBaseLo] =
        base_ok && n0 > bad_above && !std::isnan(t.log_tail[n0 - kBaseLo]);
  }
  return t;
}

double induction_bound(int N, double gamma, int n0, bool with_c) {
  if (N < 3) throw std::invalid_argument("induction bound: N >= 3 required");
  const int min_base = with_c ? 5 : 3;

  auto bound_for = [&](int base) {
    if (N <= base) return uniform_gap_lb(N, gamma);
    long double acc = std::log(4.0L) + (gamma - 1.0L) * std::log(static_cast<long double>(base)) +
                      log_uniform_product(base);
    for (long long k = base + 1; k <= N; ++k) {
      double coeff = a_coeff(k, gamma);
      if (with_c) coeff += c_coeff(k, gamma);
      const double f = 1.0 - coeff / (static_cast<double>(k) * static_cast<double>(k));
      if (f <= 0.0) throw std::invalid_argument("induction bound: inadmissible base (factor <= 0)");
      acc += std::log1p(static_cast<long double>(f) - 1.0L);
    }
    return static_cast<double>(std::exp(acc));
  };

  auto base_admissible = [&](int base) {
    // A_k (+ C_k) must stay below k^2 for all k >= base; check the window up
    // to max(10*base, 2000) and rely on the limit 5(1+gamma) (+0) far out.
    for (long long k = base; k <= std::max<long long>(10LL * base, 2000); ++k) {
      double coeff = a_coeff(k, gamma);
      if (with_c && k >= 5) coeff += c_coeff(k, gamma);
      if (coeff >= static_cast<double>(k) * k) return false;
    }
    return true;
  };

  if (n0 != kAutoBase) {
    if (n0 < min_base) throw std::invalid_argument("induction bound: base too small");
    if (!base_admissible(n0)) throw std::invalid_argument("induction bound: inadmissible base");
    return bound_for(n0);
  }
  double best = -1.0;
  for (int base = std::max(kBaseLo, min_base); base <= kBaseHi; ++base) {
    if (!base_admissible(base)) continue;
    best = std::max(best, bound_for(base));
  }
  if (best < 0.0) throw std::runtime_error("induction bound: no admissible base found");
  return best;
}

} // namespace

void GapBoundInputs::validate() const {
  if (N < 2) throw std::invalid_argument("GapBoundInputs: N >= 2");
  if (gamma < 0.0 || gamma > 1.0) throw std::invalid_argument("GapBoundInputs: gamma in [0,1]");
}

double a_coeff(long long N, double gamma) {
  if (N < 3) throw std::invalid_argument("a_coeff: N >= 3 required");
  if (N <= 100000) {
    const wide_int n = N;
    return (static_cast<long double>(ipoly_p(n)) + static_cast<long double>(gamma) *
                                                       static_cast<long double>(ipoly_q(n))) /
           static_cast<long double>(ipoly_r(n));
  }
  const long double n = static_cast<long double>(N);
  return static_cast<double>((poly_p(n) + static_cast<long double>(gamma) * poly_q(n)) / poly_r(n));
}

double c_coeff(long long N, double gamma) {
  if (N < 5) throw std::invalid_argument("c_coeff: N >= 5 required");
  const double n = static_cast<double>(N);
  const double bracket = 2.0 / (n - 1.0) + 8.0 * n / ((n - 2.0) * (n - 4.0) * (n - 4.0));
  const double tilt = 1.0 - 15.0 / ((n + 1.0) * (n + 3.0));
  return std::sqrt(15.0) * (1.0 - gamma) / ((n - 1.0) * (n - 1.0)) * std::pow(n, 2.5) *
         std::sqrt(bracket) / std::sqrt(tilt);
}

double mu(int N) {
  if (N < 2) throw std::invalid_argument("mu: N >= 2 required");
  const double n = N;
  return 1.0 / n + 3.0 / (n * (n + 1.0));
}

double uniform_gap_lb(int N, double gamma) {
  if (N < 2) throw std::invalid_argument("uniform_gap_lb: N >= 2 required");
  if (N == 2) return std::pow(2.0, gamma + 1.0);
  return 4.0 * std::pow(static_cast<double>(N), gamma - 1.0) *
         std::exp(log_uniform_product(N));
}

double hat_delta_lb(int N, double gamma, int n0) {
  if (N == 2) return std::pow(2.0, gamma + 1.0);
  return induction_bound(N, gamma, n0, /*with_c=*/false);
}

double delta_lb(int N, double gamma, int n0) {
  if (N == 2) return std::pow(2.0, gamma + 1.0);
  return induction_bound(N, gamma, n0, /*with_c=*/true);
}

LambdaBound lambda_lb(double gamma) {
  if (gamma < 0.0 || gamma > 1.0) throw std::invalid_argument("lambda_lb: gamma in [0,1]");
  const double majorant = tail_majorant(gamma, /*with_c=*/false);
  const InductionTables t = build_tables(gamma, /*with_c=*/false, kTailK);
  const double Kd = static_cast<double>(kTailK);
  const double tail_cert = majorant / (Kd * (1.0 - majorant / (Kd * Kd)));

  LambdaBound best;
  best.value = -1.0;
  for (int base = kBaseLo; base <= kBaseHi; ++base) {
    if (!t.admissible[base - kBaseLo]) continue;
    // inf over N of the pipeline. For N <= base the bound is
    // uniform_gap_lb(N) which exceeds the product limit for every admissible
    // base (the product factors are < 1), so the infimum is the certified
    // full-product value.
    const double log_val = std::log(4.0) + (gamma - 1.0) * std::log(static_cast<double>(base)) +
                           log_uniform_product(base) + t.log_tail[base - kBaseLo] - tail_cert;
    double inf_val = std::exp(log_val);
    for (int n = 2; n <= base; ++n) inf_val = std::min(inf_val, uniform_gap_lb(n, gamma));
    if (inf_val > best.value) {
      best.value = inf_val;
      best.n0 = base;
    }
  }
  if (best.value < 0.0) throw std::runtime_error("lambda_lb: no admissible base found");
  best.tail_certificate = tail_cert;
  best.truncation_index = kTailK;
  return best;
}

WeightPolyBounds weight_poly_bounds(int N, double gamma, double v) {
  if (N < 3) throw std::invalid_argument("weight_poly_bounds: N >= 3 required");
  if (v * v > N) throw std::invalid_argument("weight_poly_bounds: v^2 <= N required");
  const double n = N;
  const double x = (1.0 - v * v) / (n - 1.0);
  WeightPolyBounds out;
  out.m_value = 1.0 + gamma * x - (1.0 - gamma) * x * x;
  out.km_lb = 1.0 - (2.0 - gamma) / ((n - 1.0) * (n - 1.0));
  out.km_lb_refined =
      out.km_lb + (1.0 - gamma) * (2.0 * n - 1.0) / ((n - 1.0) * (n - 1.0) * (n - 1.0) * (n + 1.0));
  const double w = std::pow((n - v * v) / (n - 1.0), gamma);
  if (out.m_value > w + 1e-12)
    throw std::runtime_error("weight_poly_bounds: polynomial minorant exceeded the weight");
  if (!(out.m_value > 0.0))
    throw std::runtime_error("weight_poly_bounds: minorant not positive");
  return out;
}

BoundReport make_report(const GapBoundInputs &in) {
  in.validate();
  BoundReport rep;
  rep.N = in.N;
  rep.gamma = in.gamma;
  rep.delta2 = std::pow(2.0, in.gamma + 1.0);
  rep.mu_n = mu(in.N);
  rep.a_n = in.N >= 3 ? a_coeff(in.N, in.gamma) : 0.0;
  if (in.N >= 5) rep.c_n = c_coeff(in.N, in.gamma);
  rep.uniform_lb = uniform_gap_lb(in.N, in.gamma);
  rep.hat_delta_lb = hat_delta_lb(in.N, in.gamma, in.n0);
  rep.delta_lb = in.N == 2 ? rep.delta2 : delta_lb(in.N, in.gamma, in.n0);
  const LambdaBound lb = lambda_lb(in.gamma);
  rep.lambda_lb = lb.value;
  rep.n0_used = lb.n0;
  rep.tail_certificate = lb.tail_certificate;
  return rep;
}

} // namespace kacgap
