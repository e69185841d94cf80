#include "kacgap/variational.hpp"

#include "kacgap/gauss.hpp"
#include "kacgap/sphere.hpp"
#include "kacgap/special.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>
#include <unordered_map>

namespace kacgap {

namespace {

// E[v^{2k}] under the one-coordinate marginal of the radius-sqrt(N) sphere.
double even_moment(int N, int k) {
  if (k == 0) return 1.0;
  double log_val = k * std::log(static_cast<double>(N)) + std::lgamma(k + 0.5) -
                   std::lgamma(0.5) + std::lgamma(0.5 * N) - std::lgamma(0.5 * N + k);
  return std::exp(log_val);
}

// <phi, psi> under the one-coordinate marginal, phi/psi given by even-power
// coefficient vectors.
double even_inner(int N, const std::vector<double> &a, const std::vector<double> &b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0.0) continue;
    for (std::size_t j = 0; j < b.size(); ++j)
      if (b[j] != 0.0) acc += a[i] * b[j] * even_moment(N, static_cast<int>(i + j));
  }
  return acc;
}

Polynomial to_polynomial(const std::vector<double> &even_coeffs) {
  std::vector<double> c(2 * even_coeffs.size() - 1, 0.0);
  for (std::size_t j = 0; j < even_coeffs.size(); ++j) c[2 * j] = even_coeffs[j];
  return Polynomial{std::move(c)};
}

double norm_bilinear(int N, const std::vector<double> &a, const std::vector<double> &b) {
  // <f_a, f_b> = N <a, b> + N(N-1) <a, K b>.
  const Polynomial kb = k_apply_polynomial(SphereSpec{N, 1.0}, to_polynomial(b));
  std::vector<double> kb_even(kb.coeffs.size() / 2 + 1, 0.0);
  for (std::size_t k = 0; k < kb_even.size(); ++k) kb_even[k] = kb.coeff(2 * k);
  return N * even_inner(N, a, b) +
         static_cast<double>(N) * (N - 1) * even_inner(N, a, kb_even);
}

// Dirichlet form bilinear in the two profiles (E = 1). The rotation average
// of an even monomial (w1 cos t + w2 sin t)^{2j} is binom(2j, j)/4^j rho^{2j}
// with rho^2 = w1^2 + w2^2, which is exact; the remaining integral couples
// the radial variable (carrying the rate (w1^2+w2^2)^gamma, absorbed into the
// quadrature weight) with an equispaced angular grid.
double dirichlet_bilinear(int N, double gamma, const std::vector<double> &a,
                          const std::vector<double> &b, int theta_nodes) {
  const int da = static_cast<int>(a.size()) - 1;
  const int db = static_cast<int>(b.size()) - 1;
  const int dmax = std::max(da, db);

  auto central = [](int j) {
    double c = 1.0;
    for (int i = 1; i <= j; ++i) c *= (2.0 * i - 1.0) / (2.0 * i); // binom(2j,j)/4^j
    return c;
  };
  std::vector<double> cb(dmax + 1);
  for (int j = 0; j <= dmax; ++j) cb[j] = central(j);

  if (N == 2) {
    // On the circle of radius sqrt(2) a collision replaces the state by a
    // uniform point, so E(f, g) = 2 * 2^gamma <f - <f>, g - <g>>.
    const int n = std::max(theta_nodes, 8 * (dmax + 1));
    double fa_mean = 0.0, fb_mean = 0.0;
    std::vector<double> fa(n), fb(n);
    auto eval = [&](const std::vector<double> &c, double v) {
      double acc = 0.0;
      const double s = v * v;
      for (std::size_t j = c.size(); j-- > 0;) acc = acc * s + c[j];
      return acc;
    };
    for (int t = 0; t < n; ++t) {
      const double psi = 2.0 * std::numbers::pi * t / n;
      const double v1 = std::sqrt(2.0) * std::cos(psi);
      const double v2 = std::sqrt(2.0) * std::sin(psi);
      fa[t] = eval(a, v1) + eval(a, v2);
      fb[t] = eval(b, v1) + eval(b, v2);
      fa_mean += fa[t];
      fb_mean += fb[t];
    }
    fa_mean /= n;
    fb_mean /= n;
    double acc = 0.0;
    for (int t = 0; t < n; ++t) acc += (fa[t] - fa_mean) * (fb[t] - fb_mean);
    return 2.0 * std::pow(2.0, gamma) * acc / n;
  }

  const int n_rad = dmax + 6;
  const GaussRule rad = gauss_jacobi01(n_rad, 0.5 * (N - 4), gamma);
  const int n_ang = std::max(theta_nodes, 8 * dmax + 8);

  auto eval_even = [](const std::vector<double> &c, double s) {
    double acc = 0.0;
    for (std::size_t j = c.size(); j-- > 0;) acc = acc * s + c[j];
    return acc;
  };

  double total = 0.0;
  for (int i = 0; i < n_rad; ++i) {
    const double x = rad.nodes[i];
    const double rho2 = N * x;
    const double rho = std::sqrt(rho2);
    // Rotation-averaged term 2 sum_j c_j binom(2j,j)/4^j rho^{2j}.
    double avg_a = 0.0, avg_b = 0.0;
    {
      double pw = 1.0;
      for (int j = 0; j <= dmax; ++j) {
        if (j <= da) avg_a += 2.0 * a[j] * cb[j] * pw;
        if (j <= db) avg_b += 2.0 * b[j] * cb[j] * pw;
        pw *= rho2;
      }
    }
    double ang_acc = 0.0;
    for (int t = 0; t < n_ang; ++t) {
      const double phi = 2.0 * std::numbers::pi * t / n_ang;
      const double w1 = rho * std::cos(phi);
      const double w2 = rho * std::sin(phi);
      const double s1 = w1 * w1, s2 = w2 * w2;
      const double Da = eval_even(a, s1) + eval_even(a, s2) - avg_a;
      const double Db = eval_even(b, s1) + eval_even(b, s2) - avg_b;
      ang_acc += Da * Db;
    }
    total += rad.weights[i] * ang_acc / n_ang;
  }
  return std::pow(static_cast<double>(N), gamma + 1.0) * 0.5 * (N - 2) * total;
}

} // namespace

TrialProfile orthogonalize(const TrialProfile &profile) {
  if (profile.coefficients.size() < 2)
    throw std::invalid_argument("orthogonalize: need degree >= 2 in v^2");
  const int N = profile.N;
  TrialProfile out = profile;
  std::vector<double> &c = out.coefficients;
  double mean = 0.0;
  for (std::size_t j = 0; j < c.size(); ++j) mean += c[j] * even_moment(N, static_cast<int>(j));
  c[0] -= mean;
  // eta = v^2 - 1; <phi - mean, eta> = <phi, eta> since <1, eta> = 0.
  double ip_eta = 0.0;
  for (std::size_t j = 0; j < c.size(); ++j)
    ip_eta += c[j] * (even_moment(N, static_cast<int>(j) + 1) - even_moment(N, static_cast<int>(j)));
  const double eta2 = even_moment(N, 2) - 1.0;
  const double beta = ip_eta / eta2;
  c[0] += beta;
  c[1] -= beta;
  out.orthogonalized = true;
  return out;
}

double dirichlet_form_A(const TrialProfile &profile, double gamma, int theta_nodes) {
  if (!profile.orthogonalized)
    throw std::invalid_argument("dirichlet_form_A: profile must be orthogonalized");
  return dirichlet_bilinear(profile.N, gamma, profile.coefficients, profile.coefficients,
                            theta_nodes);
}

double profile_sum_norm2(const TrialProfile &profile) {
  return norm_bilinear(profile.N, profile.coefficients, profile.coefficients);
}

RayleighResult rayleigh_min(int N, double gamma, int degree) {
  if (degree < 4 || degree > 12) throw std::invalid_argument("rayleigh_min: degree in [4, 12]");
  if (N < 2) throw std::invalid_argument("rayleigh_min: N >= 2");
  const int nb = degree / 2 - 1; // basis profiles v^4, v^6, ...
  std::vector<std::vector<double>> basis;
  for (int k = 2; k <= degree / 2; ++k) {
    TrialProfile p;
    p.N = N;
    p.coefficients.assign(k + 1, 0.0);
    p.coefficients[k] = 1.0;
    basis.push_back(orthogonalize(p).coefficients);
  }
  Eigen::MatrixXd E(nb, nb), G(nb, nb);
  for (int i = 0; i < nb; ++i)
    for (int j = i; j < nb; ++j) {
      E(i, j) = E(j, i) = dirichlet_bilinear(N, gamma, basis[i], basis[j], 64);
      G(i, j) = G(j, i) = norm_bilinear(N, basis[i], basis[j]);
    }
  // Prune near-dependent directions via the eigendecomposition of G.
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> gs(G);
  const double gmax = gs.eigenvalues().maxCoeff();
  if (!(gmax > 0.0)) throw std::runtime_error("rayleigh_min: norm Gram matrix not positive");
  std::vector<int> keep;
  for (int i = 0; i < nb; ++i)
    if (gs.eigenvalues()[i] > 1e-12 * gmax) keep.push_back(i);
  Eigen::MatrixXd W(nb, static_cast<int>(keep.size()));
  for (std::size_t c = 0; c < keep.size(); ++c)
    W.col(static_cast<int>(c)) =
        gs.eigenvectors().col(keep[c]) / std::sqrt(gs.eigenvalues()[keep[c]]);
  const Eigen::MatrixXd M = W.transpose() * E * W;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ms(M);
  int best = 0;
  ms.eigenvalues().minCoeff(&best);

  RayleighResult res;
  res.value = ms.eigenvalues()[best];
  const Eigen::VectorXd coeffs = W * ms.eigenvectors().col(best);
  TrialProfile prof;
  prof.N = N;
  prof.coefficients.assign(degree / 2 + 1, 0.0);
  for (int i = 0; i < nb; ++i)
    for (std::size_t j = 0; j < basis[i].size(); ++j) prof.coefficients[j] += coeffs[i] * basis[i][j];
  prof.orthogonalized = true;
  res.profile = std::move(prof);
  return res;
}

double linearized_gap(const LinearizedModel &model) {
  const int B = model.basis_size;
  if (B < 4 || B > 64) throw std::invalid_argument("linearized_gap: basis_size in [4, 64]");
  const double gamma = model.gamma;
  const int maxdeg = 2 * (B + 1); // retained Hermite degrees 4, 6, ..., maxdeg
  const int n_x = std::max({model.quadrature_order, 2 * B, maxdeg + 2});
  const int n_ang = 2 * maxdeg + 8;

  const GaussRule lag = gauss_laguerre(n_x, gamma);

  // Normalized probabilists' Hermite values He_n(z)/sqrt(n!) for the needed
  // even degrees, tabulated on the radial/angular grid through
  // S_n(r, a) = He_n(r cos a) + He_n(r sin a).
  std::vector<double> inv_sqrt_fact(maxdeg + 1);
  inv_sqrt_fact[0] = 1.0;
  for (int n = 1; n <= maxdeg; ++n) inv_sqrt_fact[n] = inv_sqrt_fact[n - 1] / std::sqrt(static_cast<double>(n));

  auto hermite_even_sums = [&](double r, double angle, std::vector<double> &out) {
    const double z1 = r * std::cos(angle);
    const double z2 = r * std::sin(angle);
    double h1a = 1.0, h1b = z1, h2a = 1.0, h2b = z2;
    // out[k] = normalized He at degree 2k+4 summed over the two arguments.
    int idx = 0;
    for (int n = 1; n < maxdeg; ++n) {
      const double n1 = z1 * h1b - n * h1a;
      const double n2 = z2 * h2b - n * h2a;
      h1a = h1b; h1b = n1;
      h2a = h2b; h2b = n2;
      const int deg = n + 1;
      if (deg >= 4 && deg % 2 == 0) out[idx++] = (h1b + h2b) * inv_sqrt_fact[deg];
    }
  };

  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(B, B);
  std::vector<double> s_j(B), s_l(B), diff(B);
  // Tabulate S per (radial node, angle).
  std::vector<std::vector<std::vector<double>>> table(
      n_x, std::vector<std::vector<double>>(n_ang, std::vector<double>(B)));
  for (int i = 0; i < n_x; ++i) {
    const double r = std::sqrt(2.0 * lag.nodes[i]);
    for (int t = 0; t < n_ang; ++t)
      hermite_even_sums(r, 2.0 * std::numbers::pi * t / n_ang, table[i][t]);
  }
  const double pref = 0.5 * std::pow(2.0, gamma) / (static_cast<double>(n_ang) * n_ang);
  for (int i = 0; i < n_x; ++i) {
    const double w = lag.weights[i] * pref;
    for (int j = 0; j < n_ang; ++j)
      for (int l = 0; l < n_ang; ++l) {
        const auto &sj = table[i][j];
        const auto &sl = table[i][l];
        for (int m = 0; m < B; ++m) diff[m] = sj[m] - sl[m];
        for (int m = 0; m < B; ++m) {
          const double dm = w * diff[m];
          if (dm == 0.0) continue;
          for (int n = m; n < B; ++n) A(m, n) += dm * diff[n];
        }
      }
  }
  for (int m = 0; m < B; ++m)
    for (int n = 0; n < m; ++n) A(m, n) = A(n, m);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(A);
  return es.eigenvalues().minCoeff();
}

namespace {

struct VecHash {
  std::size_t operator()(const std::vector<int> &v) const {
    std::size_t h = 1469598103934665603ull;
    for (int x : v) {
      h ^= static_cast<std::size_t>(x) + 0x9e3779b97f4a7c15ull;
      h *= 1099511628211ull;
    }
    return h;
  }
};

} // namespace

SpectrumResult exact_maxwellian_spectrum(int N, int max_degree) {
  if (N < 3 || N > 8) throw std::invalid_argument("exact_maxwellian_spectrum: N in [3, 8]");
  if (max_degree < 4 || max_degree > 8)
    throw std::invalid_argument("exact_maxwellian_spectrum: max_degree in [4, 8]");
  const SphereSpec spec{N, 1.0};

  // Partitions with even total weight <= max_degree and at most N parts.
  std::vector<std::vector<int>> partitions;
  std::vector<int> cur;
  auto rec = [&](auto &&self, int remaining, int max_part) -> void {
    if (remaining == 0) {
      if (!cur.empty() && static_cast<int>(cur.size()) <= N) partitions.push_back(cur);
      return;
    }
    for (int part = std::min(remaining, max_part); part >= 1; --part) {
      cur.push_back(part);
      self(self, remaining - part, part);
      cur.pop_back();
    }
  };
  for (int d = 2; d <= max_degree; d += 2) rec(rec, d, d);
  const int nb = static_cast<int>(partitions.size());

  // Orbits: distinct permutations of the padded exponent vector.
  std::vector<std::vector<std::vector<int>>> orbits(nb);
  for (int b = 0; b < nb; ++b) {
    std::vector<int> e(N, 0);
    for (std::size_t i = 0; i < partitions[b].size(); ++i) e[i] = partitions[b][i];
    std::sort(e.begin(), e.end());
    do {
      orbits[b].push_back(e);
    } while (std::next_permutation(e.begin(), e.end()));
  }

  std::map<std::vector<int>, double> moment_memo;
  auto mom = [&](std::vector<int> e) {
    for (int x : e)
      if (x % 2 != 0) return 0.0;
    std::sort(e.begin(), e.end(), std::greater<int>());
    auto it = moment_memo.find(e);
    if (it != moment_memo.end()) return it->second;
    const double v = moment_monomial(spec, e);
    moment_memo.emplace(std::move(e), v);
    return v;
  };

  // Representative exponent vector of each orbit.
  std::vector<std::vector<int>> rep(nb);
  for (int b = 0; b < nb; ++b) rep[b] = orbits[b].front();

  Eigen::MatrixXd raw(nb, nb), G(nb, nb), Bm(nb, nb);
  std::vector<double> means(nb);
  for (int b = 0; b < nb; ++b)
    means[b] = static_cast<double>(orbits[b].size()) * mom(rep[b]);

  auto add_vec = [](const std::vector<int> &a, const std::vector<int> &b) {
    std::vector<int> c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] + b[i];
    return c;
  };

  for (int lb = 0; lb < nb; ++lb)
    for (int mb = 0; mb < nb; ++mb) {
      double acc = 0.0;
      for (const auto &t : orbits[mb]) acc += mom(add_vec(rep[lb], t));
      raw(lb, mb) = static_cast<double>(orbits[lb].size()) * acc;
    }
  for (int lb = 0; lb < nb; ++lb)
    for (int mb = 0; mb < nb; ++mb) G(lb, mb) = raw(lb, mb) - means[lb] * means[mb];

  // Collision-averaged expansion sum_{i<j} Q_{ij} m_mu as a monomial map.
  const double binom_pairs = 0.5 * N * (N - 1);
  for (int mb = 0; mb < nb; ++mb) {
    std::unordered_map<std::vector<int>, double, VecHash> expansion;
    for (const auto &t : orbits[mb]) {
      for (int i = 0; i < N; ++i)
        for (int j = i + 1; j < N; ++j) {
          const int a = t[i], b = t[j];
          if (a == 0 && b == 0) {
            expansion[t] += 1.0;
            continue;
          }
          double binom_a = 1.0;
          for (int p = 0; p <= a; ++p) {
            double binom_b = 1.0;
            for (int q = 0; q <= b; ++q) {
              const double T = trig_moment(p + b - q, a - p + q);
              if (T != 0.0) {
                std::vector<int> e = t;
                e[i] = p + q;
                e[j] = a + b - p - q;
                expansion[std::move(e)] += ((q % 2) ? -1.0 : 1.0) * binom_a * binom_b * T;
              }
              binom_b *= static_cast<double>(b - q) / (q + 1.0);
            }
            binom_a *= static_cast<double>(a - p) / (p + 1.0);
          }
        }
    }
    for (int lb = 0; lb < nb; ++lb) {
      double acc = 0.0;
      for (const auto &[e, coeff] : expansion) acc += coeff * mom(add_vec(rep[lb], e));
      Bm(lb, mb) = N * raw(lb, mb) -
                   (static_cast<double>(N) / binom_pairs) * orbits[lb].size() * acc;
    }
  }
  // Enforce exact symmetry (assembly is symmetric up to roundoff).
  Bm = 0.5 * (Bm + Bm.transpose()).eval();

  // Reduce the pencil (Bm, G) by pruning the null space of G (the sphere
  // constraint makes some symmetrized monomials linearly dependent).
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> gs(G);
  const double gmax = gs.eigenvalues().maxCoeff();
  std::vector<int> keep;
  for (int i = 0; i < nb; ++i)
    if (gs.eigenvalues()[i] > 1e-10 * gmax) keep.push_back(i);
  Eigen::MatrixXd W(nb, static_cast<int>(keep.size()));
  for (std::size_t c = 0; c < keep.size(); ++c)
    W.col(static_cast<int>(c)) =
        gs.eigenvectors().col(keep[c]) / std::sqrt(gs.eigenvalues()[keep[c]]);
  const Eigen::MatrixXd M = W.transpose() * Bm * W;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ms(M);

  SpectrumResult res;
  res.retained_dimension = static_cast<int>(keep.size());
  res.eigenvalues.assign(ms.eigenvalues().data(), ms.eigenvalues().data() + keep.size());
  int gap_idx = 0;
  res.gap = res.eigenvalues.empty() ? 0.0 : res.eigenvalues.front();
  // Alignment of the gap eigenvector with f0 = centered sum_j v_j^4.
  int f0_idx = -1;
  for (int b = 0; b < nb; ++b)
    if (partitions[b] == std::vector<int>{4}) f0_idx = b;
  if (f0_idx >= 0 && !keep.empty()) {
    const Eigen::VectorXd x = W * ms.eigenvectors().col(gap_idx);
    Eigen::VectorXd f0 = Eigen::VectorXd::Zero(nb);
    f0[f0_idx] = 1.0;
    const double num = std::abs(x.dot(G * f0));
    const double den = std::sqrt(x.dot(G * x)) * std::sqrt(f0.dot(G * f0));
    res.alignment = den > 0.0 ? num / den : 0.0;
  }
  return res;
}

} // namespace kacgap
