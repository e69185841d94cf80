#include "kacgap/kac_walk.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace kacgap {

namespace {

constexpr long long kRenormEvery = 10000;

void renormalize(VelocityState &state, const SphereSpec &spec) {
  const double target = spec.radius();
  const double norm = state.velocities.norm();
  if (norm <= 0.0) throw std::runtime_error("kac_walk: zero velocity vector");
  state.velocities *= target / norm;
}

std::mt19937_64 replica_rng(std::uint64_t seed, int replica) {
  std::seed_seq seq{static_cast<std::uint64_t>(replica), seed};
  return std::mt19937_64(seq);
}

} // namespace

VelocityState initial_state(const SphereSpec &spec, std::mt19937_64 &rng) {
  VelocityState st;
  st.velocities = sample_one(spec, rng).velocities;
  return st;
}

CollisionRecord step(VelocityState &state, double gamma, std::mt19937_64 &rng) {
  const int N = static_cast<int>(state.velocities.size());
  if (N < 2) throw std::invalid_argument("step: need at least two particles");
  const double pairs = 0.5 * N * (N - 1);
  const double scale = N / pairs;

  int pi = 0, pj = 1;
  double total_rate = 0.0;
  if (gamma == 0.0) {
    total_rate = N; // all pair rates equal N / binom(N,2)
    std::uniform_int_distribution<int> pick(0, static_cast<int>(pairs) - 1);
    int flat = pick(rng);
    for (pi = 0; pi < N - 1; ++pi) {
      const int row = N - 1 - pi;
      if (flat < row) {
        pj = pi + 1 + flat;
        break;
      }
      flat -= row;
    }
  } else {
    std::vector<double> rates;
    rates.reserve(static_cast<std::size_t>(pairs));
    for (int i = 0; i < N - 1; ++i) {
      const double vi2 = state.velocities[i] * state.velocities[i];
      for (int j = i + 1; j < N; ++j) {
        const double s = vi2 + state.velocities[j] * state.velocities[j];
        const double r = scale * std::pow(s, gamma);
        rates.push_back(r);
        total_rate += r;
      }
    }
    if (!(total_rate > 0.0)) throw std::runtime_error("step: vanishing total rate");
    std::uniform_real_distribution<double> unif(0.0, total_rate);
    double target = unif(rng);
    std::size_t idx = 0;
    double acc = 0.0;
    for (; idx + 1 < rates.size(); ++idx) {
      acc += rates[idx];
      if (target < acc) break;
    }
    std::size_t k = idx;
    for (pi = 0; pi < N - 1; ++pi) {
      const std::size_t row = static_cast<std::size_t>(N - 1 - pi);
      if (k < row) {
        pj = pi + 1 + static_cast<int>(k);
        break;
      }
      k -= row;
    }
  }

  std::exponential_distribution<double> expo(total_rate);
  state.time += expo(rng);
  std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
  const double theta = angle(rng);
  const double c = std::cos(theta), s = std::sin(theta);
  const double vi = state.velocities[pi], vj = state.velocities[pj];
  state.velocities[pi] = vi * c + vj * s;
  state.velocities[pj] = -vi * s + vj * c;
  state.collisions += 1;

  CollisionRecord rec;
  rec.time = state.time;
  rec.index = state.collisions;
  rec.i = pi;
  rec.j = pj;
  rec.theta = theta;
  return rec;
}

VelocityState simulate(
    const SphereSpec &spec, double gamma, long long steps, std::uint64_t seed,
    const std::function<void(const CollisionRecord &, const VelocityState &)> &callback) {
  spec.validate();
  std::mt19937_64 rng(seed);
  VelocityState st = initial_state(spec, rng);
  for (long long k = 0; k < steps; ++k) {
    const CollisionRecord rec = step(st, gamma, rng);
    if (callback) callback(rec, st);
    if (st.collisions % kRenormEvery == 0) renormalize(st, spec);
  }
  return st;
}

TrialProfile f0_profile(int N) {
  TrialProfile p;
  p.N = N;
  p.coefficients = {-3.0 * N / (N + 2.0), 0.0, 1.0};
  p.orthogonalized = true; // mean zero under the one-coordinate marginal
  return p;
}

GapEstimate estimate_gap_autocorr(const SphereSpec &spec, double gamma,
                                  const TrialProfile &observable, double horizon,
                                  int replicas, std::uint64_t rng_seed) {
  spec.validate();
  if (replicas < 100) throw std::invalid_argument("estimate_gap_autocorr: replicas >= 100");
  if (!observable.orthogonalized)
    throw std::invalid_argument("estimate_gap_autocorr: observable must be orthogonalized");
  if (!(horizon > 0.0)) throw std::invalid_argument("estimate_gap_autocorr: horizon > 0");

  const int N = spec.n_particles;
  const double inv_sqrt_e = 1.0 / std::sqrt(spec.energy);
  const int n_lags = 64;
  const double dt = horizon / n_lags;
  const int n_grid = 2 * n_lags; // origins in the first half, lags up to horizon

  auto f_value = [&](const Eigen::VectorXd &v) {
    double acc = 0.0;
    for (int j = 0; j < N; ++j) acc += observable.eval(v[j] * inv_sqrt_e);
    return acc;
  };

  // Per-replica autocorrelation curves, averaged over time origins.
  std::vector<std::vector<double>> curves(replicas, std::vector<double>(n_lags + 1, 0.0));
  for (int r = 0; r < replicas; ++r) {
    std::mt19937_64 rng = replica_rng(rng_seed, r);
    VelocityState st = initial_state(spec, rng);
    std::vector<double> f_grid(n_grid + 1);
    double f_cur = f_value(st.velocities);
    int next = 0;
    while (next <= n_grid) {
      // The observable is piecewise constant between collisions.
      VelocityState peek = st;
      const CollisionRecord rec = step(peek, gamma, rng);
      while (next <= n_grid && next * dt <= rec.time) f_grid[next++] = f_cur;
      st = std::move(peek);
      f_cur = f_value(st.velocities);
      if (st.collisions % kRenormEvery == 0) {
        renormalize(st, spec);
        f_cur = f_value(st.velocities);
      }
    }
    for (int k = 0; k <= n_lags; ++k) {
      double acc = 0.0;
      for (int s = 0; s <= n_lags; ++s) acc += f_grid[s] * f_grid[s + k];
      curves[r][k] = acc / (n_lags + 1);
    }
  }

  std::vector<double> mean_c(n_lags + 1, 0.0);
  for (int k = 0; k <= n_lags; ++k) {
    for (int r = 0; r < replicas; ++r) mean_c[k] += curves[r][k];
    mean_c[k] /= replicas;
  }
  if (!(mean_c[0] > 0.0)) throw std::runtime_error("estimate_gap_autocorr: C(0) not positive");

  // Fit window: C(t)/C(0) within [0.1, 0.8]; shrink at the first
  // non-positive value (noise-dominated tail).
  std::vector<int> window;
  for (int k = 1; k <= n_lags; ++k) {
    const double ratio = mean_c[k] / mean_c[0];
    if (mean_c[k] <= 0.0 || ratio < 0.1) break;
    if (ratio <= 0.8) window.push_back(k);
  }
  if (window.size() < 2) throw std::runtime_error("estimate_gap_autocorr: empty fit window");

  auto fit_rate = [&](const std::vector<double> &c, double *rms) {
    // Weighted least squares of log c(t_k) = a - rate * t_k, weights c^2.
    double sw = 0, swx = 0, swy = 0, swxx = 0, swxy = 0;
    for (int k : window) {
      if (c[k] <= 0.0) continue;
      const double w = c[k] * c[k];
      const double x = k * dt, y = std::log(c[k]);
      sw += w;
      swx += w * x;
      swy += w * y;
      swxx += w * x * x;
      swxy += w * x * y;
    }
    const double det = sw * swxx - swx * swx;
    if (!(det > 0.0) || !(sw > 0.0))
      throw std::runtime_error("estimate_gap_autocorr: degenerate fit");
    const double slope = (sw * swxy - swx * swy) / det;
    if (rms) {
      const double a = (swy * swxx - swx * swxy) / det;
      double acc = 0.0;
      for (int k : window) {
        if (c[k] <= 0.0) continue;
        const double res = std::log(c[k]) - (a + slope * k * dt);
        acc += c[k] * c[k] * res * res;
      }
      *rms = std::sqrt(acc / sw);
    }
    return -slope;
  };

  GapEstimate est;
  est.rate = fit_rate(mean_c, &est.residual_rms);
  est.t_lo = window.front() * dt;
  est.t_hi = window.back() * dt;
  est.fit_points = static_cast<int>(window.size());

  // Jackknife over replicas with the window fixed by the full fit.
  std::vector<double> jack(replicas);
  std::vector<double> loo(n_lags + 1);
  for (int r = 0; r < replicas; ++r) {
    for (int k = 0; k <= n_lags; ++k)
      loo[k] = (mean_c[k] * replicas - curves[r][k]) / (replicas - 1);
    jack[r] = fit_rate(loo, nullptr);
  }
  double jm = 0.0;
  for (double v : jack) jm += v;
  jm /= replicas;
  double var = 0.0;
  for (double v : jack) var += (v - jm) * (v - jm);
  est.stderr_ = std::sqrt(var * (replicas - 1.0) / replicas);
  if (!(est.rate > 0.0)) throw std::runtime_error("estimate_gap_autocorr: nonpositive rate");
  return est;
}

DirichletMC dirichlet_mc(const SphereSpec &spec, double gamma, const TrialProfile &profile,
                         long long samples, std::uint64_t rng_seed) {
  spec.validate();
  if (!profile.orthogonalized)
    throw std::invalid_argument("dirichlet_mc: profile must be orthogonalized");
  if (samples < 100000) throw std::invalid_argument("dirichlet_mc: samples >= 1e5");
  const int N = spec.n_particles;
  const double denom = profile_sum_norm2(profile);
  if (!(denom > 0.0)) throw std::domain_error("dirichlet_mc: zero profile norm");

  const int deg = profile.even_degree();
  const int n_ang = 8 * deg + 8; // exact rotation average for this degree
  const double inv_sqrt_e = 1.0 / std::sqrt(spec.energy);

  std::mt19937_64 rng(rng_seed);
  double sum = 0.0, sum2 = 0.0;
  std::vector<double> h(n_ang);
  for (long long s = 0; s < samples; ++s) {
    const SpherePoint pt = sample_one(spec, rng);
    const double u1 = pt.velocities[0] * inv_sqrt_e;
    const double u2 = pt.velocities[1] * inv_sqrt_e;
    const double rho2 = u1 * u1 + u2 * u2;
    const double rho = std::sqrt(rho2);
    const double h0 = profile.eval(u1) + profile.eval(u2);
    double hbar = 0.0;
    for (int t = 0; t < n_ang; ++t) {
      const double a = 2.0 * std::numbers::pi * t / n_ang;
      h[t] = profile.eval(rho * std::cos(a)) + profile.eval(rho * std::sin(a));
      hbar += h[t];
    }
    hbar /= n_ang;
    double msq = 0.0;
    for (int t = 0; t < n_ang; ++t) msq += (h[t] - h0) * (h[t] - h0);
    msq /= n_ang;
    // All pairs contribute identically in distribution: one pair times N/2
    // reproduces the N binom(N,2)^{-1} sum over binom(N,2) pairs, with the
    // 1/2 from the squared-difference form of the quadratic form.
    const double x = 0.5 * N * std::pow(spec.energy, gamma) * std::pow(rho2, gamma) * msq;
    sum += x;
    sum2 += x * x;
  }
  const double mean = sum / samples;
  const double var = std::max(0.0, sum2 / samples - mean * mean);
  DirichletMC out;
  out.quotient = mean / denom;
  out.stderr_ = std::sqrt(var / samples) / denom;
  return out;
}

} // namespace kacgap
