#pragma once
// Monte Carlo simulation of the pair-collision jump process on the energy
// sphere and empirical spectral-gap estimation from stationary
// autocorrelations.

#include "kacgap/sphere.hpp"
#include "kacgap/variational.hpp"

#include <cstdint>
#include <functional>
#include <random>
#include <string>

namespace kacgap {

struct VelocityState {
  Eigen::VectorXd velocities;
  double time = 0.0;
  long long collisions = 0;
};

struct CollisionRecord {
  double time = 0.0;       // time of the collision
  long long index = 0;     // collision counter after this event
  int i = 0, j = 0;        // colliding pair
  double theta = 0.0;      // rotation angle
};

struct GapEstimate {
  double rate = 0.0;
  double stderr_ = 0.0;
  double t_lo = 0.0, t_hi = 0.0; // fit window
  int fit_points = 0;
  double residual_rms = 0.0; // weighted rms residual of the log-linear fit
  std::string observable;
};

// Initial state: uniform sample on the sphere.
VelocityState initial_state(const SphereSpec &spec, std::mt19937_64 &rng);

// One Gillespie step: advance by an exponential waiting time with the total
// rate, pick a pair proportionally to N binom(N,2)^{-1} (v_i^2+v_j^2)^gamma,
// rotate it by a uniform angle. Returns the collision performed.
CollisionRecord step(VelocityState &state, double gamma, std::mt19937_64 &rng);

// Run `steps` collisions, renormalizing the energy every 10^4 steps. The
// optional callback sees every collision together with the updated state.
VelocityState simulate(
    const SphereSpec &spec, double gamma, long long steps, std::uint64_t seed,
    const std::function<void(const CollisionRecord &, const VelocityState &)> &callback = {});

// The quartic profile v^4 - 3N/(N+2), mean zero on the sphere.
TrialProfile f0_profile(int N);

// Exponential-decay rate of the stationary autocorrelation of
// f = sum_j phi(v_j / sqrt(E)), fitted by weighted least squares on the
// window where C(t)/C(0) is in [0.1, 0.8]; stderr by jackknife over replicas.
GapEstimate estimate_gap_autocorr(const SphereSpec &spec, double gamma,
                                  const TrialProfile &observable, double horizon,
                                  int replicas, std::uint64_t rng_seed);

// Monte Carlo Rayleigh quotient of f = sum_j phi(v_j / sqrt(E)): the pair
// Dirichlet integrand is sampled on the sphere with the rotation average
// taken on an exact angular grid; the denominator is the exact norm.
struct DirichletMC {
  double quotient = 0.0;
  double stderr_ = 0.0;
};
DirichletMC dirichlet_mc(const SphereSpec &spec, double gamma, const TrialProfile &profile,
                         long long samples, std::uint64_t rng_seed);

} // namespace kacgap
