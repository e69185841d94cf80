// Command-line front end: bounds, products, spectrum, variational, simulate,
// correlation and report subcommands with JSON output (CSV for trajectories).

#include "kacgap/bounds.hpp"
#include "kacgap/correlation.hpp"
#include "kacgap/kac_walk.hpp"
#include "kacgap/products.hpp"
#include "kacgap/sphere.hpp"
#include "kacgap/variational.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <thread>

using nlohmann::json;

namespace {

int thread_count() {
  if (const char *env = std::getenv("KACGAP_THREADS")) {
    try {
      const int n = std::stoi(env);
      if (n >= 1) return n;
    } catch (...) {
    }
    throw std::invalid_argument("KACGAP_THREADS must be a positive integer");
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw ? static_cast<int>(hw) : 1;
}

json base_output(const std::string &command) {
  json out;
  out["schema_version"] = 1;
  out["command"] = command;
  out["timestamp"] = std::chrono::duration_cast<std::chrono::seconds>(
                         std::chrono::system_clock::now().time_since_epoch())
                         .count();
  return out;
}

void emit(const json &out, const std::string &path) {
  if (path.empty()) {
    std::cout << out.dump(2) << "\n";
  } else {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot open output path: " + path);
    f << out.dump(2) << "\n";
  }
}

// A_k = (p + gamma q)/r matching the induction coefficient; a small sampled
// majorant of sup_{k>K} A_k certifies the truncated-product tail.
double a_tail_majorant(double gamma, long long K) {
  double m = 5.0 * (1.0 + gamma);
  for (long long k = K; k <= 10 * K; k += std::max<long long>(1, K / 1009 * 7 + 997))
    m = std::max(m, kacgap::a_coeff(k, gamma));
  return m * (1.0 + 1e-9);
}

json run_bounds(int N, double gamma, int n0) {
  kacgap::GapBoundInputs in;
  in.N = N;
  in.gamma = gamma;
  in.n0 = n0;
  const kacgap::BoundReport rep = kacgap::make_report(in);
  const kacgap::LambdaBound lam = kacgap::lambda_lb(gamma);
  json out = base_output("bounds");
  out["N"] = rep.N;
  out["gamma"] = rep.gamma;
  out["n0_used"] = rep.n0_used;
  out["a_n"] = rep.a_n;
  if (rep.c_n) out["c_n"] = *rep.c_n;
  out["mu_n"] = rep.mu_n;
  out["uniform_lb"] = rep.uniform_lb;
  out["hat_delta_lb"] = rep.hat_delta_lb;
  out["delta_lb"] = rep.delta_lb;
  out["delta2"] = rep.delta2;
  out["lambda_lb"] = {{"value", lam.value},
                      {"n0", lam.n0},
                      {"tail_certificate", lam.tail_certificate},
                      {"truncation_index", lam.truncation_index}};
  return out;
}

json run_products(const std::string &demo, double gamma) {
  json out = base_output("products");
  if (demo == "uniform-factor") {
    // prod_{j>=3} [1 - (4j+1)/((j-1)^2(j+1))]; numerator j^3 - j^2 - 5j.
    kacgap::RationalProductSpec spec;
    spec.numerator_roots = kacgap::poly_roots({0.0, -5.0, -1.0, 1.0});
    spec.denominator_roots = kacgap::poly_roots({1.0, -1.0, -1.0, 1.0});
    spec.start_index = 3;
    const kacgap::ProductResult res = kacgap::gamma_product_limit(spec);
    out["demo"] = demo;
    out["value"] = res.value;
    out["closed_form"] = res.closed_form();
  } else if (demo == "hard-sphere-tail") {
    const long long K = 1000000;
    const kacgap::ProductResult res = kacgap::truncated_product(
        [gamma](long long k) {
          return 1.0 - kacgap::a_coeff(k, gamma) / (static_cast<double>(k) * k);
        },
        11, K, a_tail_majorant(gamma, K));
    out["demo"] = demo;
    out["gamma"] = gamma;
    out["value"] = res.value;
    out["truncation_index"] = res.truncation_index;
    out["tail_bound"] = res.tail_bound;
  } else {
    throw std::invalid_argument("unknown products demo: " + demo);
  }
  return out;
}

json run_spectrum(int N, double gamma, int degree) {
  if (gamma != 0.0)
    throw std::invalid_argument("spectrum: exact spectra require gamma = 0");
  const kacgap::SpectrumResult res = kacgap::exact_maxwellian_spectrum(N, degree);
  json out = base_output("spectrum");
  out["N"] = N;
  out["gamma"] = gamma;
  out["degree"] = degree;
  out["gap"] = res.gap;
  out["alignment"] = res.alignment;
  out["retained_dimension"] = res.retained_dimension;
  out["eigenvalues"] = res.eigenvalues;
  return out;
}

json run_variational(int N, double gamma, int degree, int basis_size) {
  const kacgap::RayleighResult ray = kacgap::rayleigh_min(N, gamma, degree);
  json out = base_output("variational");
  out["N"] = N;
  out["gamma"] = gamma;
  out["degree"] = degree;
  out["rayleigh_min"] = ray.value;
  out["profile_coefficients"] = ray.profile.coefficients;
  out["dirichlet_form"] = kacgap::dirichlet_form_A(ray.profile, gamma);
  out["profile_sum_norm2"] = kacgap::profile_sum_norm2(ray.profile);
  kacgap::LinearizedModel model;
  model.gamma = gamma;
  model.basis_size = basis_size;
  out["linearized_gap"] = {{"basis_size", basis_size}, {"value", kacgap::linearized_gap(model)}};
  return out;
}

json run_simulate(int N, double gamma, double energy, long long steps, std::uint64_t seed,
                  const std::string &format, const std::string &output) {
  const kacgap::SphereSpec spec{N, energy};
  const kacgap::TrialProfile f0 = kacgap::f0_profile(N);
  const double inv_sqrt_e = 1.0 / std::sqrt(energy);

  std::ofstream csv;
  if (format == "csv") {
    if (output.empty()) throw std::invalid_argument("simulate: csv format needs --output");
    csv.open(output);
    if (!csv) throw std::runtime_error("cannot open output path: " + output);
    csv << "time,collision_index,i,j,theta,observable_value\n";
  }
  double obs_sum = 0.0, obs_sum2 = 0.0;
  auto callback = [&](const kacgap::CollisionRecord &rec, const kacgap::VelocityState &st) {
    double obs = 0.0;
    for (int j = 0; j < N; ++j) obs += f0.eval(st.velocities[j] * inv_sqrt_e);
    obs_sum += obs;
    obs_sum2 += obs * obs;
    if (csv.is_open())
      csv << rec.time << "," << rec.index << "," << rec.i << "," << rec.j << "," << rec.theta
          << "," << obs << "\n";
  };
  const kacgap::VelocityState fin = kacgap::simulate(spec, gamma, steps, seed, callback);

  json out = base_output("simulate");
  out["N"] = N;
  out["gamma"] = gamma;
  out["E"] = energy;
  out["seed"] = seed;
  out["steps"] = steps;
  out["final_time"] = fin.time;
  out["collisions"] = fin.collisions;
  out["observable"] = "f0";
  out["observable_mean"] = obs_sum / steps;
  out["observable_second_moment"] = obs_sum2 / steps;
  if (csv.is_open()) out["trajectory_csv"] = output;
  return out;
}

json run_correlation(int N, int m, int k_max) {
  const kacgap::CorrelationSpectrum sp = kacgap::correlation_spectrum(N, m, k_max);
  json out = base_output("correlation");
  out["N"] = N;
  out["m"] = m;
  out["eigenvalues"] = sp.eigenvalues;
  if (N >= 2) out["projection_sum_bound_order1"] = kacgap::projection_sum_bound(N, 1);
  if (N >= 5) out["projection_sum_bound_order2"] = kacgap::projection_sum_bound(N, 2);
  return out;
}

json run_report(const std::vector<int> &ns, double gamma, int replicas, std::uint64_t seed) {
  json out = base_output("report");
  out["gamma"] = gamma;
  out["replicas"] = replicas;
  json rows = json::array();
  for (int N : ns) {
    json row;
    row["N"] = N;
    row["delta_lb"] = kacgap::delta_lb(N, gamma);
    row["hat_delta_lb"] = kacgap::hat_delta_lb(N, gamma);
    const kacgap::RayleighResult ray = kacgap::rayleigh_min(N, gamma, 8);
    row["rayleigh_min"] = ray.value;
    const kacgap::SphereSpec spec{N, 1.0};
    const double horizon = 4.0 / ray.value;
    const kacgap::GapEstimate est = kacgap::estimate_gap_autocorr(
        spec, gamma, kacgap::f0_profile(N), horizon, replicas, seed + N);
    row["mc_rate"] = est.rate;
    row["mc_stderr"] = est.stderr_;
    rows.push_back(row);
  }
  out["rows"] = rows;
  return out;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Spectral-gap bounds and simulation for energy-sphere pair-collision dynamics"};
  app.set_config("--config", "", "key=value config file; flags take precedence");
  app.require_subcommand(1);
  app.fallthrough();

  int N = 8, n0 = kacgap::kAutoBase, degree = 4, basis_size = 16, m = 1, k_max = 20,
      replicas = 200;
  double gamma = 0.0, energy = 1.0;
  long long steps = 10000;
  std::uint64_t seed = 1;
  std::string output, format = "json", demo = "uniform-factor";
  std::vector<int> n_list{4, 8, 16, 32};

  app.add_option("--output", output, "output file (default stdout)");
  app.add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));

  auto *cb = app.add_subcommand("bounds", "certified lower bounds for a given N, gamma");
  cb->add_option("--N", N)->required();
  cb->add_option("--gamma", gamma)->check(CLI::Range(0.0, 1.0));
  cb->add_option("--n0", n0);

  auto *cp = app.add_subcommand("products", "infinite/truncated product demos");
  cp->add_option("--demo", demo)->check(CLI::IsMember({"uniform-factor", "hard-sphere-tail"}));
  cp->add_option("--gamma", gamma)->check(CLI::Range(0.0, 1.0));

  auto *cs = app.add_subcommand("spectrum", "exact constant-rate generator spectrum");
  cs->add_option("--N", N)->required();
  cs->add_option("--gamma", gamma)->check(CLI::Range(0.0, 1.0));
  cs->add_option("--degree", degree);

  auto *cv = app.add_subcommand("variational", "Rayleigh-quotient upper bounds");
  cv->add_option("--N", N)->required();
  cv->add_option("--gamma", gamma)->check(CLI::Range(0.0, 1.0));
  cv->add_option("--degree", degree)->default_val(8);
  cv->add_option("--basis-size", basis_size);

  auto *cm = app.add_subcommand("simulate", "run the jump process; csv exports the trajectory");
  cm->add_option("--N", N)->required();
  cm->add_option("--gamma", gamma)->check(CLI::Range(0.0, 1.0));
  cm->add_option("--E", energy);
  cm->add_option("--steps", steps);
  cm->add_option("--seed", seed);

  auto *cc = app.add_subcommand("correlation", "block-correlation spectra and bounds");
  cc->add_option("--N", N)->required();
  cc->add_option("--m", m);
  cc->add_option("--kmax", k_max);

  auto *cr = app.add_subcommand("report", "sandwich table over a grid of N");
  cr->add_option("--N-list", n_list, "grid of N values");
  cr->add_option("--gamma", gamma)->check(CLI::Range(0.0, 1.0));
  cr->add_option("--replicas", replicas);
  cr->add_option("--seed", seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    (void)thread_count(); // validate KACGAP_THREADS; kernels are deterministic
    json out;
    if (cb->parsed()) out = run_bounds(N, gamma, n0);
    else if (cp->parsed()) out = run_products(demo, gamma);
    else if (cs->parsed()) out = run_spectrum(N, gamma, degree);
    else if (cv->parsed()) out = run_variational(N, gamma, degree, basis_size);
    else if (cm->parsed()) out = run_simulate(N, gamma, energy, steps, seed, format, output);
    else if (cc->parsed()) out = run_correlation(N, m, k_max);
    else out = run_report(n_list, gamma, replicas, seed);
    emit(out, cm->parsed() && format == "csv" ? "" : output);
  } catch (const std::invalid_argument &e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error &e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception &e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
