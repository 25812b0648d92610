// Copyright 2026 The QMCMC Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on failure.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "qmcmc/channel.hpp"
#include "qmcmc/experiments.hpp"
#include "qmcmc/observables.hpp"
#include "qmcmc/trajectory.hpp"

using namespace qmcmc;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

ProtocolConfig make_config(const HamiltonianSpec& spec, double g, int n_trotter, int n_cycle, double beta) {
  ProtocolConfig cfg;
  cfg.g = g;
  cfg.n_trotter = n_trotter;
  cfg.n_cycle = n_cycle;
  cfg.beta = beta;
  cfg.omega_m = spectral_width(spec);
  cfg.ancilla_map = one_to_one_ancillas(spec.qubit_count);
  return cfg;
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

// 1. Random period channels are CPTP.
Outcome cptp_suite() {
  std::mt19937_64 gen(1);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst_completeness = 0.0;
  double worst_choi = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const int n_s = 1 + static_cast<int>(u(gen) * 2);
    const int m = 1 + static_cast<int>(u(gen) * 2);
    const auto spec = build_tfim(n_s, 2.0 * u(gen), 2.0 * u(gen));
    auto cfg = make_config(spec, 0.05 + u(gen), 1 + static_cast<int>(u(gen) * 200), 1, 10.0 * u(gen));
    cfg.ancilla_map.clear();
    for (int a = 0; a < m; ++a) cfg.ancilla_map.push_back(static_cast<int>(u(gen) * n_s));
    const double omega = 5.0 * u(gen);
    const auto w = build_period_unitary(spec, cfg, omega);
    const auto kraus = build_period_channel(w, ancilla_preparation(omega, cfg.beta, m), n_s, m);
    worst_completeness = std::max(worst_completeness, kraus.completeness_error());
    worst_choi = std::min(worst_choi, to_superoperator(kraus).min_choi_eigenvalue());
  }
  return {worst_completeness < 1e-8 && worst_choi >= -1e-8,
          "max completeness error " + fmt(worst_completeness) + ", min Choi eigenvalue " + fmt(worst_choi)};
}

// 2. Infinite temperature fixes the maximally mixed state.
Outcome infinite_temperature() {
  double worst_map = 0.0;
  double worst_state = 0.0;
  for (int n : {1, 2}) {
    const auto spec = build_tfim(n, 1.0, 1.0);
    const auto map = build_cycle_map(spec, make_config(spec, 0.2, 200, 50, 0.0));
    const Eigen::Index d = Eigen::Index{1} << n;
    const ComplexMatrix mixed = ComplexMatrix::Identity(d, d) / static_cast<double>(d);
    worst_map = std::max(worst_map, (map.superoperator.apply(mixed) - mixed).norm());
    worst_state = std::max(worst_state, trace_distance(steady_state(map).rho, mixed));
  }
  return {worst_map < 1e-10 && worst_state < 1e-8,
          "||M(I/d) - I/d|| = " + fmt(worst_map) + ", steady-state trace distance " + fmt(worst_state)};
}

// 3. Reduced cycle map equals the composite-space simulation.
Outcome reduced_map_equivalence() {
  const auto spec = build_tfim(1, 1.0, 1.0);
  const auto cfg = make_config(spec, 0.5, 50, 10, 1.0);
  const auto map = build_cycle_map(spec, cfg);
  oracle::BruteForce brute;
  brute.h_s = to_matrix(spec);
  brute.g = cfg.g;
  brute.omega_m = cfg.omega_m;
  brute.beta = cfg.beta;
  brute.n_trotter = cfg.n_trotter;
  brute.n_cycle = cfg.n_cycle;
  std::mt19937_64 gen(3);
  double worst = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const auto rho = oracle::random_density(2, gen);
    worst = std::max(worst, oracle::trace_norm_distance(map.superoperator.apply(rho), brute.run_cycle(rho)));
  }
  return {worst < 1e-9, "max trace distance over 20 inputs " + fmt(worst)};
}

// 4. First-order Trotter convergence.
Outcome trotter_order() {
  const auto spec = build_tfim(1, 1.0, 1.0);
  const auto base = make_config(spec, 1.0, 100, 1, 1.0);
  const double omega = base.omega_m / 2.0;
  const oracle::Mat h_total = oracle::kron(to_matrix(spec), oracle::pauli('I')) + base.g * oracle::word("XX") -
                              (omega / 2.0) * oracle::word("IZ");
  const oracle::Mat exact = oracle::expm(Complex(0, -base.period_time()) * h_total);
  std::vector<double> errors;
  for (int nt : {100, 200, 400, 800}) {
    auto cfg = base;
    cfg.n_trotter = nt;
    Eigen::JacobiSVD<ComplexMatrix> svd(build_period_unitary(spec, cfg, omega) - exact);
    errors.push_back(svd.singularValues()(0));
  }
  bool pass = true;
  std::string ratios;
  for (std::size_t i = 1; i < errors.size(); ++i) {
    const double r = errors[i - 1] / errors[i];
    pass = pass && r >= 1.5 && r <= 2.5;
    ratios += (i > 1 ? ", " : "") + fmt(r);
  }
  return {pass, "error ratios " + ratios + " (g = 1, Omega = omega_m / 2)"};
}

// 5 and 6 share the default-parameter TFIM cycle maps.
std::vector<ResultRow> tfim_rows() {
  ExperimentPlan plan;
  plan.kind = ExperimentKind::MagnetizationSweep;
  plan.sizes = {2};
  plan.field_ratios = {1.0};
  plan.betas = {10.0, 1.0, 0.1};
  return run_experiment(plan);
}

Outcome default_tfim_point(const std::vector<ResultRow>& rows) {
  const auto& r = rows[0];
  const bool pass = r.error.empty() && r.infidelity < 0.1 && r.lambda1_deviation < 1e-6 && r.unique_fixed_point &&
                    r.spectral_gap > 0.0;
  return {pass, "infidelity " + fmt(r.infidelity) + ", |lambda_1 - 1| " + fmt(r.lambda1_deviation) + ", gap " +
                    fmt(r.spectral_gap) + (r.unique_fixed_point ? ", unique" : ", NOT unique") + r.error};
}

Outcome magnetization(const std::vector<ResultRow>& rows) {
  const auto h = to_matrix(build_tfim(2, 1.0, 1.0));
  const oracle::Mat y = (oracle::word("YI") + oracle::word("IY")) / 2.0;
  double worst = 0.0;
  double high_t_error = 1.0;
  for (const auto& r : rows) {
    const double expected = (oracle::thermal(h, r.beta) * y).trace().real();
    worst = std::max(worst, std::abs(r.magnetization_exact - expected));
    if (r.beta == 0.1) high_t_error = r.magnetization_error;
  }
  return {worst < 1e-10 && high_t_error < 0.02,
          "exact column vs series oracle " + fmt(worst) + ", |m_y error| at beta = 0.1 " + fmt(high_t_error)};
}

// 7. Random-graph TVD falls with temperature.
Outcome graph_trend() {
  ExperimentPlan plan;
  plan.kind = ExperimentKind::GraphSampling;
  plan.sizes = {4};
  plan.edge_probabilities = {0.4};
  plan.betas = {10.0, 0.1};
  plan.n_cycle = 100;
  plan.seed = 3;
  const auto rows = run_experiment(plan);
  const double cold = rows[0].tvd;
  const double hot = rows[1].tvd;
  return {rows[0].error.empty() && rows[1].error.empty() && hot < cold && hot < 0.05,
          "instance seed 3: TVD(beta = 10) " + fmt(cold) + ", TVD(beta = 0.1) " + fmt(hot)};
}

// 8. Trajectory sampler reproduces the dense steady state.
Outcome trajectory_agreement() {
  const auto spec = build_graph_ising(GraphInstance{1, {1.0}, {}});
  const auto cfg = make_config(spec, 0.05, 100, 20, 1.0);
  const auto dense = basis_distribution(steady_state(build_cycle_map(spec, cfg)).rho);
  const auto a = sample_gibbs(spec, cfg, 30, 5000, 2024);
  const auto b = sample_gibbs(spec, cfg, 30, 5000, 2024);
  const double d = tvd(a.distribution(), dense);
  return {d < 0.05 && a == b,
          "TVD to dense steady state " + fmt(d) + (a == b ? ", repeat run identical" : ", repeat run DIFFERS")};
}

// 9. Metric examples.
Outcome metric_examples() {
  ComplexMatrix zero = ComplexMatrix::Zero(2, 2);
  zero(0, 0) = 1.0;
  ComplexMatrix one = ComplexMatrix::Zero(2, 2);
  one(1, 1) = 1.0;
  const ComplexMatrix mixed = ComplexMatrix::Identity(2, 2) / 2.0;
  std::mt19937_64 gen(9);
  const auto rho = oracle::random_density(4, gen);
  ComplexVector plus_i(4);
  plus_i << 0.5, 0.5 * kI, 0.5 * kI, -0.5;
  const std::vector<double> p{0.2, 0.8, 0.0, 0.0};
  const bool pass = std::abs(fidelity(rho, rho) - 1.0) < 1e-9 && std::abs(fidelity(zero, one)) < 1e-9 &&
                    std::abs(fidelity(zero, mixed) - 0.5) < 1e-9 && std::abs(tvd(p, p)) < 1e-9 &&
                    std::abs(tvd(p, {0.0, 0.0, 0.5, 0.5}) - 1.0) < 1e-9 &&
                    std::abs(tvd({0.5, 0.5}, {1.0, 0.0}) - 0.5) < 1e-9 &&
                    std::abs(transverse_magnetization(ComplexMatrix::Identity(4, 4) / 4.0, 2)) < 1e-9 &&
                    std::abs(transverse_magnetization(plus_i * plus_i.adjoint(), 2) - 1.0) < 1e-9;
  return {pass, "fidelity, tvd and magnetization examples"};
}

}  // namespace

int main() {
  int failures = 0;
  auto report = [&](int id, const char* name, const std::function<Outcome()>& check) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!o.pass) ++failures;
    std::printf("[%s] criterion %d: %s -- %s (%.1f s)\n", o.pass ? "PASS" : "FAIL", id, name, o.detail.c_str(), secs);
    std::fflush(stdout);
  };

  report(1, "CPTP suite", cptp_suite);
  report(2, "infinite-temperature fixed point", infinite_temperature);
  report(3, "reduced-map equivalence", reduced_map_equivalence);
  report(4, "Trotter order", trotter_order);
  std::vector<ResultRow> rows;
  report(5, "two-site TFIM at beta J = 10", [&] {
    rows = tfim_rows();
    return default_tfim_point(rows);
  });
  report(6, "magnetization consistency", [&] {
    if (rows.size() != 3) return Outcome{false, "TFIM sweep unavailable"};
    return magnetization(rows);
  });
  report(7, "Gibbs-sampling trend", graph_trend);
  report(8, "trajectory-channel agreement", trajectory_agreement);
  report(9, "metric examples", metric_examples);
  std::printf("%d of 9 criteria passed\n", 9 - failures);
  return failures == 0 ? 0 : 1;
}
