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

#include "qmcmc/experiments.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <numbers>

#include "qmcmc/errors.hpp"
#include "qmcmc/observables.hpp"
#include "qmcmc/parallel.hpp"
#include "qmcmc/rng.hpp"

namespace qmcmc {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void mark_failed(ResultRow& row, const std::string& message) {
  row.error = message;
  row.infidelity = row.tvd = row.magnetization_exact = row.magnetization_algorithm = kNaN;
  row.magnetization_error = row.spectral_gap = row.lambda1_deviation = kNaN;
  row.unique_fixed_point = false;
}

ComplexMatrix random_pure_state(Eigen::Index dim, std::uint64_t seed) {
  Rng rng(seed);
  ComplexVector v(dim);
  // Box-Muller Gaussian amplitudes give a Haar-random direction.
  for (Eigen::Index i = 0; i < dim; ++i) {
    const double u1 = 1.0 - rng.uniform();
    const double u2 = rng.uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    v(i) = Complex(r * std::cos(2.0 * std::numbers::pi * u2), r * std::sin(2.0 * std::numbers::pi * u2));
  }
  v.normalize();
  return v * v.adjoint();
}

ProtocolConfig make_config(const ExperimentPlan& plan, const HamiltonianSpec& spec) {
  ProtocolConfig cfg;
  cfg.g = plan.g;
  cfg.n_trotter = plan.n_trotter;
  cfg.n_cycle = plan.n_cycle;
  cfg.omega_m = plan.omega_m ? *plan.omega_m : spectral_width(spec);
  cfg.ancilla_map = one_to_one_ancillas(spec.qubit_count);
  cfg.beta = plan.betas.front();
  return cfg;
}

struct Point {
  HamiltonianSpec spec;
  ResultRow row_template;
};

std::vector<ResultRow> run_points(const ExperimentPlan& plan, const std::vector<Point>& points) {
  std::vector<std::vector<ResultRow>> per_point(points.size());
  const int inner_workers = points.size() > 1 ? 1 : plan.workers;
  parallel_for(points.size(), plan.workers, [&](std::size_t i) {
    const Point& point = points[i];
    try {
      if (2 * point.spec.qubit_count > plan.qubit_cap) {
        throw InvalidConfig("N_s + M = " + std::to_string(2 * point.spec.qubit_count) +
                            " exceeds the qubit cap " + std::to_string(plan.qubit_cap));
      }
      const ProtocolConfig cfg = make_config(plan, point.spec);
      per_point[i] = thermalize(point.spec, cfg, plan.betas, point.row_template, plan.mode, plan.sweeps,
                                derive_seed(plan.seed, i), inner_workers);
    } catch (const std::exception& e) {
      for (double beta : plan.betas) {
        ResultRow row = point.row_template;
        row.beta = beta;
        row.g = plan.g;
        row.n_trotter = plan.n_trotter;
        row.n_cycle = plan.n_cycle;
        row.mode = plan.mode == StateMode::SteadyState ? "steady_state" : "repeated:" + std::to_string(plan.sweeps);
        mark_failed(row, e.what());
        per_point[i].push_back(std::move(row));
      }
    }
  });
  std::vector<ResultRow> rows;
  for (auto& chunk : per_point)
    for (auto& row : chunk) rows.push_back(std::move(row));
  return rows;
}

}  // namespace

const char* to_string(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::TfimInfidelity: return "tfim";
    case ExperimentKind::MagnetizationSweep: return "magnetization";
    case ExperimentKind::GraphSampling: return "graph";
  }
  return "unknown";
}

const char* to_string(StateMode mode) {
  return mode == StateMode::SteadyState ? "steady_state" : "repeated";
}

void ExperimentPlan::validate() const {
  if (sizes.empty() || betas.empty()) throw InvalidConfig("size and beta lists must be nonempty");
  if ((kind != ExperimentKind::GraphSampling) && field_ratios.empty()) {
    throw InvalidConfig("h/J list must be nonempty");
  }
  if (kind == ExperimentKind::GraphSampling && !graph && edge_probabilities.empty()) {
    throw InvalidConfig("p_e list must be nonempty");
  }
  for (int n : sizes)
    if (n < 1) throw InvalidConfig("N_s must be >= 1");
  for (double b : betas)
    if (!(b >= 0.0)) throw InvalidConfig("beta must be >= 0");
  for (double p : edge_probabilities)
    if (!(p >= 0.0 && p <= 1.0)) throw InvalidConfig("p_e must lie in [0, 1]");
  if (instances < 1) throw InvalidConfig("instances must be >= 1");
  if (mode == StateMode::RepeatedApplication && sweeps < 1) {
    throw InvalidConfig("repeated mode needs sweeps >= 1");
  }
  if (!(g > 0.0) || n_trotter < 1 || n_cycle < 1) throw InvalidConfig("invalid protocol parameters");
  if (qubit_cap < 2) throw InvalidConfig("qubit cap must be >= 2");
}

GraphInstance generate_er_instance(int n, double p_e, std::uint64_t seed) {
  if (n < 1) throw InvalidSize("graph needs at least one vertex");
  if (!(p_e >= 0.0 && p_e <= 1.0)) throw InvalidArgument("p_e must lie in [0, 1]");
  Rng rng(seed);
  GraphInstance g;
  g.vertex_count = n;
  for (int i = 0; i < n; ++i) g.local_fields.push_back(rng.uniform());
  for (int j = 0; j < n; ++j)
    for (int k = j + 1; k < n; ++k)
      if (rng.uniform() < p_e) g.edges.push_back({j, k, rng.uniform()});
  return g;
}

std::vector<ResultRow> thermalize(const HamiltonianSpec& spec, const ProtocolConfig& cfg,
                                  const std::vector<double>& betas, const ResultRow& row_template,
                                  StateMode mode, int sweeps, std::uint64_t seed, int workers) {
  using Clock = std::chrono::steady_clock;
  const auto t0 = Clock::now();
  const auto maps = build_cycle_maps(spec, cfg, betas, workers);
  const double shared = std::chrono::duration<double>(Clock::now() - t0).count();
  const int n_s = spec.qubit_count;
  const bool diagonal = spec.is_diagonal();

  std::vector<ResultRow> rows;
  for (std::size_t i = 0; i < betas.size(); ++i) {
    const auto t1 = Clock::now();
    ResultRow row = row_template;
    row.n_s = n_s;
    row.beta = betas[i];
    row.g = cfg.g;
    row.n_trotter = cfg.n_trotter;
    row.n_cycle = cfg.n_cycle;
    row.omega_m = cfg.omega_m;
    row.mode = mode == StateMode::SteadyState ? "steady_state" : "repeated:" + std::to_string(sweeps);
    try {
      const SpectralGap gap = spectral_gap(maps[i]);
      row.spectral_gap = gap.gap;
      row.unique_fixed_point = gap.unique;
      row.lambda1_deviation = std::abs(gap.lambda_1 - 1.0);

      ComplexMatrix state;
      if (mode == StateMode::SteadyState) {
        state = steady_state(maps[i]).rho;
      } else {
        state = random_pure_state(Eigen::Index{1} << n_s, derive_seed(seed, i));
        for (int s = 0; s < sweeps; ++s) state = maps[i].superoperator.apply(state);
        state = (0.5 * (state + state.adjoint())).eval();
        state /= state.trace().real();
      }
      const ComplexMatrix exact = thermal_state(spec, betas[i]);
      const MetricReport metrics = compare_states(exact, state, n_s);
      row.infidelity = metrics.infidelity;
      row.tvd = diagonal ? tvd(gibbs_distribution(spec, betas[i]), basis_distribution(state)) : metrics.tvd;
      row.magnetization_exact = transverse_magnetization(exact, n_s);
      row.magnetization_algorithm = metrics.magnetization;
      row.magnetization_error = std::abs(row.magnetization_exact - row.magnetization_algorithm);
      if (!(row.lambda1_deviation < 1e-6)) {
        throw NoUnitEigenvalue("|lambda_1 - 1| = " + std::to_string(row.lambda1_deviation));
      }
    } catch (const std::exception& e) {
      mark_failed(row, e.what());
    }
    row.wall_time = shared / static_cast<double>(betas.size()) +
                    std::chrono::duration<double>(Clock::now() - t1).count();
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<ResultRow> run_tfim_infidelity(const ExperimentPlan& plan) {
  if (plan.kind != ExperimentKind::TfimInfidelity) throw InvalidConfig("plan is not a TFIM infidelity sweep");
  plan.validate();
  std::vector<Point> points;
  for (int n : plan.sizes)
    for (double hj : plan.field_ratios) {
      ResultRow t;
      t.experiment = "tfim";
      t.n_s = n;
      t.hj = hj;
      points.push_back({build_tfim(n, plan.coupling, hj * plan.coupling), t});
    }
  return run_points(plan, points);
}

std::vector<ResultRow> run_magnetization_sweep(const ExperimentPlan& plan) {
  if (plan.kind != ExperimentKind::MagnetizationSweep) throw InvalidConfig("plan is not a magnetization sweep");
  plan.validate();
  std::vector<Point> points;
  for (int n : plan.sizes)
    for (double hj : plan.field_ratios) {
      ResultRow t;
      t.experiment = "magnetization";
      t.n_s = n;
      t.hj = hj;
      points.push_back({build_tfim(n, plan.coupling, hj * plan.coupling), t});
    }
  return run_points(plan, points);
}

std::vector<ResultRow> run_graph_sampling(const ExperimentPlan& plan) {
  if (plan.kind != ExperimentKind::GraphSampling) throw InvalidConfig("plan is not a graph-sampling sweep");
  plan.validate();
  std::vector<Point> points;
  if (plan.graph) {
    ResultRow t;
    t.experiment = "graph";
    t.n_s = plan.graph->vertex_count;
    points.push_back({build_graph_ising(*plan.graph), t});
    return run_points(plan, points);
  }
  std::uint64_t counter = 0;
  for (int n : plan.sizes)
    for (double pe : plan.edge_probabilities)
      for (int inst = 0; inst < plan.instances; ++inst) {
        const std::uint64_t instance_seed = plan.seed + counter++;
        ResultRow t;
        t.experiment = "graph";
        t.n_s = n;
        t.p_e = pe;
        t.instance_seed = instance_seed;
        points.push_back({build_graph_ising(generate_er_instance(n, pe, instance_seed)), t});
      }
  return run_points(plan, points);
}

std::vector<ResultRow> run_experiment(const ExperimentPlan& plan) {
  switch (plan.kind) {
    case ExperimentKind::TfimInfidelity: return run_tfim_infidelity(plan);
    case ExperimentKind::MagnetizationSweep: return run_magnetization_sweep(plan);
    case ExperimentKind::GraphSampling: return run_graph_sampling(plan);
  }
  throw InvalidConfig("unknown experiment kind");
}

}  // namespace qmcmc
