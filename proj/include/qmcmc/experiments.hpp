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

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qmcmc/channel.hpp"
#include "qmcmc/hamiltonians.hpp"
#include "qmcmc/schedule.hpp"

namespace qmcmc {

enum class ExperimentKind { TfimInfidelity, MagnetizationSweep, GraphSampling };

/// How the algorithm's state is obtained for a sweep point: the exact fixed
/// point of the cycle map, or `sweeps` applications of the map to a seeded
/// random pure state.
enum class StateMode { SteadyState, RepeatedApplication };

struct ExperimentPlan {
  ExperimentKind kind = ExperimentKind::TfimInfidelity;
  std::vector<int> sizes{2};                 // N_s values (graph: vertex counts)
  double coupling = 1.0;                     // J
  std::vector<double> field_ratios{1.0};     // h/J
  std::vector<double> betas{10.0};           // in units of 1/J
  std::vector<double> edge_probabilities{0.4};
  int instances = 1;                         // random graphs per (size, p_e)
  std::optional<GraphInstance> graph;        // fixed instance instead of random ones

  double g = 0.005;
  int n_trotter = 5000;
  int n_cycle = 500;
  std::optional<double> omega_m;             // defaults to the spectral width

  StateMode mode = StateMode::SteadyState;
  int sweeps = 0;

  std::uint64_t seed = 0;
  int qubit_cap = 12;                        // bound on N_s + M
  int workers = 0;
  std::string output_path;

  /// Throws InvalidConfig.
  void validate() const;
};

struct ResultRow {
  std::string experiment;
  int n_s = 0;
  std::optional<double> hj;
  double beta = 0.0;
  std::optional<double> p_e;
  std::optional<std::uint64_t> instance_seed;
  double g = 0.0;
  int n_trotter = 0;
  int n_cycle = 0;
  double omega_m = 0.0;
  std::string mode;

  double infidelity = 0.0;
  double tvd = 0.0;
  double magnetization_exact = 0.0;
  double magnetization_algorithm = 0.0;
  double magnetization_error = 0.0;
  double spectral_gap = 0.0;
  bool unique_fixed_point = false;
  double lambda1_deviation = 0.0;

  double wall_time = 0.0;
  std::string error;  // empty on success; metrics are NaN otherwise
};

/// Seeded G(n, p_e) with U[0,1] fields and weights. Draw order: one field
/// per vertex ascending, then for each pair (j, k) in lexicographic order an
/// inclusion draw followed, if included, by a weight draw.
GraphInstance generate_er_instance(int n, double p_e, std::uint64_t seed);

/// Steady-state analysis of one Hamiltonian at several temperatures.
/// `row_template` supplies the descriptive columns; one row per beta.
std::vector<ResultRow> thermalize(const HamiltonianSpec& spec, const ProtocolConfig& cfg,
                                  const std::vector<double>& betas, const ResultRow& row_template,
                                  StateMode mode = StateMode::SteadyState, int sweeps = 0,
                                  std::uint64_t seed = 0, int workers = 0);

std::vector<ResultRow> run_tfim_infidelity(const ExperimentPlan& plan);
std::vector<ResultRow> run_magnetization_sweep(const ExperimentPlan& plan);
std::vector<ResultRow> run_graph_sampling(const ExperimentPlan& plan);
std::vector<ResultRow> run_experiment(const ExperimentPlan& plan);

const char* to_string(ExperimentKind kind);
const char* to_string(StateMode mode);

}  // namespace qmcmc
