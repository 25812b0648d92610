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

// Shot-based unraveling of the thermalization protocol on pure states.
//
// Each period k of a cycle performs, on the composite state vector:
//   1. ancilla reset: for m = 0..M-1, measure ancilla m (one uniform draw),
//      collapse and renormalize, and apply X if the outcome was 1;
//   2. thermal preparation: for m = 0..M-1, apply X with probability
//      1 - p_0(t_k) (one uniform draw each);
//   3. the N_T Trotter steps of W_{t_k}, gate by gate.
// Random draws use the generator in rng.hpp in exactly this order, so a seed
// determines every trajectory bit for bit.

#include <cstdint>
#include <map>
#include <vector>

#include "qmcmc/channel.hpp"
#include "qmcmc/hamiltonians.hpp"
#include "qmcmc/rng.hpp"
#include "qmcmc/schedule.hpp"

namespace qmcmc {

struct TrajectoryState {
  ComplexVector amplitudes;
  Rng rng;
  std::uint64_t cycle_index = 0;
  std::uint64_t period_index = 0;

  /// |system_basis_state> (x) |0...0>_anc.
  static TrajectoryState basis(int n_s, int m_count, std::uint64_t system_basis_state, std::uint64_t seed);
};

struct SampleSet {
  int qubit_count = 0;
  std::map<std::uint64_t, std::uint64_t> counts;  // outcome index -> count
  std::uint64_t shots = 0;
  std::uint64_t seed = 0;

  /// Associative, commutative merge of counts and shot totals.
  void merge(const SampleSet& other);
  /// Empirical distribution over all 2^qubit_count outcomes.
  std::vector<double> distribution() const;

  friend bool operator==(const SampleSet&, const SampleSet&) = default;
};

/// Precomputes the gate tables for one (spec, cfg) pair and runs periods,
/// cycles and shots on pure states.
class TrajectorySimulator {
 public:
  TrajectorySimulator(const HamiltonianSpec& spec, const ProtocolConfig& cfg);

  const TrotterCircuit& circuit() const noexcept { return circuit_; }
  const ProtocolConfig& config() const noexcept { return cfg_; }

  /// One interaction period with an explicit (omega, p0). Throws
  /// NormalizationLoss if the norm drifts by more than 1e-6.
  void run_period(TrajectoryState& state, double omega, double p0) const;

  /// One full comb cycle (n_cycle periods).
  void run_cycle(TrajectoryState& state) const;

  /// Projective measurement of the principal register; returns the system
  /// basis index.
  std::uint64_t measure_system(TrajectoryState& state) const;

 private:
  HamiltonianSpec spec_;
  ProtocolConfig cfg_;
  TrotterCircuit circuit_;
  std::vector<double> omegas_;
  std::vector<double> ground_probabilities_;
  std::vector<ComplexVector> phases_;
};

TrajectoryState run_cycle(TrajectoryState state, const HamiltonianSpec& spec, const ProtocolConfig& cfg);

/// Each shot: seed its generator with derive_seed(seed, shot), draw a uniform
/// system basis state, run burn_in_cycles cycles, measure the system once.
/// Shots are distributed over `workers` threads; results do not depend on
/// the worker count. Throws InvalidArgument if shots == 0.
SampleSet sample_gibbs(const HamiltonianSpec& spec, const ProtocolConfig& cfg, std::uint64_t burn_in_cycles,
                       std::uint64_t shots, std::uint64_t seed, int workers = 0);

}  // namespace qmcmc
