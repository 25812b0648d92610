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

#include "qmcmc/trajectory.hpp"

#include <cmath>
#include <string>

#include "qmcmc/errors.hpp"
#include "qmcmc/parallel.hpp"

namespace qmcmc {

namespace {

constexpr double kNormTol = 1e-6;

// Outcome of measuring the qubit selected by `mask`, followed by collapse.
int measure_and_collapse(ComplexVector& psi, Eigen::Index mask, Rng& rng) {
  double p1 = 0.0;
  for (Eigen::Index i = 0; i < psi.size(); ++i)
    if (i & mask) p1 += std::norm(psi(i));
  int outcome = rng.uniform() < p1 ? 1 : 0;
  double kept = outcome ? p1 : 1.0 - p1;
  if (kept <= 1e-300) {  // rounding left all weight on the other branch
    outcome ^= 1;
    kept = outcome ? p1 : 1.0 - p1;
  }
  const double scale = 1.0 / std::sqrt(kept);
  for (Eigen::Index i = 0; i < psi.size(); ++i) {
    const bool set = (i & mask) != 0;
    psi(i) = (set == (outcome == 1)) ? psi(i) * scale : Complex(0.0);
  }
  return outcome;
}

void flip(ComplexVector& psi, Eigen::Index mask) {
  for (Eigen::Index i = 0; i < psi.size(); ++i)
    if (!(i & mask)) std::swap(psi(i), psi(i | mask));
}

}  // namespace

TrajectoryState TrajectoryState::basis(int n_s, int m_count, std::uint64_t system_basis_state,
                                       std::uint64_t seed) {
  const Eigen::Index dim = Eigen::Index{1} << (n_s + m_count);
  if (system_basis_state >= (std::uint64_t{1} << n_s)) {
    throw InvalidArgument("system basis state out of range");
  }
  TrajectoryState s{ComplexVector::Zero(dim), Rng(seed)};
  s.amplitudes(static_cast<Eigen::Index>(system_basis_state << m_count)) = 1.0;
  return s;
}

void SampleSet::merge(const SampleSet& other) {
  if (qubit_count == 0) qubit_count = other.qubit_count;
  if (other.qubit_count != 0 && other.qubit_count != qubit_count) {
    throw DimensionMismatch("cannot merge sample sets over different registers");
  }
  for (const auto& [outcome, n] : other.counts) counts[outcome] += n;
  shots += other.shots;
}

std::vector<double> SampleSet::distribution() const {
  std::vector<double> p(std::size_t{1} << qubit_count, 0.0);
  if (shots == 0) return p;
  for (const auto& [outcome, n] : counts) p[outcome] = static_cast<double>(n) / static_cast<double>(shots);
  return p;
}

TrajectorySimulator::TrajectorySimulator(const HamiltonianSpec& spec, const ProtocolConfig& cfg)
    : spec_(spec), cfg_(cfg), circuit_(spec, cfg) {
  if (cfg.ancilla_map.empty()) throw InvalidConfig("the protocol needs at least one ancilla");
  for (int k = 0; k < cfg.n_cycle; ++k) {
    const double omega = comb_value(cfg, k);
    omegas_.push_back(omega);
    ground_probabilities_.push_back(ground_probability(omega, cfg.beta));
    phases_.push_back(circuit_.ancilla_phases(omega));
  }
}

void TrajectorySimulator::run_period(TrajectoryState& state, double omega, double p0) const {
  const int n = circuit_.qubit_count();
  const int n_s = circuit_.principal_count();
  const int m_count = circuit_.ancilla_count();
  if (state.amplitudes.size() != (Eigen::Index{1} << n)) {
    throw DimensionMismatch("trajectory state has the wrong dimension");
  }
  auto ancilla_mask = [&](int m) { return Eigen::Index{1} << (n - 1 - (n_s + m)); };

  for (int m = 0; m < m_count; ++m) {
    if (measure_and_collapse(state.amplitudes, ancilla_mask(m), state.rng) == 1) {
      flip(state.amplitudes, ancilla_mask(m));
    }
  }
  for (int m = 0; m < m_count; ++m) {
    if (state.rng.bernoulli(1.0 - p0)) flip(state.amplitudes, ancilla_mask(m));
  }

  // Reuse the precomputed diagonal when omega is one of the schedule's values.
  ComplexVector local_phases;
  const ComplexVector* phases = nullptr;
  const auto k = static_cast<std::size_t>(state.period_index % static_cast<std::uint64_t>(cfg_.n_cycle));
  if (k < omegas_.size() && omegas_[k] == omega) {
    phases = &phases_[k];
  } else {
    local_phases = circuit_.ancilla_phases(omega);
    phases = &local_phases;
  }
  for (int step = 0; step < circuit_.n_trotter(); ++step) circuit_.apply_step(state.amplitudes, *phases);

  const double norm = state.amplitudes.norm();
  if (std::abs(norm - 1.0) > kNormTol) {
    throw NormalizationLoss("state norm " + std::to_string(norm) + " after period " +
                            std::to_string(state.period_index));
  }
  ++state.period_index;
}

void TrajectorySimulator::run_cycle(TrajectoryState& state) const {
  state.period_index = 0;
  for (int k = 0; k < cfg_.n_cycle; ++k) {
    run_period(state, omegas_[static_cast<std::size_t>(k)], ground_probabilities_[static_cast<std::size_t>(k)]);
  }
  state.period_index = 0;
  ++state.cycle_index;
}

std::uint64_t TrajectorySimulator::measure_system(TrajectoryState& state) const {
  const Eigen::Index a_dim = Eigen::Index{1} << circuit_.ancilla_count();
  const Eigen::Index s_dim = Eigen::Index{1} << circuit_.principal_count();
  const double u = state.rng.uniform();
  double acc = 0.0;
  std::uint64_t outcome = static_cast<std::uint64_t>(s_dim - 1);
  std::vector<double> probs(static_cast<std::size_t>(s_dim), 0.0);
  double total = 0.0;
  for (Eigen::Index s = 0; s < s_dim; ++s) {
    for (Eigen::Index a = 0; a < a_dim; ++a) probs[static_cast<std::size_t>(s)] += std::norm(state.amplitudes(s * a_dim + a));
    total += probs[static_cast<std::size_t>(s)];
  }
  for (Eigen::Index s = 0; s < s_dim; ++s) {
    acc += probs[static_cast<std::size_t>(s)] / total;
    if (u < acc) {
      outcome = static_cast<std::uint64_t>(s);
      break;
    }
  }
  // Collapse onto the observed system state.
  const auto o = static_cast<Eigen::Index>(outcome);
  const double keep = std::sqrt(probs[static_cast<std::size_t>(outcome)]);
  for (Eigen::Index s = 0; s < s_dim; ++s)
    for (Eigen::Index a = 0; a < a_dim; ++a) {
      auto& amp = state.amplitudes(s * a_dim + a);
      amp = (s == o && keep > 0.0) ? amp / keep : Complex(0.0);
    }
  return outcome;
}

TrajectoryState run_cycle(TrajectoryState state, const HamiltonianSpec& spec, const ProtocolConfig& cfg) {
  const TrajectorySimulator sim(spec, cfg);
  sim.run_cycle(state);
  return state;
}

SampleSet sample_gibbs(const HamiltonianSpec& spec, const ProtocolConfig& cfg, std::uint64_t burn_in_cycles,
                       std::uint64_t shots, std::uint64_t seed, int workers) {
  if (shots == 0) throw InvalidArgument("shots must be >= 1");
  const TrajectorySimulator sim(spec, cfg);
  const int n_s = spec.qubit_count;
  const int m_count = sim.circuit().ancilla_count();

  std::vector<std::uint64_t> outcomes(shots);
  parallel_for(shots, workers, [&](std::size_t shot) {
    Rng rng(derive_seed(seed, shot));
    const std::uint64_t start = rng.uniform_index(std::uint64_t{1} << n_s);
    TrajectoryState state = TrajectoryState::basis(n_s, m_count, start, 0);
    state.rng = rng;
    for (std::uint64_t c = 0; c < burn_in_cycles; ++c) sim.run_cycle(state);
    outcomes[shot] = sim.measure_system(state);
  });

  SampleSet set;
  set.qubit_count = n_s;
  set.seed = seed;
  set.shots = shots;
  for (auto o : outcomes) ++set.counts[o];
  return set;
}

}  // namespace qmcmc
