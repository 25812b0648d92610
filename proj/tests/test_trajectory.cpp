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

#include <doctest.h>

#include <cmath>

#include "qmcmc/channel.hpp"
#include "qmcmc/errors.hpp"
#include "qmcmc/observables.hpp"
#include "qmcmc/trajectory.hpp"

using namespace qmcmc;

namespace {

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

HamiltonianSpec single_field(double h) { return build_graph_ising(GraphInstance{1, {h}, {}}); }

}  // namespace

TEST_CASE("basis states and norm preservation") {
  const auto spec = build_tfim(2, 1.0, 0.5);
  const auto cfg = make_config(spec, 0.2, 30, 6, 1.0);
  auto state = TrajectoryState::basis(2, 2, 3, 9);
  CHECK(state.amplitudes.size() == 16);
  CHECK(state.amplitudes(3 * 4) == Complex(1.0));
  CHECK_THROWS_AS(TrajectoryState::basis(2, 2, 4, 9), InvalidArgument);

  const TrajectorySimulator sim(spec, cfg);
  for (int k = 0; k < cfg.n_cycle; ++k) {
    sim.run_period(state, comb_value(cfg, k), ground_probability(comb_value(cfg, k), cfg.beta));
    CHECK(std::abs(state.amplitudes.norm() - 1.0) < 1e-9);
  }
  CHECK(state.period_index == 6);
}

TEST_CASE("fixed seed gives bit-identical trajectories") {
  const auto spec = build_tfim(2, 1.0, 1.0);
  const auto cfg = make_config(spec, 0.1, 40, 8, 2.0);
  auto a = TrajectoryState::basis(2, 2, 1, 42);
  auto b = TrajectoryState::basis(2, 2, 1, 42);
  a = run_cycle(a, spec, cfg);
  b = run_cycle(b, spec, cfg);
  CHECK(a.amplitudes == b.amplitudes);
  CHECK(a.rng == b.rng);
  CHECK(a.cycle_index == 1);
}

TEST_CASE("forced branch reproduces the period unitary") {
  const auto spec = build_tfim(2, 0.8, 1.1);
  const auto cfg = make_config(spec, 0.3, 25, 4, 1.0);
  const TrajectorySimulator sim(spec, cfg);
  const double omega = 0.9;
  const auto w = build_period_unitary(spec, cfg, omega);
  for (std::uint64_t s = 0; s < 4; ++s) {
    auto state = TrajectoryState::basis(2, 2, s, 5);
    const ComplexVector before = state.amplitudes;
    sim.run_period(state, omega, 1.0);
    CHECK((state.amplitudes - w * before).norm() < 1e-9);
  }
}

TEST_CASE("ensemble average of one cycle matches the dense cycle map") {
  const auto spec = build_tfim(1, 1.0, 1.0);
  const auto cfg = make_config(spec, 0.1, 100, 20, 1.0);
  const TrajectorySimulator sim(spec, cfg);
  const int shots = 5000;
  ComplexMatrix average = ComplexMatrix::Zero(2, 2);
  const int keep[] = {0};
  for (int shot = 0; shot < shots; ++shot) {
    auto state = TrajectoryState::basis(1, 1, 0, derive_seed(7, static_cast<std::uint64_t>(shot)));
    sim.run_cycle(state);
    average += partial_trace(state.amplitudes * state.amplitudes.adjoint(), 2, keep);
  }
  average /= static_cast<double>(shots);
  ComplexMatrix zero = ComplexMatrix::Zero(2, 2);
  zero(0, 0) = 1.0;
  const auto dense = build_cycle_map(spec, cfg).superoperator.apply(zero);
  CHECK(trace_distance(average, dense) < 0.05);
}

TEST_CASE("zero-temperature sampling concentrates on the ground state") {
  // -Z has |0> as its non-degenerate ground state.
  const auto spec = single_field(-1.0);
  const auto cfg = make_config(spec, 0.05, 100, 20, 1e3);
  const auto samples = sample_gibbs(spec, cfg, 40, 400, 3);
  CHECK(samples.distribution()[0] > 0.9);
}

TEST_CASE("infinite temperature sampling is uniform") {
  const auto spec = single_field(1.0);
  const auto cfg = make_config(spec, 0.1, 50, 10, 0.0);
  const std::uint64_t shots = 10000;
  const auto samples = sample_gibbs(spec, cfg, 20, shots, 11);
  const double sigma = std::sqrt(0.25 / static_cast<double>(shots));
  CHECK(std::abs(samples.distribution()[0] - 0.5) < 4.0 * sigma);
}

TEST_CASE("single-vertex sampling approaches the Gibbs distribution") {
  const auto spec = single_field(1.0);
  const auto cfg = make_config(spec, 0.05, 100, 20, 1.0);
  const auto samples = sample_gibbs(spec, cfg, 40, 2000, 19);
  CHECK(tvd(samples.distribution(), gibbs_distribution(spec, 1.0)) < 0.05);
}

TEST_CASE("sample_gibbs boundaries, determinism and worker independence") {
  const auto spec = build_tfim(2, 1.0, 1.0);
  const auto cfg = make_config(spec, 0.2, 20, 4, 1.0);
  CHECK_THROWS_AS(sample_gibbs(spec, cfg, 1, 0, 1), InvalidArgument);
  const auto one = sample_gibbs(spec, cfg, 1, 1, 1);
  CHECK(one.shots == 1);
  CHECK(one.counts.size() == 1);
  CHECK(one.counts.begin()->second == 1);

  const auto a = sample_gibbs(spec, cfg, 2, 300, 99, 1);
  const auto b = sample_gibbs(spec, cfg, 2, 300, 99, 3);
  CHECK(a == b);
  std::uint64_t total = 0;
  for (const auto& [outcome, n] : a.counts) total += n;
  CHECK(total == a.shots);
  CHECK_FALSE(a == sample_gibbs(spec, cfg, 2, 300, 100, 1));
}

TEST_CASE("SampleSet merge is associative and commutative") {
  SampleSet a{2, {{0, 3}, {2, 1}}, 4, 1};
  SampleSet b{2, {{2, 5}}, 5, 2};
  SampleSet c{2, {{3, 2}, {0, 1}}, 3, 3};
  SampleSet ab_c = a;
  ab_c.merge(b);
  ab_c.merge(c);
  SampleSet bc = b;
  bc.merge(c);
  SampleSet a_bc = a;
  a_bc.merge(bc);
  CHECK(ab_c.counts == a_bc.counts);
  CHECK(ab_c.shots == 12);
  SampleSet ba = b;
  ba.merge(a);
  SampleSet ab = a;
  ab.merge(b);
  CHECK(ab.counts == ba.counts);
  const auto p = ab_c.distribution();
  CHECK(p.size() == 4);
  CHECK(p[2] == doctest::Approx(0.5));
  SampleSet other{3, {}, 0, 0};
  CHECK_THROWS_AS(a.merge(other), DimensionMismatch);
}

TEST_CASE("derive_seed and the generator are reproducible") {
  Rng a(derive_seed(5, 0));
  Rng b(derive_seed(5, 0));
  for (int i = 0; i < 100; ++i) CHECK(a.next() == b.next());
  CHECK(derive_seed(5, 0) != derive_seed(5, 1));
  Rng u(1);
  for (int i = 0; i < 1000; ++i) {
    const double x = u.uniform();
    CHECK(x >= 0.0);
    CHECK(x < 1.0);
    CHECK(u.uniform_index(7) < 7);
  }
  CHECK(Rng::mul_high(~std::uint64_t{0}, ~std::uint64_t{0}) == ~std::uint64_t{0} - 1);
  CHECK(Rng::mul_high(std::uint64_t{1} << 63, 4) == 2);
}
