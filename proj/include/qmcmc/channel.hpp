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

// Reduced-system channels of the thermalization protocol.
//
// Register layout for every composite operator: principal qubits 0..N_s-1
// followed by ancilla qubits N_s..N_s+M-1, so a composite basis index is
// s * 2^M + a for system index s and ancilla index a.
//
// Because every period begins by resetting and re-preparing the ancillas,
// no ancilla state survives from one period to the next. The system map of a
// period is therefore rho -> Tr_anc[W (rho (x) rho_prep) W^dagger], and the
// cycle map is the ordered product of N_cycle such d^2 x d^2 matrices.

#include <cstddef>
#include <vector>

#include "qmcmc/hamiltonians.hpp"
#include "qmcmc/linalg.hpp"
#include "qmcmc/schedule.hpp"

namespace qmcmc {

struct KrausSet {
  Eigen::Index dim = 0;
  std::vector<ComplexMatrix> operators;

  /// ||sum K^dagger K - I||_F
  double completeness_error() const;
  ComplexMatrix apply(const ComplexMatrix& rho) const;
};

struct Superoperator {
  Eigen::Index system_dim = 0;  // d; matrix is d^2 x d^2
  ComplexMatrix matrix;

  ComplexMatrix apply(const ComplexMatrix& rho) const;
  /// Choi matrix sum_{kl} |k><l| (x) Lambda(|k><l|).
  ComplexMatrix choi() const;
  double min_choi_eigenvalue() const;
  /// Largest |Tr Lambda(rho) - Tr rho| over the matrix units, i.e. the
  /// deviation of the trace row from vec(I)^dagger.
  double trace_preservation_error() const;

  static Superoperator identity(Eigen::Index system_dim);
};

struct CycleMap {
  Superoperator superoperator;
  ProtocolConfig config;
  std::vector<double> omegas;               // Omega_k per period
  std::vector<double> ground_probabilities; // p_0(t_k) per period

  /// Wraps an arbitrary superoperator, for analysis of hand-built channels.
  static CycleMap from_superoperator(Superoperator s);
};

/// Gates of one first-order Trotter step, shared by the dense channel
/// construction and the trajectory sampler. Within a step the factors act as
/// ancilla phases exp(+i Omega/2 Z dt), then exp(-i H_s dt), then the
/// exp(-i g dt X(x)X) interactions.
class TrotterCircuit {
 public:
  TrotterCircuit(const HamiltonianSpec& spec, const ProtocolConfig& cfg);

  int principal_count() const noexcept { return principal_count_; }
  int ancilla_count() const noexcept { return static_cast<int>(ancilla_map_.size()); }
  int qubit_count() const noexcept { return principal_count_ + ancilla_count(); }
  int n_trotter() const noexcept { return n_trotter_; }
  double dt() const noexcept { return dt_; }
  double interaction_angle() const noexcept { return interaction_angle_; }
  const std::vector<int>& ancilla_map() const noexcept { return ancilla_map_; }

  /// exp(-i H_s dt) on the principal register.
  const ComplexMatrix& system_unitary() const noexcept { return system_unitary_; }

  /// Diagonal of prod_m exp(+i Omega/2 Z_m dt) over the 2^M ancilla states.
  ComplexVector ancilla_phases(double omega) const;

  /// Applies one Trotter step to the rows of `target` (state or operator).
  void apply_step(Eigen::Ref<ComplexMatrix> target, const ComplexVector& ancilla_phases) const;

  ComplexMatrix step_matrix(double omega) const;

 private:
  int principal_count_;
  int n_trotter_;
  double dt_;
  double interaction_angle_;
  double xx_cos_ = 1.0;
  double xx_sin_ = 0.0;
  std::vector<int> ancilla_map_;
  ComplexMatrix system_unitary_;
};

/// W = [interactions * exp(-i H_s dt) * ancilla phases]^N_T on N_s + M qubits.
ComplexMatrix build_period_unitary(const HamiltonianSpec& spec, const ProtocolConfig& cfg, double omega);

/// Product distribution over ancilla basis states, ancilla 0 most significant.
std::vector<double> ancilla_preparation(double omega, double beta, int m_count);

/// K_{i,b} = sqrt(P(b)) <i|_anc W |b>_anc, pruned below 1e-14 Frobenius norm.
/// Throws CompletenessViolation if ||sum K^dagger K - I||_F >= 1e-8.
KrausSet build_period_channel(const ComplexMatrix& w, const std::vector<double>& prep, int n_s,
                              int m_count);

/// sum_K conj(K) (x) K.
Superoperator to_superoperator(const KrausSet& kraus);

/// Same channel as to_superoperator(build_period_channel(...)) assembled with
/// a single matrix product instead of one Kronecker product per Kraus
/// operator. Performs the same completeness check.
Superoperator period_superoperator(const ComplexMatrix& w, const std::vector<double>& prep, int n_s,
                                   int m_count);

/// M = Lambda_{N-1} o ... o Lambda_0 with Omega_k = comb_value(cfg, k).
CycleMap build_cycle_map(const HamiltonianSpec& spec, const ProtocolConfig& cfg, int workers = 0);

/// Cycle maps for several temperatures sharing one pass over the period
/// unitaries (W_{t_k} does not depend on beta). cfg.beta is ignored.
/// Periods k and n_cycle - k have identical Omega and share one unitary when
/// the cached copies fit in `cache_bytes`.
std::vector<CycleMap> build_cycle_maps(const HamiltonianSpec& spec, const ProtocolConfig& cfg,
                                       const std::vector<double>& betas, int workers = 0,
                                       std::size_t cache_bytes = std::size_t{1} << 30);

/// Sequential composition; channels[0] acts first.
Superoperator compose(const std::vector<Superoperator>& channels);

struct SteadyState {
  ComplexMatrix rho;
  Complex lambda_1;
};

/// Dominant eigenvector as a PSD unit-trace density matrix. Throws
/// NoUnitEigenvalue if |lambda_1 - 1| >= 1e-6 and NegativeEigenvalue if more
/// than 1e-6 of negative spectral mass had to be clipped.
SteadyState steady_state(const CycleMap& m);

struct SpectralGap {
  double gap = 0.0;     // 1 - |lambda_2|
  bool unique = false;  // exactly one eigenvalue within 1e-6 of 1
  Complex lambda_1;
  Complex lambda_2;
};

SpectralGap spectral_gap(const CycleMap& m);

}  // namespace qmcmc
