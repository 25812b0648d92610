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

#include <optional>
#include <vector>

#include "qmcmc/linalg.hpp"

namespace qmcmc {

struct MetricReport {
  double fidelity = 0.0;
  double infidelity = 1.0;
  double tvd = 0.0;
  double magnetization = 0.0;
  std::optional<std::vector<double>> site_magnetizations;
};

/// Uhlmann fidelity (Tr sqrt(sqrt(rho) sigma sqrt(rho)))^2, computed as the
/// squared nuclear norm of sqrt(rho) sqrt(sigma) and clamped to [0, 1].
/// Throws NotAState if either input is not PSD (tolerance -1e-9) with unit
/// trace (tolerance 1e-8).
double fidelity(const ComplexMatrix& rho, const ComplexMatrix& sigma);

/// Half the L1 distance. Throws DimensionMismatch or NotADistribution.
double tvd(const std::vector<double>& p, const std::vector<double>& q);

/// <Y_i> for each site i of an n_s-qubit state.
std::vector<double> site_magnetizations(const ComplexMatrix& rho, int n_s);

/// Per-site average (1/n_s) sum_i Tr(rho Y_i).
double transverse_magnetization(const ComplexMatrix& rho, int n_s);

/// Real diagonal of a density matrix (computational-basis distribution).
std::vector<double> basis_distribution(const ComplexMatrix& rho);

/// 0.5 * ||rho - sigma||_1.
double trace_distance(const ComplexMatrix& rho, const ComplexMatrix& sigma);

MetricReport compare_states(const ComplexMatrix& reference, const ComplexMatrix& state, int n_s);

}  // namespace qmcmc
