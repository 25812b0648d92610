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
#include <string>
#include <vector>

namespace qmcmc {

enum class CombKind { SinSquared };

/// Protocol parameters. Energies in units of J, times in units of 1/J.
struct ProtocolConfig {
  double g = 0.005;        // system-ancilla coupling
  double beta = 1.0;       // target inverse temperature
  double omega_m = 0.0;    // comb amplitude, normally the spectral width
  int n_trotter = 5000;    // Trotter steps per interaction period
  int n_cycle = 500;       // interaction periods per comb cycle
  CombKind comb_kind = CombKind::SinSquared;
  std::vector<int> ancilla_map;  // ancilla m couples to principal ancilla_map[m]

  /// Throws InvalidConfig; `principal_count` bounds the ancilla map.
  void validate(int principal_count) const;

  int ancilla_count() const noexcept { return static_cast<int>(ancilla_map.size()); }
  double period_time() const;  // T_g = pi / g
  double cycle_time() const;   // T_cycle = T_g * n_cycle
  double trotter_dt() const;   // T_g / n_trotter
};

/// One ancilla per principal qubit, ancilla m on principal m.
std::vector<int> one_to_one_ancillas(int principal_count);

/// Omega(t_k) = omega_m sin^2(pi k / n_cycle), held over period k.
double comb_value(const ProtocolConfig& cfg, int k);

/// Thermal ground-state population 1 / (1 + exp(-beta Omega)) of one ancilla.
double ground_probability(double omega, double beta);

struct HierarchyReport {
  double max_drive_rate = 0.0;   // max |dOmega/dt| = pi omega_m / T_cycle
  double drive_ratio = 0.0;      // max |dOmega/dt| / g
  double coupling_ratio = 0.0;   // g / ||H_s||
  double threshold = 10.0;
  bool drive_ok = true;          // drive_ratio <= 1 / threshold
  bool coupling_ok = true;       // coupling_ratio <= 1 / threshold

  bool ok() const noexcept { return drive_ok && coupling_ok; }
  std::string describe() const;
};

/// Checks max|dOmega/dt| << g << ||H_s||, each "<<" meaning a factor of
/// `threshold`. Only reports; never throws for a violated hierarchy.
HierarchyReport validate_hierarchy(const ProtocolConfig& cfg, double h_s_norm,
                                   double threshold = 10.0);

/// ceil((3 t_g lambda_max)^2 / epsilon). Throws InvalidTolerance.
std::uint64_t suggest_trotter_steps(double t_g, double lambda_max, double epsilon);

}  // namespace qmcmc
