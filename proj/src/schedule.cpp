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

#include "qmcmc/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "qmcmc/errors.hpp"

namespace qmcmc {

void ProtocolConfig::validate(int principal_count) const {
  if (!(g > 0.0) || !std::isfinite(g)) throw InvalidConfig("g must be finite and > 0");
  if (n_trotter < 1) throw InvalidConfig("n_trotter must be >= 1");
  if (n_cycle < 1) throw InvalidConfig("n_cycle must be >= 1");
  if (!(omega_m >= 0.0) || !std::isfinite(omega_m)) throw InvalidConfig("omega_m must be finite and >= 0");
  if (!(beta >= 0.0)) throw InvalidConfig("beta must be >= 0");
  for (int p : ancilla_map) {
    if (p < 0 || p >= principal_count) {
      throw InvalidConfig("ancilla_map entry " + std::to_string(p) + " is not a principal qubit index (0.." +
                          std::to_string(principal_count - 1) + ")");
    }
  }
  if (!std::isfinite(cycle_time())) throw InvalidConfig("T_cycle is not finite");
}

double ProtocolConfig::period_time() const { return std::numbers::pi / g; }
double ProtocolConfig::cycle_time() const { return period_time() * n_cycle; }
double ProtocolConfig::trotter_dt() const { return period_time() / n_trotter; }

std::vector<int> one_to_one_ancillas(int principal_count) {
  std::vector<int> map(static_cast<std::size_t>(principal_count));
  for (int m = 0; m < principal_count; ++m) map[static_cast<std::size_t>(m)] = m;
  return map;
}

double comb_value(const ProtocolConfig& cfg, int k) {
  if (k < 0 || k >= cfg.n_cycle) {
    throw IndexOutOfRange("period index " + std::to_string(k) + " outside [0, " +
                          std::to_string(cfg.n_cycle) + ")");
  }
  // Fold onto the first half so that Omega(t_k) == Omega(t_{N-k}) bit for bit.
  const int folded = std::min(k, cfg.n_cycle - k);
  const double s = std::sin(std::numbers::pi * folded / cfg.n_cycle);
  return cfg.omega_m * s * s;
}

double ground_probability(double omega, double beta) {
  if (beta == 0.0) return 0.5;
  return 1.0 / (1.0 + std::exp(-beta * omega));
}

std::string HierarchyReport::describe() const {
  std::ostringstream os;
  os << "parameter hierarchy (threshold " << threshold << "x):\n"
     << "  max|dOmega/dt| / g = " << drive_ratio << (drive_ok ? "  ok" : "  WARNING: drive not slow vs g")
     << "\n  g / ||H_s||        = " << coupling_ratio
     << (coupling_ok ? "  ok" : "  WARNING: coupling not weak vs ||H_s||") << '\n';
  return os.str();
}

HierarchyReport validate_hierarchy(const ProtocolConfig& cfg, double h_s_norm, double threshold) {
  HierarchyReport r;
  r.threshold = threshold;
  r.max_drive_rate = std::numbers::pi * cfg.omega_m / cfg.cycle_time();
  r.drive_ratio = r.max_drive_rate / cfg.g;
  r.coupling_ratio = h_s_norm > 0.0 ? cfg.g / h_s_norm : std::numeric_limits<double>::infinity();
  r.drive_ok = r.drive_ratio * threshold <= 1.0;
  r.coupling_ok = r.coupling_ratio * threshold <= 1.0;
  return r;
}

std::uint64_t suggest_trotter_steps(double t_g, double lambda_max, double epsilon) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw InvalidTolerance("epsilon must be finite and > 0");
  }
  const double x = 3.0 * t_g * lambda_max;
  const double steps = std::ceil(x * x / epsilon);
  return steps < 1.0 ? 1 : static_cast<std::uint64_t>(steps);
}

}  // namespace qmcmc
