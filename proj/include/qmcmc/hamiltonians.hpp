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

#include <array>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "qmcmc/linalg.hpp"

namespace qmcmc {

/// coefficient * (letters[0] (x) letters[1] (x) ...), letters from {I,X,Y,Z}.
struct PauliString {
  double coefficient = 0.0;
  std::string letters;

  bool is_diagonal() const noexcept;
};

struct HamiltonianSpec {
  int qubit_count = 0;
  std::vector<PauliString> terms;
  std::string label;

  /// Throws InvalidSize on word-length mismatch, ParseError on bad letters.
  void validate() const;
  bool is_diagonal() const noexcept;
};

struct Edge {
  int j = 0;
  int k = 0;
  double weight = 0.0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

struct GraphInstance {
  int vertex_count = 0;
  std::vector<double> local_fields;
  std::vector<Edge> edges;

  /// Throws InvalidGraph.
  void validate() const;

  friend bool operator==(const GraphInstance&, const GraphInstance&) = default;
};

/// -J sum Z_i Z_{i+1} (open chain) - h sum Y_i.
HamiltonianSpec build_tfim(int n, double coupling, double field);

/// +sum h_i Z_i + sum w Z_j Z_k.
HamiltonianSpec build_graph_ising(const GraphInstance& graph);

ComplexMatrix to_matrix(const HamiltonianSpec& spec);

/// Exact E_max - E_min.
double spectral_width(const HamiltonianSpec& spec);

/// Spectral norm max |E|.
double spectral_norm(const HamiltonianSpec& spec);

/// exp(-beta H) / Tr exp(-beta H), evaluated with a ground-energy shift.
ComplexMatrix thermal_state(const HamiltonianSpec& spec, double beta);

/// Boltzmann weights of the computational basis for a Z/I-only spec.
/// Throws NonDiagonalHamiltonian.
std::vector<double> gibbs_distribution(const HamiltonianSpec& spec, double beta);

/// Vertex fields printed for the three four-vertex random-graph instances
/// (presets "a", "b", "c"). Edges are not part of the preset.
std::array<double, 4> graph_field_preset(std::string_view name);

// Hamiltonian text format: one `coeff word` term per line, `#` comments,
// blank lines ignored. Every word must have the same length.
HamiltonianSpec parse_hamiltonian(std::string_view text, std::string label = {});
HamiltonianSpec load_hamiltonian(const std::filesystem::path& path);
void write_hamiltonian(std::ostream& out, const HamiltonianSpec& spec);

}  // namespace qmcmc
