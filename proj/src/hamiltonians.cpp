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

#include "qmcmc/hamiltonians.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <ostream>
#include <set>
#include <sstream>
#include <utility>

#include "qmcmc/errors.hpp"

namespace qmcmc {

namespace {

bool valid_letter(char c) { return c == 'I' || c == 'X' || c == 'Y' || c == 'Z'; }

// Adds coefficient * P to `out`. Every Pauli word is a phased permutation:
// column c has its single nonzero in row c ^ flip_mask.
void accumulate_term(ComplexMatrix& out, const PauliString& term) {
  const int n = static_cast<int>(term.letters.size());
  Eigen::Index flip_mask = 0;
  Eigen::Index z_mask = 0;  // bits where the letter is Z or Y
  int y_count = 0;
  for (int q = 0; q < n; ++q) {
    const Eigen::Index bit = Eigen::Index{1} << (n - 1 - q);
    switch (term.letters[static_cast<std::size_t>(q)]) {
      case 'X': flip_mask |= bit; break;
      case 'Y': flip_mask |= bit; z_mask |= bit; ++y_count; break;
      case 'Z': z_mask |= bit; break;
      default: break;
    }
  }
  // Y = i X Z, so Y|b> = i (-1)^b |b^1>.
  Complex global = term.coefficient;
  for (int i = 0; i < y_count % 4; ++i) global *= kI;
  for (Eigen::Index col = 0; col < out.cols(); ++col) {
    const int parity = __builtin_popcountll(static_cast<unsigned long long>(col & z_mask)) & 1;
    out(col ^ flip_mask, col) += parity ? -global : global;
  }
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

}  // namespace

bool PauliString::is_diagonal() const noexcept {
  return std::all_of(letters.begin(), letters.end(), [](char c) { return c == 'I' || c == 'Z'; });
}

void HamiltonianSpec::validate() const {
  if (qubit_count < 1) throw InvalidSize("Hamiltonian needs at least one qubit");
  for (const auto& t : terms) {
    if (static_cast<int>(t.letters.size()) != qubit_count) {
      throw InvalidSize("Pauli word '" + t.letters + "' has length " +
                        std::to_string(t.letters.size()) + ", expected " +
                        std::to_string(qubit_count));
    }
    if (!std::all_of(t.letters.begin(), t.letters.end(), valid_letter)) {
      throw ParseError("Pauli word '" + t.letters + "' contains letters outside {I,X,Y,Z}");
    }
    if (!std::isfinite(t.coefficient)) throw ParseError("non-finite coefficient");
  }
}

bool HamiltonianSpec::is_diagonal() const noexcept {
  return std::all_of(terms.begin(), terms.end(), [](const PauliString& t) { return t.is_diagonal(); });
}

void GraphInstance::validate() const {
  if (vertex_count < 1) throw InvalidGraph("graph needs at least one vertex");
  if (static_cast<int>(local_fields.size()) != vertex_count) {
    throw InvalidGraph("expected " + std::to_string(vertex_count) + " local fields, got " +
                       std::to_string(local_fields.size()));
  }
  std::set<std::pair<int, int>> seen;
  for (const auto& e : edges) {
    if (!(0 <= e.j && e.j < e.k && e.k < vertex_count)) {
      throw InvalidGraph("edge (" + std::to_string(e.j) + ", " + std::to_string(e.k) +
                         ") violates 0 <= j < k < " + std::to_string(vertex_count));
    }
    if (!seen.emplace(e.j, e.k).second) {
      throw InvalidGraph("duplicate edge (" + std::to_string(e.j) + ", " + std::to_string(e.k) + ")");
    }
    if (!std::isfinite(e.weight)) throw InvalidGraph("non-finite edge weight");
  }
  for (double h : local_fields)
    if (!std::isfinite(h)) throw InvalidGraph("non-finite local field");
}

HamiltonianSpec build_tfim(int n, double coupling, double field) {
  if (n < 1) throw InvalidSize("TFIM chain length must be >= 1, got " + std::to_string(n));
  HamiltonianSpec spec;
  spec.qubit_count = n;
  std::ostringstream label;
  label << "tfim(n=" << n << ",J=" << coupling << ",h=" << field << ")";
  spec.label = label.str();
  const std::string identity(static_cast<std::size_t>(n), 'I');
  for (int i = 0; i + 1 < n; ++i) {
    std::string w = identity;
    w[static_cast<std::size_t>(i)] = 'Z';
    w[static_cast<std::size_t>(i + 1)] = 'Z';
    spec.terms.push_back({-coupling, std::move(w)});
  }
  for (int i = 0; i < n; ++i) {
    std::string w = identity;
    w[static_cast<std::size_t>(i)] = 'Y';
    spec.terms.push_back({-field, std::move(w)});
  }
  return spec;
}

HamiltonianSpec build_graph_ising(const GraphInstance& graph) {
  graph.validate();
  HamiltonianSpec spec;
  spec.qubit_count = graph.vertex_count;
  spec.label = "graph(n=" + std::to_string(graph.vertex_count) + ",edges=" +
               std::to_string(graph.edges.size()) + ")";
  const std::string identity(static_cast<std::size_t>(graph.vertex_count), 'I');
  for (int i = 0; i < graph.vertex_count; ++i) {
    std::string w = identity;
    w[static_cast<std::size_t>(i)] = 'Z';
    spec.terms.push_back({graph.local_fields[static_cast<std::size_t>(i)], std::move(w)});
  }
  for (const auto& e : graph.edges) {
    std::string w = identity;
    w[static_cast<std::size_t>(e.j)] = 'Z';
    w[static_cast<std::size_t>(e.k)] = 'Z';
    spec.terms.push_back({e.weight, std::move(w)});
  }
  return spec;
}

ComplexMatrix to_matrix(const HamiltonianSpec& spec) {
  spec.validate();
  const Eigen::Index dim = Eigen::Index{1} << spec.qubit_count;
  ComplexMatrix h = ComplexMatrix::Zero(dim, dim);
  for (const auto& term : spec.terms) accumulate_term(h, term);
  return h;
}

double spectral_width(const HamiltonianSpec& spec) {
  const RealVector e = hermitian_eig(to_matrix(spec)).eigenvalues;
  return e(e.size() - 1) - e(0);
}

double spectral_norm(const HamiltonianSpec& spec) {
  const RealVector e = hermitian_eig(to_matrix(spec)).eigenvalues;
  return std::max(std::abs(e(0)), std::abs(e(e.size() - 1)));
}

ComplexMatrix thermal_state(const HamiltonianSpec& spec, double beta) {
  if (!(beta >= 0.0)) throw InvalidArgument("thermal_state: beta must be >= 0");
  const HermitianEigen eig = hermitian_eig(to_matrix(spec));
  const double e0 = eig.eigenvalues(0);
  RealVector w(eig.eigenvalues.size());
  for (Eigen::Index i = 0; i < w.size(); ++i) w(i) = std::exp(-beta * (eig.eigenvalues(i) - e0));
  w /= w.sum();
  ComplexMatrix rho = eig.eigenvectors * w.cast<Complex>().asDiagonal() * eig.eigenvectors.adjoint();
  return 0.5 * (rho + rho.adjoint());
}

std::vector<double> gibbs_distribution(const HamiltonianSpec& spec, double beta) {
  spec.validate();
  if (!spec.is_diagonal()) {
    throw NonDiagonalHamiltonian("'" + spec.label + "' contains X or Y letters");
  }
  if (!(beta >= 0.0)) throw InvalidArgument("gibbs_distribution: beta must be >= 0");
  const std::size_t dim = std::size_t{1} << spec.qubit_count;
  std::vector<double> energy(dim, 0.0);
  for (const auto& t : spec.terms) {
    Eigen::Index z_mask = 0;
    for (int q = 0; q < spec.qubit_count; ++q)
      if (t.letters[static_cast<std::size_t>(q)] == 'Z')
        z_mask |= Eigen::Index{1} << (spec.qubit_count - 1 - q);
    for (std::size_t b = 0; b < dim; ++b) {
      const int parity =
          __builtin_popcountll(static_cast<unsigned long long>(static_cast<Eigen::Index>(b) & z_mask)) & 1;
      energy[b] += parity ? -t.coefficient : t.coefficient;
    }
  }
  const double e0 = *std::min_element(energy.begin(), energy.end());
  std::vector<double> p(dim);
  double z = 0.0;
  for (std::size_t b = 0; b < dim; ++b) z += (p[b] = std::exp(-beta * (energy[b] - e0)));
  for (double& x : p) x /= z;
  return p;
}

std::array<double, 4> graph_field_preset(std::string_view name) {
  if (name == "a") return {0.084, 0.026, 0.403, 0.379};
  if (name == "b") return {0.403, 0.379, 0.0528, 0.805};
  if (name == "c") return {0.379, 0.0528, 0.805, 0.379};
  throw InvalidArgument("unknown graph preset '" + std::string(name) + "' (expected a, b or c)");
}

HamiltonianSpec parse_hamiltonian(std::string_view text, std::string label) {
  HamiltonianSpec spec;
  spec.label = std::move(label);
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto end = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) {
      if (end == text.size()) break;
      continue;
    }
    const auto split = line.find_first_of(" \t");
    if (split == std::string_view::npos) {
      throw ParseError("line " + std::to_string(line_no) + ": expected `coeff pauli-word`");
    }
    const std::string_view coeff_text = trim(line.substr(0, split));
    const std::string_view word = trim(line.substr(split));
    double coeff = 0.0;
    const auto [ptr, ec] = std::from_chars(coeff_text.data(), coeff_text.data() + coeff_text.size(), coeff);
    if (ec != std::errc{} || ptr != coeff_text.data() + coeff_text.size()) {
      throw ParseError("line " + std::to_string(line_no) + ": bad coefficient '" +
                       std::string(coeff_text) + "'");
    }
    if (word.find_first_of(" \t") != std::string_view::npos ||
        !std::all_of(word.begin(), word.end(), valid_letter)) {
      throw ParseError("line " + std::to_string(line_no) + ": bad Pauli word '" + std::string(word) + "'");
    }
    if (spec.qubit_count == 0) {
      spec.qubit_count = static_cast<int>(word.size());
    } else if (static_cast<int>(word.size()) != spec.qubit_count) {
      throw ParseError("line " + std::to_string(line_no) + ": word length " +
                       std::to_string(word.size()) + " differs from " +
                       std::to_string(spec.qubit_count));
    }
    spec.terms.push_back({coeff, std::string(word)});
    if (end == text.size()) break;
  }
  if (spec.terms.empty()) throw ParseError("Hamiltonian file contains no terms");
  spec.validate();
  return spec;
}

HamiltonianSpec load_hamiltonian(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open Hamiltonian file " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_hamiltonian(buffer.str(), path.filename().string());
}

void write_hamiltonian(std::ostream& out, const HamiltonianSpec& spec) {
  if (!spec.label.empty()) out << "# " << spec.label << '\n';
  char buf[64];
  for (const auto& t : spec.terms) {
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, t.coefficient);
    out << std::string_view(buf, static_cast<std::size_t>(ptr - buf)) << ' ' << t.letters << '\n';
  }
}

}  // namespace qmcmc
