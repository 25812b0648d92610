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

#include "qmcmc/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "qmcmc/errors.hpp"
#include "qmcmc/rng.hpp"

namespace qmcmc {

namespace pauli {
ComplexMatrix identity() { return ComplexMatrix::Identity(2, 2); }
ComplexMatrix x() {
  ComplexMatrix m(2, 2);
  m << 0.0, 1.0, 1.0, 0.0;
  return m;
}
ComplexMatrix y() {
  ComplexMatrix m(2, 2);
  m << 0.0, -kI, kI, 0.0;
  return m;
}
ComplexMatrix z() {
  ComplexMatrix m(2, 2);
  m << 1.0, 0.0, 0.0, -1.0;
  return m;
}
}  // namespace pauli

namespace {

Eigen::Index dim_of(int qubit_count) { return Eigen::Index{1} << qubit_count; }

Eigen::Index qubit_mask(int qubit, int qubit_count) {
  return Eigen::Index{1} << (qubit_count - 1 - qubit);
}

void check_qubits(std::span<const int> qubits, int qubit_count, const char* context) {
  for (std::size_t a = 0; a < qubits.size(); ++a) {
    if (qubits[a] < 0 || qubits[a] >= qubit_count) {
      throw DimensionMismatch(std::string(context) + ": qubit index " + std::to_string(qubits[a]) +
                              " outside register of " + std::to_string(qubit_count));
    }
    for (std::size_t b = 0; b < a; ++b) {
      if (qubits[a] == qubits[b]) {
        throw DimensionMismatch(std::string(context) + ": repeated qubit index " +
                                std::to_string(qubits[a]));
      }
    }
  }
}

// Offsets of the 2^k local basis states inside the full register, local bit
// order following `qubits` (first listed = most significant).
std::vector<Eigen::Index> local_offsets(std::span<const int> qubits, int qubit_count) {
  const std::size_t k = qubits.size();
  std::vector<Eigen::Index> offsets(std::size_t{1} << k, 0);
  for (std::size_t a = 0; a < offsets.size(); ++a) {
    Eigen::Index off = 0;
    for (std::size_t j = 0; j < k; ++j) {
      if ((a >> (k - 1 - j)) & 1U) off |= qubit_mask(qubits[j], qubit_count);
    }
    offsets[a] = off;
  }
  return offsets;
}

void sort_by_modulus(std::vector<EigenPair>& pairs) {
  std::stable_sort(pairs.begin(), pairs.end(), [](const EigenPair& a, const EigenPair& b) {
    const double ma = std::abs(a.value);
    const double mb = std::abs(b.value);
    if (std::abs(ma - mb) > 1e-12 * std::max(1.0, std::max(ma, mb))) return ma > mb;
    return a.value.real() > b.value.real();
  });
}

double residual(const ComplexMatrix& m, const EigenPair& p) {
  return (m * p.vector - p.value * p.vector).norm();
}

std::vector<EigenPair> dense_eigs(const ComplexMatrix& m, std::size_t k) {
  Eigen::ComplexEigenSolver<ComplexMatrix> solver(m, /*computeEigenvectors=*/true);
  if (solver.info() != Eigen::Success) {
    throw ConvergenceFailure("dense eigensolver did not converge (dim " +
                             std::to_string(m.rows()) + ")");
  }
  std::vector<EigenPair> pairs;
  pairs.reserve(static_cast<std::size_t>(m.rows()));
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    ComplexVector v = solver.eigenvectors().col(i);
    v.normalize();
    pairs.push_back({solver.eigenvalues()(i), std::move(v)});
  }
  sort_by_modulus(pairs);
  pairs.resize(k);
  return pairs;
}

// Orthogonal subspace iteration with Rayleigh-Ritz extraction.
std::vector<EigenPair> iterative_eigs(const ComplexMatrix& m, std::size_t k) {
  constexpr double kTol = 1e-10;
  constexpr int kMaxIterations = 100000;
  constexpr int kCheckEvery = 10;

  const Eigen::Index n = m.rows();
  const Eigen::Index block = std::min<Eigen::Index>(n, static_cast<Eigen::Index>(k) + 4);
  const double scale = std::max(m.norm(), 1e-300);

  Rng rng(0x5eed0f5eedULL);
  ComplexMatrix q(n, block);
  for (Eigen::Index j = 0; j < block; ++j)
    for (Eigen::Index i = 0; i < n; ++i) q(i, j) = Complex(rng.uniform() - 0.5, rng.uniform() - 0.5);
  {
    Eigen::HouseholderQR<ComplexMatrix> qr(q);
    q = qr.householderQ() * ComplexMatrix::Identity(n, block);
  }

  for (int it = 1; it <= kMaxIterations; ++it) {
    ComplexMatrix z = m * q;
    Eigen::HouseholderQR<ComplexMatrix> qr(z);
    q = qr.householderQ() * ComplexMatrix::Identity(n, block);
    if (it % kCheckEvery != 0) continue;

    const ComplexMatrix projected = q.adjoint() * m * q;
    Eigen::ComplexEigenSolver<ComplexMatrix> small(projected, true);
    if (small.info() != Eigen::Success) continue;
    std::vector<EigenPair> ritz;
    for (Eigen::Index i = 0; i < block; ++i) {
      ComplexVector v = q * small.eigenvectors().col(i);
      v.normalize();
      ritz.push_back({small.eigenvalues()(i), std::move(v)});
    }
    sort_by_modulus(ritz);
    ritz.resize(k);
    const bool converged = std::all_of(ritz.begin(), ritz.end(), [&](const EigenPair& p) {
      return residual(m, p) < kTol * scale;
    });
    if (converged) return ritz;
  }
  throw ConvergenceFailure("subspace iteration not converged after " +
                           std::to_string(kMaxIterations) + " iterations");
}

}  // namespace

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index j = 0; j < a.cols(); ++j)
    for (Eigen::Index i = 0; i < a.rows(); ++i)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

void require_hermitian(const ComplexMatrix& h, const char* context) {
  if (h.rows() != h.cols()) {
    throw DimensionMismatch(std::string(context) + ": matrix is not square");
  }
  const double asym = (h - h.adjoint()).norm();
  const double scale = h.norm();
  if (!(asym <= 1e-10 * scale) && asym != 0.0) {
    throw NonHermitianInput(std::string(context) + ": ||h - h^dagger||_F = " +
                            std::to_string(asym) + " relative to ||h||_F = " +
                            std::to_string(scale));
  }
}

HermitianEigen hermitian_eig(const ComplexMatrix& h) {
  require_hermitian(h, "hermitian_eig");
  const ComplexMatrix sym = 0.5 * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym);
  if (solver.info() != Eigen::Success) {
    throw ConvergenceFailure("Hermitian eigensolver failed (dim " + std::to_string(h.rows()) + ")");
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

ComplexMatrix expm_hermitian(const ComplexMatrix& h, Complex c) {
  const HermitianEigen eig = hermitian_eig(h);
  ComplexVector factors(eig.eigenvalues.size());
  for (Eigen::Index i = 0; i < factors.size(); ++i) factors(i) = std::exp(c * eig.eigenvalues(i));
  return eig.eigenvectors * factors.asDiagonal() * eig.eigenvectors.adjoint();
}

ComplexMatrix partial_trace(const ComplexMatrix& rho, int qubit_count, std::span<const int> keep) {
  if (qubit_count < 0 || rho.rows() != dim_of(qubit_count) || rho.cols() != rho.rows()) {
    throw DimensionMismatch("partial_trace: expected a " + std::to_string(dim_of(qubit_count)) +
                            "-dimensional square matrix, got " + std::to_string(rho.rows()) + "x" +
                            std::to_string(rho.cols()));
  }
  check_qubits(keep, qubit_count, "partial_trace");
  std::vector<int> kept(keep.begin(), keep.end());
  std::sort(kept.begin(), kept.end());
  std::vector<int> traced;
  for (int q = 0; q < qubit_count; ++q)
    if (!std::binary_search(kept.begin(), kept.end(), q)) traced.push_back(q);

  const auto kept_offsets = local_offsets(kept, qubit_count);
  const auto traced_offsets = local_offsets(traced, qubit_count);
  const auto out_dim = static_cast<Eigen::Index>(kept_offsets.size());
  ComplexMatrix out = ComplexMatrix::Zero(out_dim, out_dim);
  for (Eigen::Index b = 0; b < out_dim; ++b)
    for (Eigen::Index a = 0; a < out_dim; ++a) {
      Complex acc = 0.0;
      for (Eigen::Index t : traced_offsets) acc += rho(kept_offsets[a] + t, kept_offsets[b] + t);
      out(a, b) = acc;
    }
  return out;
}

std::vector<EigenPair> dominant_eigs(const ComplexMatrix& m, std::size_t k,
                                     Eigen::Index dense_limit) {
  if (m.rows() != m.cols()) throw DimensionMismatch("dominant_eigs: matrix is not square");
  if (k > static_cast<std::size_t>(m.rows())) {
    throw DimensionMismatch("dominant_eigs: requested " + std::to_string(k) +
                            " eigenpairs of a " + std::to_string(m.rows()) + "-dim matrix");
  }
  if (k == 0) return {};
  return m.rows() <= dense_limit ? dense_eigs(m, k) : iterative_eigs(m, k);
}

void apply_gate(Eigen::Ref<ComplexMatrix> target, const ComplexMatrix& gate,
                std::span<const int> qubits, int qubit_count) {
  check_qubits(qubits, qubit_count, "apply_gate");
  const Eigen::Index local = Eigen::Index{1} << qubits.size();
  if (gate.rows() != local || gate.cols() != local || target.rows() != dim_of(qubit_count)) {
    throw DimensionMismatch("apply_gate: gate/target dimensions do not match the register");
  }
  const auto offsets = local_offsets(qubits, qubit_count);
  Eigen::Index touched = 0;
  for (int q : qubits) touched |= qubit_mask(q, qubit_count);

  ComplexMatrix gathered(local, target.cols());
  ComplexMatrix updated(local, target.cols());
  for (Eigen::Index base = 0; base < target.rows(); ++base) {
    if (base & touched) continue;
    for (Eigen::Index a = 0; a < local; ++a) gathered.row(a) = target.row(base + offsets[a]);
    updated.noalias() = gate * gathered;
    for (Eigen::Index a = 0; a < local; ++a) target.row(base + offsets[a]) = updated.row(a);
  }
}

ComplexMatrix embed_gate(const ComplexMatrix& gate, std::span<const int> qubits, int qubit_count) {
  ComplexMatrix full = ComplexMatrix::Identity(dim_of(qubit_count), dim_of(qubit_count));
  apply_gate(full, gate, qubits, qubit_count);
  return full;
}

ComplexVector vectorize(const ComplexMatrix& rho) {
  return Eigen::Map<const ComplexVector>(rho.data(), rho.size());
}

ComplexMatrix devectorize(const ComplexVector& v, Eigen::Index dim) {
  if (v.size() != dim * dim) throw DimensionMismatch("devectorize: length is not dim^2");
  return Eigen::Map<const ComplexMatrix>(v.data(), dim, dim);
}

void apply_xx_rotation(Eigen::Ref<ComplexMatrix> target, double theta, int qa, int qb,
                       int qubit_count) {
  apply_xx_rotation(target, std::cos(theta), std::sin(theta), qa, qb, qubit_count);
}

void apply_xx_rotation(Eigen::Ref<ComplexMatrix> target, double cos_theta, double sin_theta, int qa,
                       int qb, int qubit_count) {
  const Eigen::Index ma = qubit_mask(qa, qubit_count);
  const Eigen::Index mb = qubit_mask(qb, qubit_count);
  const Eigen::Index flip = ma | mb;
  const Eigen::Index high = std::max(ma, mb);
  const Complex s = -kI * sin_theta;
  const Eigen::Index stride = target.outerStride();
  for (Eigen::Index col = 0; col < target.cols(); ++col) {
    Complex* p = target.data() + col * stride;
    for (Eigen::Index r = 0; r < target.rows(); ++r) {
      if (r & high) continue;
      const Eigen::Index partner = r ^ flip;
      const Complex u = p[r];
      const Complex v = p[partner];
      p[r] = cos_theta * u + s * v;
      p[partner] = s * u + cos_theta * v;
    }
  }
}

void apply_diagonal(Eigen::Ref<ComplexMatrix> target, const ComplexVector& phases) {
  target = phases.asDiagonal() * target;
}

void apply_x(Eigen::Ref<ComplexMatrix> target, int qubit, int qubit_count) {
  const Eigen::Index mask = qubit_mask(qubit, qubit_count);
  for (Eigen::Index r = 0; r < target.rows(); ++r)
    if (!(r & mask)) target.row(r).swap(target.row(r | mask));
}

ComplexMatrix matrix_power(const ComplexMatrix& m, std::uint64_t exponent) {
  ComplexMatrix result = ComplexMatrix::Identity(m.rows(), m.cols());
  ComplexMatrix base = m;
  ComplexMatrix scratch(m.rows(), m.cols());
  bool first = true;
  while (exponent > 0) {
    if (exponent & 1U) {
      if (first) {
        result = base;
        first = false;
      } else {
        scratch.noalias() = base * result;
        result.swap(scratch);
      }
    }
    exponent >>= 1U;
    if (exponent > 0) {
      scratch.noalias() = base * base;
      base.swap(scratch);
    }
  }
  return result;
}

bool all_finite(const ComplexMatrix& m) {
  return m.real().allFinite() && m.imag().allFinite();
}

}  // namespace qmcmc
