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

// Dense complex linear algebra shared by every other module.
//
// Matrices are Eigen column-major dense matrices. Qubit q of an n-qubit
// register is bit (n - 1 - q) of a basis index, so qubit 0 is the most
// significant bit and kron(A, B) places A on the lower-numbered qubits.
//
// Superoperators use column stacking: vec(rho)[i + d*j] = rho(i, j), hence
// the channel rho -> A rho B^dagger has matrix conj(B) (x) A.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace qmcmc {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

inline constexpr Complex kI{0.0, 1.0};

namespace pauli {
ComplexMatrix identity();
ComplexMatrix x();
ComplexMatrix y();
ComplexMatrix z();
}  // namespace pauli

struct HermitianEigen {
  RealVector eigenvalues;      // ascending
  ComplexMatrix eigenvectors;  // column i pairs with eigenvalues[i]
};

struct EigenPair {
  Complex value;
  ComplexVector vector;
};

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// Throws NonHermitianInput unless ||h - h^dagger||_F < 1e-10 ||h||_F.
void require_hermitian(const ComplexMatrix& h, const char* context);

HermitianEigen hermitian_eig(const ComplexMatrix& h);

/// exp(c * h) for Hermitian h via its eigendecomposition.
ComplexMatrix expm_hermitian(const ComplexMatrix& h, Complex c);

/// Reduced matrix on the `keep` qubits (kept in ascending qubit order).
ComplexMatrix partial_trace(const ComplexMatrix& rho, int qubit_count, std::span<const int> keep);

/// Eigenpairs sorted by descending modulus, ties broken by descending real
/// part. Matrices up to `dense_limit` rows use a full dense eigensolver;
/// larger ones use orthogonal subspace iteration (power iteration with
/// deflation against the converged block). Throws ConvergenceFailure.
inline constexpr Eigen::Index kDenseEigLimit = 4096;
std::vector<EigenPair> dominant_eigs(const ComplexMatrix& m, std::size_t k,
                                     Eigen::Index dense_limit = kDenseEigLimit);

/// In-place left multiplication target <- G_full * target, where G_full acts
/// as `gate` on `qubits` (listed most-significant first) of an n-qubit
/// register and as identity elsewhere. Costs O(rows * cols * 2^|qubits|)
/// and never forms G_full. Works for state vectors and operator matrices.
void apply_gate(Eigen::Ref<ComplexMatrix> target, const ComplexMatrix& gate,
                std::span<const int> qubits, int qubit_count);

/// Full-register embedding of a local gate; prefer apply_gate in hot loops.
ComplexMatrix embed_gate(const ComplexMatrix& gate, std::span<const int> qubits, int qubit_count);

/// Column-stacking reshapes.
ComplexVector vectorize(const ComplexMatrix& rho);
ComplexMatrix devectorize(const ComplexVector& v, Eigen::Index dim);

/// exp(-i theta X(x)X) on (qa, qb): cos(theta) I - i sin(theta) X(x)X.
void apply_xx_rotation(Eigen::Ref<ComplexMatrix> target, double theta, int qa, int qb,
                       int qubit_count);
/// Same rotation with precomputed cos(theta) and sin(theta).
void apply_xx_rotation(Eigen::Ref<ComplexMatrix> target, double cos_theta, double sin_theta, int qa,
                       int qb, int qubit_count);

/// Multiplies row r of target by phases[r].
void apply_diagonal(Eigen::Ref<ComplexMatrix> target, const ComplexVector& phases);

/// Pauli X on one qubit: swaps the paired rows.
void apply_x(Eigen::Ref<ComplexMatrix> target, int qubit, int qubit_count);

/// Unitary power by repeated squaring.
ComplexMatrix matrix_power(const ComplexMatrix& m, std::uint64_t exponent);

bool all_finite(const ComplexMatrix& m);

}  // namespace qmcmc
