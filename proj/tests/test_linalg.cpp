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

#include <random>

#include "oracles.hpp"
#include "qmcmc/errors.hpp"
#include "qmcmc/linalg.hpp"

using namespace qmcmc;

namespace {

ComplexMatrix diag(std::initializer_list<Complex> v) {
  ComplexVector d(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (auto x : v) d(i++) = x;
  return d.asDiagonal();
}

}  // namespace

TEST_CASE("kron examples") {
  CHECK(kron(pauli::identity(), pauli::identity()).isApprox(ComplexMatrix::Identity(4, 4)));
  CHECK((kron(pauli::z(), pauli::identity()) - diag({1, 1, -1, -1})).norm() < 1e-15);
  const ComplexMatrix a = ComplexMatrix::Random(2, 2);
  const ComplexMatrix b = ComplexMatrix::Random(3, 3);
  const ComplexMatrix k = kron(a, b);
  CHECK(k.rows() == 6);
  CHECK(k.cols() == 6);
  CHECK((k - oracle::kron(a, b)).norm() < 1e-14);
}

TEST_CASE("hermitian_eig on Paulis and the two-site TFIM") {
  for (const auto& p : {pauli::z(), pauli::x()}) {
    const auto e = hermitian_eig(p);
    CHECK(e.eigenvalues(0) == doctest::Approx(-1.0));
    CHECK(e.eigenvalues(1) == doctest::Approx(1.0));
  }
  const oracle::Mat h = -oracle::word("ZZ") - oracle::word("YI") - oracle::word("IY");
  const auto roots = oracle::hermitian_eigenvalues(h);
  REQUIRE(roots.size() == 4);
  const auto e = hermitian_eig(h);
  for (int i = 0; i < 4; ++i) CHECK(e.eigenvalues(i) == doctest::Approx(roots[static_cast<std::size_t>(i)]).epsilon(1e-10));
  // Eigenvectors reconstruct the matrix.
  const ComplexMatrix rebuilt = e.eigenvectors * e.eigenvalues.cast<Complex>().asDiagonal() * e.eigenvectors.adjoint();
  CHECK((rebuilt - h).norm() < 1e-12);
}

TEST_CASE("hermitian_eig rejects non-Hermitian input") {
  ComplexMatrix m(2, 2);
  m << 0, 1, 0, 0;
  CHECK_THROWS_AS(hermitian_eig(m), NonHermitianInput);
  CHECK_THROWS_AS(expm_hermitian(m, 1.0), NonHermitianInput);
}

TEST_CASE("expm_hermitian examples") {
  const double pi = std::numbers::pi;
  CHECK((expm_hermitian(pauli::x(), Complex(0, -pi / 2)) - (-kI * pauli::x())).norm() < 1e-12);
  CHECK((expm_hermitian(pauli::z(), 0.0) - ComplexMatrix::Identity(2, 2)).norm() < 1e-15);
  CHECK((expm_hermitian(pauli::z(), -1.0) - diag({std::exp(-1.0), std::exp(1.0)})).norm() < 1e-12);
}

TEST_CASE("expm_hermitian agrees with the series oracle and stays unitary") {
  std::mt19937_64 gen(11);
  for (int trial = 0; trial < 10; ++trial) {
    ComplexMatrix a = ComplexMatrix::Random(8, 8);
    const ComplexMatrix h = (a + a.adjoint()) / 2.0;
    const double t = 0.1 + trial;
    const ComplexMatrix u = expm_hermitian(h, Complex(0, -t));
    CHECK((u - oracle::expm(Complex(0, -t) * h)).norm() < 1e-9);
    CHECK((u.adjoint() * u - ComplexMatrix::Identity(8, 8)).norm() < 1e-10);
  }
}

TEST_CASE("partial_trace examples and trace law") {
  ComplexVector bell = ComplexVector::Zero(4);
  bell(0) = bell(3) = 1.0 / std::sqrt(2.0);
  const ComplexMatrix rho = bell * bell.adjoint();
  const int keep0[] = {0};
  CHECK((partial_trace(rho, 2, keep0) - ComplexMatrix::Identity(2, 2) / 2.0).norm() < 1e-15);

  std::mt19937_64 gen(5);
  const auto ra = oracle::random_density(2, gen);
  const auto rb = oracle::random_density(4, gen);
  CHECK((partial_trace(kron(ra, rb), 3, keep0) - ra).norm() < 1e-14);
  const int keep12[] = {1, 2};
  CHECK((partial_trace(kron(ra, rb), 3, keep12) - rb).norm() < 1e-14);

  for (int trial = 0; trial < 10; ++trial) {
    const auto r = oracle::random_density(8, gen);
    const int keep[] = {trial % 3};
    CHECK(std::abs(partial_trace(r, 3, keep).trace() - r.trace()) < 1e-14);
  }
}

TEST_CASE("partial_trace keeps non-contiguous qubits in ascending order") {
  std::mt19937_64 gen(6);
  const auto a = oracle::random_density(2, gen);
  const auto b = oracle::random_density(2, gen);
  const auto c = oracle::random_density(2, gen);
  const int keep[] = {0, 2};
  CHECK((partial_trace(kron(kron(a, b), c), 3, keep) - kron(a, c)).norm() < 1e-14);
  const int bad[] = {3};
  CHECK_THROWS_AS(partial_trace(a, 1, bad), DimensionMismatch);
}

TEST_CASE("dominant_eigs examples") {
  const auto id = dominant_eigs(ComplexMatrix::Identity(5, 5), 3);
  REQUIRE(id.size() == 3);
  for (const auto& p : id) CHECK(std::abs(p.value - 1.0) < 1e-12);

  // Reset-to-|0> channel: Kraus |0><0| and |0><1|, written out by hand.
  ComplexMatrix reset = ComplexMatrix::Zero(4, 4);
  reset(0, 0) = 1.0;  // |0><0| -> |0><0|
  reset(0, 3) = 1.0;  // |1><1| -> |0><0|
  const auto r = dominant_eigs(reset, 4);
  CHECK(std::abs(r[0].value - 1.0) < 1e-12);
  for (int i = 1; i < 4; ++i) CHECK(std::abs(r[static_cast<std::size_t>(i)].value) < 1e-12);

  ComplexMatrix stochastic(2, 2);
  stochastic << 0.9, 0.1, 0.2, 0.8;
  const auto s = dominant_eigs(stochastic.transpose(), 2);
  CHECK(std::abs(s[0].value - 1.0) < 1e-12);
  CHECK(std::abs(s[1].value - 0.7) < 1e-12);
}

TEST_CASE("iterative dominant_eigs matches the dense path") {
  std::mt19937_64 gen(21);
  // A random channel-like matrix with a well separated dominant spectrum.
  const auto u = oracle::random_unitary(24, gen);
  ComplexVector d(24);
  for (int i = 0; i < 24; ++i) d(i) = std::pow(0.8, i) * std::exp(kI * (0.3 * i));
  const ComplexMatrix m = u * d.asDiagonal() * u.adjoint();
  const auto dense = dominant_eigs(m, 3);
  const auto iterative = dominant_eigs(m, 3, 8);
  for (int i = 0; i < 3; ++i) {
    CHECK(std::abs(dense[static_cast<std::size_t>(i)].value - iterative[static_cast<std::size_t>(i)].value) < 1e-8);
    const auto& v = iterative[static_cast<std::size_t>(i)].vector;
    CHECK((m * v - iterative[static_cast<std::size_t>(i)].value * v).norm() < 1e-7);
  }
}

TEST_CASE("apply_gate matches the embedded operator") {
  std::mt19937_64 gen(3);
  const auto g2 = oracle::random_unitary(4, gen);
  const ComplexMatrix psi = ComplexMatrix::Random(16, 3);
  for (const auto& qubits : std::vector<std::vector<int>>{{0, 1}, {1, 3}, {3, 0}, {2, 1}}) {
    ComplexMatrix t = psi;
    apply_gate(t, g2, qubits, 4);
    CHECK((t - embed_gate(g2, qubits, 4) * psi).norm() < 1e-12);
  }
  // Adjacent ascending qubits reduce to an explicit Kronecker product.
  const ComplexMatrix full = oracle::kron(oracle::kron(oracle::pauli('I'), g2), oracle::pauli('I'));
  CHECK((embed_gate(g2, std::vector<int>{1, 2}, 4) - full).norm() < 1e-13);
}

TEST_CASE("single-qubit helpers") {
  const ComplexMatrix psi = ComplexMatrix::Random(8, 2);
  ComplexMatrix t = psi;
  apply_x(t, 1, 3);
  CHECK((t - oracle::word("IXI") * psi).norm() < 1e-14);

  t = psi;
  apply_xx_rotation(t, 0.37, 0, 2, 3);
  CHECK((t - oracle::expm(Complex(0, -0.37) * oracle::word("XIX")) * psi).norm() < 1e-12);

  const ComplexVector phases = ComplexVector::Random(8);
  t = psi;
  apply_diagonal(t, phases);
  CHECK((t - phases.asDiagonal() * psi).norm() < 1e-14);
}

TEST_CASE("vectorization convention") {
  const ComplexMatrix a = ComplexMatrix::Random(3, 3);
  const ComplexMatrix b = ComplexMatrix::Random(3, 3);
  const ComplexMatrix x = ComplexMatrix::Random(3, 3);
  const ComplexVector v = vectorize(x);
  CHECK(v(1 + 3 * 2) == x(1, 2));
  CHECK((devectorize(v, 3) - x).norm() == 0.0);
  CHECK((kron(b.conjugate(), a) * v - vectorize(a * x * b.adjoint())).norm() < 1e-12);
}

TEST_CASE("matrix_power and all_finite") {
  std::mt19937_64 gen(9);
  const auto u = oracle::random_unitary(4, gen);
  ComplexMatrix slow = ComplexMatrix::Identity(4, 4);
  for (int i = 0; i < 37; ++i) slow = u * slow;
  CHECK((matrix_power(u, 37) - slow).norm() < 1e-12);
  CHECK((matrix_power(u, 0) - ComplexMatrix::Identity(4, 4)).norm() == 0.0);
  CHECK(all_finite(u));
  ComplexMatrix bad = u;
  bad(1, 1) = Complex(std::nan(""), 0.0);
  CHECK_FALSE(all_finite(bad));
}
