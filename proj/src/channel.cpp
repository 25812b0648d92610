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

#include "qmcmc/channel.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <string>

#include "qmcmc/errors.hpp"
#include "qmcmc/parallel.hpp"

namespace qmcmc {

namespace {

constexpr double kCompletenessTol = 1e-8;
constexpr double kKrausPruneNorm = 1e-14;
constexpr double kUnitTol = 1e-6;
constexpr double kClipTol = 1e-6;

void check_composite(const ComplexMatrix& w, int n_s, int m_count, const std::vector<double>& prep) {
  const Eigen::Index dim = Eigen::Index{1} << (n_s + m_count);
  if (w.rows() != dim || w.cols() != dim) {
    throw DimensionMismatch("period unitary must be " + std::to_string(dim) + "x" + std::to_string(dim));
  }
  if (prep.size() != (std::size_t{1} << m_count)) {
    throw DimensionMismatch("ancilla preparation must have 2^M entries");
  }
}

}  // namespace

double KrausSet::completeness_error() const {
  ComplexMatrix sum = ComplexMatrix::Zero(dim, dim);
  for (const auto& k : operators) sum.noalias() += k.adjoint() * k;
  return (sum - ComplexMatrix::Identity(dim, dim)).norm();
}

ComplexMatrix KrausSet::apply(const ComplexMatrix& rho) const {
  ComplexMatrix out = ComplexMatrix::Zero(dim, dim);
  for (const auto& k : operators) out.noalias() += k * rho * k.adjoint();
  return out;
}

ComplexMatrix Superoperator::apply(const ComplexMatrix& rho) const {
  if (rho.rows() != system_dim || rho.cols() != system_dim) {
    throw DimensionMismatch("superoperator acts on " + std::to_string(system_dim) + "-dim states");
  }
  return devectorize(matrix * vectorize(rho), system_dim);
}

ComplexMatrix Superoperator::choi() const {
  const Eigen::Index d = system_dim;
  ComplexMatrix c(d * d, d * d);
  for (Eigen::Index k = 0; k < d; ++k)
    for (Eigen::Index l = 0; l < d; ++l)
      for (Eigen::Index i = 0; i < d; ++i)
        for (Eigen::Index j = 0; j < d; ++j) c(k * d + i, l * d + j) = matrix(i + d * j, k + d * l);
  return c;
}

double Superoperator::min_choi_eigenvalue() const {
  const ComplexMatrix c = choi();
  return hermitian_eig(0.5 * (c + c.adjoint())).eigenvalues(0);
}

double Superoperator::trace_preservation_error() const {
  const Eigen::Index d = system_dim;
  double worst = 0.0;
  for (Eigen::Index k = 0; k < d; ++k)
    for (Eigen::Index l = 0; l < d; ++l) {
      Complex t = 0.0;
      for (Eigen::Index i = 0; i < d; ++i) t += matrix(i + d * i, k + d * l);
      worst = std::max(worst, std::abs(t - (k == l ? 1.0 : 0.0)));
    }
  return worst;
}

Superoperator Superoperator::identity(Eigen::Index system_dim) {
  return {system_dim, ComplexMatrix::Identity(system_dim * system_dim, system_dim * system_dim)};
}

CycleMap CycleMap::from_superoperator(Superoperator s) {
  CycleMap m;
  m.superoperator = std::move(s);
  return m;
}

TrotterCircuit::TrotterCircuit(const HamiltonianSpec& spec, const ProtocolConfig& cfg)
    : principal_count_(spec.qubit_count),
      n_trotter_(cfg.n_trotter),
      dt_(0.0),
      interaction_angle_(0.0),
      ancilla_map_(cfg.ancilla_map) {
  spec.validate();
  cfg.validate(spec.qubit_count);
  dt_ = cfg.trotter_dt();
  interaction_angle_ = cfg.g * dt_;
  xx_cos_ = std::cos(interaction_angle_);
  xx_sin_ = std::sin(interaction_angle_);
  system_unitary_ = expm_hermitian(to_matrix(spec), Complex(0.0, -dt_));
}

ComplexVector TrotterCircuit::ancilla_phases(double omega) const {
  const int m_count = ancilla_count();
  const Eigen::Index a_dim = Eigen::Index{1} << m_count;
  ComplexVector phases(a_dim);
  const double half_angle = 0.5 * omega * dt_;
  for (Eigen::Index a = 0; a < a_dim; ++a) {
    // Z eigenvalue +1 on |0>, -1 on |1>.
    int net = 0;
    for (int m = 0; m < m_count; ++m) net += ((a >> (m_count - 1 - m)) & 1) ? -1 : 1;
    phases(a) = std::exp(Complex(0.0, half_angle * net));
  }
  return phases;
}

void TrotterCircuit::apply_step(Eigen::Ref<ComplexMatrix> target, const ComplexVector& ancilla_phases) const {
  const Eigen::Index a_dim = Eigen::Index{1} << ancilla_count();
  const Eigen::Index s_dim = Eigen::Index{1} << principal_count_;
  const Eigen::Index rows = target.rows();
  const Eigen::Index stride = target.outerStride();
  const int n = qubit_count();

  for (Eigen::Index c = 0; c < target.cols(); ++c) {
    Complex* col = target.data() + c * stride;
    for (Eigen::Index r = 0; r < rows; ++r) col[r] *= ancilla_phases(r & (a_dim - 1));
  }

  // (U_s (x) I_anc): each column reshaped to a_dim x s_dim is multiplied by U_s^T.
  thread_local ComplexMatrix scratch;
  if (s_dim > 8 && target.cols() > 1) {
    scratch.resize(a_dim, s_dim);
    for (Eigen::Index c = 0; c < target.cols(); ++c) {
      Eigen::Map<ComplexMatrix> col(target.data() + c * stride, a_dim, s_dim);
      scratch.noalias() = col * system_unitary_.transpose();
      col = scratch;
    }
  } else {
    scratch.resize(s_dim, 1);
    Complex* tmp = scratch.data();
    const Complex* u = system_unitary_.data();
    for (Eigen::Index c = 0; c < target.cols(); ++c) {
      Complex* col = target.data() + c * stride;
      for (Eigen::Index a = 0; a < a_dim; ++a) {
        for (Eigen::Index i = 0; i < s_dim; ++i) tmp[i] = 0.0;
        for (Eigen::Index j = 0; j < s_dim; ++j) {
          const Complex x = col[j * a_dim + a];
          for (Eigen::Index i = 0; i < s_dim; ++i) tmp[i] += u[i + j * s_dim] * x;
        }
        for (Eigen::Index i = 0; i < s_dim; ++i) col[i * a_dim + a] = tmp[i];
      }
    }
  }

  for (int m = 0; m < ancilla_count(); ++m) {
    apply_xx_rotation(target, xx_cos_, xx_sin_, ancilla_map_[static_cast<std::size_t>(m)],
                      principal_count_ + m, n);
  }
}

ComplexMatrix TrotterCircuit::step_matrix(double omega) const {
  const Eigen::Index dim = Eigen::Index{1} << qubit_count();
  ComplexMatrix step = ComplexMatrix::Identity(dim, dim);
  apply_step(step, ancilla_phases(omega));
  return step;
}

namespace {

// Polar factor of m; removes rounding drift accumulated by repeated squaring.
ComplexMatrix nearest_unitary(const ComplexMatrix& m) {
  Eigen::BDCSVD<ComplexMatrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return svd.matrixU() * svd.matrixV().adjoint();
}

ComplexMatrix period_unitary(const TrotterCircuit& circuit, double omega, int n_trotter) {
  return nearest_unitary(
      matrix_power(nearest_unitary(circuit.step_matrix(omega)), static_cast<std::uint64_t>(n_trotter)));
}

}  // namespace

ComplexMatrix build_period_unitary(const HamiltonianSpec& spec, const ProtocolConfig& cfg, double omega) {
  return period_unitary(TrotterCircuit(spec, cfg), omega, cfg.n_trotter);
}

std::vector<double> ancilla_preparation(double omega, double beta, int m_count) {
  if (!(beta >= 0.0)) throw InvalidArgument("ancilla_preparation: beta must be >= 0");
  if (m_count < 0) throw InvalidArgument("ancilla_preparation: negative ancilla count");
  const double p0 = ground_probability(omega, beta);
  const std::size_t n = std::size_t{1} << m_count;
  std::vector<double> p(n, 1.0);
  for (std::size_t b = 0; b < n; ++b)
    for (int m = 0; m < m_count; ++m) p[b] *= ((b >> (m_count - 1 - m)) & 1U) ? 1.0 - p0 : p0;
  return p;
}

KrausSet build_period_channel(const ComplexMatrix& w, const std::vector<double>& prep, int n_s, int m_count) {
  check_composite(w, n_s, m_count, prep);
  const Eigen::Index d = Eigen::Index{1} << n_s;
  const Eigen::Index a_dim = Eigen::Index{1} << m_count;
  KrausSet set;
  set.dim = d;
  for (Eigen::Index b = 0; b < a_dim; ++b) {
    const double weight = prep[static_cast<std::size_t>(b)];
    if (weight <= 0.0) continue;
    const double amp = std::sqrt(weight);
    for (Eigen::Index i = 0; i < a_dim; ++i) {
      ComplexMatrix k(d, d);
      for (Eigen::Index col = 0; col < d; ++col)
        for (Eigen::Index row = 0; row < d; ++row) k(row, col) = amp * w(row * a_dim + i, col * a_dim + b);
      if (k.norm() >= kKrausPruneNorm) set.operators.push_back(std::move(k));
    }
  }
  const double err = set.completeness_error();
  if (!(err < kCompletenessTol)) {
    throw CompletenessViolation("||sum K^dagger K - I||_F = " + std::to_string(err));
  }
  return set;
}

Superoperator to_superoperator(const KrausSet& kraus) {
  const Eigen::Index d2 = kraus.dim * kraus.dim;
  Superoperator s{kraus.dim, ComplexMatrix::Zero(d2, d2)};
  for (const auto& k : kraus.operators) s.matrix += kron(k.conjugate(), k);
  return s;
}

Superoperator period_superoperator(const ComplexMatrix& w, const std::vector<double>& prep, int n_s,
                                   int m_count) {
  check_composite(w, n_s, m_count, prep);
  const Eigen::Index d = Eigen::Index{1} << n_s;
  const Eigen::Index a_dim = Eigen::Index{1} << m_count;

  std::vector<Eigen::Index> prepared;
  for (Eigen::Index b = 0; b < a_dim; ++b)
    if (prep[static_cast<std::size_t>(b)] > 0.0) prepared.push_back(b);

  // y((a, b), (i, k)) = sqrt(P(b)) <i, a| W |k, b>, so that
  // (y^T conj(y))((i, k), (j, l)) = sum_{a,b} P(b) W_{ia,kb} conj(W_{ja,lb}).
  const auto n_b = static_cast<Eigen::Index>(prepared.size());
  ComplexMatrix y(a_dim * n_b, d * d);
  ComplexMatrix completeness = ComplexMatrix::Zero(d, d);
  for (Eigen::Index bi = 0; bi < n_b; ++bi) {
    const Eigen::Index b = prepared[static_cast<std::size_t>(bi)];
    const double weight = prep[static_cast<std::size_t>(b)];
    const double amp = std::sqrt(weight);
    ComplexMatrix block(d * a_dim, d);  // columns of W with ancilla input b
    for (Eigen::Index k = 0; k < d; ++k) block.col(k) = w.col(k * a_dim + b);
    completeness.noalias() += weight * (block.adjoint() * block);
    for (Eigen::Index k = 0; k < d; ++k)
      for (Eigen::Index i = 0; i < d; ++i)
        for (Eigen::Index a = 0; a < a_dim; ++a) y(a + a_dim * bi, i + d * k) = amp * w(i * a_dim + a, k * a_dim + b);
  }
  const double err = (completeness - ComplexMatrix::Identity(d, d)).norm();
  if (!(err < kCompletenessTol)) {
    throw CompletenessViolation("||sum K^dagger K - I||_F = " + std::to_string(err));
  }

  const ComplexMatrix g = y.transpose() * y.conjugate();
  Superoperator s{d, ComplexMatrix(d * d, d * d)};
  for (Eigen::Index l = 0; l < d; ++l)
    for (Eigen::Index k = 0; k < d; ++k)
      for (Eigen::Index j = 0; j < d; ++j)
        for (Eigen::Index i = 0; i < d; ++i) s.matrix(i + d * j, k + d * l) = g(i + d * k, j + d * l);
  return s;
}

std::vector<CycleMap> build_cycle_maps(const HamiltonianSpec& spec, const ProtocolConfig& cfg,
                                       const std::vector<double>& betas, int workers,
                                       std::size_t cache_bytes) {
  if (cfg.ancilla_map.empty()) throw InvalidConfig("the protocol needs at least one ancilla");
  for (double beta : betas)
    if (!(beta >= 0.0)) throw InvalidConfig("beta must be >= 0");
  const TrotterCircuit circuit(spec, cfg);
  if (workers <= 0) workers = default_workers();

  const int n_cycle = cfg.n_cycle;
  const int n_s = circuit.principal_count();
  const int m_count = circuit.ancilla_count();
  const Eigen::Index d = Eigen::Index{1} << n_s;
  const Eigen::Index dim = Eigen::Index{1} << circuit.qubit_count();

  std::vector<CycleMap> maps(betas.size());
  for (std::size_t bi = 0; bi < betas.size(); ++bi) {
    maps[bi].superoperator = Superoperator::identity(d);
    maps[bi].config = cfg;
    maps[bi].config.beta = betas[bi];
    for (int k = 0; k < n_cycle; ++k) {
      const double omega = comb_value(cfg, k);
      maps[bi].omegas.push_back(omega);
      maps[bi].ground_probabilities.push_back(ground_probability(omega, betas[bi]));
    }
  }
  if (betas.empty()) return maps;

  const std::size_t bytes_per_unitary = static_cast<std::size_t>(dim * dim) * sizeof(Complex);
  const bool use_cache = static_cast<std::size_t>(n_cycle / 2) * bytes_per_unitary <= cache_bytes;
  std::map<int, ComplexMatrix> cache;  // W_k held until period n_cycle - k

  const int block = workers;
  for (int start = 0; start < n_cycle; start += block) {
    const int count = std::min(block, n_cycle - start);
    std::vector<ComplexMatrix> unitaries(static_cast<std::size_t>(count));
    std::vector<int> pending;
    for (int i = 0; i < count; ++i) {
      const int k = start + i;
      auto hit = cache.find(n_cycle - k);
      if (hit != cache.end()) {
        unitaries[static_cast<std::size_t>(i)] = std::move(hit->second);
        cache.erase(hit);
      } else {
        pending.push_back(i);
      }
    }
    parallel_for(pending.size(), workers, [&](std::size_t p) {
      const int i = pending[p];
      const double omega = comb_value(cfg, start + i);
      unitaries[static_cast<std::size_t>(i)] = period_unitary(circuit, omega, cfg.n_trotter);
    });

    const std::size_t jobs = static_cast<std::size_t>(count) * betas.size();
    std::vector<Superoperator> periods(jobs);
    parallel_for(jobs, workers, [&](std::size_t job) {
      const std::size_t i = job / betas.size();
      const std::size_t bi = job % betas.size();
      const int k = start + static_cast<int>(i);
      const auto prep = ancilla_preparation(comb_value(cfg, k), betas[bi], m_count);
      periods[job] = period_superoperator(unitaries[i], prep, n_s, m_count);
    });
    for (int i = 0; i < count; ++i) {
      for (std::size_t bi = 0; bi < betas.size(); ++bi) {
        auto& acc = maps[bi].superoperator.matrix;
        acc = periods[static_cast<std::size_t>(i) * betas.size() + bi].matrix * acc;
      }
    }

    for (int i = 0; i < count; ++i) {
      const int k = start + i;
      if (use_cache && k >= 1 && k < n_cycle - k) {
        cache.emplace(k, std::move(unitaries[static_cast<std::size_t>(i)]));
      }
    }
  }
  return maps;
}

CycleMap build_cycle_map(const HamiltonianSpec& spec, const ProtocolConfig& cfg, int workers) {
  return std::move(build_cycle_maps(spec, cfg, {cfg.beta}, workers).front());
}

Superoperator compose(const std::vector<Superoperator>& channels) {
  if (channels.empty()) throw InvalidArgument("compose: no channels");
  Superoperator out = Superoperator::identity(channels.front().system_dim);
  for (const auto& c : channels) {
    if (c.system_dim != out.system_dim) throw DimensionMismatch("compose: mixed system dimensions");
    out.matrix = c.matrix * out.matrix;
  }
  return out;
}

namespace {

constexpr Eigen::Index kProjectionLimit = 1024;

// Component of vec(I/d) in the unit eigenspace, i.e. the fixed point reached
// from the maximally mixed state when the unit eigenvalue is degenerate.
ComplexVector unit_projection(const Superoperator& s) {
  Eigen::ComplexEigenSolver<ComplexMatrix> solver(s.matrix, true);
  if (solver.info() != Eigen::Success) throw ConvergenceFailure("unit-eigenspace projection did not converge");
  const ComplexMatrix mixed =
      ComplexMatrix::Identity(s.system_dim, s.system_dim) / static_cast<double>(s.system_dim);
  const ComplexVector coeff = solver.eigenvectors().partialPivLu().solve(vectorize(mixed));
  ComplexVector out = ComplexVector::Zero(s.matrix.rows());
  for (Eigen::Index i = 0; i < coeff.size(); ++i)
    if (std::abs(solver.eigenvalues()(i) - 1.0) < kUnitTol) out += coeff(i) * solver.eigenvectors().col(i);
  return out;
}

}  // namespace

SteadyState steady_state(const CycleMap& m) {
  const auto& s = m.superoperator;
  const auto pairs = dominant_eigs(s.matrix, 2);
  const Complex lambda = pairs.front().value;
  if (!(std::abs(lambda - 1.0) < kUnitTol)) {
    throw NoUnitEigenvalue("dominant eigenvalue " + std::to_string(lambda.real()) + "+" +
                           std::to_string(lambda.imag()) + "i is not within 1e-6 of 1");
  }
  const bool degenerate = std::abs(pairs[1].value - 1.0) < kUnitTol;
  ComplexMatrix rho = devectorize(
      degenerate && s.matrix.rows() <= kProjectionLimit ? unit_projection(s) : pairs.front().vector, s.system_dim);
  const Complex tr = rho.trace();
  if (std::abs(tr) < 1e-12) throw NoUnitEigenvalue("fixed-point eigenvector is traceless");
  rho /= tr;
  rho = (0.5 * (rho + rho.adjoint())).eval();

  HermitianEigen eig = hermitian_eig(rho);
  double clipped = 0.0;
  for (Eigen::Index i = 0; i < eig.eigenvalues.size(); ++i) {
    if (eig.eigenvalues(i) < 0.0) {
      clipped -= eig.eigenvalues(i);
      eig.eigenvalues(i) = 0.0;
    }
  }
  if (clipped > kClipTol) {
    throw NegativeEigenvalue("steady state has " + std::to_string(clipped) + " negative spectral mass");
  }
  eig.eigenvalues /= eig.eigenvalues.sum();
  rho = eig.eigenvectors * eig.eigenvalues.cast<Complex>().asDiagonal() * eig.eigenvectors.adjoint();
  rho = (0.5 * (rho + rho.adjoint())).eval();
  return {std::move(rho), lambda};
}

SpectralGap spectral_gap(const CycleMap& m) {
  const auto& mat = m.superoperator.matrix;
  const std::size_t k = std::min<std::size_t>(4, static_cast<std::size_t>(mat.rows()));
  const auto pairs = dominant_eigs(mat, k);
  SpectralGap out;
  out.lambda_1 = pairs[0].value;
  out.lambda_2 = k > 1 ? pairs[1].value : Complex(0.0);
  out.gap = std::clamp(1.0 - std::abs(out.lambda_2), 0.0, 1.0);
  const auto near_one = std::count_if(pairs.begin(), pairs.end(), [](const EigenPair& p) {
    return std::abs(p.value - 1.0) < kUnitTol;
  });
  out.unique = near_one == 1;
  return out;
}

}  // namespace qmcmc
