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

#include "qmcmc/observables.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "qmcmc/errors.hpp"

namespace qmcmc {

namespace {

constexpr double kPsdTol = -1e-9;
constexpr double kTraceTol = 1e-8;

void require_state(const ComplexMatrix& rho, const char* which) {
  if (rho.rows() != rho.cols() || rho.rows() == 0) {
    throw NotAState(std::string(which) + " is not a square matrix");
  }
  if (!all_finite(rho)) throw NotAState(std::string(which) + " has non-finite entries");
  if ((rho - rho.adjoint()).norm() > 1e-8 * std::max(1.0, rho.norm())) {
    throw NotAState(std::string(which) + " is not Hermitian");
  }
  const double tr = rho.trace().real();
  if (std::abs(tr - 1.0) > kTraceTol) {
    throw NotAState(std::string(which) + " has trace " + std::to_string(tr) + ", expected 1");
  }
  const double min_eig = hermitian_eig(0.5 * (rho + rho.adjoint())).eigenvalues(0);
  if (min_eig < kPsdTol) {
    throw NotAState(std::string(which) + " has negative eigenvalue " + std::to_string(min_eig));
  }
}

ComplexMatrix psd_sqrt(const ComplexMatrix& rho) {
  HermitianEigen eig = hermitian_eig(0.5 * (rho + rho.adjoint()));
  for (Eigen::Index i = 0; i < eig.eigenvalues.size(); ++i)
    eig.eigenvalues(i) = std::sqrt(std::max(0.0, eig.eigenvalues(i)));
  return eig.eigenvectors * eig.eigenvalues.cast<Complex>().asDiagonal() * eig.eigenvectors.adjoint();
}

void require_distribution(const std::vector<double>& p, const char* which) {
  double sum = 0.0;
  for (double x : p) {
    if (!(x >= -1e-12) || !std::isfinite(x)) {
      throw NotADistribution(std::string(which) + " has a negative or non-finite entry");
    }
    sum += x;
  }
  if (std::abs(sum - 1.0) > kTraceTol) {
    throw NotADistribution(std::string(which) + " sums to " + std::to_string(sum));
  }
}

}  // namespace

double fidelity(const ComplexMatrix& rho, const ComplexMatrix& sigma) {
  require_state(rho, "rho");
  require_state(sigma, "sigma");
  if (rho.rows() != sigma.rows()) throw NotAState("rho and sigma have different dimensions");
  const ComplexMatrix product = psd_sqrt(rho) * psd_sqrt(sigma);
  const double nuclear = Eigen::JacobiSVD<ComplexMatrix>(product).singularValues().sum();
  return std::clamp(nuclear * nuclear, 0.0, 1.0);
}

double tvd(const std::vector<double>& p, const std::vector<double>& q) {
  if (p.size() != q.size()) {
    throw DimensionMismatch("tvd: lengths " + std::to_string(p.size()) + " and " + std::to_string(q.size()));
  }
  require_distribution(p, "p");
  require_distribution(q, "q");
  double acc = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) acc += std::abs(p[i] - q[i]);
  return std::clamp(0.5 * acc, 0.0, 1.0);
}

std::vector<double> site_magnetizations(const ComplexMatrix& rho, int n_s) {
  if (n_s < 1 || rho.rows() != (Eigen::Index{1} << n_s) || rho.cols() != rho.rows()) {
    throw NotAState("expected a " + std::to_string(1LL << std::max(n_s, 0)) + "-dimensional state");
  }
  // Tr(rho Y_i) = sum_b rho(b ^ m, b) * <b ^ m| Y |b> with Y|b> = i (-1)^b |b ^ 1>.
  std::vector<double> out(static_cast<std::size_t>(n_s));
  for (int i = 0; i < n_s; ++i) {
    const Eigen::Index mask = Eigen::Index{1} << (n_s - 1 - i);
    Complex acc = 0.0;
    for (Eigen::Index b = 0; b < rho.rows(); ++b) {
      const Complex y_elem = (b & mask) ? -kI : kI;
      acc += y_elem * rho(b, b ^ mask);
    }
    if (std::abs(acc.imag()) > 1e-10) {
      throw NotAState("Tr(rho Y) has imaginary part " + std::to_string(acc.imag()));
    }
    out[static_cast<std::size_t>(i)] = acc.real();
  }
  return out;
}

double transverse_magnetization(const ComplexMatrix& rho, int n_s) {
  const auto sites = site_magnetizations(rho, n_s);
  return std::accumulate(sites.begin(), sites.end(), 0.0) / n_s;
}

std::vector<double> basis_distribution(const ComplexMatrix& rho) {
  std::vector<double> p(static_cast<std::size_t>(rho.rows()));
  for (Eigen::Index i = 0; i < rho.rows(); ++i) p[static_cast<std::size_t>(i)] = std::max(0.0, rho(i, i).real());
  const double sum = std::accumulate(p.begin(), p.end(), 0.0);
  if (sum > 0.0)
    for (double& x : p) x /= sum;
  return p;
}

double trace_distance(const ComplexMatrix& rho, const ComplexMatrix& sigma) {
  const ComplexMatrix diff = rho - sigma;
  return 0.5 * hermitian_eig(0.5 * (diff + diff.adjoint())).eigenvalues.cwiseAbs().sum();
}

MetricReport compare_states(const ComplexMatrix& reference, const ComplexMatrix& state, int n_s) {
  MetricReport r;
  r.fidelity = fidelity(reference, state);
  r.infidelity = 1.0 - r.fidelity;
  r.tvd = tvd(basis_distribution(reference), basis_distribution(state));
  r.site_magnetizations = site_magnetizations(state, n_s);
  r.magnetization = transverse_magnetization(state, n_s);
  return r;
}

}  // namespace qmcmc
