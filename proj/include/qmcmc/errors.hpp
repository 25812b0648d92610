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

#include <stdexcept>
#include <string>

namespace qmcmc {

/// Base class for every error raised by the library. `kind()` returns the
/// stable error name used in reports and CLI diagnostics.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(kind + ": " + what), kind_(std::move(kind)) {}

  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

#define QMCMC_DEFINE_ERROR(Name)                                  \
  class Name : public Error {                                     \
   public:                                                        \
    explicit Name(const std::string& what) : Error(#Name, what) {} \
  }

// linalg
QMCMC_DEFINE_ERROR(NonHermitianInput);
QMCMC_DEFINE_ERROR(DimensionMismatch);
QMCMC_DEFINE_ERROR(ConvergenceFailure);
// hamiltonians
QMCMC_DEFINE_ERROR(InvalidSize);
QMCMC_DEFINE_ERROR(InvalidGraph);
QMCMC_DEFINE_ERROR(NonDiagonalHamiltonian);
QMCMC_DEFINE_ERROR(ParseError);
// schedule
QMCMC_DEFINE_ERROR(IndexOutOfRange);
QMCMC_DEFINE_ERROR(InvalidTolerance);
QMCMC_DEFINE_ERROR(InvalidConfig);
// channel
QMCMC_DEFINE_ERROR(CompletenessViolation);
QMCMC_DEFINE_ERROR(NoUnitEigenvalue);
QMCMC_DEFINE_ERROR(NegativeEigenvalue);
// trajectory
QMCMC_DEFINE_ERROR(NormalizationLoss);
QMCMC_DEFINE_ERROR(InvalidArgument);
// observables
QMCMC_DEFINE_ERROR(NotAState);
QMCMC_DEFINE_ERROR(NotADistribution);
// cli / io
QMCMC_DEFINE_ERROR(UsageError);
QMCMC_DEFINE_ERROR(UnknownKey);
QMCMC_DEFINE_ERROR(IoError);
QMCMC_DEFINE_ERROR(EmptyResult);

#undef QMCMC_DEFINE_ERROR

}  // namespace qmcmc
