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

// Serialization of result rows and sample sets.
//
// CSV: UTF-8, LF line endings, one header line, columns in ResultRow field
// order, doubles printed with 17 significant digits, absent optional values
// as empty cells and NaN as `nan`. JSON: an array of objects whose keys are
// the CSV column names in the same order; absent values and NaN are null.
// The wall_time column is written only when timing output is requested, so
// that default output is a deterministic function of the inputs.

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "qmcmc/experiments.hpp"
#include "qmcmc/trajectory.hpp"

namespace qmcmc {

enum class OutputFormat { Csv, Json };

std::vector<std::string> result_columns(bool include_timing = false);

/// Throws EmptyResult if rows is empty, IoError if the stream fails.
void emit_results(const std::vector<ResultRow>& rows, OutputFormat format, std::ostream& sink,
                  bool include_timing = false);

std::vector<ResultRow> parse_results_json(std::string_view text);

/// CSV columns: outcome (bitstring, qubit 0 first), count, frequency.
/// JSON: {"qubit_count", "shots", "seed", "counts": {bitstring: count}}.
void emit_samples(const SampleSet& samples, OutputFormat format, std::ostream& sink);

std::string format_double(double value);
std::string outcome_bits(std::uint64_t outcome, int qubit_count);

}  // namespace qmcmc
