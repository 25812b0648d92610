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

#include "qmcmc/results_io.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <ostream>

#include <json.hpp>

#include "qmcmc/errors.hpp"

namespace qmcmc {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

template <typename T>
std::string csv_optional(const std::optional<T>& v) {
  if (!v) return {};
  if constexpr (std::is_floating_point_v<T>) return format_double(*v);
  else return std::to_string(*v);
}

ordered_json json_number(double v) { return std::isfinite(v) ? ordered_json(v) : ordered_json(nullptr); }

template <typename T>
ordered_json json_optional(const std::optional<T>& v) {
  if (!v) return nullptr;
  if constexpr (std::is_floating_point_v<T>) return json_number(*v);
  else return ordered_json(*v);
}

double number_or_nan(const ordered_json& j) {
  return j.is_null() ? std::numeric_limits<double>::quiet_NaN() : j.get<double>();
}

std::vector<std::string> row_cells(const ResultRow& r, bool include_timing) {
  std::vector<std::string> cells{
      csv_escape(r.experiment),
      std::to_string(r.n_s),
      csv_optional(r.hj),
      format_double(r.beta),
      csv_optional(r.p_e),
      csv_optional(r.instance_seed),
      format_double(r.g),
      std::to_string(r.n_trotter),
      std::to_string(r.n_cycle),
      format_double(r.omega_m),
      csv_escape(r.mode),
      format_double(r.infidelity),
      format_double(r.tvd),
      format_double(r.magnetization_exact),
      format_double(r.magnetization_algorithm),
      format_double(r.magnetization_error),
      format_double(r.spectral_gap),
      r.unique_fixed_point ? "true" : "false",
      format_double(r.lambda1_deviation),
  };
  if (include_timing) cells.push_back(format_double(r.wall_time));
  cells.push_back(csv_escape(r.error));
  return cells;
}

ordered_json row_json(const ResultRow& r, bool include_timing) {
  ordered_json j;
  j["experiment"] = r.experiment;
  j["n_s"] = r.n_s;
  j["hj"] = json_optional(r.hj);
  j["beta"] = json_number(r.beta);
  j["p_e"] = json_optional(r.p_e);
  j["instance_seed"] = json_optional(r.instance_seed);
  j["g"] = json_number(r.g);
  j["n_trotter"] = r.n_trotter;
  j["n_cycle"] = r.n_cycle;
  j["omega_m"] = json_number(r.omega_m);
  j["mode"] = r.mode;
  j["infidelity"] = json_number(r.infidelity);
  j["tvd"] = json_number(r.tvd);
  j["magnetization_exact"] = json_number(r.magnetization_exact);
  j["magnetization_algorithm"] = json_number(r.magnetization_algorithm);
  j["magnetization_error"] = json_number(r.magnetization_error);
  j["spectral_gap"] = json_number(r.spectral_gap);
  j["unique_fixed_point"] = r.unique_fixed_point;
  j["lambda1_deviation"] = json_number(r.lambda1_deviation);
  if (include_timing) j["wall_time"] = json_number(r.wall_time);
  j["error"] = r.error;
  return j;
}

void check_sink(std::ostream& sink) {
  if (!sink) throw IoError("failed to write results");
}

}  // namespace

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 17);
  return std::string(buf, ptr);
}

std::string outcome_bits(std::uint64_t outcome, int qubit_count) {
  std::string bits(static_cast<std::size_t>(qubit_count), '0');
  for (int q = 0; q < qubit_count; ++q)
    if ((outcome >> (qubit_count - 1 - q)) & 1U) bits[static_cast<std::size_t>(q)] = '1';
  return bits;
}

std::vector<std::string> result_columns(bool include_timing) {
  std::vector<std::string> cols{"experiment",          "n_s",
                                "hj",                  "beta",
                                "p_e",                 "instance_seed",
                                "g",                   "n_trotter",
                                "n_cycle",             "omega_m",
                                "mode",                "infidelity",
                                "tvd",                 "magnetization_exact",
                                "magnetization_algorithm", "magnetization_error",
                                "spectral_gap",        "unique_fixed_point",
                                "lambda1_deviation"};
  if (include_timing) cols.emplace_back("wall_time");
  cols.emplace_back("error");
  return cols;
}

void emit_results(const std::vector<ResultRow>& rows, OutputFormat format, std::ostream& sink,
                  bool include_timing) {
  if (rows.empty()) throw EmptyResult("no result rows to emit");
  if (format == OutputFormat::Csv) {
    const auto cols = result_columns(include_timing);
    for (std::size_t i = 0; i < cols.size(); ++i) sink << (i ? "," : "") << cols[i];
    sink << '\n';
    for (const auto& r : rows) {
      const auto cells = row_cells(r, include_timing);
      for (std::size_t i = 0; i < cells.size(); ++i) sink << (i ? "," : "") << cells[i];
      sink << '\n';
    }
  } else {
    ordered_json arr = ordered_json::array();
    for (const auto& r : rows) arr.push_back(row_json(r, include_timing));
    sink << arr.dump(2) << '\n';
  }
  check_sink(sink);
}

std::vector<ResultRow> parse_results_json(std::string_view text) {
  ordered_json arr;
  try {
    arr = ordered_json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("result JSON: ") + e.what());
  }
  if (!arr.is_array()) throw ParseError("result JSON must be an array");
  std::vector<ResultRow> rows;
  try {
    for (const auto& j : arr) {
      ResultRow r;
      r.experiment = j.at("experiment").get<std::string>();
      r.n_s = j.at("n_s").get<int>();
      if (!j.at("hj").is_null()) r.hj = j.at("hj").get<double>();
      r.beta = number_or_nan(j.at("beta"));
      if (!j.at("p_e").is_null()) r.p_e = j.at("p_e").get<double>();
      if (!j.at("instance_seed").is_null()) r.instance_seed = j.at("instance_seed").get<std::uint64_t>();
      r.g = number_or_nan(j.at("g"));
      r.n_trotter = j.at("n_trotter").get<int>();
      r.n_cycle = j.at("n_cycle").get<int>();
      r.omega_m = number_or_nan(j.at("omega_m"));
      r.mode = j.at("mode").get<std::string>();
      r.infidelity = number_or_nan(j.at("infidelity"));
      r.tvd = number_or_nan(j.at("tvd"));
      r.magnetization_exact = number_or_nan(j.at("magnetization_exact"));
      r.magnetization_algorithm = number_or_nan(j.at("magnetization_algorithm"));
      r.magnetization_error = number_or_nan(j.at("magnetization_error"));
      r.spectral_gap = number_or_nan(j.at("spectral_gap"));
      r.unique_fixed_point = j.at("unique_fixed_point").get<bool>();
      r.lambda1_deviation = number_or_nan(j.at("lambda1_deviation"));
      if (j.contains("wall_time")) r.wall_time = number_or_nan(j.at("wall_time"));
      r.error = j.at("error").get<std::string>();
      rows.push_back(std::move(r));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("result JSON: ") + e.what());
  }
  return rows;
}

void emit_samples(const SampleSet& samples, OutputFormat format, std::ostream& sink) {
  if (samples.shots == 0) throw EmptyResult("sample set is empty");
  if (format == OutputFormat::Csv) {
    sink << "outcome,count,frequency\n";
    for (const auto& [outcome, n] : samples.counts) {
      sink << outcome_bits(outcome, samples.qubit_count) << ',' << n << ','
           << format_double(static_cast<double>(n) / static_cast<double>(samples.shots)) << '\n';
    }
  } else {
    ordered_json j;
    j["qubit_count"] = samples.qubit_count;
    j["shots"] = samples.shots;
    j["seed"] = samples.seed;
    ordered_json counts = ordered_json::object();
    for (const auto& [outcome, n] : samples.counts) counts[outcome_bits(outcome, samples.qubit_count)] = n;
    j["counts"] = counts;
    sink << j.dump(2) << '\n';
  }
  check_sink(sink);
}

}  // namespace qmcmc
