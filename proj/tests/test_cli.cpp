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

#include <filesystem>
#include <fstream>
#include <sstream>

#include "qmcmc/cli.hpp"
#include "qmcmc/errors.hpp"

using namespace qmcmc;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path temp_file(const std::string& name, const std::string& content) {
  const auto path = std::filesystem::temp_directory_path() / ("qmcmc_cli_test_" + name);
  std::ofstream(path) << content;
  return path;
}

int count_lines(const std::string& s) { return static_cast<int>(std::count(s.begin(), s.end(), '\n')); }

const std::vector<std::string> kFast{"--g", "0.2", "--nt", "40", "--ncycle", "10"};

std::vector<std::string> with_fast(std::vector<std::string> args) {
  args.insert(args.end(), kFast.begin(), kFast.end());
  return args;
}

}  // namespace

TEST_CASE("parse_args happy paths") {
  std::ostringstream help;
  const auto rc = parse_args({"thermalize", "--model", "tfim", "--n", "2", "--hj", "1.0", "--beta", "10", "--g",
                              "0.005", "--nt", "5000", "--ncycle", "500"},
                             help);
  REQUIRE(rc.has_value());
  CHECK(rc->command == Command::Thermalize);
  CHECK(rc->values.at("beta") == "10");
  CHECK(rc->values.at("nt") == "5000");
  CHECK(rc->format == OutputFormat::Csv);
  CHECK(rc->verbosity == 1);

  const auto exp = parse_args({"experiment", "graph", "--pe", "0.4", "--beta", "10,1,0.1", "--seed", "7"}, help);
  REQUIRE(exp.has_value());
  CHECK(exp->command == Command::Experiment);
  CHECK(exp->experiment == ExperimentKind::GraphSampling);
  CHECK(exp->values.at("beta") == "10,1,0.1");

  CHECK_FALSE(parse_args({"--help"}, help).has_value());
  CHECK(help.str().find("thermalize") != std::string::npos);
}

TEST_CASE("parse_args rejections") {
  std::ostringstream help;
  CHECK_THROWS_AS(parse_args({}, help), UsageError);
  CHECK_THROWS_AS(parse_args({"thermalize", "--bogus", "1"}, help), UnknownKey);
  CHECK_THROWS_AS(parse_args({"thermalize", "-v", "-q"}, help), UsageError);
  CHECK_THROWS_AS(parse_args({"thermalize", "--hamiltonian", "x.ham", "--hj", "1"}, help), UsageError);
  CHECK_THROWS_AS(parse_args({"thermalize", "--edges", "0-1:1", "--pe", "0.3"}, help), UsageError);
  CHECK_THROWS_AS(parse_args({"thermalize", "--format", "xml"}, help), UsageError);
  CHECK_THROWS_AS(parse_args({"experiment", "chess", "--beta", "1"}, help), UsageError);
  CHECK_THROWS_AS(parse_args({"thermalize", "--shots", "5"}, help), UnknownKey);
}

TEST_CASE("missing beta names the flag and exits with 2") {
  const auto r = run({"thermalize", "--n", "2"});
  CHECK(r.code == 2);
  CHECK(r.err.find("--beta") != std::string::npos);
  CHECK(run({"thermalize", "--nope"}).code == 2);
}

TEST_CASE("config files merge under flags") {
  const auto cfg = temp_file("good.cfg", "# test\nmodel = tfim\nn = 1\nbeta = 3   # comment\ng=0.2\nnt = 40\nncycle = 10\n");
  std::ostringstream help;
  const auto rc = parse_args({"thermalize", "--config", cfg.string(), "--beta", "0.5"}, help);
  REQUIRE(rc.has_value());
  CHECK(rc->values.at("beta") == "0.5");
  CHECK(rc->values.at("n") == "1");
  CHECK(rc->values.at("g") == "0.2");

  const auto bad = temp_file("bad.cfg", "beta = 1\nshots = 4\n");
  CHECK_THROWS_AS(parse_args({"thermalize", "--config", bad.string()}, help), UnknownKey);
  const auto malformed = temp_file("malformed.cfg", "beta 1\n");
  CHECK_THROWS_AS(read_config_file(malformed.string()), UsageError);
  CHECK(run({"thermalize", "--config", "/nonexistent/q.cfg", "--beta", "1"}).code == 1);

  const auto r = run({"thermalize", "--config", cfg.string()});
  CHECK(r.code == 0);
  CHECK(count_lines(r.out) == 2);
}

TEST_CASE("thermalize output and hierarchy report") {
  const auto r = run(with_fast({"thermalize", "--n", "2", "--beta", "0.5,2"}));
  CHECK(r.code == 0);
  CHECK(count_lines(r.out) == 3);
  CHECK(r.err.find("parameter hierarchy") != std::string::npos);
  const auto quiet = run(with_fast({"thermalize", "-q", "--n", "2", "--beta", "0.5,2"}));
  CHECK(quiet.err.empty());
  CHECK(quiet.out == r.out);

  const auto json = run(with_fast({"thermalize", "-q", "--beta", "1", "--format", "json"}));
  CHECK(json.code == 0);
  CHECK(json.out.front() == '[');

  const auto timed = run(with_fast({"thermalize", "-q", "--beta", "1", "--timing"}));
  CHECK(timed.out.find("wall_time") != std::string::npos);
}

TEST_CASE("graph and file models") {
  const auto preset = run(with_fast({"thermalize", "-q", "--model", "graph", "--preset", "a", "--edges",
                                     "0-1:0.5,2-3:0.25", "--beta", "1"}));
  CHECK(preset.code == 0);
  const auto random = run(with_fast({"thermalize", "-q", "--model", "graph", "--n", "3", "--pe", "0.5",
                                     "--seed", "4", "--beta", "1"}));
  CHECK(random.code == 0);
  CHECK(random.out.find(",0.5,4,") != std::string::npos);

  const auto ham = temp_file("z.ham", "1.0 Z\n");
  const auto file = run(with_fast({"thermalize", "-q", "--model", "file", "--hamiltonian", ham.string(),
                                   "--beta", "1"}));
  CHECK(file.code == 0);
  CHECK(run(with_fast({"thermalize", "-q", "--model", "graph", "--edges", "0-1", "--preset", "a",
                       "--beta", "1"}))
            .code == 2);
  CHECK(run(with_fast({"thermalize", "-q", "--model", "ising", "--beta", "1"})).code == 2);
  CHECK(run(with_fast({"thermalize", "-q", "--n", "7", "--beta", "1"})).code == 2);
}

TEST_CASE("sample command is deterministic") {
  const std::vector<std::string> args{"sample", "-q", "--n", "1", "--beta", "1", "--g", "0.2", "--nt", "20",
                                      "--ncycle", "5", "--shots", "50", "--burnin", "2", "--seed", "3"};
  const auto a = run(args);
  const auto b = run(args);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out.rfind("outcome,count,frequency\n", 0) == 0);
  auto multi = args;
  multi[4] = "1,2";
  CHECK(run(multi).code == 2);
}

TEST_CASE("experiment and validate commands") {
  const auto e = run(with_fast({"experiment", "tfim", "-q", "--n", "1,2", "--hj", "0.5,1", "--beta", "1"}));
  CHECK(e.code == 0);
  CHECK(count_lines(e.out) == 5);
  const auto g = run(with_fast({"experiment", "graph", "-q", "--n", "2", "--pe", "0.4", "--beta", "10,1,0.1",
                                "--seed", "7", "--instances", "2"}));
  CHECK(g.code == 0);
  CHECK(count_lines(g.out) == 7);
  CHECK(run(with_fast({"experiment", "graph", "-q", "--hj", "1", "--beta", "1"})).code == 2);

  const auto v = run({"validate", "-q"});
  CHECK(v.code == 0);
  CHECK(v.out.find("suggested_n_trotter,") != std::string::npos);
  CHECK(v.out.find("drive_ok,true") != std::string::npos);
  const auto strong = run({"validate", "--g", "5"});
  CHECK(strong.err.find("WARNING") != std::string::npos);
  CHECK(run({"validate", "--epsilon", "0"}).code == 2);
}

TEST_CASE("output files") {
  const auto path = std::filesystem::temp_directory_path() / "qmcmc_cli_test_out.csv";
  const auto r = run(with_fast({"thermalize", "-q", "--beta", "1", "--out", path.string()}));
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream in(path);
  std::string header;
  std::getline(in, header);
  CHECK(header.rfind("experiment,", 0) == 0);
  CHECK(run(with_fast({"thermalize", "-q", "--beta", "1", "--out", "/nonexistent/dir/x.csv"})).code == 1);
}
