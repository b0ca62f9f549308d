// Copyright 2026 The nmvol Authors
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

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "nmvol/cli.hpp"
#include "nmvol/io.hpp"

using namespace nmvol;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "nmvol");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::main_entry(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> result;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) result.push_back(line);
  return result;
}

}  // namespace

TEST_CASE("trajectory writes t,V") {
  const Result r = invoke({"trajectory", "--points", "11", "--t-max", "1"});
  REQUIRE(r.code == cli::kExitOk);
  const auto ls = lines(r.out);
  REQUIRE(ls.size() == 12);
  CHECK(ls[0] == "t,V");
  CHECK(ls[1].rfind("0,", 0) == 0);
  CHECK(std::stod(ls[1].substr(2)) == doctest::Approx(1.0).epsilon(1e-14));
  std::istringstream in(r.out);
  const VolumeTrajectory traj = io::read_trajectory_csv(in);
  CHECK(traj.times.back() == doctest::Approx(1.0));
}

TEST_CASE("nv agrees between model and CSV input") {
  const std::string path = "nmvol_cli_test_traj.csv";
  const Result traj = invoke({"trajectory", "--points", "401", "--t-max", "5", "--out", path});
  REQUIRE(traj.code == 0);
  CHECK(traj.out.empty());
  const Result from_model = invoke({"nv", "--points", "401", "--t-max", "5"});
  const Result from_file = invoke({"nv", "--input", path});
  std::remove(path.c_str());
  REQUIRE(from_model.code == 0);
  REQUIRE(from_file.code == 0);
  const auto a = io::Json::parse(from_model.out);
  const auto b = io::Json::parse(from_file.out);
  CHECK(a["n_v"].get<double>() > 0.0);
  CHECK(a["n_v"].get<double>() == doctest::Approx(b["n_v"].get<double>()).epsilon(1e-14));
  CHECK(b["source"] == "csv");
  CHECK(a["samples"] == 401);
}

TEST_CASE("scan-detuning is symmetric and deterministic") {
  const std::vector<std::string> args{"scan-detuning", "--scan-min", "-4", "--scan-max", "4", "--scan-points", "9",
                                      "--points", "401", "--t-max", "10"};
  std::vector<std::string> one_worker = args;
  one_worker.insert(one_worker.end(), {"--workers", "1"});
  std::vector<std::string> three_workers = args;
  three_workers.insert(three_workers.end(), {"--workers", "3"});
  const Result a = invoke(one_worker);
  const Result b = invoke(three_workers);
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  const auto ls = lines(a.out);
  REQUIRE(ls.size() == 10);
  CHECK(ls[0] == "param,n_v");
  std::vector<double> nv;
  for (std::size_t i = 1; i < ls.size(); ++i) nv.push_back(std::stod(ls[i].substr(ls[i].find(',') + 1)));
  for (std::size_t i = 0; i < nv.size(); ++i) CHECK(nv[i] == doctest::Approx(nv[nv.size() - 1 - i]).epsilon(1e-10));
  CHECK(nv[4] > 0.0);
}

TEST_CASE("scan-coupling") {
  const Result r = invoke({"scan-coupling", "--scan-min", "0.1", "--scan-max", "10", "--scan-points", "3", "--points",
                           "401"});
  REQUIRE(r.code == 0);
  const auto ls = lines(r.out);
  REQUIRE(ls.size() == 4);
  CHECK(ls[1] == "0.10000000000000001,0");
  CHECK(invoke({"scan-coupling", "--scan-min", "-1"}).code == cli::kExitNumeric);
}

TEST_CASE("gaussian subcommand") {
  const Result att = invoke({"gaussian", "--model", "attenuation", "--points", "101", "--t-max", "2"});
  REQUIRE(att.code == 0);
  CHECK(att.err.find("n_v=0 ") != std::string::npos);
  const Result osc = invoke({"gaussian", "--model", "oscillating", "--gamma", "0.2", "--points", "201"});
  REQUIRE(osc.code == 0);
  CHECK(osc.err.find("n_v=0 ") == std::string::npos);
}

TEST_CASE("tomo-sim is reproducible") {
  const std::vector<std::string> args{"tomo-sim", "--points", "21", "--t-max", "3", "--shots", "10000", "--seed", "5"};
  const Result a = invoke(args);
  const Result b = invoke(args);
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(lines(a.out)[0] == "t,V_true,V_est");
  CHECK(a.err.find("n_v_true=") != std::string::npos);
  const Result exact = invoke({"tomo-sim", "--points", "21", "--t-max", "3"});
  REQUIRE(exact.code == 0);
  for (const auto& line : lines(exact.out)) {
    if (line[0] == 't') continue;
    const auto c1 = line.find(',');
    const auto c2 = line.find(',', c1 + 1);
    CHECK(std::stod(line.substr(c1 + 1, c2 - c1 - 1)) == doctest::Approx(std::stod(line.substr(c2 + 1))).epsilon(1e-10));
  }
}

TEST_CASE("exit codes") {
  CHECK(invoke({}).code == cli::kExitUsage);
  CHECK(invoke({"bogus"}).code == cli::kExitUsage);
  CHECK(invoke({"trajectory", "--points", "1"}).code == cli::kExitUsage);
  CHECK(invoke({"trajectory", "--t-max", "-1"}).code == cli::kExitUsage);
  CHECK(invoke({"nv", "--threshold", "-1"}).code == cli::kExitUsage);
  CHECK(invoke({"nv", "--input", "/nonexistent.csv"}).code == cli::kExitUsage);
  CHECK(invoke({"tomo-sim", "--shots", "0"}).code == cli::kExitUsage);
  CHECK(invoke({"tomo-sim", "--shots", "many"}).code == cli::kExitUsage);
  CHECK(invoke({"trajectory", "--gamma0-over-lambda", "-1"}).code == cli::kExitNumeric);
  CHECK(invoke({"scan-detuning", "--scan-min", "3", "--scan-max", "1"}).code == cli::kExitUsage);
  const Result err = invoke({"trajectory", "--model", "/nonexistent.json"});
  CHECK(err.code == cli::kExitUsage);
  CHECK(err.err.find("error:") != std::string::npos);
  CHECK(invoke({"--help"}).code == cli::kExitOk);
}
