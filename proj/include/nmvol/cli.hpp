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

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace nmvol::cli {

enum class Command { kTrajectory, kNv, kScanDetuning, kScanCoupling, kGaussian, kTomoSim };

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitNumeric = 2;

/// Settings shared by every subcommand. Lorentzian-model times are in units
/// of 1/lambda and rates are the ratios gamma0/lambda and Delta/lambda.
struct RunConfig {
  Command command = Command::kTrajectory;
  double gamma0_over_lambda = 10.0;
  double delta_over_lambda = 0.0;
  /// Attenuation rate of the built-in Gaussian families.
  double gamma = 1.0;
  /// Built-in model name ("lorentzian", "attenuation", "oscillating") or a
  /// path to a JSON model file.
  std::string model;
  /// Trajectory CSV consumed by `nv` instead of a model.
  std::string input;
  double t_max = 10.0;
  int points = 2001;
  double threshold = 1e-12;
  double scan_min = -10.0;
  double scan_max = 10.0;
  int scan_points = 41;
  /// Empty means exact (infinitely many shots).
  std::optional<std::int64_t> shots;
  std::uint64_t seed = 0;
  std::string out;
  int workers = 0;
};

/// Throws InputError when the grid, threshold or scan settings are invalid.
void validate(const RunConfig& cfg);

std::vector<double> time_grid(const RunConfig& cfg);

// Each run_* writes its CSV (or JSON summary for `nv`) to `out` and any
// human-readable summary line to `log`.
void run_trajectory(const RunConfig& cfg, std::ostream& out);
void run_nv(const RunConfig& cfg, std::ostream& out);
void run_scan(const RunConfig& cfg, std::ostream& out);
void run_gaussian(const RunConfig& cfg, std::ostream& out, std::ostream& log);
void run_tomo_sim(const RunConfig& cfg, std::ostream& out, std::ostream& log);

/// Dispatches on cfg.command, writing to cfg.out (stdout when empty).
/// Returns the process exit code; errors are reported on `err`.
int run(const RunConfig& cfg, std::ostream& stdout_stream, std::ostream& err);

/// Full command-line entry point (argument parsing included).
int main_entry(int argc, const char* const* argv, std::ostream& stdout_stream, std::ostream& err);

}  // namespace nmvol::cli
