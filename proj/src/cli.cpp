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

#include "nmvol/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>
#include <variant>

#include "nmvol/errors.hpp"
#include "nmvol/gaussian_cv.hpp"
#include "nmvol/io.hpp"
#include "nmvol/model_channels.hpp"
#include "nmvol/tomography.hpp"
#include "nmvol/volume_measure.hpp"

namespace nmvol::cli {

namespace {

bool is_builtin(const std::string& model) {
  return model.empty() || model == "lorentzian" || model == "attenuation" || model == "oscillating";
}

LorentzianDecayModel lorentzian_from(const RunConfig& cfg) {
  if (!(cfg.gamma0_over_lambda > 0.0)) {
    throw DomainError("--gamma0-over-lambda must be positive, got " + io::format_number(cfg.gamma0_over_lambda));
  }
  if (!std::isfinite(cfg.delta_over_lambda)) throw DomainError("--delta-over-lambda must be finite");
  return {cfg.gamma0_over_lambda, 1.0, cfg.delta_over_lambda};
}

// Single-mode families relaxing towards the vacuum.
GaussianChannel builtin_gaussian(const std::string& family, double gamma, double t) {
  const CovarianceMatrix vacuum = CovarianceMatrix::vacuum(1);
  if (family == "attenuation") return markovian_attenuation(gamma, vacuum, t);
  // "oscillating": X = e^{-gamma t/2} (1 + sin(t)/2) 1
  const double x = std::exp(-0.5 * gamma * t) * (1.0 + 0.5 * std::sin(t));
  GaussianChannel ch{x * Eigen::MatrixXd::Identity(2, 2), std::abs(1.0 - x * x) * vacuum.matrix(), t};
  validate_channel(ch);
  return ch;
}

std::vector<GaussianChannel> gaussian_series(const RunConfig& cfg) {
  if (cfg.model.empty() || cfg.model == "attenuation" || cfg.model == "oscillating") {
    if (!(cfg.gamma >= 0.0)) throw DomainError("--gamma must be non-negative, got " + io::format_number(cfg.gamma));
    const std::string family = cfg.model.empty() ? "attenuation" : cfg.model;
    std::vector<GaussianChannel> channels;
    for (double t : time_grid(cfg)) channels.push_back(builtin_gaussian(family, cfg.gamma, t));
    return channels;
  }
  if (cfg.model == "lorentzian") throw InputError("--model lorentzian is not a Gaussian channel family");
  auto spec = io::load_model_file(cfg.model);
  if (auto* channels = std::get_if<std::vector<GaussianChannel>>(&spec)) return std::move(*channels);
  throw InputError("model file '" + cfg.model + "' does not describe a gaussian_series");
}

// Discrete-variable maps on the configured grid.
std::vector<AffineBlochMap> dv_maps(const RunConfig& cfg) {
  const std::vector<double> grid = time_grid(cfg);
  std::vector<AffineBlochMap> maps;
  maps.reserve(grid.size());
  if (cfg.model.empty() || cfg.model == "lorentzian") {
    const LorentzianDecayModel model = lorentzian_from(cfg);
    const GeneratorBasis basis(2);
    for (double t : grid) maps.push_back(lorentzian_map(model, t, basis));
    return maps;
  }
  if (is_builtin(cfg.model)) throw InputError("--model " + cfg.model + " is a Gaussian family");
  auto spec = io::load_model_file(cfg.model);
  if (auto* deph = std::get_if<DephasingModel>(&spec)) {
    const GeneratorBasis basis(2);
    for (double t : grid) maps.push_back(dephasing_map(*deph, t, basis));
    return maps;
  }
  if (auto* lind = std::get_if<LindbladModel>(&spec)) {
    const GeneratorBasis basis(lind->dimension());
    return lindblad_propagate(*lind, basis, grid);
  }
  throw InputError("model file '" + cfg.model + "' describes Gaussian channels; use the gaussian subcommand");
}

VolumeTrajectory model_trajectory(const RunConfig& cfg) {
  if (cfg.model == "attenuation" || cfg.model == "oscillating") return gaussian_trajectory(gaussian_series(cfg));
  if (!is_builtin(cfg.model)) {
    auto spec = io::load_model_file(cfg.model);
    if (auto* channels = std::get_if<std::vector<GaussianChannel>>(&spec)) return gaussian_trajectory(*channels);
  }
  const auto maps = dv_maps(cfg);
  return trajectory_from_maps(maps, cfg.model.empty() ? "lorentzian" : cfg.model);
}

std::vector<double> scan_values(const RunConfig& cfg) {
  std::vector<double> values(static_cast<std::size_t>(cfg.scan_points));
  for (int i = 0; i < cfg.scan_points; ++i) {
    values[static_cast<std::size_t>(i)] =
        cfg.scan_points == 1 ? cfg.scan_min
                             : cfg.scan_min + (cfg.scan_max - cfg.scan_min) * i / static_cast<double>(cfg.scan_points - 1);
  }
  return values;
}

template <typename Fn>
void parallel_for(std::size_t count, int workers, Fn&& fn) {
  unsigned threads = workers > 0 ? static_cast<unsigned>(workers) : std::max(1U, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(count, 1)));
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(threads);
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < threads; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = next++; i < count; i = next++) fn(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace

void validate(const RunConfig& cfg) {
  if (cfg.points < 2) throw InputError("--points must be at least 2, got " + std::to_string(cfg.points));
  if (!(cfg.t_max > 0.0)) throw InputError("--t-max must be positive, got " + io::format_number(cfg.t_max));
  if (!(cfg.threshold >= 0.0)) throw InputError("--threshold must be non-negative");
  if (cfg.shots && *cfg.shots <= 0) throw InputError("--shots must be positive or 'inf'");
  if (cfg.command == Command::kScanDetuning || cfg.command == Command::kScanCoupling) {
    if (cfg.scan_points < 1 || !(cfg.scan_max >= cfg.scan_min)) {
      throw InputError("empty scan range [" + io::format_number(cfg.scan_min) + ", " + io::format_number(cfg.scan_max) +
                       "] with " + std::to_string(cfg.scan_points) + " points");
    }
  }
}

std::vector<double> time_grid(const RunConfig& cfg) {
  std::vector<double> grid(static_cast<std::size_t>(cfg.points));
  for (int i = 0; i < cfg.points; ++i) {
    grid[static_cast<std::size_t>(i)] = cfg.t_max * i / static_cast<double>(cfg.points - 1);
  }
  return grid;
}

void run_trajectory(const RunConfig& cfg, std::ostream& out) { io::write_trajectory_csv(out, model_trajectory(cfg)); }

void run_nv(const RunConfig& cfg, std::ostream& out) {
  VolumeTrajectory traj;
  if (!cfg.input.empty()) {
    std::ifstream in(cfg.input);
    if (!in) throw InputError("cannot open trajectory file '" + cfg.input + "'");
    traj = io::read_trajectory_csv(in);
  } else {
    traj = model_trajectory(cfg);
  }
  io::Json summary = io::result_to_json(measure_nv(traj, cfg.threshold));
  summary["source"] = traj.source;
  summary["samples"] = traj.size();
  out << summary.dump(2) << '\n';
}

void run_scan(const RunConfig& cfg, std::ostream& out) {
  const bool detuning = cfg.command == Command::kScanDetuning;
  if (!detuning && !(cfg.scan_min > 0.0)) {
    throw DomainError("--gamma0-over-lambda scan values must be positive, scan starts at " +
                      io::format_number(cfg.scan_min));
  }
  const std::vector<double> params = scan_values(cfg);
  const std::vector<double> grid = time_grid(cfg);
  std::vector<double> nv(params.size());
  parallel_for(params.size(), cfg.workers, [&](std::size_t i) {
    RunConfig point = cfg;
    (detuning ? point.delta_over_lambda : point.gamma0_over_lambda) = params[i];
    const LorentzianDecayModel model = lorentzian_from(point);
    const GeneratorBasis basis(2);
    VolumeTrajectory traj;
    traj.times = grid;
    traj.volumes.reserve(grid.size());
    for (double t : grid) traj.volumes.push_back(volume_factor(lorentzian_map(model, t, basis)));
    nv[i] = measure_nv(traj, cfg.threshold).n_v;
  });
  out << "param,n_v\n";
  for (std::size_t i = 0; i < params.size(); ++i) {
    out << io::format_number(params[i]) << ',' << io::format_number(nv[i]) << '\n';
  }
}

void run_gaussian(const RunConfig& cfg, std::ostream& out, std::ostream& log) {
  const auto channels = gaussian_series(cfg);
  const VolumeTrajectory traj = gaussian_trajectory(channels);
  io::write_trajectory_csv(out, traj);
  log << "n_v=" << io::format_number(measure_nv(traj, cfg.threshold).n_v)
      << " threshold=" << io::format_number(cfg.threshold) << '\n';
}

void run_tomo_sim(const RunConfig& cfg, std::ostream& out, std::ostream& log) {
  const auto maps = dv_maps(cfg);
  const TomographyPlan plan = make_plan(GeneratorBasis(maps.front().dimension()));
  VolumeTrajectory truth;
  VolumeTrajectory estimate;
  out << "t,V_true,V_est\n";
  for (std::size_t k = 0; k < maps.size(); ++k) {
    const auto record = simulate_record(plan, maps[k], cfg.shots, cfg.seed + k);
    const double v_true = volume_factor(maps[k]);
    const double v_est = estimate_volume(record, plan);
    truth.times.push_back(maps[k].time());
    truth.volumes.push_back(v_true);
    estimate.times.push_back(maps[k].time());
    estimate.volumes.push_back(v_est);
    out << io::format_number(maps[k].time()) << ',' << io::format_number(v_true) << ',' << io::format_number(v_est)
        << '\n';
  }
  log << "n_v_true=" << io::format_number(measure_nv(truth, cfg.threshold).n_v)
      << " n_v_est=" << io::format_number(measure_nv(estimate, cfg.threshold).n_v)
      << " threshold=" << io::format_number(cfg.threshold) << '\n';
}

int run(const RunConfig& cfg, std::ostream& stdout_stream, std::ostream& err) {
  try {
    validate(cfg);
    std::ostringstream buffer;
    switch (cfg.command) {
      case Command::kTrajectory:
        run_trajectory(cfg, buffer);
        break;
      case Command::kNv:
        run_nv(cfg, buffer);
        break;
      case Command::kScanDetuning:
      case Command::kScanCoupling:
        run_scan(cfg, buffer);
        break;
      case Command::kGaussian:
        run_gaussian(cfg, buffer, err);
        break;
      case Command::kTomoSim:
        run_tomo_sim(cfg, buffer, err);
        break;
    }
    if (cfg.out.empty()) {
      stdout_stream << buffer.str();
    } else {
      std::ofstream file(cfg.out, std::ios::binary);
      if (!file) throw InputError("cannot open output file '" + cfg.out + "'");
      file << buffer.str();
    }
    return kExitOk;
  } catch (const ShapeError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitNumeric;
  }
}

int main_entry(int argc, const char* const* argv, std::ostream& stdout_stream, std::ostream& err) {
  CLI::App app{"Volume-of-accessible-states non-Markovianity toolkit"};
  app.require_subcommand(1);
  RunConfig cfg;
  std::string shots = "inf";

  auto add_grid = [&](CLI::App* sub) {
    sub->add_option("--t-max", cfg.t_max, "Final time (units of 1/lambda for the Lorentzian model)");
    sub->add_option("--points", cfg.points, "Number of grid points, including t = 0");
    sub->add_option("--threshold", cfg.threshold, "Growth threshold for N_V");
    sub->add_option("--out", cfg.out, "Output path (stdout when omitted)");
  };
  auto add_lorentzian = [&](CLI::App* sub) {
    sub->add_option("--gamma0-over-lambda", cfg.gamma0_over_lambda, "Coupling gamma0 / lambda");
    sub->add_option("--delta-over-lambda", cfg.delta_over_lambda, "Detuning Delta / lambda");
  };
  auto add_model = [&](CLI::App* sub) {
    sub->add_option("--model", cfg.model, "Built-in model name or path to a JSON model file");
    sub->add_option("--gamma", cfg.gamma, "Attenuation rate of the built-in Gaussian families");
  };

  auto* trajectory = app.add_subcommand("trajectory", "Write t,V for a model");
  add_grid(trajectory);
  add_lorentzian(trajectory);
  add_model(trajectory);

  auto* nv = app.add_subcommand("nv", "Compute N_V for a model or a t,V CSV file");
  add_grid(nv);
  add_lorentzian(nv);
  add_model(nv);
  nv->add_option("--input", cfg.input, "Trajectory CSV with header t,V");

  auto* scan_detuning = app.add_subcommand("scan-detuning", "N_V as a function of Delta / lambda");
  auto* scan_coupling = app.add_subcommand("scan-coupling", "N_V as a function of gamma0 / lambda");
  for (auto* sub : {scan_detuning, scan_coupling}) {
    add_grid(sub);
    add_lorentzian(sub);
    sub->add_option("--scan-min", cfg.scan_min, "First scanned value");
    sub->add_option("--scan-max", cfg.scan_max, "Last scanned value");
    sub->add_option("--scan-points", cfg.scan_points, "Number of scanned values");
    sub->add_option("--workers", cfg.workers, "Worker threads (0 = hardware concurrency)");
  }

  auto* gaussian = app.add_subcommand("gaussian", "Write t,V for a Gaussian channel family");
  add_grid(gaussian);
  add_model(gaussian);

  auto* tomo = app.add_subcommand("tomo-sim", "Simulated volume tomography: t,V_true,V_est");
  add_grid(tomo);
  add_lorentzian(tomo);
  add_model(tomo);
  tomo->add_option("--shots", shots, "Measurements per observable, or 'inf'");
  tomo->add_option("--seed", cfg.seed, "Seed of the sampling noise");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, stdout_stream, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  if (*trajectory) cfg.command = Command::kTrajectory;
  if (*nv) cfg.command = Command::kNv;
  if (*scan_detuning) cfg.command = Command::kScanDetuning;
  if (*scan_coupling) {
    cfg.command = Command::kScanCoupling;
    if (scan_coupling->count("--scan-min") == 0) cfg.scan_min = 0.1;
  }
  if (*gaussian) cfg.command = Command::kGaussian;
  if (*tomo) cfg.command = Command::kTomoSim;

  if (shots != "inf") {
    try {
      std::size_t used = 0;
      const long long value = std::stoll(shots, &used);
      if (used != shots.size()) throw std::invalid_argument(shots);
      cfg.shots = value;
    } catch (const std::logic_error&) {
      err << "error: --shots must be an integer or 'inf', got '" << shots << "'\n";
      return kExitUsage;
    }
  }
  return run(cfg, stdout_stream, err);
}

}  // namespace nmvol::cli
