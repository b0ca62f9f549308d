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

#include "nmvol/io.hpp"

#include <cmath>
#include <complex>
#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>

#include "nmvol/errors.hpp"

namespace nmvol::io {

namespace {

std::vector<double> flatten_row_major(const Eigen::MatrixXd& m) {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(m.size()));
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) out.push_back(m(i, j));
  }
  return out;
}

Eigen::MatrixXd matrix_from_row_major(const std::vector<double>& values, Eigen::Index rows, Eigen::Index cols,
                                      const char* what) {
  if (static_cast<Eigen::Index>(values.size()) != rows * cols) {
    throw InputError(std::string(what) + ": expected " + std::to_string(rows * cols) + " entries, got " +
                     std::to_string(values.size()));
  }
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = values[static_cast<std::size_t>(i * cols + j)];
  }
  return m;
}

Eigen::VectorXd vector_from(const std::vector<double>& values) {
  return Eigen::Map<const Eigen::VectorXd>(values.data(), static_cast<Eigen::Index>(values.size()));
}

// {"re": [[...]], "im": [[...]]} with "im" optional.
Eigen::MatrixXcd complex_matrix_from_json(const Json& j, Eigen::Index n, const char* what) {
  auto read_part = [&](const char* key) {
    Eigen::MatrixXd part = Eigen::MatrixXd::Zero(n, n);
    if (!j.contains(key)) return part;
    const auto rows = j.at(key).get<std::vector<std::vector<double>>>();
    if (static_cast<Eigen::Index>(rows.size()) != n) {
      throw InputError(std::string(what) + "." + key + " must have " + std::to_string(n) + " rows");
    }
    for (Eigen::Index i = 0; i < n; ++i) {
      const auto& row = rows[static_cast<std::size_t>(i)];
      if (static_cast<Eigen::Index>(row.size()) != n) {
        throw InputError(std::string(what) + "." + key + " must have " + std::to_string(n) + " columns");
      }
      for (Eigen::Index k = 0; k < n; ++k) part(i, k) = row[static_cast<std::size_t>(k)];
    }
    return part;
  };
  if (!j.is_object() || !j.contains("re")) throw InputError(std::string(what) + " needs an \"re\" field");
  Eigen::MatrixXcd m(n, n);
  m.real() = read_part("re");
  m.imag() = read_part("im");
  return m;
}

DephasingModel dephasing_from_json(const Json& j) {
  const Json& nu = j.at("nu");
  const auto kind = nu.at("kind").get<std::string>();
  if (kind == "exponential") return DephasingModel::exponential(nu.at("gamma").get<double>());
  if (kind == "damped_oscillation") {
    const double gamma = nu.at("gamma").get<double>();
    const double omega = nu.at("omega").get<double>();
    if (!(gamma >= 0.0)) throw DomainError("nu.gamma must be non-negative");
    return DephasingModel(
        [gamma, omega](double t) { return std::complex<double>(std::exp(-gamma * t) * std::cos(omega * t), 0.0); });
  }
  if (kind == "sampled") {
    const auto ts = nu.at("t").get<std::vector<double>>();
    const auto re = nu.at("re").get<std::vector<double>>();
    const auto im = nu.contains("im") ? nu.at("im").get<std::vector<double>>() : std::vector<double>(re.size(), 0.0);
    if (re.size() != ts.size() || im.size() != ts.size()) throw InputError("nu.t, nu.re and nu.im lengths differ");
    std::vector<std::complex<double>> values(ts.size());
    for (std::size_t k = 0; k < ts.size(); ++k) values[k] = {re[k], im[k]};
    return DephasingModel::sampled(ts, std::move(values));
  }
  throw InputError("unknown dephasing factor kind '" + kind + "'");
}

LindbladModel lindblad_from_json(const Json& j) {
  const auto n = static_cast<Eigen::Index>(j.at("dimension").get<int>());
  if (n < 2) throw DomainError("lindblad.dimension must be >= 2");
  const Eigen::MatrixXcd h = j.contains("hamiltonian") ? complex_matrix_from_json(j.at("hamiltonian"), n, "hamiltonian")
                                                       : Eigen::MatrixXcd::Zero(n, n);
  std::vector<Eigen::MatrixXcd> jumps;
  for (const auto& c : j.at("jump_operators")) jumps.push_back(complex_matrix_from_json(c, n, "jump_operators[]"));
  const auto rows = j.at("rates").get<std::vector<std::vector<double>>>();
  const auto k = static_cast<Eigen::Index>(rows.size());
  Eigen::MatrixXd rates(k, k);
  for (Eigen::Index a = 0; a < k; ++a) {
    if (static_cast<Eigen::Index>(rows[static_cast<std::size_t>(a)].size()) != k) {
      throw InputError("rates must be a square matrix");
    }
    for (Eigen::Index b = 0; b < k; ++b) rates(a, b) = rows[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
  }
  return LindbladModel(h, std::move(jumps), rates);
}

}  // namespace

std::string format_number(double value) {
  std::ostringstream os;
  os << std::setprecision(17) << value;
  return os.str();
}

void write_trajectory_csv(std::ostream& out, const VolumeTrajectory& trajectory) {
  out << "t,V\n";
  for (std::size_t k = 0; k < trajectory.size(); ++k) {
    out << format_number(trajectory.times[k]) << ',' << format_number(trajectory.volumes[k]) << '\n';
  }
}

VolumeTrajectory read_trajectory_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw InputError("empty trajectory file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "t,V") throw InputError("trajectory CSV must start with the header 't,V'");
  VolumeTrajectory traj;
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw InputError("row " + std::to_string(row) + " has no comma");
    try {
      std::size_t used_t = 0;
      std::size_t used_v = 0;
      const std::string ts = line.substr(0, comma);
      const std::string vs = line.substr(comma + 1);
      const double t = std::stod(ts, &used_t);
      const double v = std::stod(vs, &used_v);
      if (used_t != ts.size() || used_v != vs.size()) throw std::invalid_argument("trailing characters");
      traj.times.push_back(t);
      traj.volumes.push_back(v);
    } catch (const std::logic_error&) {
      throw InputError("row " + std::to_string(row) + " is not a pair of numbers: '" + line + "'");
    }
  }
  traj.source = "csv";
  return traj;
}

Json map_to_json(const AffineBlochMap& map) {
  return Json{{"dimension", map.dimension()},
              {"time", map.time()},
              {"A", flatten_row_major(map.linear_part())},
              {"q", std::vector<double>(map.translation().data(), map.translation().data() + map.bloch_size())}};
}

AffineBlochMap map_from_json(const Json& j) {
  try {
    const int n = j.at("dimension").get<int>();
    if (n < 2) throw InputError("map record dimension must be >= 2");
    const Eigen::Index m = static_cast<Eigen::Index>(n) * n - 1;
    const auto q = j.at("q").get<std::vector<double>>();
    return AffineBlochMap(n, matrix_from_row_major(j.at("A").get<std::vector<double>>(), m, m, "A"), vector_from(q),
                          j.at("time").get<double>());
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed map record: ") + e.what());
  }
}

Json record_to_json(const TomographyRecord& record) {
  std::vector<double> columns(record.evolved_vectors.data(),
                              record.evolved_vectors.data() + record.evolved_vectors.size());
  Json j{{"time", record.time},
         {"shots", nullptr},
         {"seed", record.seed},
         {"rows", record.evolved_vectors.rows()},
         {"evolved_vectors", columns},
         {"mixed_image",
          std::vector<double>(record.mixed_image.data(), record.mixed_image.data() + record.mixed_image.size())}};
  if (record.shots) j["shots"] = *record.shots;
  return j;
}

TomographyRecord record_from_json(const Json& j) {
  try {
    TomographyRecord record;
    record.time = j.at("time").get<double>();
    if (!j.at("shots").is_null()) record.shots = j.at("shots").get<std::int64_t>();
    record.seed = j.at("seed").get<std::uint64_t>();
    const auto rows = j.at("rows").get<Eigen::Index>();
    const auto columns = j.at("evolved_vectors").get<std::vector<double>>();
    if (rows <= 0 || static_cast<Eigen::Index>(columns.size()) != rows * rows) {
      throw InputError("evolved_vectors must hold rows*rows entries");
    }
    record.evolved_vectors = Eigen::Map<const Eigen::MatrixXd>(columns.data(), rows, rows);
    record.mixed_image = vector_from(j.at("mixed_image").get<std::vector<double>>());
    if (record.mixed_image.size() != rows) throw InputError("mixed_image length does not match rows");
    return record;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed tomography record: ") + e.what());
  }
}

Json gaussian_channel_to_json(const GaussianChannel& channel) {
  return Json{{"t", channel.time},
              {"modes", channel.modes()},
              {"X", flatten_row_major(channel.x)},
              {"Y", flatten_row_major(channel.y)}};
}

GaussianChannel gaussian_channel_from_json(const Json& j) {
  try {
    const int modes = j.at("modes").get<int>();
    if (modes < 1) throw InputError("gaussian channel needs modes >= 1");
    const Eigen::Index d = 2 * modes;
    GaussianChannel ch{matrix_from_row_major(j.at("X").get<std::vector<double>>(), d, d, "X"),
                       matrix_from_row_major(j.at("Y").get<std::vector<double>>(), d, d, "Y"), j.at("t").get<double>()};
    validate_channel(ch);
    return ch;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed gaussian channel record: ") + e.what());
  }
}

Json result_to_json(const NonMarkovianityResult& result) {
  Json intervals = Json::array();
  for (const auto& iv : result.growth_intervals) {
    intervals.push_back(Json{{"t_start", iv.t_start}, {"t_end", iv.t_end}, {"delta_v", iv.delta_v}});
  }
  return Json{{"n_v", result.n_v},
              {"total_decay", result.total_decay},
              {"threshold", result.threshold},
              {"growth_intervals", intervals}};
}

ModelSpec model_from_json(const Json& j) {
  try {
    const auto kind = j.at("model").get<std::string>();
    if (kind == "dephasing") return dephasing_from_json(j);
    if (kind == "lindblad") return lindblad_from_json(j);
    if (kind == "gaussian_series") {
      std::vector<GaussianChannel> channels;
      for (const auto& c : j.at("channels")) channels.push_back(gaussian_channel_from_json(c));
      return channels;
    }
    throw InputError("unknown model '" + kind + "'");
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed model file: ") + e.what());
  }
}

ModelSpec load_model_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open model file '" + path + "'");
  try {
    return model_from_json(Json::parse(in));
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError("model file '" + path + "' is not valid JSON: " + e.what());
  }
}

}  // namespace nmvol::io
