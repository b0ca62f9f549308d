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

#include <iosfwd>
#include <json.hpp>
#include <string>
#include <variant>
#include <vector>

#include "nmvol/affine_map.hpp"
#include "nmvol/gaussian_cv.hpp"
#include "nmvol/model_channels.hpp"
#include "nmvol/tomography.hpp"
#include "nmvol/volume_measure.hpp"

namespace nmvol::io {

using Json = nlohmann::json;

/// Formats with 17 significant digits (lossless for doubles).
std::string format_number(double value);

// CSV trajectories: header "t,V", one sample per row.
void write_trajectory_csv(std::ostream& out, const VolumeTrajectory& trajectory);
/// Throws InputError on a wrong header or malformed row.
VolumeTrajectory read_trajectory_csv(std::istream& in);

// Structured text records (JSON).
//
// AffineBlochMap: {"dimension": N, "time": t, "A": [row-major], "q": [...]}
Json map_to_json(const AffineBlochMap& map);
AffineBlochMap map_from_json(const Json& j);

// TomographyRecord: {"time", "shots" (null = exact), "seed",
//   "evolved_vectors": [column-major], "mixed_image": [...], "rows": N^2-1}
Json record_to_json(const TomographyRecord& record);
TomographyRecord record_from_json(const Json& j);

// GaussianChannel: {"t", "modes", "X": [row-major], "Y": [row-major]}
Json gaussian_channel_to_json(const GaussianChannel& channel);
GaussianChannel gaussian_channel_from_json(const Json& j);

Json result_to_json(const NonMarkovianityResult& result);

/// Model description loaded from a JSON file, tagged by its "model" field:
///   "dephasing"       -> {"nu": {"kind": "exponential"|"damped_oscillation"|"sampled", ...}}
///   "lindblad"        -> {"hamiltonian", "jump_operators", "rates"}
///   "gaussian_series" -> {"channels": [GaussianChannel records]}
using ModelSpec = std::variant<DephasingModel, LindbladModel, std::vector<GaussianChannel>>;

ModelSpec model_from_json(const Json& j);
ModelSpec load_model_file(const std::string& path);

}  // namespace nmvol::io
