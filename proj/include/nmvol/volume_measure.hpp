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

#include <span>
#include <string>
#include <vector>

#include "nmvol/affine_map.hpp"

namespace nmvol {

inline constexpr double kDefaultGrowthThreshold = 1e-12;

/// Sampled accessible-state volume V(t_k) = |det A_{t_k}|.
struct VolumeTrajectory {
  std::vector<double> times;
  std::vector<double> volumes;
  std::string source;

  /// Throws InputError on length mismatch, a non-increasing time grid or a
  /// negative volume.
  void validate() const;
  std::size_t size() const { return times.size(); }
};

/// One maximal run of above-threshold volume increments. `t_start` is the
/// grid time of the local minimum that opens the run, `t_end` the grid time
/// of the local maximum that closes it.
struct GrowthInterval {
  double t_start = 0.0;
  double t_end = 0.0;
  double delta_v = 0.0;
};

struct NonMarkovianityResult {
  double n_v = 0.0;
  std::vector<GrowthInterval> growth_intervals;
  /// Sum of the negative increments (<= 0), in the same normalization as n_v.
  double total_decay = 0.0;
  double threshold = kDefaultGrowthThreshold;
};

/// Builds a trajectory from maps sampled at increasing times.
VolumeTrajectory trajectory_from_maps(std::span<const AffineBlochMap> maps, std::string source = {});

/// sum_k max(0, V_{k+1} - V_k) over increments above `growth_threshold`,
/// without any normalization.
double positive_increment_sum(std::span<const double> volumes, double growth_threshold = kDefaultGrowthThreshold);

/// Non-Markovianity measure N_V: the accumulated volume growth divided by V(0).
///
/// Increments are taken on the grid, so kinks of |det A| (zeros of the
/// map) are handled without differentiating. Increments of V_k / V_0 that do
/// not exceed `growth_threshold` are treated as numerical jitter. Throws
/// InputError for an invalid trajectory or V_0 = 0, DomainError for a
/// negative threshold.
NonMarkovianityResult measure_nv(const VolumeTrajectory& trajectory,
                                 double growth_threshold = kDefaultGrowthThreshold);

/// Change of the differential entropy of a Bloch-vector ensemble, log2 of
/// the volume ratio. Throws DomainError for ratio <= 0.
double entropy_change(double volume_ratio);

/// True iff V_{k+1} <= V_k + tol for every k.
bool is_volume_monotone(const VolumeTrajectory& trajectory, double tol = 0.0);

}  // namespace nmvol
