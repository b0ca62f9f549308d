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

#include "nmvol/volume_measure.hpp"

#include <cmath>
#include <string>

#include "nmvol/errors.hpp"

namespace nmvol {

void VolumeTrajectory::validate() const {
  if (times.size() != volumes.size()) {
    throw InputError("trajectory has " + std::to_string(times.size()) + " times but " +
                     std::to_string(volumes.size()) + " volumes");
  }
  for (std::size_t k = 0; k < volumes.size(); ++k) {
    if (!(volumes[k] >= 0.0)) throw InputError("negative or NaN volume at sample " + std::to_string(k));
    if (k > 0 && !(times[k] > times[k - 1])) {
      throw InputError("time grid is not strictly increasing at sample " + std::to_string(k));
    }
  }
}

VolumeTrajectory trajectory_from_maps(std::span<const AffineBlochMap> maps, std::string source) {
  VolumeTrajectory traj;
  traj.source = std::move(source);
  traj.times.reserve(maps.size());
  traj.volumes.reserve(maps.size());
  for (const auto& m : maps) {
    traj.times.push_back(m.time());
    traj.volumes.push_back(volume_factor(m));
  }
  return traj;
}

double positive_increment_sum(std::span<const double> volumes, double growth_threshold) {
  double sum = 0.0;
  for (std::size_t k = 1; k < volumes.size(); ++k) {
    const double dv = volumes[k] - volumes[k - 1];
    if (dv > growth_threshold) sum += dv;
  }
  return sum;
}

NonMarkovianityResult measure_nv(const VolumeTrajectory& trajectory, double growth_threshold) {
  if (!(growth_threshold >= 0.0)) throw DomainError("growth threshold must be non-negative");
  trajectory.validate();

  NonMarkovianityResult result;
  result.threshold = growth_threshold;
  if (trajectory.size() < 2) return result;

  const double v0 = trajectory.volumes.front();
  if (v0 <= 0.0) throw InputError("cannot normalize a trajectory that starts with zero volume");

  bool open = false;
  GrowthInterval current;
  for (std::size_t k = 1; k < trajectory.size(); ++k) {
    const double dv = (trajectory.volumes[k] - trajectory.volumes[k - 1]) / v0;
    if (dv > growth_threshold) {
      if (!open) {
        current = {trajectory.times[k - 1], trajectory.times[k], 0.0};
        open = true;
      }
      current.t_end = trajectory.times[k];
      current.delta_v += dv;
      result.n_v += dv;
    } else {
      if (open) {
        result.growth_intervals.push_back(current);
        open = false;
      }
      if (dv < 0.0) result.total_decay += dv;
    }
  }
  if (open) result.growth_intervals.push_back(current);
  return result;
}

double entropy_change(double volume_ratio) {
  if (!(volume_ratio > 0.0)) {
    throw DomainError("entropy change diverges for a non-positive volume ratio");
  }
  return std::log2(volume_ratio);
}

bool is_volume_monotone(const VolumeTrajectory& trajectory, double tol) {
  for (std::size_t k = 1; k < trajectory.volumes.size(); ++k) {
    if (trajectory.volumes[k] > trajectory.volumes[k - 1] + tol) return false;
  }
  return true;
}

}  // namespace nmvol
