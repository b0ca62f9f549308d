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

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <span>

#include "nmvol/affine_map.hpp"
#include "nmvol/volume_measure.hpp"

namespace nmvol {

/// Preparations for volume tomography: N^2 - 1 Bloch vectors forming a
/// scaled orthogonal basis (columns of P0), plus the maximally mixed state.
struct TomographyPlan {
  int dimension = 0;
  Eigen::MatrixXd initial_vectors;
  double scale = 0.0;

  /// |det P0|.
  double initial_volume() const;
};

/// Canonical plan P0 = c * identity with c the largest value such that every
/// 1/N + c G_i is positive semidefinite (bisection to 1e-12, keeping the
/// feasible side).
TomographyPlan make_plan(const GeneratorBasis& basis);

/// Same plan with its axes rotated by an orthogonal matrix, P0 -> O P0.
/// Physicality of the rotated preparations is not checked.
TomographyPlan rotate_plan(const TomographyPlan& plan, const Eigen::MatrixXd& rotation);

/// Tomographic snapshot at one time. `shots` is empty for exact
/// (noiseless) data.
struct TomographyRecord {
  double time = 0.0;
  Eigen::MatrixXd evolved_vectors;
  Eigen::VectorXd mixed_image;
  std::optional<std::int64_t> shots;
  std::uint64_t seed = 0;
};

/// Evolves every preparation through `map`.
///
/// With finite `shots` each reconstructed Bloch component carries sampling
/// noise: for qubits the mean of `shots` outcomes +-1/sqrt(2) of the
/// generator observable (binomial); for N > 2 a Gaussian with the
/// observable's variance divided by `shots`. Throws DomainError for
/// shots <= 0 and ShapeError on a dimension mismatch.
TomographyRecord simulate_record(const TomographyPlan& plan, const AffineBlochMap& map,
                                 std::optional<std::int64_t> shots = std::nullopt, std::uint64_t seed = 0);

/// sqrt(det(M M^T)) / |det P0| with M = P_t - Q_t, where every column of
/// Q_t is the image of the maximally mixed state.
double estimate_volume(const TomographyRecord& record, const TomographyPlan& plan);

VolumeTrajectory trajectory_from_records(std::span<const TomographyRecord> records, const TomographyPlan& plan);

NonMarkovianityResult estimate_nv_from_records(std::span<const TomographyRecord> records, const TomographyPlan& plan,
                                               double growth_threshold = kDefaultGrowthThreshold);

}  // namespace nmvol
