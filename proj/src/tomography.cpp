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

#include "nmvol/tomography.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "nmvol/errors.hpp"

namespace nmvol {

namespace {

// Largest c in [0, hi] with 1/N + c G positive semidefinite.
double max_physical_scale(const Eigen::MatrixXcd& generator, int dimension) {
  const Eigen::MatrixXcd mixed = Eigen::MatrixXcd::Identity(dimension, dimension) / static_cast<double>(dimension);
  auto feasible = [&](double c) { return min_eigenvalue(mixed + c * generator) >= 0.0; };
  double lo = 0.0;
  double hi = 1.0;  // |G| has unit Hilbert-Schmidt norm, so c <= 1 always suffices
  while (hi - lo > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    (feasible(mid) ? lo : hi) = mid;
  }
  return lo;
}

void sample_component_noise(Eigen::VectorXd& r, const GeneratorBasis& basis, std::int64_t shots,
                            std::mt19937_64& rng) {
  const int n = basis.dimension();
  if (n == 2) {
    // Outcomes of G_i = sigma_i / sqrt(2) are +-1/sqrt(2).
    const double amp = 1.0 / std::sqrt(2.0);
    for (Eigen::Index i = 0; i < r.size(); ++i) {
      const double p_plus = std::clamp(0.5 * (1.0 + r(i) / amp), 0.0, 1.0);
      std::binomial_distribution<std::int64_t> dist(shots, p_plus);
      const double mean = (2.0 * static_cast<double>(dist(rng)) / static_cast<double>(shots)) - 1.0;
      r(i) = amp * mean;
    }
    return;
  }
  const DensityMatrix rho = from_bloch({n, r}, basis);
  Eigen::VectorXd noisy = r;
  for (Eigen::Index i = 0; i < r.size(); ++i) {
    const Eigen::MatrixXcd& g = basis.generator(static_cast<int>(i));
    const double second_moment = (rho * g * g).trace().real();
    const double variance = std::max(0.0, second_moment - r(i) * r(i));
    std::normal_distribution<double> dist(0.0, std::sqrt(variance / static_cast<double>(shots)));
    noisy(i) += dist(rng);
  }
  r = noisy;
}

}  // namespace

double TomographyPlan::initial_volume() const { return std::abs(initial_vectors.partialPivLu().determinant()); }

TomographyPlan make_plan(const GeneratorBasis& basis) {
  const int n = basis.dimension();
  double c = 1.0;
  for (const auto& g : basis.generators()) c = std::min(c, max_physical_scale(g, n));
  const int m = basis.size();
  return {n, c * Eigen::MatrixXd::Identity(m, m), c};
}

TomographyPlan rotate_plan(const TomographyPlan& plan, const Eigen::MatrixXd& rotation) {
  if (rotation.rows() != plan.initial_vectors.rows() || rotation.cols() != plan.initial_vectors.rows()) {
    throw ShapeError("rotation does not match the plan dimension");
  }
  const Eigen::Index m = rotation.rows();
  if ((rotation.transpose() * rotation - Eigen::MatrixXd::Identity(m, m)).cwiseAbs().maxCoeff() > 1e-10) {
    throw DomainError("rotate_plan needs an orthogonal matrix");
  }
  return {plan.dimension, rotation * plan.initial_vectors, plan.scale};
}

TomographyRecord simulate_record(const TomographyPlan& plan, const AffineBlochMap& map,
                                 std::optional<std::int64_t> shots, std::uint64_t seed) {
  if (shots && *shots <= 0) throw DomainError("shots must be positive, got " + std::to_string(*shots));
  if (map.dimension() != plan.dimension) {
    throw ShapeError("map dimension " + std::to_string(map.dimension()) + " does not match plan dimension " +
                     std::to_string(plan.dimension));
  }
  const int n = plan.dimension;
  TomographyRecord record;
  record.time = map.time();
  record.shots = shots;
  record.seed = seed;
  record.evolved_vectors.resize(plan.initial_vectors.rows(), plan.initial_vectors.cols());
  record.mixed_image = apply(map, {n, Eigen::VectorXd::Zero(map.bloch_size())}).components;
  for (Eigen::Index j = 0; j < plan.initial_vectors.cols(); ++j) {
    record.evolved_vectors.col(j) = apply(map, {n, plan.initial_vectors.col(j)}).components;
  }
  if (!shots) return record;

  const GeneratorBasis basis(n);
  std::mt19937_64 rng(seed);
  for (Eigen::Index j = 0; j < record.evolved_vectors.cols(); ++j) {
    Eigen::VectorXd col = record.evolved_vectors.col(j);
    sample_component_noise(col, basis, *shots, rng);
    record.evolved_vectors.col(j) = col;
  }
  sample_component_noise(record.mixed_image, basis, *shots, rng);
  return record;
}

double estimate_volume(const TomographyRecord& record, const TomographyPlan& plan) {
  if (record.evolved_vectors.rows() != plan.initial_vectors.rows() ||
      record.evolved_vectors.cols() != plan.initial_vectors.cols() ||
      record.mixed_image.size() != plan.initial_vectors.rows()) {
    throw ShapeError("tomography record does not match the plan dimension");
  }
  const double p0 = plan.initial_volume();
  if (!(p0 > 0.0)) throw ContractError("tomography plan has a singular preparation matrix");
  const Eigen::MatrixXd m = record.evolved_vectors.colwise() - record.mixed_image;
  const double gram_det = (m * m.transpose()).partialPivLu().determinant();
  return std::sqrt(std::max(0.0, gram_det)) / p0;
}

VolumeTrajectory trajectory_from_records(std::span<const TomographyRecord> records, const TomographyPlan& plan) {
  VolumeTrajectory traj;
  traj.source = "tomography";
  traj.times.reserve(records.size());
  traj.volumes.reserve(records.size());
  for (const auto& rec : records) {
    traj.times.push_back(rec.time);
    traj.volumes.push_back(estimate_volume(rec, plan));
  }
  return traj;
}

NonMarkovianityResult estimate_nv_from_records(std::span<const TomographyRecord> records, const TomographyPlan& plan,
                                               double growth_threshold) {
  return measure_nv(trajectory_from_records(records, plan), growth_threshold);
}

}  // namespace nmvol
