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

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <numbers>
#include <random>

#include "nmvol/errors.hpp"
#include "nmvol/model_channels.hpp"
#include "nmvol/volume_measure.hpp"

using namespace nmvol;

namespace {

VolumeTrajectory make_traj(std::vector<double> v) {
  VolumeTrajectory traj;
  for (std::size_t k = 0; k < v.size(); ++k) traj.times.push_back(static_cast<double>(k));
  traj.volumes = std::move(v);
  return traj;
}

VolumeTrajectory lorentzian_traj(double g0, double delta, double t_max, int points) {
  const LorentzianDecayModel model(g0, 1.0, delta);
  const GeneratorBasis basis(2);
  VolumeTrajectory traj;
  for (int i = 0; i < points; ++i) {
    const double t = t_max * i / (points - 1.0);
    traj.times.push_back(t);
    traj.volumes.push_back(volume_factor(lorentzian_map(model, t, basis)));
  }
  return traj;
}

// Independent oracle for the resonant good cavity: integrate the positive
// part of d|Gamma|^4/dt with adaptive Gauss-Kronrod, split at the analytic
// zeros and extrema of Gamma(t) = e^{-t/2}(cos(dt/2) + sin(dt/2)/d).
double resonant_nv_quadrature(double g0, double t_max) {
  const double d = std::sqrt(2.0 * g0 - 1.0);
  auto gamma = [d](double t) { return std::exp(-0.5 * t) * (std::cos(0.5 * d * t) + std::sin(0.5 * d * t) / d); };
  auto dgamma = [d](double t) { return -std::exp(-0.5 * t) * std::sin(0.5 * d * t) * (1.0 + d * d) / (2.0 * d); };
  auto rate = [&](double t) {
    const double g = gamma(t);
    return std::max(0.0, 4.0 * g * g * g * dgamma(t));
  };
  std::vector<double> cuts{0.0, t_max};
  for (int k = 1;; ++k) {
    const double extremum = 2.0 * k * std::numbers::pi / d;
    const double zero = 2.0 * (k * std::numbers::pi - std::atan(d)) / d;
    if (zero > t_max && extremum > t_max) break;
    if (zero < t_max) cuts.push_back(zero);
    if (extremum < t_max) cuts.push_back(extremum);
  }
  std::sort(cuts.begin(), cuts.end());
  double total = 0.0;
  for (std::size_t i = 1; i < cuts.size(); ++i) {
    total += boost::math::quadrature::gauss_kronrod<double, 61>::integrate(rate, cuts[i - 1], cuts[i], 15, 1e-14);
  }
  return total;
}

}  // namespace

TEST_CASE("measure_nv examples") {
  SUBCASE("monotone decay") {
    const auto r = measure_nv(make_traj({1.0, 0.5, 0.2, 0.1}));
    CHECK(r.n_v == 0.0);
    CHECK(r.growth_intervals.empty());
    CHECK(r.total_decay == doctest::Approx(-0.9));
  }
  SUBCASE("single revival") {
    const auto r = measure_nv(make_traj({1.0, 0.2, 0.0, 0.3, 0.0}));
    CHECK(r.n_v == doctest::Approx(0.3));
    REQUIRE(r.growth_intervals.size() == 1);
    CHECK(r.growth_intervals[0].t_start == 2.0);
    CHECK(r.growth_intervals[0].t_end == 3.0);
    CHECK(r.growth_intervals[0].delta_v == doctest::Approx(0.3));
  }
  SUBCASE("revivals spanning several samples merge") {
    const auto r = measure_nv(make_traj({1.0, 0.1, 0.2, 0.4, 0.3, 0.35}));
    REQUIRE(r.growth_intervals.size() == 2);
    CHECK(r.growth_intervals[0].t_start == 1.0);
    CHECK(r.growth_intervals[0].t_end == 3.0);
    CHECK(r.growth_intervals[0].delta_v == doctest::Approx(0.3));
    CHECK(r.n_v == doctest::Approx(0.35));
  }
}

TEST_CASE("measure_nv normalizes by the initial volume") {
  const auto r = measure_nv(make_traj({0.5, 0.1, 0.3}));
  CHECK(r.n_v == doctest::Approx(0.4));
  CHECK_THROWS_AS(measure_nv(make_traj({0.0, 0.1})), InputError);
}

TEST_CASE("measure_nv rejects malformed trajectories") {
  VolumeTrajectory bad_grid{{0.0, 1.0, 1.0}, {1.0, 0.5, 0.4}, ""};
  CHECK_THROWS_AS(measure_nv(bad_grid), InputError);
  CHECK_THROWS_AS(measure_nv(make_traj({1.0, -0.1})), InputError);
  VolumeTrajectory mismatch{{0.0, 1.0}, {1.0}, ""};
  CHECK_THROWS_AS(measure_nv(mismatch), InputError);
  CHECK_THROWS_AS(measure_nv(make_traj({1.0, 0.5}), -1.0), DomainError);
}

TEST_CASE("growth threshold filters jitter") {
  const auto traj = make_traj({1.0, 0.5, 0.5 + 1e-14, 0.4, 0.6});
  CHECK(measure_nv(traj).n_v == doctest::Approx(0.2));
  CHECK(measure_nv(traj).growth_intervals.size() == 1);
  CHECK(measure_nv(traj, 0.0).growth_intervals.size() == 2);
  CHECK(measure_nv(traj, 0.3).n_v == 0.0);
}

TEST_CASE("good-cavity N_V matches the revival peaks and a quadrature oracle") {
  const double g0 = 10.0;
  const auto traj = lorentzian_traj(g0, 0.0, 20.0, 4000);
  const auto r = measure_nv(traj);

  const double quad = resonant_nv_quadrature(g0, 20.0);
  CHECK(std::abs(r.n_v - quad) / quad < 1e-4);

  // Peaks of |Gamma|^4 after each zero sit at t_k = 2k pi / d with height e^{-2 t_k}.
  const double d = std::sqrt(2.0 * g0 - 1.0);
  double peaks = 0.0;
  for (int k = 1; 2.0 * k * std::numbers::pi / d <= 20.0; ++k) peaks += std::exp(-4.0 * k * std::numbers::pi / d);
  CHECK(std::abs(r.n_v - peaks) / peaks < 1e-4);
  REQUIRE_FALSE(r.growth_intervals.empty());
  const double first_zero = 2.0 * (std::numbers::pi - std::atan(d)) / d;
  CHECK(std::abs(r.growth_intervals[0].t_start - first_zero) <= 20.0 / 3999.0);
  CHECK(std::abs(r.growth_intervals[0].t_end - 2.0 * std::numbers::pi / d) <= 20.0 / 3999.0);
}

TEST_CASE("entropy_change") {
  CHECK(entropy_change(1.0) == 0.0);
  CHECK(entropy_change(0.5) == doctest::Approx(-1.0));
  CHECK(entropy_change(0.25) == doctest::Approx(-2.0));
  CHECK_THROWS_AS(entropy_change(0.0), DomainError);
  CHECK_THROWS_AS(entropy_change(-0.5), DomainError);
}

TEST_CASE("is_volume_monotone") {
  const GeneratorBasis basis(2);
  std::vector<double> grid;
  for (int i = 0; i <= 200; ++i) grid.push_back(0.025 * i);
  const auto maps = lindblad_propagate(amplitude_damping_model(1.0), basis, grid);
  CHECK(is_volume_monotone(trajectory_from_maps(maps)));
  CHECK_FALSE(is_volume_monotone(lorentzian_traj(10.0, 0.0, 10.0, 2000)));
  CHECK(is_volume_monotone(make_traj(std::vector<double>(10, 1.0))));
  CHECK(is_volume_monotone(make_traj({1.0, 1.0 + 1e-13}), 1e-12));
}

TEST_CASE("N_V properties on random trajectories") {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 60);
    std::vector<double> v(static_cast<std::size_t>(2 * n + 1));
    v[0] = 1.0;
    for (std::size_t k = 1; k < v.size(); ++k) v[k] = unif(rng);
    const auto traj = make_traj(v);
    const auto r = measure_nv(traj);

    double sum = 0.0;
    for (const auto& iv : r.growth_intervals) sum += iv.delta_v;
    CHECK(std::abs(r.n_v - sum) < 1e-12);
    CHECK(r.n_v >= 0.0);
    CHECK((r.n_v == 0.0) == is_volume_monotone(traj, 1e-12));

    // Additivity over a split at a grid point.
    const auto mid = static_cast<std::ptrdiff_t>(n);
    const std::vector<double> first(v.begin(), v.begin() + mid + 1);
    const std::vector<double> second(v.begin() + mid, v.end());
    CHECK(positive_increment_sum(v) ==
          doctest::Approx(positive_increment_sum(first) + positive_increment_sum(second)).epsilon(1e-15));

    // Scale covariance of the raw increment sum.
    const double c = 0.1 + 5.0 * unif(rng);
    std::vector<double> scaled(v);
    for (auto& x : scaled) x *= c;
    CHECK(positive_increment_sum(scaled, 0.0) == doctest::Approx(c * positive_increment_sum(v, 0.0)).epsilon(1e-12));
    // After normalization by V_0 the measure is scale invariant.
    CHECK(measure_nv(make_traj(scaled), 0.0).n_v == doctest::Approx(measure_nv(traj, 0.0).n_v).epsilon(1e-12));
  }
}
