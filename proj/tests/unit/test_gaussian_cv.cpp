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

#include <cmath>
#include <numbers>
#include <random>
#include <unsupported/Eigen/MatrixFunctions>

#include "nmvol/errors.hpp"
#include "nmvol/gaussian_cv.hpp"

using namespace nmvol;

namespace {

Eigen::MatrixXd random_matrix(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  Eigen::MatrixXd m(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) m(i, j) = normal(rng);
  }
  return m;
}

Eigen::MatrixXd random_symmetric(int n, std::mt19937_64& rng) {
  const Eigen::MatrixXd m = random_matrix(n, rng);
  return 0.5 * (m + m.transpose());
}

// exp(Omega H) with H symmetric is symplectic.
Eigen::MatrixXd random_symplectic(int modes, std::mt19937_64& rng, double scale = 0.3) {
  const Eigen::MatrixXd h = scale * random_symmetric(2 * modes, rng);
  return (symplectic_form(modes) * h).exp();
}

// Thermal-like state S^T S (nbar + 1/2) with random symplectic S.
Eigen::MatrixXd random_state(int modes, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> nbar(0.0, 2.0);
  const Eigen::MatrixXd s = random_symplectic(modes, rng);
  Eigen::VectorXd d(2 * modes);
  for (int k = 0; k < modes; ++k) d(2 * k) = d(2 * k + 1) = nbar(rng) + 0.5;
  return s.transpose() * d.asDiagonal() * s;
}

}  // namespace

TEST_CASE("symplectic form") {
  const Eigen::MatrixXd omega = symplectic_form(2);
  CHECK(omega.rows() == 4);
  CHECK(omega(0, 1) == 1.0);
  CHECK(omega(1, 0) == -1.0);
  CHECK(omega(2, 3) == 1.0);
  CHECK((omega * omega + Eigen::MatrixXd::Identity(4, 4)).norm() < 1e-15);
}

TEST_CASE("covariance matrix validation") {
  CHECK(CovarianceMatrix::vacuum(2).matrix().isApprox(0.5 * Eigen::MatrixXd::Identity(4, 4)));
  CHECK(std::abs(uncertainty_margin(CovarianceMatrix::vacuum(1).matrix())) < 1e-14);
  CHECK_THROWS_AS(CovarianceMatrix(0.4 * Eigen::MatrixXd::Identity(2, 2)), ValidityError);
  CHECK_THROWS_AS(CovarianceMatrix(Eigen::MatrixXd::Identity(3, 3)), ShapeError);
  Eigen::Matrix2d asym;
  asym << 1.0, 0.2, 0.0, 1.0;
  CHECK_THROWS_AS(CovarianceMatrix(Eigen::MatrixXd(asym)), ValidityError);
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) CHECK_NOTHROW(CovarianceMatrix(random_state(2, rng)));
}

TEST_CASE("vectorized action reproduces X^T sigma X + Y") {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 20; ++trial) {
    const int modes = 1 + trial % 3;
    const GaussianChannel ch{random_matrix(2 * modes, rng), random_symmetric(2 * modes, rng), 0.0};
    const Eigen::MatrixXd sigma = random_symmetric(2 * modes, rng);
    const VectorizedGaussianMap vec = vectorize_channel(ch);
    CHECK(vec.xvec.rows() == 4 * modes * modes);
    const Eigen::MatrixXd direct = ch.x.transpose() * sigma * ch.x + ch.y;
    const Eigen::MatrixXd via = unvectorize(vec.xvec * vectorize(sigma) + vec.yvec, 2 * modes);
    CHECK((direct - via).cwiseAbs().maxCoeff() < 1e-10);
  }
  Eigen::MatrixXd m(2, 2);
  m << 1, 2, 3, 4;
  CHECK(vectorize(m) == Eigen::Vector4d(1, 2, 3, 4));
  CHECK(unvectorize(vectorize(m), 2) == m);
}

TEST_CASE("volume factor is |det X|^{4n}") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const int modes = 1 + trial % 2;
    const GaussianChannel ch{0.7 * random_matrix(2 * modes, rng), Eigen::MatrixXd::Zero(2 * modes, 2 * modes), 0.0};
    const double expected = std::pow(std::abs(ch.x.determinant()), 4 * modes);
    CHECK(gaussian_volume_factor(ch) == doctest::Approx(expected).epsilon(1e-9));
  }
}

TEST_CASE("symplectic unitaries preserve volume") {
  std::mt19937_64 rng(6);
  for (int modes = 1; modes <= 3; ++modes) {
    const Eigen::MatrixXd s = random_symplectic(modes, rng);
    const Eigen::MatrixXd omega = symplectic_form(modes);
    CHECK((s.transpose() * omega * s - omega).cwiseAbs().maxCoeff() < 1e-10);
    const GaussianChannel ch{s, Eigen::MatrixXd::Zero(2 * modes, 2 * modes), 0.0};
    CHECK(complete_positivity_margin(ch) > -1e-10);
    CHECK(gaussian_volume_factor(ch) == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("markovian attenuation") {
  const CovarianceMatrix vac = CovarianceMatrix::vacuum(1);
  SUBCASE("volume e^{-4 gamma t} for one mode") {
    for (const double t : {0.0, 0.3, 1.0, 2.5}) {
      const GaussianChannel ch = markovian_attenuation(1.3, vac, t);
      CHECK(gaussian_volume_factor(ch) == doctest::Approx(std::exp(-4.0 * 1.3 * t)).epsilon(1e-12));
      CHECK(complete_positivity_margin(ch) > -1e-12);
    }
  }
  SUBCASE("n modes scale as e^{-4 n^2 gamma t}") {
    const GaussianChannel ch = markovian_attenuation(0.5, CovarianceMatrix::vacuum(2), 1.0);
    CHECK(gaussian_volume_factor(ch) == doctest::Approx(std::exp(-16.0 * 0.5)).epsilon(1e-12));
  }
  SUBCASE("relaxes to the fixed point") {
    Eigen::Matrix2d sinf;
    sinf << 1.5, 0.2, 0.2, 0.8;
    const CovarianceMatrix fixed{Eigen::MatrixXd(sinf)};
    std::mt19937_64 rng(7);
    const CovarianceMatrix start(random_state(1, rng));
    const CovarianceMatrix out = apply_gaussian(markovian_attenuation(1.0, fixed, 40.0), start);
    CHECK((out.matrix() - fixed.matrix()).cwiseAbs().maxCoeff() < 1e-12);
  }
  SUBCASE("vacuum is invariant") {
    const CovarianceMatrix out = apply_gaussian(markovian_attenuation(2.0, vac, 0.7), vac);
    CHECK((out.matrix() - vac.matrix()).cwiseAbs().maxCoeff() < 1e-14);
  }
  SUBCASE("trajectory is Markovian") {
    std::vector<GaussianChannel> series;
    for (int k = 0; k <= 200; ++k) series.push_back(markovian_attenuation(1.0, vac, 0.02 * k));
    CHECK(gaussian_nv(series).n_v == 0.0);
  }
  CHECK_THROWS_AS(markovian_attenuation(-1.0, vac, 1.0), DomainError);
  CHECK_THROWS_AS(markovian_attenuation(1.0, vac, -1.0), DomainError);
}

TEST_CASE("complete positivity") {
  SUBCASE("amplifier without noise fails") {
    const GaussianChannel ch{std::sqrt(2.0) * Eigen::MatrixXd::Identity(2, 2), Eigen::MatrixXd::Zero(2, 2), 0.0};
    CHECK(complete_positivity_margin(ch) < 0.0);
    CHECK_THROWS_AS(validate_channel(ch), ValidityError);
  }
  SUBCASE("amplifier with the minimal noise passes") {
    const GaussianChannel ch{std::sqrt(2.0) * Eigen::MatrixXd::Identity(2, 2), 0.5 * Eigen::MatrixXd::Identity(2, 2),
                             0.0};
    CHECK(complete_positivity_margin(ch) > -1e-12);
    CHECK_NOTHROW(validate_channel(ch));
  }
  SUBCASE("composition preserves complete positivity") {
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> rate(0.0, 3.0);
    for (int trial = 0; trial < 20; ++trial) {
      const CovarianceMatrix sinf(random_state(1, rng));
      GaussianChannel a = markovian_attenuation(rate(rng), sinf, 0.5);
      GaussianChannel b = markovian_attenuation(rate(rng), CovarianceMatrix::vacuum(1), 0.8);
      const Eigen::MatrixXd s = random_symplectic(1, rng);
      b.x = (b.x * s).eval();
      b.y = (s.transpose() * b.y * s).eval();
      const GaussianChannel c = compose_gaussian(b, a);
      CHECK(complete_positivity_margin(c) > -1e-10);
      const Eigen::MatrixXd sigma = random_state(1, rng);
      const Eigen::MatrixXd seq = b.x.transpose() * (a.x.transpose() * sigma * a.x + a.y) * b.x + b.y;
      CHECK((apply_gaussian(c, CovarianceMatrix(sigma)).matrix() - seq).cwiseAbs().maxCoeff() < 1e-10);
      CHECK(gaussian_volume_factor(c) ==
            doctest::Approx(gaussian_volume_factor(a) * gaussian_volume_factor(b)).epsilon(1e-10));
    }
  }
  CHECK_THROWS_AS(validate_channel(GaussianChannel{Eigen::MatrixXd::Identity(3, 3), Eigen::MatrixXd::Zero(3, 3), 0.0}),
                  ShapeError);
  CHECK_THROWS_AS(apply_gaussian(markovian_attenuation(1.0, CovarianceMatrix::vacuum(2), 1.0),
                                 CovarianceMatrix::vacuum(1)),
                  ShapeError);
}

TEST_CASE("gaussian_nv on an oscillating family") {
  // X = x(t) 1, Y = |1 - x^2| / 2, x(t) = e^{-gamma t / 2}(1 + sin(t)/2).
  const double gamma = 0.3;
  std::vector<GaussianChannel> series;
  std::vector<double> volumes;
  for (int k = 0; k <= 1000; ++k) {
    const double t = 0.01 * k;
    const double x = std::exp(-0.5 * gamma * t) * (1.0 + 0.5 * std::sin(t));
    series.push_back(
        {x * Eigen::MatrixXd::Identity(2, 2), 0.5 * std::abs(1.0 - x * x) * Eigen::MatrixXd::Identity(2, 2), t});
    volumes.push_back(std::pow(x, 8));
  }
  double oracle = 0.0;
  for (std::size_t k = 1; k < volumes.size(); ++k) oracle += std::max(0.0, volumes[k] - volumes[k - 1]);
  for (const auto& ch : series) CHECK(complete_positivity_margin(ch) > -1e-12);
  const NonMarkovianityResult r = gaussian_nv(series);
  CHECK(r.n_v > 0.0);
  CHECK(r.n_v == doctest::Approx(oracle).epsilon(1e-8));
  const VolumeTrajectory traj = gaussian_trajectory(series);
  CHECK(traj.size() == series.size());
  CHECK(traj.times.back() == doctest::Approx(10.0));
}
