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
#include <span>

#include "nmvol/volume_measure.hpp"

namespace nmvol {

// Gaussian states of n bosonic modes with quadratures R = (q1, p1, ..., qn, pn),
// q = (a + a^dag)/sqrt(2). The vacuum covariance matrix is identity / 2.

inline constexpr double kGaussianTolerance = 1e-10;

/// Block-diagonal symplectic form, n copies of (0, 1; -1, 0).
Eigen::MatrixXd symplectic_form(int modes);

/// Covariance matrix sigma_kl = <{R_k, R_l}>/2 - <R_k><R_l>.
class CovarianceMatrix {
 public:
  /// Throws ShapeError for an odd or empty matrix, ValidityError if sigma is
  /// not symmetric or violates sigma + i Omega / 2 >= 0.
  explicit CovarianceMatrix(Eigen::MatrixXd sigma);

  static CovarianceMatrix vacuum(int modes);

  int modes() const { return static_cast<int>(sigma_.rows() / 2); }
  const Eigen::MatrixXd& matrix() const { return sigma_; }

 private:
  Eigen::MatrixXd sigma_;
};

/// Smallest eigenvalue of sigma + i Omega / 2; >= 0 for physical states.
double uncertainty_margin(const Eigen::MatrixXd& sigma);

/// Gaussian channel sigma -> X^T sigma X + Y.
struct GaussianChannel {
  Eigen::MatrixXd x;
  Eigen::MatrixXd y;
  double time = 0.0;

  int modes() const { return static_cast<int>(x.rows() / 2); }
};

/// Smallest eigenvalue of Y + i(Omega - X^T Omega X)/2. Non-negative iff the
/// channel is completely positive (vacuum normalization identity / 2).
double complete_positivity_margin(const GaussianChannel& channel);

/// Throws ShapeError on bad sizes and ValidityError if Y is not symmetric or
/// the channel is not completely positive within `tol`.
void validate_channel(const GaussianChannel& channel, double tol = kGaussianTolerance);

/// Affine action on row-major vectorized covariance matrices,
/// s -> xvec s + yvec, with xvec = X^T (x) X^T.
struct VectorizedGaussianMap {
  Eigen::MatrixXd xvec;
  Eigen::VectorXd yvec;
};

VectorizedGaussianMap vectorize_channel(const GaussianChannel& channel);

/// Row-major flattening used by vectorize_channel.
Eigen::VectorXd vectorize(const Eigen::MatrixXd& m);
Eigen::MatrixXd unvectorize(const Eigen::VectorXd& v, Eigen::Index rows);

/// |det xvec| by LU factorization of the vectorized map.
double gaussian_volume_factor(const GaussianChannel& channel);

/// X = e^{-gamma t / 2} 1, Y = (1 - e^{-gamma t}) sigma_inf. Throws
/// DomainError for gamma < 0 or t < 0.
GaussianChannel markovian_attenuation(double gamma, const CovarianceMatrix& sigma_inf, double t);

/// sigma -> X^T sigma X + Y, validated as a physical state on output.
/// Throws ShapeError on a mode mismatch.
CovarianceMatrix apply_gaussian(const GaussianChannel& channel, const CovarianceMatrix& sigma);

/// Channel that applies `first` and then `second`:
/// X = X1 X2, Y = X2^T Y1 X2 + Y2.
GaussianChannel compose_gaussian(const GaussianChannel& second, const GaussianChannel& first);

/// Volumes |det xvec| for a time-ordered channel series.
VolumeTrajectory gaussian_trajectory(std::span<const GaussianChannel> channels);

/// N_V for a Gaussian channel series.
NonMarkovianityResult gaussian_nv(std::span<const GaussianChannel> channels,
                                  double growth_threshold = kDefaultGrowthThreshold);

}  // namespace nmvol
