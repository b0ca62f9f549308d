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

#include "nmvol/gaussian_cv.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>
#include <unsupported/Eigen/KroneckerProduct>
#include <utility>

#include "nmvol/errors.hpp"
#include "nmvol/generator_basis.hpp"

namespace nmvol {

namespace {

const std::complex<double> kI{0.0, 1.0};

void check_square_even(const Eigen::MatrixXd& m, const char* what) {
  if (m.rows() == 0 || m.rows() != m.cols() || m.rows() % 2 != 0) {
    throw ShapeError(std::string(what) + " must be a non-empty 2n x 2n matrix");
  }
}

}  // namespace

Eigen::MatrixXd symplectic_form(int modes) {
  Eigen::MatrixXd omega = Eigen::MatrixXd::Zero(2 * modes, 2 * modes);
  for (int k = 0; k < modes; ++k) {
    omega(2 * k, 2 * k + 1) = 1.0;
    omega(2 * k + 1, 2 * k) = -1.0;
  }
  return omega;
}

double uncertainty_margin(const Eigen::MatrixXd& sigma) {
  const auto modes = static_cast<int>(sigma.rows() / 2);
  const Eigen::MatrixXcd h = sigma.cast<std::complex<double>>() + 0.5 * kI * symplectic_form(modes);
  return min_eigenvalue(h);
}

CovarianceMatrix::CovarianceMatrix(Eigen::MatrixXd sigma) : sigma_(std::move(sigma)) {
  check_square_even(sigma_, "covariance matrix");
  const double scale = std::max(1.0, sigma_.cwiseAbs().maxCoeff());
  if ((sigma_ - sigma_.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw ValidityError("covariance matrix is not symmetric");
  }
  const double margin = uncertainty_margin(sigma_);
  if (margin < -kGaussianTolerance) {
    throw ValidityError("covariance matrix violates the uncertainty relation (margin " + std::to_string(margin) +
                        ")");
  }
}

CovarianceMatrix CovarianceMatrix::vacuum(int modes) {
  if (modes < 1) throw ShapeError("vacuum needs at least one mode");
  return CovarianceMatrix(0.5 * Eigen::MatrixXd::Identity(2 * modes, 2 * modes));
}

double complete_positivity_margin(const GaussianChannel& channel) {
  const Eigen::MatrixXd omega = symplectic_form(channel.modes());
  const Eigen::MatrixXd defect = omega - channel.x.transpose() * omega * channel.x;
  const Eigen::MatrixXcd h = channel.y.cast<std::complex<double>>() + 0.5 * kI * defect;
  return min_eigenvalue(h);
}

void validate_channel(const GaussianChannel& channel, double tol) {
  check_square_even(channel.x, "X");
  if (channel.y.rows() != channel.x.rows() || channel.y.cols() != channel.x.cols()) {
    throw ShapeError("X and Y must have the same shape");
  }
  const double scale = std::max(1.0, channel.y.cwiseAbs().maxCoeff());
  if ((channel.y - channel.y.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw ValidityError("Y is not symmetric");
  }
  const double margin = complete_positivity_margin(channel);
  if (margin < -tol) {
    throw ValidityError("Gaussian channel is not completely positive (margin " + std::to_string(margin) + ")");
  }
}

Eigen::VectorXd vectorize(const Eigen::MatrixXd& m) {
  Eigen::VectorXd v(m.size());
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) v(i * m.cols() + j) = m(i, j);
  }
  return v;
}

Eigen::MatrixXd unvectorize(const Eigen::VectorXd& v, Eigen::Index rows) {
  if (rows <= 0 || v.size() % rows != 0) throw ShapeError("vector length is not a multiple of the row count");
  const Eigen::Index cols = v.size() / rows;
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = v(i * cols + j);
  }
  return m;
}

VectorizedGaussianMap vectorize_channel(const GaussianChannel& channel) {
  check_square_even(channel.x, "X");
  if (channel.y.rows() != channel.x.rows() || channel.y.cols() != channel.x.cols()) {
    throw ShapeError("X and Y must have the same shape");
  }
  // Row-major vec(A B C) = (A (x) C^T) vec(B) with A = X^T and C = X.
  const Eigen::MatrixXd xt = channel.x.transpose();
  return {Eigen::kroneckerProduct(xt, xt).eval(), vectorize(channel.y)};
}

double gaussian_volume_factor(const GaussianChannel& channel) {
  return std::abs(vectorize_channel(channel).xvec.partialPivLu().determinant());
}

GaussianChannel markovian_attenuation(double gamma, const CovarianceMatrix& sigma_inf, double t) {
  if (!(gamma >= 0.0)) throw DomainError("attenuation rate must be non-negative, got " + std::to_string(gamma));
  if (!(t >= 0.0)) throw DomainError("time must be non-negative, got " + std::to_string(t));
  const auto dim = sigma_inf.matrix().rows();
  const double decay = std::exp(-gamma * t);
  return {std::sqrt(decay) * Eigen::MatrixXd::Identity(dim, dim), (1.0 - decay) * sigma_inf.matrix(), t};
}

CovarianceMatrix apply_gaussian(const GaussianChannel& channel, const CovarianceMatrix& sigma) {
  if (channel.x.rows() != sigma.matrix().rows() || channel.x.cols() != sigma.matrix().rows() ||
      channel.y.rows() != channel.x.rows() || channel.y.cols() != channel.x.cols()) {
    throw ShapeError("channel acts on " + std::to_string(channel.modes()) + " modes, state has " +
                     std::to_string(sigma.modes()));
  }
  Eigen::MatrixXd out = channel.x.transpose() * sigma.matrix() * channel.x + channel.y;
  out = 0.5 * (out + out.transpose()).eval();
  return CovarianceMatrix(std::move(out));
}

GaussianChannel compose_gaussian(const GaussianChannel& second, const GaussianChannel& first) {
  if (second.x.rows() != first.x.rows()) throw ShapeError("compose_gaussian: mode counts differ");
  return {first.x * second.x, second.x.transpose() * first.y * second.x + second.y, second.time};
}

VolumeTrajectory gaussian_trajectory(std::span<const GaussianChannel> channels) {
  VolumeTrajectory traj;
  traj.source = "gaussian";
  traj.times.reserve(channels.size());
  traj.volumes.reserve(channels.size());
  for (const auto& ch : channels) {
    traj.times.push_back(ch.time);
    traj.volumes.push_back(gaussian_volume_factor(ch));
  }
  return traj;
}

NonMarkovianityResult gaussian_nv(std::span<const GaussianChannel> channels, double growth_threshold) {
  return measure_nv(gaussian_trajectory(channels), growth_threshold);
}

}  // namespace nmvol
