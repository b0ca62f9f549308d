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

#include "nmvol/affine_map.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>
#include <utility>

#include "nmvol/errors.hpp"

namespace nmvol {

namespace {

constexpr double kTraceTolerance = 1e-8;
constexpr double kRealTolerance = 1e-10;

}  // namespace

AffineBlochMap::AffineBlochMap(int dimension, Eigen::MatrixXd a, Eigen::VectorXd q, double time)
    : dimension_(dimension), a_(std::move(a)), q_(std::move(q)), time_(time) {
  const Eigen::Index m = static_cast<Eigen::Index>(dimension) * dimension - 1;
  if (dimension < 2 || a_.rows() != m || a_.cols() != m || q_.size() != m) {
    throw ShapeError("affine map of dimension " + std::to_string(dimension) + " needs a " + std::to_string(m) + "x" +
                     std::to_string(m) + " linear part and a length-" + std::to_string(m) + " translation");
  }
}

AffineBlochMap AffineBlochMap::identity(int dimension, double time) {
  const int m = dimension * dimension - 1;
  return AffineBlochMap(dimension, Eigen::MatrixXd::Identity(m, m), Eigen::VectorXd::Zero(m), time);
}

Eigen::MatrixXd AffineBlochMap::full_matrix() const {
  const Eigen::Index m = a_.rows();
  Eigen::MatrixXd f = Eigen::MatrixXd::Zero(m + 1, m + 1);
  f(0, 0) = 1.0;
  f.block(1, 0, m, 1) = q_;
  f.block(1, 1, m, m) = a_;
  return f;
}

AffineBlochMap map_from_channel(const ChannelAction& channel, const GeneratorBasis& basis, double time) {
  const int n = basis.dimension();
  const int m = basis.size();
  auto element = [&basis](int a) -> const Eigen::MatrixXcd& {
    return a == 0 ? basis.identity_element() : basis.generator(a - 1);
  };

  Eigen::MatrixXd f(m + 1, m + 1);
  for (int b = 0; b <= m; ++b) {
    const Eigen::MatrixXcd image = channel(element(b));
    if (image.rows() != n || image.cols() != n) {
      throw ShapeError("channel returned a " + std::to_string(image.rows()) + "x" + std::to_string(image.cols()) +
                       " matrix for a " + std::to_string(n) + "-level system");
    }
    const double scale = std::max(1.0, image.cwiseAbs().maxCoeff());
    if ((image - image.adjoint()).cwiseAbs().maxCoeff() > kRealTolerance * scale) {
      throw ValidityError("channel output is not Hermitian for Hermitian input " + std::to_string(b));
    }
    for (int a = 0; a <= m; ++a) {
      const std::complex<double> value = (element(a) * image).trace();
      if (std::abs(value.imag()) > kRealTolerance * scale) {
        throw ValidityError("map element F(" + std::to_string(a) + "," + std::to_string(b) + ") is not real");
      }
      f(a, b) = value.real();
    }
  }

  if (std::abs(f(0, 0) - 1.0) > kTraceTolerance || f.row(0).tail(m).cwiseAbs().maxCoeff() > kTraceTolerance) {
    throw ContractError("channel is not trace preserving (F_00 = " + std::to_string(f(0, 0)) + ")");
  }
  return AffineBlochMap(n, f.bottomRightCorner(m, m), f.col(0).tail(m), time);
}

ChannelAction kraus_channel(std::vector<Eigen::MatrixXcd> kraus_operators) {
  return [ops = std::move(kraus_operators)](const Eigen::MatrixXcd& x) {
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(x.rows(), x.cols());
    for (const auto& k : ops) out += k * x * k.adjoint();
    return out;
  };
}

ChannelAction superoperator_channel(Eigen::MatrixXcd superoperator) {
  return [s = std::move(superoperator)](const Eigen::MatrixXcd& x) {
    if (s.cols() != x.size()) throw ShapeError("superoperator size does not match the input matrix");
    const Eigen::VectorXcd v = Eigen::Map<const Eigen::VectorXcd>(x.data(), x.size());
    const Eigen::VectorXcd out = s * v;
    return Eigen::MatrixXcd(Eigen::Map<const Eigen::MatrixXcd>(out.data(), x.rows(), x.cols()));
  };
}

BlochVector apply(const AffineBlochMap& map, const BlochVector& r) {
  if (r.components.size() != map.bloch_size()) {
    throw ShapeError("apply: Bloch vector has " + std::to_string(r.components.size()) + " components, map expects " +
                     std::to_string(map.bloch_size()));
  }
  const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(map.dimension()));
  return {map.dimension(), map.linear_part() * r.components + map.translation() * inv_sqrt_n};
}

double determinant(const AffineBlochMap& map) { return map.linear_part().partialPivLu().determinant(); }

double volume_factor(const AffineBlochMap& map) { return std::abs(determinant(map)); }

MapDecomposition decompose(const AffineBlochMap& map) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(map.linear_part(), Eigen::ComputeFullU | Eigen::ComputeFullV);
  Eigen::MatrixXd u = svd.matrixU();
  Eigen::MatrixXd v = svd.matrixV();
  // Flip the last singular pair so that O2 is a proper rotation.
  if (v.determinant() < 0.0) {
    const Eigen::Index last = v.cols() - 1;
    v.col(last) *= -1.0;
    u.col(last) *= -1.0;
  }
  return {std::move(u), svd.singularValues(), std::move(v), map.translation()};
}

AffineBlochMap compose(const AffineBlochMap& later, const AffineBlochMap& earlier) {
  if (later.dimension() != earlier.dimension()) {
    throw ShapeError("compose: dimensions " + std::to_string(later.dimension()) + " and " +
                     std::to_string(earlier.dimension()) + " differ");
  }
  return AffineBlochMap(later.dimension(), later.linear_part() * earlier.linear_part(),
                        later.linear_part() * earlier.translation() + later.translation(), later.time());
}

}  // namespace nmvol
