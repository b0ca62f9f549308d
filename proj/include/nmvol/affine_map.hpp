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
#include <functional>
#include <vector>

#include "nmvol/generator_basis.hpp"

namespace nmvol {

/// Linear action of a dynamical map on arbitrary N x N matrices. It must be
/// defined on the (non-positive) generators, not only on density matrices.
using ChannelAction = std::function<Eigen::MatrixXcd(const Eigen::MatrixXcd&)>;

/// Trace-preserving dynamical map in the generator basis:
///   r_t = A r_0 + q / sqrt(N).
/// Embedded as F = (1, 0; q, A) it acts on (1/sqrt(N), r).
class AffineBlochMap {
 public:
  AffineBlochMap() = default;
  /// Throws ShapeError unless A is (N^2-1) x (N^2-1) and q has N^2-1 entries.
  AffineBlochMap(int dimension, Eigen::MatrixXd a, Eigen::VectorXd q, double time = 0.0);

  static AffineBlochMap identity(int dimension, double time = 0.0);

  int dimension() const { return dimension_; }
  /// Length of the Bloch vector, N^2 - 1.
  int bloch_size() const { return static_cast<int>(q_.size()); }
  double time() const { return time_; }
  const Eigen::MatrixXd& linear_part() const { return a_; }
  const Eigen::VectorXd& translation() const { return q_; }

  /// The N^2 x N^2 matrix F with F_{0 beta} = delta_{0 beta}.
  Eigen::MatrixXd full_matrix() const;

 private:
  int dimension_ = 0;
  Eigen::MatrixXd a_;
  Eigen::VectorXd q_;
  double time_ = 0.0;
};

/// A = O1 * D * O2^T with D sorted descending and det(O2) = +1; any
/// inversion is carried by O1.
struct MapDecomposition {
  Eigen::MatrixXd o1;
  Eigen::VectorXd singular_values;
  Eigen::MatrixXd o2;
  Eigen::VectorXd translation;

  Eigen::MatrixXd d() const { return singular_values.asDiagonal(); }
};

/// Builds F_{ab} = Tr[G_a phi(G_b)] from a channel action.
///
/// Throws ValidityError if phi maps a Hermitian generator to a
/// non-Hermitian matrix and ContractError if phi does not preserve the
/// trace (F_{00} != 1 or F_{0j} != 0 beyond 1e-8).
AffineBlochMap map_from_channel(const ChannelAction& channel, const GeneratorBasis& basis, double time = 0.0);

/// Channel action of a Kraus decomposition, M -> sum_k K_k M K_k^dagger.
ChannelAction kraus_channel(std::vector<Eigen::MatrixXcd> kraus_operators);

/// Channel action of an N^2 x N^2 superoperator acting on column-stacked
/// matrices, vec(phi(M)) = S vec(M).
ChannelAction superoperator_channel(Eigen::MatrixXcd superoperator);

/// r' = A r + q / sqrt(N).
BlochVector apply(const AffineBlochMap& map, const BlochVector& r);

/// |det A|, the contraction factor of the accessible-state volume.
double volume_factor(const AffineBlochMap& map);

/// Signed det A by LU with partial pivoting.
double determinant(const AffineBlochMap& map);

MapDecomposition decompose(const AffineBlochMap& map);

/// Map that applies `earlier` first and then `later`.
AffineBlochMap compose(const AffineBlochMap& later, const AffineBlochMap& earlier);

}  // namespace nmvol
