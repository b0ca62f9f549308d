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
#include <vector>

namespace nmvol {

/// An N x N complex matrix interpreted as a (not necessarily positive)
/// Hermitian unit-trace operator.
using DensityMatrix = Eigen::MatrixXcd;

/// Tolerance used by the basis self-checks at construction.
inline constexpr double kBasisTolerance = 1e-12;
/// Default eigenvalue tolerance of is_physical().
inline constexpr double kPhysicalTolerance = 1e-10;

/// Orthonormal Hermitian operator basis of SU(N).
///
/// Generators are stored in a fixed order: the symmetric off-diagonal
/// block u_jk (j < k, lexicographic), then the antisymmetric block v_jk,
/// then the N-1 diagonal generators w_l. Every generator is traceless and
/// Tr[G_i G_j] = delta_ij; the identity element G_0 = 1/sqrt(N) is kept
/// separately. For N = 2 this reproduces the Pauli matrices / sqrt(2) and
/// for N = 3 the Gell-Mann matrices / sqrt(2).
class GeneratorBasis {
 public:
  /// Builds and self-checks the basis. Throws DomainError for N < 2.
  explicit GeneratorBasis(int dimension);

  int dimension() const { return dimension_; }
  /// Number of traceless generators, N^2 - 1.
  int size() const { return static_cast<int>(generators_.size()); }

  const Eigen::MatrixXcd& generator(int i) const { return generators_.at(static_cast<std::size_t>(i)); }
  const std::vector<Eigen::MatrixXcd>& generators() const { return generators_; }
  /// G_0 = identity / sqrt(N).
  const Eigen::MatrixXcd& identity_element() const { return identity_; }

  /// Gram matrix M_ij = Tr[G_i G_j] over i, j in {0, ..., N^2 - 1}.
  Eigen::MatrixXd gram_matrix() const;

 private:
  int dimension_;
  Eigen::MatrixXcd identity_;
  std::vector<Eigen::MatrixXcd> generators_;
};

/// Convenience wrapper matching the free-function vocabulary used elsewhere.
GeneratorBasis build_basis(int dimension);

/// Generalized Bloch vector r_i = Tr[rho G_i] of an N-level state.
struct BlochVector {
  int dimension = 0;
  Eigen::VectorXd components;

  /// (N - 1) / N, the squared norm of any pure state.
  static double pure_state_norm_squared(int dimension) {
    return static_cast<double>(dimension - 1) / static_cast<double>(dimension);
  }
};

/// Projects a Hermitian unit-trace matrix onto the generator basis.
/// Throws ShapeError on a dimension mismatch and ValidityError if the
/// input is not Hermitian or does not have unit trace.
BlochVector to_bloch(const DensityMatrix& rho, const GeneratorBasis& basis);

/// rho = 1/N + sum_i r_i G_i. The result is Hermitian with unit trace but
/// positivity is not checked.
DensityMatrix from_bloch(const BlochVector& r, const GeneratorBasis& basis);

/// True iff the smallest eigenvalue of from_bloch(r) is >= -tol.
bool is_physical(const BlochVector& r, const GeneratorBasis& basis, double tol = kPhysicalTolerance);

/// Smallest eigenvalue of the Hermitian part of a square matrix.
double min_eigenvalue(const Eigen::MatrixXcd& hermitian);

/// Throws ValidityError unless `rho` is Hermitian, unit-trace and positive
/// semidefinite within the DensityMatrix tolerances.
void validate_density_matrix(const DensityMatrix& rho);

}  // namespace nmvol
