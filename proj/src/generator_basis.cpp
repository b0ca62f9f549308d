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

#include "nmvol/generator_basis.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>

#include "nmvol/errors.hpp"

namespace nmvol {

namespace {

using cd = std::complex<double>;

double hermiticity_defect(const Eigen::MatrixXcd& m) { return (m - m.adjoint()).cwiseAbs().maxCoeff(); }

}  // namespace

GeneratorBasis::GeneratorBasis(int dimension) : dimension_(dimension) {
  if (dimension < 2) {
    throw DomainError("generator basis requires dimension N >= 2, got " + std::to_string(dimension));
  }
  const int n = dimension;
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  identity_ = Eigen::MatrixXcd::Identity(n, n) / std::sqrt(static_cast<double>(n));
  generators_.reserve(static_cast<std::size_t>(n * n - 1));

  // u_jk = |j><k| + |k><j|
  for (int j = 0; j < n; ++j) {
    for (int k = j + 1; k < n; ++k) {
      Eigen::MatrixXcd g = Eigen::MatrixXcd::Zero(n, n);
      g(j, k) = inv_sqrt2;
      g(k, j) = inv_sqrt2;
      generators_.push_back(std::move(g));
    }
  }
  // v_jk = -i(|j><k| - |k><j|)
  for (int j = 0; j < n; ++j) {
    for (int k = j + 1; k < n; ++k) {
      Eigen::MatrixXcd g = Eigen::MatrixXcd::Zero(n, n);
      g(j, k) = cd(0.0, -inv_sqrt2);
      g(k, j) = cd(0.0, inv_sqrt2);
      generators_.push_back(std::move(g));
    }
  }
  // w_l = sqrt(2/(l(l+1))) (sum_{j<=l} |j><j| - l |l+1><l+1|), l = 1..N-1.
  // The -l|l+1><l+1| term sits outside the sum; repeating it inside would
  // break Tr[w_l^2] = 2, which the check below guards.
  for (int l = 1; l < n; ++l) {
    const double pref = std::sqrt(2.0 / (l * (l + 1.0))) * inv_sqrt2;
    Eigen::MatrixXcd g = Eigen::MatrixXcd::Zero(n, n);
    for (int j = 0; j < l; ++j) g(j, j) = pref;
    g(l, l) = -pref * l;
    generators_.push_back(std::move(g));
  }

  for (std::size_t i = 0; i < generators_.size(); ++i) {
    const auto& g = generators_[i];
    if (hermiticity_defect(g) > kBasisTolerance || std::abs(g.trace()) > kBasisTolerance) {
      throw ContractError("generator " + std::to_string(i) + " is not Hermitian and traceless");
    }
  }
  const Eigen::MatrixXd gram = gram_matrix();
  const double defect = (gram - Eigen::MatrixXd::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff();
  if (defect > kBasisTolerance) {
    throw ContractError("generator basis failed orthonormality self-check (defect " + std::to_string(defect) + ")");
  }
}

Eigen::MatrixXd GeneratorBasis::gram_matrix() const {
  const int m = size() + 1;
  auto element = [this](int a) -> const Eigen::MatrixXcd& {
    return a == 0 ? identity_ : generators_[static_cast<std::size_t>(a - 1)];
  };
  Eigen::MatrixXd gram(m, m);
  for (int a = 0; a < m; ++a) {
    for (int b = 0; b < m; ++b) {
      gram(a, b) = (element(a) * element(b)).trace().real();
    }
  }
  return gram;
}

GeneratorBasis build_basis(int dimension) { return GeneratorBasis(dimension); }

BlochVector to_bloch(const DensityMatrix& rho, const GeneratorBasis& basis) {
  const int n = basis.dimension();
  if (rho.rows() != n || rho.cols() != n) {
    throw ShapeError("to_bloch: expected " + std::to_string(n) + "x" + std::to_string(n) + " matrix, got " +
                     std::to_string(rho.rows()) + "x" + std::to_string(rho.cols()));
  }
  const double scale = std::max(1.0, rho.cwiseAbs().maxCoeff());
  if (hermiticity_defect(rho) > kBasisTolerance * scale) {
    throw ValidityError("to_bloch: input matrix is not Hermitian");
  }
  if (std::abs(rho.trace() - cd(1.0, 0.0)) > kPhysicalTolerance) {
    throw ValidityError("to_bloch: input matrix does not have unit trace");
  }
  BlochVector r{n, Eigen::VectorXd(basis.size())};
  for (int i = 0; i < basis.size(); ++i) {
    const cd value = (rho * basis.generator(i)).trace();
    if (std::abs(value.imag()) > kBasisTolerance * scale) {
      throw ValidityError("to_bloch: complex expectation value for generator " + std::to_string(i));
    }
    r.components(i) = value.real();
  }
  return r;
}

DensityMatrix from_bloch(const BlochVector& r, const GeneratorBasis& basis) {
  if (r.components.size() != basis.size()) {
    throw ShapeError("from_bloch: Bloch vector has " + std::to_string(r.components.size()) + " components, expected " +
                     std::to_string(basis.size()));
  }
  const int n = basis.dimension();
  DensityMatrix rho = Eigen::MatrixXcd::Identity(n, n) / static_cast<double>(n);
  for (int i = 0; i < basis.size(); ++i) rho += r.components(i) * basis.generator(i);
  return rho;
}

double min_eigenvalue(const Eigen::MatrixXcd& hermitian) {
  const Eigen::MatrixXcd h = 0.5 * (hermitian + hermitian.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

bool is_physical(const BlochVector& r, const GeneratorBasis& basis, double tol) {
  return min_eigenvalue(from_bloch(r, basis)) >= -tol;
}

void validate_density_matrix(const DensityMatrix& rho) {
  if (rho.rows() != rho.cols()) throw ShapeError("density matrix must be square");
  if (hermiticity_defect(rho) > kBasisTolerance) throw ValidityError("density matrix is not Hermitian");
  if (std::abs(rho.trace() - cd(1.0, 0.0)) > kBasisTolerance) {
    throw ValidityError("density matrix does not have unit trace");
  }
  if (min_eigenvalue(rho) < -kPhysicalTolerance) throw ValidityError("density matrix is not positive semidefinite");
}

}  // namespace nmvol
