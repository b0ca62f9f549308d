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

#include <complex>
#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "nmvol/affine_map.hpp"
#include "nmvol/generator_basis.hpp"

namespace nmvol {

/// Two-level atom decaying into a leaky cavity with Lorentzian spectral
/// density. Rates share one unit; t is measured in its inverse.
class LorentzianDecayModel {
 public:
  /// Throws DomainError unless gamma0 > 0 and lambda > 0.
  LorentzianDecayModel(double gamma0, double lambda, double delta = 0.0);

  double gamma0() const { return gamma0_; }
  double lambda() const { return lambda_; }
  double delta() const { return delta_; }

  /// Omega_+ and Omega_- for the principal branch of the square root.
  std::complex<double> omega_plus() const { return omega_plus_; }
  std::complex<double> omega_minus() const { return omega_minus_; }

  /// Amplitude Gamma(t) of the excited state, Gamma(0) = 1.
  std::complex<double> amplitude(double t) const;
  /// Analytic time derivative of amplitude().
  std::complex<double> amplitude_derivative(double t) const;

  /// State-level map: rho_ee -> |Gamma|^2 rho_ee, rho_eg -> Gamma rho_eg,
  /// with the excited state as the first basis vector.
  ChannelAction channel(double t) const;

 private:
  double gamma0_;
  double lambda_;
  double delta_;
  std::complex<double> omega_plus_;
  std::complex<double> omega_minus_;
};

std::complex<double> gamma_t(const LorentzianDecayModel& model, double t);

/// Affine map of the Lorentzian decay; needs a qubit basis (ShapeError
/// otherwise). The translation is fitted from the state-level map, giving
/// A = [[Re G, Im G, 0], [-Im G, Re G, 0], [0, 0, |G|^2]] and
/// q = (0, 0, |G|^2 - 1) with the excited state at r_z = +1/sqrt(2).
AffineBlochMap lorentzian_map(const LorentzianDecayModel& model, double t, const GeneratorBasis& basis);

/// 1/2 Re[Gamma'(t) / Gamma(t)], or nullopt where Gamma(t) vanishes.
std::optional<double> rhp_integrand(const LorentzianDecayModel& model, double t);

/// Pure dephasing with decoherence factor nu(t), nu(0) = 1.
class DephasingModel {
 public:
  using Factor = std::function<std::complex<double>(double)>;

  /// Throws DomainError if |nu(0) - 1| > 1e-12.
  explicit DephasingModel(Factor nu);

  /// nu(t) = exp(-gamma t).
  static DephasingModel exponential(double gamma);
  /// Piecewise-linear interpolation of samples; constant beyond the last one.
  static DephasingModel sampled(std::vector<double> times, std::vector<std::complex<double>> values);

  std::complex<double> nu(double t) const { return nu_(t); }
  ChannelAction channel(double t) const;

 private:
  Factor nu_;
};

/// A = [[Re nu, Im nu, 0], [-Im nu, Re nu, 0], [0, 0, 1]], q = 0.
AffineBlochMap dephasing_map(const DephasingModel& model, double t, const GeneratorBasis& basis);

/// Optimal trace distance for pure dephasing, |nu(t)|.
double blp_dephasing(const DephasingModel& model, double t);

/// Lindblad generator
///   L rho = i[rho, H] + sum_ab gamma_ab (C_a rho C_b^dag - 1/2 {C_b^dag C_a, rho}).
///
/// `rates` may be a constant PSD matrix or a callback gamma(t) for
/// time-dependent Markovian dynamics.
class LindbladModel {
 public:
  using RateSchedule = std::function<Eigen::MatrixXd(double)>;

  /// Throws ShapeError on inconsistent sizes and DomainError if the rate
  /// matrix is not symmetric positive semidefinite within 1e-10.
  LindbladModel(Eigen::MatrixXcd hamiltonian, std::vector<Eigen::MatrixXcd> jump_operators, Eigen::MatrixXd rates);
  LindbladModel(Eigen::MatrixXcd hamiltonian, std::vector<Eigen::MatrixXcd> jump_operators, RateSchedule rates);
  template <typename Derived>
  LindbladModel(Eigen::MatrixXcd hamiltonian, std::vector<Eigen::MatrixXcd> jump_operators,
                const Eigen::MatrixBase<Derived>& rates)
      : LindbladModel(std::move(hamiltonian), std::move(jump_operators), Eigen::MatrixXd(rates)) {}

  int dimension() const { return static_cast<int>(hamiltonian_.rows()); }
  bool time_dependent() const { return static_cast<bool>(schedule_); }
  const Eigen::MatrixXcd& hamiltonian() const { return hamiltonian_; }
  const std::vector<Eigen::MatrixXcd>& jump_operators() const { return jumps_; }
  /// Rate matrix at time t (checked for positivity when time dependent).
  Eigen::MatrixXd rates(double t = 0.0) const;

  /// L rho for an arbitrary matrix rho at time t.
  Eigen::MatrixXcd apply_generator(const Eigen::MatrixXcd& rho, double t = 0.0) const;

  /// N^2 x N^2 real generator L_F with (L_F)_ab = Tr[G_a L(G_b)], so that
  /// dF/dt = L_F F.
  Eigen::MatrixXd bloch_generator(const GeneratorBasis& basis, double t = 0.0) const;

 private:
  Eigen::MatrixXcd hamiltonian_;
  std::vector<Eigen::MatrixXcd> jumps_;
  Eigen::MatrixXd constant_rates_;
  RateSchedule schedule_;
};

/// Qubit amplitude damping, C = sigma_minus (excited -> ground), rate gamma.
LindbladModel amplitude_damping_model(double gamma);

/// Maps F(t_k) for each requested time. Constant generators use the matrix
/// exponential; time-dependent rates use classical RK4 sub-steps of at most
/// `max_step` between grid points. Throws InputError unless `times` starts
/// at 0 and increases.
std::vector<AffineBlochMap> lindblad_propagate(const LindbladModel& model, const GeneratorBasis& basis,
                                               std::span<const double> times, double max_step = 1e-3);

/// Affine map of the propagator between two times, phi_{t_end, t_start}.
AffineBlochMap lindblad_interval_map(const LindbladModel& model, const GeneratorBasis& basis, double t_start,
                                     double t_end, double max_step = 1e-3);

}  // namespace nmvol
