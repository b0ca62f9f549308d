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

#include "nmvol/model_channels.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <unsupported/Eigen/MatrixFunctions>
#include <utility>

#include "nmvol/errors.hpp"

namespace nmvol {

namespace {

using cd = std::complex<double>;
constexpr cd kI{0.0, 1.0};

// sin(z) / z, continuous through z = 0.
cd sinc(cd z) {
  if (std::abs(z) < 1e-4) {
    const cd z2 = z * z;
    return 1.0 - z2 / 6.0 + z2 * z2 / 120.0;
  }
  return std::sin(z) / z;
}

void check_rates(const Eigen::MatrixXd& rates, std::size_t jump_count) {
  if (rates.rows() != static_cast<Eigen::Index>(jump_count) || rates.cols() != rates.rows()) {
    throw ShapeError("rate matrix must be " + std::to_string(jump_count) + "x" + std::to_string(jump_count));
  }
  if (jump_count == 0) return;
  if ((rates - rates.transpose()).cwiseAbs().maxCoeff() > 1e-10) {
    throw DomainError("rate matrix is not symmetric");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(rates, Eigen::EigenvaluesOnly);
  if (solver.eigenvalues().minCoeff() < -1e-10) {
    throw DomainError("rate matrix is not positive semidefinite (min eigenvalue " +
                      std::to_string(solver.eigenvalues().minCoeff()) + ")");
  }
}

Eigen::MatrixXd rk4_propagator(const LindbladModel& model, const GeneratorBasis& basis, double t_start,
                               double t_end, double max_step) {
  const Eigen::Index m = basis.size() + 1;
  Eigen::MatrixXd u = Eigen::MatrixXd::Identity(m, m);
  const double span = t_end - t_start;
  if (span <= 0.0) return u;
  const auto steps = static_cast<long>(std::ceil(span / max_step));
  const double h = span / static_cast<double>(steps);
  for (long s = 0; s < steps; ++s) {
    const double t = t_start + h * static_cast<double>(s);
    const Eigen::MatrixXd l0 = model.bloch_generator(basis, t);
    const Eigen::MatrixXd lh = model.bloch_generator(basis, t + 0.5 * h);
    const Eigen::MatrixXd l1 = model.bloch_generator(basis, t + h);
    const Eigen::MatrixXd k1 = l0 * u;
    const Eigen::MatrixXd k2 = lh * (u + 0.5 * h * k1);
    const Eigen::MatrixXd k3 = lh * (u + 0.5 * h * k2);
    const Eigen::MatrixXd k4 = l1 * (u + h * k3);
    u += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return u;
}

AffineBlochMap map_from_full(const Eigen::MatrixXd& f, int dimension, double time) {
  const Eigen::Index m = f.rows() - 1;
  return AffineBlochMap(dimension, f.bottomRightCorner(m, m), f.col(0).tail(m), time);
}

}  // namespace

// ---------------------------------------------------------------------------
// Lorentzian decay

LorentzianDecayModel::LorentzianDecayModel(double gamma0, double lambda, double delta)
    : gamma0_(gamma0), lambda_(lambda), delta_(delta) {
  if (!(gamma0 > 0.0)) throw DomainError("gamma0 must be positive, got " + std::to_string(gamma0));
  if (!(lambda > 0.0)) throw DomainError("lambda must be positive, got " + std::to_string(lambda));
  if (!std::isfinite(delta)) throw DomainError("delta must be finite");
  const cd shift(delta_, -lambda_);
  const cd root = std::sqrt(shift * shift + 2.0 * gamma0_ * lambda_);
  omega_plus_ = shift + root;
  omega_minus_ = shift - root;
}

// With w = Delta - i lambda and s = Omega_+ - w, the closed form
//   [e^{-it Omega_-/2} Omega_+ - e^{-it Omega_+/2} Omega_-] / (2 s)
// equals e^{-itw/2} [cos(ts/2) + i w sin(ts/2)/s]. The second form is even
// in s (so independent of the square-root branch) and finite at s = 0.
std::complex<double> LorentzianDecayModel::amplitude(double t) const {
  const cd w(delta_, -lambda_);
  const cd s = omega_plus_ - w;
  const cd half = 0.5 * t * s;
  return std::exp(-kI * t * w / 2.0) * (std::cos(half) + kI * w * (0.5 * t) * sinc(half));
}

std::complex<double> LorentzianDecayModel::amplitude_derivative(double t) const {
  const cd w(delta_, -lambda_);
  const cd s = omega_plus_ - w;
  const cd half = 0.5 * t * s;
  const cd c = std::cos(half);
  const cd sn = 0.5 * t * sinc(half);  // sin(ts/2) / s
  const cd phase = std::exp(-kI * t * w / 2.0);
  const cd g = phase * (c + kI * w * sn);
  return -kI * w / 2.0 * g + phase * (-(s * s) / 2.0 * sn + kI * w * c / 2.0);
}

ChannelAction LorentzianDecayModel::channel(double t) const {
  const cd g = amplitude(t);
  return [g](const Eigen::MatrixXcd& x) {
    if (x.rows() != 2 || x.cols() != 2) throw ShapeError("Lorentzian decay acts on 2x2 matrices");
    const double p = std::norm(g);
    Eigen::MatrixXcd out(2, 2);
    out(0, 0) = p * x(0, 0);
    out(0, 1) = g * x(0, 1);
    out(1, 0) = std::conj(g) * x(1, 0);
    out(1, 1) = (1.0 - p) * x(0, 0) + x(1, 1);
    return out;
  };
}

std::complex<double> gamma_t(const LorentzianDecayModel& model, double t) { return model.amplitude(t); }

AffineBlochMap lorentzian_map(const LorentzianDecayModel& model, double t, const GeneratorBasis& basis) {
  if (basis.dimension() != 2) throw ShapeError("lorentzian_map needs a qubit basis");
  return map_from_channel(model.channel(t), basis, t);
}

std::optional<double> rhp_integrand(const LorentzianDecayModel& model, double t) {
  const cd g = model.amplitude(t);
  if (std::abs(g) < 1e-15) return std::nullopt;
  return 0.5 * (model.amplitude_derivative(t) / g).real();
}

// ---------------------------------------------------------------------------
// Dephasing

DephasingModel::DephasingModel(Factor nu) : nu_(std::move(nu)) {
  if (!nu_) throw DomainError("dephasing factor is empty");
  if (std::abs(nu_(0.0) - cd(1.0, 0.0)) > 1e-12) throw DomainError("dephasing factor must satisfy nu(0) = 1");
}

DephasingModel DephasingModel::exponential(double gamma) {
  if (!(gamma >= 0.0)) throw DomainError("dephasing rate must be non-negative");
  return DephasingModel([gamma](double t) { return cd(std::exp(-gamma * t), 0.0); });
}

DephasingModel DephasingModel::sampled(std::vector<double> times, std::vector<cd> values) {
  if (times.empty() || times.size() != values.size()) {
    throw InputError("sampled dephasing factor needs matching, non-empty time and value lists");
  }
  if (times.front() != 0.0) throw InputError("sampled dephasing factor must start at t = 0");
  for (std::size_t k = 1; k < times.size(); ++k) {
    if (!(times[k] > times[k - 1])) throw InputError("sampled dephasing times must increase");
  }
  return DephasingModel([ts = std::move(times), vs = std::move(values)](double t) {
    if (t <= ts.front()) return vs.front();
    if (t >= ts.back()) return vs.back();
    const auto hi = static_cast<std::size_t>(std::upper_bound(ts.begin(), ts.end(), t) - ts.begin());
    const std::size_t lo = hi - 1;
    const double w = (t - ts[lo]) / (ts[hi] - ts[lo]);
    return (1.0 - w) * vs[lo] + w * vs[hi];
  });
}

ChannelAction DephasingModel::channel(double t) const {
  const cd nu = nu_(t);
  return [nu](const Eigen::MatrixXcd& x) {
    if (x.rows() != 2 || x.cols() != 2) throw ShapeError("dephasing acts on 2x2 matrices");
    Eigen::MatrixXcd out = x;
    out(0, 1) = nu * x(0, 1);
    out(1, 0) = std::conj(nu) * x(1, 0);
    return out;
  };
}

AffineBlochMap dephasing_map(const DephasingModel& model, double t, const GeneratorBasis& basis) {
  if (basis.dimension() != 2) throw ShapeError("dephasing_map needs a qubit basis");
  return map_from_channel(model.channel(t), basis, t);
}

double blp_dephasing(const DephasingModel& model, double t) { return std::abs(model.nu(t)); }

// ---------------------------------------------------------------------------
// Lindblad

LindbladModel::LindbladModel(Eigen::MatrixXcd hamiltonian, std::vector<Eigen::MatrixXcd> jump_operators,
                             Eigen::MatrixXd rates)
    : hamiltonian_(std::move(hamiltonian)), jumps_(std::move(jump_operators)), constant_rates_(std::move(rates)) {
  const auto n = hamiltonian_.rows();
  if (n < 2 || hamiltonian_.cols() != n) throw ShapeError("Hamiltonian must be square with dimension >= 2");
  if ((hamiltonian_ - hamiltonian_.adjoint()).cwiseAbs().maxCoeff() > 1e-12) {
    throw DomainError("Hamiltonian is not Hermitian");
  }
  for (const auto& c : jumps_) {
    if (c.rows() != n || c.cols() != n) throw ShapeError("jump operator dimension does not match the Hamiltonian");
  }
  check_rates(constant_rates_, jumps_.size());
}

LindbladModel::LindbladModel(Eigen::MatrixXcd hamiltonian, std::vector<Eigen::MatrixXcd> jump_operators,
                             RateSchedule rates)
    : LindbladModel(std::move(hamiltonian), std::move(jump_operators), rates(0.0)) {
  schedule_ = std::move(rates);
}

Eigen::MatrixXd LindbladModel::rates(double t) const {
  if (!schedule_) return constant_rates_;
  Eigen::MatrixXd g = schedule_(t);
  check_rates(g, jumps_.size());
  return g;
}

Eigen::MatrixXcd LindbladModel::apply_generator(const Eigen::MatrixXcd& rho, double t) const {
  const Eigen::MatrixXd g = rates(t);
  Eigen::MatrixXcd out = kI * (rho * hamiltonian_ - hamiltonian_ * rho);
  for (std::size_t a = 0; a < jumps_.size(); ++a) {
    for (std::size_t b = 0; b < jumps_.size(); ++b) {
      const double rate = g(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b));
      if (rate == 0.0) continue;
      const Eigen::MatrixXcd cbd_ca = jumps_[b].adjoint() * jumps_[a];
      out += rate * (jumps_[a] * rho * jumps_[b].adjoint() - 0.5 * (cbd_ca * rho + rho * cbd_ca));
    }
  }
  return out;
}

Eigen::MatrixXd LindbladModel::bloch_generator(const GeneratorBasis& basis, double t) const {
  if (basis.dimension() != dimension()) throw ShapeError("basis dimension does not match the Lindblad model");
  const int m = basis.size() + 1;
  auto element = [&basis](int a) -> const Eigen::MatrixXcd& {
    return a == 0 ? basis.identity_element() : basis.generator(a - 1);
  };
  Eigen::MatrixXd lf(m, m);
  for (int b = 0; b < m; ++b) {
    const Eigen::MatrixXcd image = apply_generator(element(b), t);
    for (int a = 0; a < m; ++a) lf(a, b) = (element(a) * image).trace().real();
  }
  return lf;
}

LindbladModel amplitude_damping_model(double gamma) {
  if (!(gamma >= 0.0)) throw DomainError("damping rate must be non-negative");
  Eigen::MatrixXcd lower = Eigen::MatrixXcd::Zero(2, 2);
  lower(1, 0) = 1.0;
  return LindbladModel(Eigen::MatrixXcd::Zero(2, 2), {lower}, Eigen::MatrixXd::Constant(1, 1, gamma));
}

std::vector<AffineBlochMap> lindblad_propagate(const LindbladModel& model, const GeneratorBasis& basis,
                                               std::span<const double> times, double max_step) {
  if (times.empty()) return {};
  if (times.front() != 0.0) throw InputError("lindblad_propagate: time grid must start at 0");
  for (std::size_t k = 1; k < times.size(); ++k) {
    if (!(times[k] > times[k - 1])) throw InputError("lindblad_propagate: time grid must increase");
  }
  if (!(max_step > 0.0)) throw DomainError("lindblad_propagate: max_step must be positive");

  std::vector<AffineBlochMap> maps;
  maps.reserve(times.size());
  if (!model.time_dependent()) {
    const Eigen::MatrixXd lf = model.bloch_generator(basis);
    for (double t : times) maps.push_back(map_from_full((lf * t).exp(), basis.dimension(), t));
    return maps;
  }
  const Eigen::Index m = basis.size() + 1;
  Eigen::MatrixXd f = Eigen::MatrixXd::Identity(m, m);
  maps.push_back(map_from_full(f, basis.dimension(), 0.0));
  for (std::size_t k = 1; k < times.size(); ++k) {
    f = rk4_propagator(model, basis, times[k - 1], times[k], max_step) * f;
    maps.push_back(map_from_full(f, basis.dimension(), times[k]));
  }
  return maps;
}

AffineBlochMap lindblad_interval_map(const LindbladModel& model, const GeneratorBasis& basis, double t_start,
                                     double t_end, double max_step) {
  if (!(t_end >= t_start)) throw InputError("lindblad_interval_map: t_end precedes t_start");
  if (!model.time_dependent()) {
    const Eigen::MatrixXd lf = model.bloch_generator(basis);
    return map_from_full((lf * (t_end - t_start)).exp(), basis.dimension(), t_end);
  }
  return map_from_full(rk4_propagator(model, basis, t_start, t_end, max_step), basis.dimension(), t_end);
}

}  // namespace nmvol
