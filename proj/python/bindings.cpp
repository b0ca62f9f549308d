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

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "nmvol/affine_map.hpp"
#include "nmvol/errors.hpp"
#include "nmvol/gaussian_cv.hpp"
#include "nmvol/generator_basis.hpp"
#include "nmvol/model_channels.hpp"
#include "nmvol/tomography.hpp"
#include "nmvol/volume_measure.hpp"

namespace py = pybind11;
using namespace nmvol;

namespace {

py::dict result_dict(const NonMarkovianityResult& r) {
  py::list intervals;
  for (const auto& iv : r.growth_intervals) intervals.append(py::make_tuple(iv.t_start, iv.t_end, iv.delta_v));
  py::dict d;
  d["n_v"] = r.n_v;
  d["total_decay"] = r.total_decay;
  d["threshold"] = r.threshold;
  d["growth_intervals"] = intervals;
  return d;
}

VolumeTrajectory make_trajectory(std::vector<double> times, std::vector<double> volumes) {
  VolumeTrajectory traj{std::move(times), std::move(volumes), "python"};
  traj.validate();
  return traj;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Accessible-state volume and non-Markovianity of quantum dynamical maps";

  py::register_exception<ShapeError>(m, "ShapeError", PyExc_ValueError);
  py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<ValidityError>(m, "ValidityError", PyExc_ValueError);
  py::register_exception<ContractError>(m, "ContractError", PyExc_RuntimeError);

  py::class_<GeneratorBasis>(m, "GeneratorBasis")
      .def(py::init<int>(), py::arg("dimension"))
      .def_property_readonly("dimension", &GeneratorBasis::dimension)
      .def_property_readonly("size", &GeneratorBasis::size)
      .def("generator", &GeneratorBasis::generator, py::arg("index"))
      .def("generators", &GeneratorBasis::generators)
      .def("gram_matrix", &GeneratorBasis::gram_matrix);

  m.def(
      "to_bloch", [](const Eigen::MatrixXcd& rho, const GeneratorBasis& basis) { return to_bloch(rho, basis).components; },
      py::arg("rho"), py::arg("basis"));
  m.def(
      "from_bloch",
      [](const Eigen::VectorXd& r, const GeneratorBasis& basis) { return from_bloch({basis.dimension(), r}, basis); },
      py::arg("r"), py::arg("basis"));
  m.def(
      "is_physical",
      [](const Eigen::VectorXd& r, const GeneratorBasis& basis, double tol) {
        return is_physical({basis.dimension(), r}, basis, tol);
      },
      py::arg("r"), py::arg("basis"), py::arg("tol") = kPhysicalTolerance);

  py::class_<AffineBlochMap>(m, "AffineBlochMap")
      .def(py::init<int, Eigen::MatrixXd, Eigen::VectorXd, double>(), py::arg("dimension"), py::arg("a"),
           py::arg("q"), py::arg("time") = 0.0)
      .def_static("identity", &AffineBlochMap::identity, py::arg("dimension"), py::arg("time") = 0.0)
      .def_property_readonly("dimension", &AffineBlochMap::dimension)
      .def_property_readonly("time", &AffineBlochMap::time)
      .def_property_readonly("linear_part", &AffineBlochMap::linear_part)
      .def_property_readonly("translation", &AffineBlochMap::translation)
      .def("full_matrix", &AffineBlochMap::full_matrix)
      .def(
          "apply", [](const AffineBlochMap& map, const Eigen::VectorXd& r) { return apply(map, {map.dimension(), r}).components; },
          py::arg("r"));

  m.def(
      "map_from_kraus",
      [](std::vector<Eigen::MatrixXcd> kraus, double time) {
        if (kraus.empty()) throw ShapeError("need at least one Kraus operator");
        const GeneratorBasis basis(static_cast<int>(kraus.front().rows()));
        return map_from_channel(kraus_channel(std::move(kraus)), basis, time);
      },
      py::arg("kraus"), py::arg("time") = 0.0);
  m.def(
      "map_from_channel",
      [](const ChannelAction& channel, int dimension, double time) {
        return map_from_channel(channel, GeneratorBasis(dimension), time);
      },
      py::arg("channel"), py::arg("dimension"), py::arg("time") = 0.0);
  m.def("volume_factor", &volume_factor, py::arg("map"));
  m.def("determinant", &determinant, py::arg("map"));
  m.def("compose", &compose, py::arg("later"), py::arg("earlier"));

  m.def(
      "measure_nv",
      [](std::vector<double> times, std::vector<double> volumes, double threshold) {
        return result_dict(measure_nv(make_trajectory(std::move(times), std::move(volumes)), threshold));
      },
      py::arg("times"), py::arg("volumes"), py::arg("threshold") = kDefaultGrowthThreshold);
  m.def(
      "volumes", [](const std::vector<AffineBlochMap>& maps) { return trajectory_from_maps(maps).volumes; },
      py::arg("maps"));

  py::class_<LorentzianDecayModel>(m, "LorentzianDecayModel")
      .def(py::init<double, double, double>(), py::arg("gamma0"), py::arg("lambda_"), py::arg("delta") = 0.0)
      .def("amplitude", &LorentzianDecayModel::amplitude, py::arg("t"))
      .def(
          "map", [](const LorentzianDecayModel& model, double t) { return lorentzian_map(model, t, GeneratorBasis(2)); },
          py::arg("t"))
      .def(
          "rhp_integrand", [](const LorentzianDecayModel& model, double t) { return rhp_integrand(model, t); },
          py::arg("t"));

  m.def(
      "dephasing_map",
      [](const std::function<std::complex<double>(double)>& nu, double t) {
        return dephasing_map(DephasingModel(nu), t, GeneratorBasis(2));
      },
      py::arg("nu"), py::arg("t"));

  m.def(
      "lindblad_propagate",
      [](const Eigen::MatrixXcd& hamiltonian, std::vector<Eigen::MatrixXcd> jumps, const Eigen::MatrixXd& rates,
         const std::vector<double>& times) {
        const LindbladModel model(hamiltonian, std::move(jumps), rates);
        return lindblad_propagate(model, GeneratorBasis(model.dimension()), times);
      },
      py::arg("hamiltonian"), py::arg("jump_operators"), py::arg("rates"), py::arg("times"));
  m.def(
      "amplitude_damping",
      [](double gamma, const std::vector<double>& times) {
        return lindblad_propagate(amplitude_damping_model(gamma), GeneratorBasis(2), times);
      },
      py::arg("gamma"), py::arg("times"));

  py::class_<GaussianChannel>(m, "GaussianChannel")
      .def(py::init([](Eigen::MatrixXd x, Eigen::MatrixXd y, double t) {
             GaussianChannel ch{std::move(x), std::move(y), t};
             validate_channel(ch);
             return ch;
           }),
           py::arg("x"), py::arg("y"), py::arg("time") = 0.0)
      .def_readonly("x", &GaussianChannel::x)
      .def_readonly("y", &GaussianChannel::y)
      .def_readonly("time", &GaussianChannel::time)
      .def("volume_factor", &gaussian_volume_factor)
      .def(
          "apply",
          [](const GaussianChannel& ch, const Eigen::MatrixXd& sigma) {
            return apply_gaussian(ch, CovarianceMatrix(sigma)).matrix();
          },
          py::arg("sigma"));
  m.def("symplectic_form", &symplectic_form, py::arg("modes"));
  m.def(
      "markovian_attenuation",
      [](double gamma, const Eigen::MatrixXd& sigma_inf, double t) {
        return markovian_attenuation(gamma, CovarianceMatrix(sigma_inf), t);
      },
      py::arg("gamma"), py::arg("sigma_inf"), py::arg("t"));
  m.def(
      "gaussian_nv",
      [](const std::vector<GaussianChannel>& channels, double threshold) {
        return result_dict(gaussian_nv(channels, threshold));
      },
      py::arg("channels"), py::arg("threshold") = kDefaultGrowthThreshold);

  m.def(
      "tomography_volume",
      [](const AffineBlochMap& map, std::optional<std::int64_t> shots, std::uint64_t seed) {
        const TomographyPlan plan = make_plan(GeneratorBasis(map.dimension()));
        return estimate_volume(simulate_record(plan, map, shots, seed), plan);
      },
      py::arg("map"), py::arg("shots") = py::none(), py::arg("seed") = 0);
}
