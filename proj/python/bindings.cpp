/* Copyright 2026 The rdelog Authors. All Rights Reserved.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *    http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 * ========================================================================= */
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "rdelog/benchmarks.hpp"
#include "rdelog/errors.hpp"
#include "rdelog/io.hpp"
#include "rdelog/lie.hpp"
#include "rdelog/rough_path.hpp"
#include "rdelog/solver.hpp"
#include "rdelog/tensor.hpp"
#include "rdelog/vector_field.hpp"

namespace py = pybind11;
using namespace rdelog;

namespace {

using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

SamplePath sample_path(const std::vector<double>& times, const RowMatrix& points) {
  if (static_cast<std::size_t>(points.rows()) != times.size())
    throw DomainError("points must have one row per time");
  SamplePath p;
  p.times = times;
  for (Eigen::Index i = 0; i < points.rows(); ++i) p.points.push_back(points.row(i).transpose());
  return p;
}

std::vector<Eigen::VectorXd> levels_of(const TruncatedTensor& t) {
  std::vector<Eigen::VectorXd> out;
  for (std::size_t k = 0; k <= t.degree(); ++k) {
    const auto l = t.level(k);
    out.emplace_back(Eigen::Map<const Eigen::VectorXd>(l.data(), static_cast<Eigen::Index>(l.size())));
  }
  return out;
}

TruncatedTensor from_levels(std::size_t dim, const std::vector<Eigen::VectorXd>& levels) {
  if (levels.empty()) throw DomainError("need at least level 0");
  TruncatedTensor t(dim, levels.size() - 1);
  for (std::size_t k = 0; k < levels.size(); ++k) {
    auto dst = t.level(k);
    if (static_cast<std::size_t>(levels[k].size()) != dst.size())
      throw DomainError("level " + std::to_string(k) + " has the wrong length");
    std::copy(levels[k].data(), levels[k].data() + levels[k].size(), dst.begin());
  }
  return t;
}

SolverConfig make_config(double p, std::optional<std::size_t> degree, double gamma, std::optional<std::size_t> mesh,
                         std::optional<double> alpha, std::size_t substeps, const std::string& strategy) {
  SolverConfig cfg;
  cfg.p = p;
  cfg.degree = degree.value_or(static_cast<std::size_t>(std::floor(p)));
  cfg.gamma = gamma;
  cfg.substeps = substeps;
  cfg.uniform_steps = mesh;
  cfg.alpha = alpha;
  if (strategy == "greedy") cfg.strategy = MeshStrategy::greedy;
  else if (strategy == "dyadic") cfg.strategy = MeshStrategy::dyadic;
  else throw DomainError("strategy must be greedy or dyadic");
  cfg.validate();
  return cfg;
}

py::dict trajectory_dict(const Trajectory& tr) {
  RowMatrix states(static_cast<Eigen::Index>(tr.states.size()),
                   tr.states.empty() ? 0 : tr.states.front().size());
  for (std::size_t j = 0; j < tr.states.size(); ++j) states.row(static_cast<Eigen::Index>(j)) = tr.states[j].transpose();
  py::dict d;
  d["times"] = tr.times;
  d["states"] = states;
  std::vector<double> omega;
  for (const auto& s : tr.steps) omega.push_back(s.omega);
  d["omega"] = omega;
  d["warnings"] = tr.warnings;
  if (!tr.full_lift.empty()) {
    py::list lift;
    for (const auto& y : tr.full_lift) lift.append(py::cast(y));
    d["full_lift"] = lift;
  }
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Rough paths, signatures and the log-ODE method.";

  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<NumericError>(m, "NumericError", PyExc_ArithmeticError);

  py::class_<TruncatedTensor>(m, "Tensor")
      .def(py::init(&from_levels), py::arg("dim"), py::arg("levels"))
      .def_static("unit", &TruncatedTensor::unit, py::arg("dim"), py::arg("degree"))
      .def_static("letter", &TruncatedTensor::letter, py::arg("dim"), py::arg("degree"), py::arg("i"),
                  py::arg("coeff") = 1.0)
      .def_property_readonly("dim", &TruncatedTensor::dim)
      .def_property_readonly("degree", &TruncatedTensor::degree)
      .def("levels", &levels_of)
      .def("coeff", py::overload_cast<const Word&>(&TruncatedTensor::coeff, py::const_), py::arg("word"))
      .def("__mul__", [](const TruncatedTensor& a, const TruncatedTensor& b) { return mul(a, b); })
      .def("__add__", [](TruncatedTensor a, const TruncatedTensor& b) { return a += b; })
      .def("__sub__", [](TruncatedTensor a, const TruncatedTensor& b) { return a -= b; })
      .def("inverse", [](const TruncatedTensor& g) { return inverse(g); })
      .def("exp", [](const TruncatedTensor& a) { return exp(a); })
      .def("log", [](const TruncatedTensor& g) { return log(g); })
      .def("dilate", [](const TruncatedTensor& g, double lambda) { return dilation(lambda, g); })
      .def("homogeneous_norm", [](const TruncatedTensor& g) { return homogeneous_norm(g); })
      .def("__repr__", [](const TruncatedTensor& t) { return io::to_json(t).dump(); });

  m.def("bracket", &bracket, py::arg("a"), py::arg("b"));
  m.def("bch", &bch, py::arg("a"), py::arg("b"));
  m.def(
      "is_lie",
      [](const TruncatedTensor& a, double tol) {
        const auto d = is_lie(a, tol);
        py::dict r;
        r["is_lie"] = d.is_lie;
        r["residuals"] = d.residuals;
        return r;
      },
      py::arg("a"), py::arg("tol") = kLieTol);
  m.def(
      "is_group_like",
      [](const TruncatedTensor& g, double tol) {
        const auto d = is_group_like(g, tol);
        py::dict r;
        r["is_group_like"] = d.is_group_like;
        r["max_residual"] = d.max_residual;
        return r;
      },
      py::arg("g"), py::arg("tol") = 1e-9);

  m.def(
      "signature",
      [](const std::vector<double>& times, const RowMatrix& points, std::size_t degree) {
        const auto x = lift_piecewise_linear(sample_path(times, points), degree);
        return x.increment(0, x.size() - 1);
      },
      py::arg("times"), py::arg("points"), py::arg("degree"));
  m.def(
      "log_signature",
      [](const std::vector<double>& times, const RowMatrix& points, std::size_t degree) {
        const auto x = lift_piecewise_linear(sample_path(times, points), degree);
        return log(x.increment(0, x.size() - 1));
      },
      py::arg("times"), py::arg("points"), py::arg("degree"));
  m.def(
      "p_variation",
      [](const std::vector<double>& times, const RowMatrix& points, double p) {
        const auto degree = static_cast<std::size_t>(std::floor(p));
        const auto x = lift_piecewise_linear(sample_path(times, points), std::max<std::size_t>(1, degree));
        return rdelog::p_variation(x, p, x.start(), x.end());
      },
      py::arg("times"), py::arg("points"), py::arg("p"));

  py::class_<PolynomialVectorField>(m, "VectorField")
      .def_static(
          "from_json",
          [](const std::string& text) {
            io::Json j;
            try {
              j = io::Json::parse(text);
            } catch (const io::Json::parse_error& e) {
              throw ParseError(e.what());
            }
            return io::field_from_json(j);
          },
          py::arg("text"))
      .def_static("cubic_benchmark", &cubic_benchmark_field)
      .def_static(
          "linear",
          [](const std::vector<Eigen::MatrixXd>& matrices, double gamma) {
            return PolynomialVectorField::linear(matrices, gamma);
          },
          py::arg("matrices"), py::arg("gamma") = 3.0)
      .def_property_readonly("driver_dim", &PolynomialVectorField::driver_dim)
      .def_property_readonly("state_dim", &PolynomialVectorField::state_dim)
      .def_property_readonly("gamma", &PolynomialVectorField::gamma)
      .def("__call__", &PolynomialVectorField::operator(), py::arg("i"), py::arg("z"))
      .def("lip_gamma", [](const PolynomialVectorField& f) { return f.lip_gamma().value; })
      .def("to_json", [](const PolynomialVectorField& f) { return io::to_json(f).dump(); });

  m.def("euler_increment", &euler_increment, py::arg("field"), py::arg("g"), py::arg("z"));
  m.def("log_ode_rhs", &log_ode_rhs, py::arg("field"), py::arg("logsig"), py::arg("z"));

  m.def(
      "solve",
      [](const PolynomialVectorField& f, const std::vector<double>& times, const RowMatrix& points,
         const Eigen::VectorXd& z0, double p, std::optional<std::size_t> degree, std::optional<double> gamma,
         std::optional<std::size_t> mesh, std::optional<double> alpha, std::size_t substeps,
         const std::string& strategy, bool full_lift, bool euler) {
        const auto cfg = make_config(p, degree, gamma.value_or(f.gamma()), mesh, alpha, substeps, strategy);
        const auto x = lift_piecewise_linear(sample_path(times, points), cfg.degree);
        std::optional<Control> omega;
        if (alpha) omega = control_from(x, f.lip_gamma(cfg.gamma, f.box_radius()).value, cfg.p);
        const Control* w = omega ? &*omega : nullptr;
        if (full_lift) {
          TruncatedTensor level1(f.state_dim(), cfg.degree);
          for (std::size_t a = 0; a < f.state_dim(); ++a) level1.coeff(Word{a}) = z0[static_cast<Eigen::Index>(a)];
          return trajectory_dict(solve_full_lift(f, x, exp(level1), cfg, w));
        }
        return trajectory_dict(euler ? euler_solve(f, x, z0, cfg, w) : solve(f, x, z0, cfg, w));
      },
      py::arg("field"), py::arg("times"), py::arg("points"), py::arg("z0"), py::arg("p") = 2.0,
      py::arg("degree") = py::none(), py::arg("gamma") = py::none(), py::arg("mesh") = py::none(),
      py::arg("alpha") = py::none(), py::arg("substeps") = 32, py::arg("strategy") = "greedy",
      py::arg("full_lift") = false, py::arg("euler") = false);
}
