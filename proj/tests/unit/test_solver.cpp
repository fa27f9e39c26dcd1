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
#include <doctest.h>

#include <cmath>
#include <random>

#include "../oracles.hpp"
#include "rdelog/benchmarks.hpp"
#include "rdelog/errors.hpp"
#include "rdelog/io.hpp"
#include "rdelog/lie.hpp"
#include "rdelog/solver.hpp"

using namespace rdelog;

namespace {

Eigen::MatrixXd mat(double a, double b, double c, double d) { return (Eigen::MatrixXd(2, 2) << a, b, c, d).finished(); }

const Eigen::MatrixXd kA1 = mat(0.0, 1.0, 0.0, 0.0);
const Eigen::MatrixXd kA2 = mat(0.0, 0.0, 1.0, 0.0);

PolynomialVectorField noncommuting() { return PolynomialVectorField::linear({kA1, kA2}, 3.0); }

SolverConfig config(std::size_t steps) {
  SolverConfig cfg;
  cfg.uniform_steps = steps;
  return cfg;
}

double error_vs(const Trajectory& a, const Point& b) { return (a.states.back() - b).norm(); }

}  // namespace

TEST_CASE("configuration validation") {
  SolverConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  cfg.degree = 3;
  CHECK_THROWS_AS(cfg.validate(), DomainError);
  cfg = SolverConfig{};
  cfg.gamma = 2.0;
  CHECK_THROWS_AS(cfg.validate(), DomainError);
  cfg = SolverConfig{};
  cfg.alpha = 1.5;
  CHECK_THROWS_AS(cfg.validate(), DomainError);
  cfg.alpha = 0.5;
  cfg.uniform_steps = 4;
  CHECK_THROWS_AS(cfg.validate(), DomainError);
  cfg = SolverConfig{};
  cfg.p = 6.2;
  cfg.degree = 6;
  cfg.gamma = 7;
  CHECK_THROWS_AS(cfg.validate(), DomainError);
}

TEST_CASE("log-ODE step against matrix exponentials") {
  const Point z = (Point(2) << 0.3, -0.8).finished();
  const auto f = noncommuting();
  CHECK(logode_step(f, z, TruncatedTensor(2, 2), 32) == z);

  const Eigen::MatrixXd a = mat(0.2, -0.7, 0.5, 0.1);
  const auto f1 = PolynomialVectorField::linear({a}, 3.0);
  const double a_norm = a.operatorNorm();
  for (double dx : {-1.0 / a_norm, 0.3, 1.0 / a_norm}) {
    const auto l = TruncatedTensor::letter(1, 2, 0, dx);
    const Point exact = oracle::expm(a * dx) * z;
    // Fixed 32 substeps: within the classical RK4 truncation bound r^5 e^r / (120 * 32^4).
    const double r = a_norm * std::abs(dx);
    CHECK((logode_step(f1, z, l, 32) - exact).norm() <= std::pow(r, 5) * std::exp(r) / (120 * std::pow(32.0, 4)) * z.norm());
    // Default solver settings start at 32 substeps and refine to 1e-10.
    SamplePath seg;
    seg.times = {0.0, 1.0};
    seg.points = {Point::Zero(1), Point::Constant(1, dx)};
    SolverConfig cfg;
    cfg.mesh = Partition{0.0, 1.0};
    CHECK((solve(f1, lift_piecewise_linear(seg, 2), z, cfg).states.back() - exact).norm() <= 1e-10);
  }

  for (double c : {0.25, -0.6}) {
    const auto l = bracket(TruncatedTensor::letter(2, 2, 0, c), TruncatedTensor::letter(2, 2, 1));
    const Point want = oracle::expm(c * (kA2 * kA1 - kA1 * kA2)) * z;
    CHECK((logode_step(f, z, l, 32) - want).norm() <= 1e-9);
  }
  CHECK_THROWS_AS(logode_step(f, z, TruncatedTensor(2, 2), 0), DomainError);
}

TEST_CASE("solve: trivial and commuting cases") {
  const auto f = io::field_from_json(io::read_json_file(RDELOG_TEST_DATA "/commuting_field.json"));
  const Point z0 = (Point(2) << 0.4, 0.9).finished();

  SamplePath flat;
  for (int j = 0; j <= 4; ++j) flat.times.push_back(j), flat.points.push_back(Point::Constant(2, 0.7));
  const auto constant = solve(f, lift_piecewise_linear(flat, 2), z0, SolverConfig{});
  for (const auto& s : constant.states) CHECK(s == z0);

  std::mt19937_64 rng(41);
  const auto sp = oracle::random_path(rng, 2, 24, 0.3);
  const auto x = lift_piecewise_linear(sp, 2);
  const Eigen::MatrixXd a1 = mat(0.5, 0.2, 0.2, -0.3), a2 = 0.5 * a1 + 0.2 * Eigen::MatrixXd::Identity(2, 2);
  const Point dx = sp.points.back() - sp.points.front();
  const Point exact = oracle::expm(a1 * dx[0] + a2 * dx[1]) * z0;
  for (std::size_t n : {1u, 3u, 8u, 24u}) CHECK(error_vs(solve(f, x, z0, config(n)), exact) <= 1e-8);
}

TEST_CASE("solve: non-commuting refinement") {
  const auto f = noncommuting();
  const auto x = builtin_driver("planar:512", 2, 0);
  const Point z0 = (Point(2) << 1.0, 0.5).finished();
  const auto ref = reference_solve(f, x, z0, SolverConfig{}, 8);
  std::vector<double> log_errors, euler_errors;
  for (std::size_t n : {8u, 16u, 32u}) {
    log_errors.push_back(error_vs(solve(f, x, z0, config(n)), ref.states.back()));
    euler_errors.push_back(error_vs(euler_solve(f, x, z0, config(n)), ref.states.back()));
  }
  CHECK(log_errors[1] < log_errors[0]);
  CHECK(log_errors[2] < log_errors[1]);
  CHECK(euler_errors[2] < euler_errors[0]);
  CHECK(log_errors[2] <= euler_errors[2]);

  // Halving the mesh never raises the error by more than 5%.
  std::vector<double> ladder;
  for (std::size_t n : {4u, 8u, 16u, 32u, 64u}) ladder.push_back(error_vs(solve(f, x, z0, config(n)), ref.states.back()));
  for (std::size_t i = 1; i < ladder.size(); ++i) CHECK(ladder[i] <= 1.05 * ladder[i - 1]);
}

TEST_CASE("Euler solve") {
  const auto f = cubic_benchmark_field();
  const Point z0 = (Point(2) << 0.1, -0.2).finished();
  const auto x = builtin_driver("planar:16", 2, 0);
  SolverConfig one;
  one.mesh = Partition{0.0, 1.0};
  const auto tr = euler_solve(f, x, z0, one);
  REQUIRE(tr.states.size() == 2);
  CHECK(tr.states[1] == z0 + euler_increment(f, x.increment(0, 16), z0));

  SamplePath flat;
  for (int j = 0; j <= 3; ++j) flat.times.push_back(j), flat.points.push_back(Point::Zero(2));
  for (const auto& s : euler_solve(f, lift_piecewise_linear(flat, 2), z0, SolverConfig{}).states) CHECK(s == z0);
}

TEST_CASE("full lift") {
  const auto f = cubic_benchmark_field();
  SamplePath flat;
  for (int j = 0; j <= 3; ++j) flat.times.push_back(j), flat.points.push_back(Point::Zero(2));
  const auto still = solve_full_lift(f, lift_piecewise_linear(flat, 2), TruncatedTensor::unit(2, 2), SolverConfig{});
  for (const auto& y : still.full_lift) CHECK(max_abs_diff(y, TruncatedTensor::unit(2, 2)) <= 1e-15);

  const auto x = builtin_driver("planar:64", 2, 0);
  const Point z0 = (Point(2) << 0.2, -0.1).finished();
  const auto xi = exp(TruncatedTensor::letter(2, 2, 0, z0[0]) + TruncatedTensor::letter(2, 2, 1, z0[1]));
  const auto full = solve_full_lift(f, x, xi, config(16));
  const auto point = solve(f, x, z0, config(16));
  REQUIRE(full.full_lift.size() == point.states.size());
  for (std::size_t j = 0; j < full.full_lift.size(); ++j) {
    CHECK(is_group_like(full.full_lift[j], 1e-7).is_group_like);
    for (std::size_t a = 0; a < 2; ++a) CHECK(std::abs(full.full_lift[j].coeff({a}) - point.states[j][Eigen::Index(a)]) <= 1e-9);
  }

  // Degree three: levels one to three checked the same way.
  PolynomialVectorField f3(2, {f.field(0), f.field(1)}, 3.5);
  SolverConfig cfg3 = config(8);
  cfg3.p = 3.0;
  cfg3.degree = 3;
  cfg3.gamma = 3.5;
  const auto x3 = builtin_driver("planar:64", 3, 0);
  const auto full3 = solve_full_lift(f3, x3, TruncatedTensor::unit(2, 3), cfg3);
  const auto point3 = solve(f3, x3, Point::Zero(2), cfg3);
  for (std::size_t j = 0; j < full3.full_lift.size(); ++j) {
    CHECK(is_group_like(full3.full_lift[j], 1e-7).is_group_like);
    CHECK((full3.states[j] - point3.states[j]).norm() <= 1e-9);
  }

  auto bad = xi;
  bad.coeff({0, 0}) += 0.1;
  CHECK_THROWS_AS(solve_full_lift(f, x, bad, config(4)), DomainError);
}

TEST_CASE("full lift of a one-dimensional linear equation") {
  const auto f = PolynomialVectorField::linear({Eigen::MatrixXd::Constant(1, 1, 0.8)}, 3.0);
  SamplePath sp;
  for (int j = 0; j <= 400; ++j) {
    const double t = j / 400.0;
    sp.times.push_back(t);
    sp.points.push_back(Point::Constant(1, std::sin(3 * t) + 0.5 * t));
  }
  const auto x = lift_piecewise_linear(sp, 2);
  const double z0 = 0.7;
  const auto xi = exp(TruncatedTensor::letter(1, 2, 0, z0));
  const auto full = solve_full_lift(f, x, xi, SolverConfig{});
  const auto y = mul(inverse(xi), full.full_lift.back());

  std::vector<double> zs, shifted;
  for (const auto& s : solve(f, x, Point::Constant(1, z0), SolverConfig{}).states) zs.push_back(s[0]), shifted.push_back(s[0] - z0);
  CHECK(y.coeff({0}) == doctest::Approx(zs.back() - z0).epsilon(1e-12));
  CHECK(std::abs(y.coeff({0, 0}) - oracle::trapezoid(zs, shifted)) <= 1e-9);
}

TEST_CASE("determinism") {
  const auto f = cubic_benchmark_field();
  const auto x = builtin_driver("random:64", 2, 7);
  const Point z0 = (Point(2) << 0.05, 0.1).finished();
  const auto a = solve(f, x, z0, config(16)), b = solve(f, x, z0, config(16));
  REQUIRE(a.states.size() == b.states.size());
  for (std::size_t j = 0; j < a.states.size(); ++j) CHECK(a.states[j] == b.states[j]);
}

TEST_CASE("adaptive meshes respect alpha") {
  const auto f = cubic_benchmark_field();
  const auto x = builtin_driver("planar:256", 2, 0);
  const auto w = control_from(x, f.lip_gamma().value, 2.0);
  const double total = w(0.0, 1.0);
  for (auto strategy : {MeshStrategy::greedy, MeshStrategy::dyadic}) {
    for (double alpha : {0.05, 0.2, 0.7}) {
      SolverConfig cfg;
      cfg.alpha = alpha;
      cfg.strategy = strategy;
      const auto tr = solve(f, x, Point::Zero(2), cfg, &w);
      const std::size_t steps = tr.steps.size();
      CHECK(steps + 1 == tr.times.size());
      for (const auto& s : tr.steps) CHECK(s.omega <= alpha * (1 + 1e-12));
      CHECK(double(steps) <= 2.0 * total / alpha + 1.0);
    }
  }
  SolverConfig cfg;
  cfg.alpha = 0.5;
  CHECK_THROWS_AS(solve(f, x, Point::Zero(2), cfg), DomainError);
  const auto coarse = builtin_driver("planar:2", 2, 0);
  const auto wc = control_from(coarse, 10.0, 2.0);
  CHECK_THROWS_AS(solve(f, coarse, Point::Zero(2), cfg, &wc), InadmissibleMeshError);
}

TEST_CASE("log-log fits") {
  const std::vector<double> h{1.0, 0.5, 0.25, 0.125, 0.0625};
  std::vector<double> e;
  for (double v : h) e.push_back(3.0 * std::pow(v, 2.5));
  const auto fit = fit_loglog(h, e);
  CHECK(fit.slope == doctest::Approx(2.5));
  CHECK(std::exp(fit.intercept) == doctest::Approx(3.0));
  CHECK(fit.residual <= 1e-12);
  CHECK(fit.count == 5);
  CHECK_FALSE(fit.degenerate);

  const auto floor_fit = fit_loglog(h, {1e-15, 2e-16, 0.0, 3e-15, 1e-16});
  CHECK(floor_fit.degenerate);
  CHECK_THROWS_AS(fit_loglog({1, 2, 3}, {1, 2, 3}), DomainError);
}

TEST_CASE("one-step studies in exact cases") {
  const auto f = io::field_from_json(io::read_json_file(RDELOG_TEST_DATA "/commuting_field.json"));
  const auto x = builtin_driver("planar:256", 2, 0);
  const auto w = control_from(x, f.lip_gamma().value, 2.0);
  std::vector<std::pair<double, double>> ladder;
  for (int k = 2; k <= 6; ++k) ladder.emplace_back(0.0, std::ldexp(1.0, -k));
  const auto report = one_step_error_study(f, x, Point::Constant(2, 0.5), SolverConfig{}, ladder, w);
  CHECK(report.kind == "one_step");
  CHECK(report.points.size() == 5);
  CHECK(report.fit.degenerate);
  for (const auto& p : report.points) CHECK(p.error >= 0.0);
  CHECK_THROWS_AS(one_step_error_study(f, x, Point::Zero(2), SolverConfig{}, {ladder.begin(), ladder.begin() + 3}, w),
                  DomainError);

  // Pure-area driver with linear fields: one step reproduces the matrix exponential.
  const auto area = builtin_driver("pure-area:0.8:64", 2, 0);
  const auto g = noncommuting();
  const Point z0 = (Point(2) << 1.0, -0.5).finished();
  SolverConfig single;
  single.mesh = Partition{0.0, 1.0};
  const Point want = oracle::expm(0.8 * (kA2 * kA1 - kA1 * kA2)) * z0;
  CHECK((solve(g, area, z0, single).states.back() - want).norm() <= 1e-9);
}

TEST_CASE("global study reports") {
  const auto f = cubic_benchmark_field();
  const auto x = builtin_driver("planar:1024", 2, 0);
  const auto w = control_from(x, f.lip_gamma().value, 2.0);
  const auto report = global_convergence_study(f, x, (Point(2) << 0.1, 0.0).finished(), SolverConfig{}, {8, 16, 32, 64}, w);
  CHECK(report.kind == "global");
  CHECK(report.points.size() == 4);
  CHECK(report.predicted == 2.0);
  CHECK(report.fit.slope >= 1.7);
  CHECK(report.bound_holds);
  for (const auto& p : report.points) CHECK(p.error <= report.fitted_constant * p.bound_sum * (1 + 1e-12));
}

TEST_CASE("continuity probe") {
  const auto f = cubic_benchmark_field();
  const auto x = builtin_driver("planar:64", 2, 0);
  const auto xi = TruncatedTensor::unit(2, 2);
  SolverConfig cfg = config(16);
  const auto same = continuity_probe(f, f, x, x, xi, xi, cfg);
  CHECK(same.initial_gap == 0.0);
  CHECK(same.field_gap == 0.0);
  CHECK(same.sup_difference == 0.0);
  for (double v : same.driver_distances) CHECK(v == 0.0);
  for (double v : same.solution_distances) CHECK(v == 0.0);

  // δ_λ X driving f / λ gives the same solution.
  const double lambda = 2.5;
  const auto xd = x.dilated(lambda);
  const auto fd = f.scaled(1.0 / lambda);
  const Point z0 = (Point(2) << 0.1, 0.2).finished();
  const auto a = solve(f, x, z0, cfg), b = solve(fd, xd, z0, cfg);
  for (std::size_t j = 0; j < a.states.size(); ++j) CHECK((a.states[j] - b.states[j]).norm() <= 1e-9);

  CHECK_THROWS_AS(continuity_probe(f, f, x, builtin_driver("planar:32", 2, 0), xi, xi, cfg), DomainError);
}

TEST_CASE("blow-up is reported") {
  const auto f = io::field_from_json(io::read_json_file(RDELOG_TEST_DATA "/blowup_field.json"));
  const auto x = lift_piecewise_linear(io::read_csv_file(RDELOG_TEST_DATA "/jump.csv"), 2);
  CHECK_THROWS_AS(solve(f, x, Point::Constant(1, 10.0), SolverConfig{}), BlowUpError);
}

TEST_CASE("one-step log-ODE and Euler agree to the one-step order") {
  const auto f = cubic_benchmark_field();
  const auto x = builtin_driver("planar:4096", 2, 0);
  const auto w = control_from(x, f.lip_gamma().value, 2.0);
  std::vector<std::pair<double, double>> ladder;
  for (int k = 5; k <= 9; ++k) ladder.emplace_back(0.0, std::ldexp(1.0, -k));
  const auto r = one_step_cross_study(f, x, (Point(2) << 0.1, -0.05).finished(), SolverConfig{}, ladder, w);
  CHECK(r.points.size() == 5);
  CHECK_FALSE(r.fit.degenerate);
  CHECK(r.fit.slope >= 1.1);
}
