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
// Log-ODE solver for dz = f(z) dX driven by a lifted path X.
//
// Each mesh step [s, t] replaces X_{s,t} by ℓ = log X_{s,t} (truncated at [p])
// and flows the autonomous field W = Σ_k f^{∘k}(π_k ℓ)(Id) for unit time with
// fixed-step RK4. The full-lift variant flows the group-valued equation
//
//   dy/du = y ⊗ H(z_s + π_1 y),   y_0 = 1,
//
// with H the level drivers of ℓ, and chains Y_t = Y_s ⊗ y_1.

#ifndef RDELOG_SOLVER_HPP
#define RDELOG_SOLVER_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rdelog/rough_path.hpp"
#include "rdelog/tensor.hpp"
#include "rdelog/vector_field.hpp"

namespace rdelog {

enum class MeshStrategy { greedy, dyadic };

struct SolverConfig {
  double p = 2.0;
  std::size_t degree = 2;  // floor(p)
  double gamma = 3.0;      // > p
  std::size_t substeps = 32;
  bool refine_substeps = true;  // double until self-difference <= substep_tol
  std::size_t max_substeps = 512;
  double substep_tol = 1e-10;
  // Mesh: at most one of these; none means every anchor of the driver.
  std::optional<Partition> mesh;            // explicit, anchors of the driver
  std::optional<std::size_t> uniform_steps;  // nearest anchors to a uniform grid
  std::optional<double> alpha;              // adaptive, every step's ω <= alpha
  MeshStrategy strategy = MeshStrategy::greedy;
  std::size_t reference_refinement = 64;
  std::size_t reference_substep_factor = 4;

  // Throws DomainError on inconsistent settings.
  void validate() const;
};

struct StepDiagnostics {
  double omega = -1.0;  // negative when no control was supplied
  std::size_t substeps = 0;
  double self_difference = 0.0;
  double lie_residual = 0.0;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<Point> states;
  std::vector<TruncatedTensor> full_lift;  // empty for point solves
  std::vector<StepDiagnostics> steps;
  std::vector<std::string> warnings;
};

// Fixed substep count RK4 flow of the log-ODE field for unit time.
Point logode_step(const PolynomialVectorField& f, const Point& z, const TruncatedTensor& logsig,
                  std::size_t substeps);

// Unit-time flow of dy/du = y ⊗ H(z + π_1 y) from y = 1.
TruncatedTensor logode_step_full(const PolynomialVectorField& f, const Point& z, const TruncatedTensor& logsig,
                                 std::size_t substeps);

// Mesh selected by cfg; `omega` is required for adaptive meshes.
Partition resolve_mesh(const LiftedPath& x, const SolverConfig& cfg, const Control* omega = nullptr);

// Nearest anchors to n uniform steps over the whole driver.
Partition uniform_anchor_mesh(const LiftedPath& x, std::size_t n);

Trajectory solve(const PolynomialVectorField& f, const LiftedPath& x, const Point& z0, const SolverConfig& cfg,
                 const Control* omega = nullptr);

// Y_0 = xi; states are π_1 Y_t.
Trajectory solve_full_lift(const PolynomialVectorField& f, const LiftedPath& x, const TruncatedTensor& xi,
                           const SolverConfig& cfg, const Control* omega = nullptr);

Trajectory euler_solve(const PolynomialVectorField& f, const LiftedPath& x, const Point& z0, const SolverConfig& cfg,
                       const Control* omega = nullptr);

// Log-ODE solve on the whole driver at reference resolution: mesh refined by
// cfg.reference_refinement relative to `coarsest_steps` uniform steps (capped by
// the anchor count) and substeps multiplied by cfg.reference_substep_factor.
Trajectory reference_solve(const PolynomialVectorField& f, const LiftedPath& x, const Point& z0,
                           const SolverConfig& cfg, std::size_t coarsest_steps);

struct SlopeFit {
  double slope = 0.0;
  double intercept = 0.0;
  double residual = 0.0;  // RMS of log-log residuals
  std::size_t count = 0;
  bool degenerate = false;  // errors at the round-off floor; slope meaningless
};

// Least-squares fit of log y = slope log x + intercept. Points with y below
// `floor` make the fit degenerate when they are the majority.
SlopeFit fit_loglog(const std::vector<double>& x, const std::vector<double>& y, double floor = 1e-13);

struct ConvergencePoint {
  double mesh_size = 0.0;  // interval length (one-step) or uniform step width (global)
  std::size_t steps = 0;
  double omega = 0.0;      // ω(s, t) (one-step) or ω(0, T) (global)
  double error = 0.0;
  double bound_sum = 0.0;  // Σ_j ω_j^{([p]+1)/p}
};

struct ConvergenceReport {
  std::string kind;  // "one_step" or "global"
  std::vector<ConvergencePoint> points;
  SlopeFit fit;
  double predicted = 0.0;
  // err <= fitted_constant * bound_sum, constant calibrated on the first point.
  double fitted_constant = 0.0;
  bool bound_holds = false;
  std::size_t reference_steps = 0;
  std::size_t reference_substeps = 0;
};

// One log-ODE step over each [s, t] of `ladder` (from the state z at s) vs a
// reference solve over [s, t]. Slope is fitted against ω(s, t).
ConvergenceReport one_step_error_study(const PolynomialVectorField& f, const LiftedPath& x, const Point& z0,
                                       const SolverConfig& cfg, const std::vector<std::pair<double, double>>& ladder,
                                       const Control& omega);

// Same ladder for one high-order Euler step; errors vs the log-ODE step.
ConvergenceReport one_step_cross_study(const PolynomialVectorField& f, const LiftedPath& x, const Point& z0,
                                       const SolverConfig& cfg, const std::vector<std::pair<double, double>>& ladder,
                                       const Control& omega);

// Uniform meshes of `mesh_counts` steps; error at the final time vs reference.
// Slope is fitted against the step width.
ConvergenceReport global_convergence_study(const PolynomialVectorField& f, const LiftedPath& x, const Point& z0,
                                           const SolverConfig& cfg, const std::vector<std::size_t>& mesh_counts,
                                           const Control& omega);

struct ContinuityReport {
  double initial_gap = 0.0;                  // ‖ξ1 - ξ2‖ (additive)
  double field_gap = 0.0;                    // Lip(γ-1) estimate of f1/|f1| - f2/|f2| on the box
  std::vector<double> driver_distances;      // d_p^n(X1, X2), n = 1..[p]
  std::vector<double> driver_distances_alpha;  // d_p^{n,α}
  double omega_alpha = 0.0;                  // ω^α(0, T) of X1's control
  double alpha = 0.0;
  std::vector<double> solution_distances;    // d_p^k(Y1, Y2), k = 1..[p]
  double sup_difference = 0.0;               // max_j ‖z1_{t_j} - z2_{t_j}‖
};

ContinuityReport continuity_probe(const PolynomialVectorField& f1, const PolynomialVectorField& f2,
                                  const LiftedPath& x1, const LiftedPath& x2, const TruncatedTensor& xi1,
                                  const TruncatedTensor& xi2, const SolverConfig& cfg, double alpha = 1.0);

}  // namespace rdelog

#endif  // RDELOG_SOLVER_HPP
