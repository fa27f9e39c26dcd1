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
#include "rdelog/solver.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>

#include "rdelog/errors.hpp"
#include "rdelog/lie.hpp"

namespace rdelog {

void SolverConfig::validate() const {
  if (!(p >= 1.0) || !std::isfinite(p)) throw DomainError("p must be a finite real >= 1");
  if (degree != static_cast<std::size_t>(std::floor(p)))
    throw DomainError("degree must equal floor(p) (got degree " + std::to_string(degree) + ")");
  if (degree > kMaxDegree) throw DomainError("degree cap exceeded");
  if (!(gamma > p) || !std::isfinite(gamma)) throw DomainError("gamma must exceed p");
  if (substeps == 0) throw DomainError("substeps must be positive");
  if (max_substeps < substeps) throw DomainError("max_substeps must be >= substeps");
  if (!(substep_tol > 0.0)) throw DomainError("substep tolerance must be positive");
  const int modes = int(mesh.has_value()) + int(uniform_steps.has_value()) + int(alpha.has_value());
  if (modes > 1) throw DomainError("choose at most one of an explicit mesh, a uniform step count and alpha");
  if (uniform_steps && *uniform_steps == 0) throw DomainError("uniform step count must be positive");
  if (alpha && !(*alpha > 0.0 && *alpha <= 1.0)) throw DomainError("alpha must lie in (0, 1]");
  if (reference_refinement == 0 || reference_substep_factor == 0)
    throw DomainError("reference refinement factors must be positive");
}

namespace {

double inf_norm(const Point& a) { return a.size() ? a.cwiseAbs().maxCoeff() : 0.0; }

Point rk4_flow(const PolyMap& w, Point z, std::size_t n) {
  const double h = 1.0 / static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Point k1 = w(z);
    const Point k2 = w(z + 0.5 * h * k1);
    const Point k3 = w(z + 0.5 * h * k2);
    const Point k4 = w(z + h * k3);
    z += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (!z.allFinite()) throw BlowUpError("log-ODE state became non-finite", i + 1);
  }
  return z;
}

TruncatedTensor rk4_flow_full(const PolynomialVectorField& f, const Point& zs, const TruncatedTensor& logsig,
                              std::size_t n) {
  const double h = 1.0 / static_cast<double>(n);
  const std::size_t e = f.state_dim();
  auto rhs = [&](const TruncatedTensor& y) {
    auto lvl = y.level(1);
    const Point z = zs + Eigen::Map<const Point>(lvl.data(), static_cast<Eigen::Index>(e));
    return mul(y, level_drivers(f, logsig, z));
  };
  auto y = TruncatedTensor::unit(e, logsig.degree());
  for (std::size_t i = 0; i < n; ++i) {
    try {
      const auto k1 = rhs(y);
      const auto k2 = rhs(y + k1 * (0.5 * h));
      const auto k3 = rhs(y + k2 * (0.5 * h));
      const auto k4 = rhs(y + k3 * h);
      y += (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (h / 6.0);
    } catch (const BlowUpError&) {
      throw;
    } catch (const NumericError&) {
      throw BlowUpError("full-lift state became non-finite", i + 1);
    }
    if (!y.all_finite()) throw BlowUpError("full-lift state became non-finite", i + 1);
  }
  return y;
}

struct PointFlow {
  Point z;
  std::size_t substeps;
  double diff;
};

PointFlow adaptive_flow(const PolyMap& w, const Point& z, const SolverConfig& cfg) {
  std::size_t n = cfg.substeps;
  Point a = rk4_flow(w, z, n);
  if (!cfg.refine_substeps || 2 * n > cfg.max_substeps) return {a, n, 0.0};
  for (;;) {
    Point b = rk4_flow(w, z, 2 * n);
    const double diff = inf_norm(b - a);
    n *= 2;
    if (diff <= cfg.substep_tol * std::max(1.0, inf_norm(b)) || 2 * n > cfg.max_substeps) return {b, n, diff};
    a = std::move(b);
  }
}

struct FullFlow {
  TruncatedTensor y;
  std::size_t substeps;
  double diff;
};

FullFlow adaptive_flow_full(const PolynomialVectorField& f, const Point& zs, const TruncatedTensor& logsig,
                            const SolverConfig& cfg) {
  std::size_t n = cfg.substeps;
  auto a = rk4_flow_full(f, zs, logsig, n);
  if (!cfg.refine_substeps || 2 * n > cfg.max_substeps) return {a, n, 0.0};
  for (;;) {
    auto b = rk4_flow_full(f, zs, logsig, 2 * n);
    const double diff = max_abs_diff(a, b);
    n *= 2;
    double scale = 1.0;
    for (double c : b.data()) scale = std::max(scale, std::abs(c));
    if (diff <= cfg.substep_tol * scale || 2 * n > cfg.max_substeps) return {std::move(b), n, diff};
    a = std::move(b);
  }
}

void check_inputs(const PolynomialVectorField& f, const LiftedPath& x, std::size_t state_size,
                  const SolverConfig& cfg) {
  cfg.validate();
  if (x.dim() != f.driver_dim()) throw DomainError("driver dimension does not match the vector field");
  if (x.degree() < cfg.degree) throw DomainError("driver degree is below floor(p)");
  if (f.max_order() < cfg.degree) throw DomainError("vector field compositions do not reach floor(p)");
  if (state_size != f.state_dim()) throw DomainError("initial state has wrong dimension");
}

TruncatedTensor step_logsig(const LiftedPath& x, double s, double t, std::size_t degree) {
  return log(x.increment_at(s, t).truncated(degree));
}

double max_residual(const LieDiagnostic& d) {
  double r = 0.0;
  for (double v : d.residuals) r = std::max(r, v);
  return r;
}

// Anchors of x within [s, t].
std::pair<std::size_t, std::size_t> anchor_span(const LiftedPath& x, double s, double t) {
  return {x.require_anchor(s), x.require_anchor(t)};
}

// Nearest anchors to n uniform steps over [s, t]; all anchors when n exceeds their count.
Partition uniform_anchor_mesh_on(const LiftedPath& x, std::size_t n, double s, double t) {
  const auto [i0, i1] = anchor_span(x, s, t);
  const auto& times = x.times();
  if (n >= i1 - i0) return Partition(times.begin() + static_cast<std::ptrdiff_t>(i0),
                                     times.begin() + static_cast<std::ptrdiff_t>(i1 + 1));
  Partition mesh;
  const auto lo = times.begin() + static_cast<std::ptrdiff_t>(i0);
  const auto hi = times.begin() + static_cast<std::ptrdiff_t>(i1 + 1);
  for (std::size_t k = 0; k <= n; ++k) {
    const double target = s + (t - s) * static_cast<double>(k) / static_cast<double>(n);
    auto it = std::lower_bound(lo, hi, target);
    if (it == hi) --it;
    if (it != lo && target - *(it - 1) <= *it - target) --it;
    if (!mesh.empty() && *it <= mesh.back()) throw DomainError("driver has too few anchors for a uniform mesh");
    mesh.push_back(*it);
  }
  mesh.front() = s;
  mesh.back() = t;
  return mesh;
}

Partition greedy_mesh(const LiftedPath& x, const Control& omega, double alpha) {
  const auto& times = x.times();
  Partition mesh{times.front()};
  std::size_t i = 0;
  while (i + 1 < times.size()) {
    std::size_t j = i + 1;
    const double w = omega(times[i], times[j]);
    if (w > alpha) throw InadmissibleMeshError(times[i], times[j], w, alpha);
    while (j + 1 < times.size() && omega(times[i], times[j + 1]) <= alpha) ++j;
    mesh.push_back(times[j]);
    i = j;
  }
  return mesh;
}

Partition dyadic_mesh(const LiftedPath& x, const Control& omega, double alpha) {
  const double s = x.start(), t = x.end();
  const double total = omega(s, t);
  if (total <= alpha) return {s, t};
  auto levels = static_cast<std::size_t>(std::max(1.0, std::ceil(std::log2(total / alpha))));
  for (; levels <= 20; ++levels) {
    auto parts = dyadic_partition(omega, s, t, levels);
    const auto& mesh = parts.back();
    bool ok = true;
    for (std::size_t j = 0; ok && j + 1 < mesh.size(); ++j) ok = omega(mesh[j], mesh[j + 1]) <= alpha;
    if (ok) return mesh;
  }
  throw DomainError("dyadic mesh did not reach alpha within 20 levels");
}

template <class Fn>
auto parallel_map(std::size_t count, Fn fn) {
  using R = decltype(fn(std::size_t{0}));
  std::vector<std::future<R>> futures;
  futures.reserve(count);
  for (std::size_t i = 0; i < count; ++i) futures.push_back(std::async(std::launch::async, fn, i));
  std::vector<R> out;
  out.reserve(count);
  for (auto& fut : futures) out.push_back(fut.get());
  return out;
}

void calibrate(ConvergenceReport& r) {
  std::vector<double> xs, ys;
  for (const auto& pt : r.points) {
    xs.push_back(r.kind == "global" ? pt.mesh_size : pt.omega);
    ys.push_back(pt.error);
  }
  r.fit = fit_loglog(xs, ys);
  if (r.points.empty()) return;
  // Constant from the coarsest point, checked on all.
  const auto coarsest = std::max_element(r.points.begin(), r.points.end(), [](const auto& a, const auto& b) {
    return a.mesh_size < b.mesh_size;
  });
  r.fitted_constant = coarsest->bound_sum > 0.0 ? coarsest->error / coarsest->bound_sum : 0.0;
  r.bound_holds = std::all_of(r.points.begin(), r.points.end(), [&](const auto& pt) {
    return pt.error <= r.fitted_constant * pt.bound_sum * (1.0 + 1e-12) + 1e-15;
  });
}

SolverConfig reference_config(const SolverConfig& cfg) {
  SolverConfig ref = cfg;
  ref.mesh.reset();
  ref.uniform_steps.reset();
  ref.alpha.reset();
  ref.substeps = cfg.substeps * cfg.reference_substep_factor;
  ref.max_substeps = std::max(cfg.max_substeps, ref.substeps);
  return ref;
}

}  // namespace

Point logode_step(const PolynomialVectorField& f, const Point& z, const TruncatedTensor& logsig,
                  std::size_t substeps) {
  if (substeps == 0) throw DomainError("substeps must be positive");
  if (static_cast<std::size_t>(z.size()) != f.state_dim()) throw DomainError("point has wrong dimension");
  return rk4_flow(LogOdeField(f, logsig).polynomial(), z, substeps);
}

TruncatedTensor logode_step_full(const PolynomialVectorField& f, const Point& z, const TruncatedTensor& logsig,
                                 std::size_t substeps) {
  if (substeps == 0) throw DomainError("substeps must be positive");
  if (static_cast<std::size_t>(z.size()) != f.state_dim()) throw DomainError("point has wrong dimension");
  return rk4_flow_full(f, z, logsig, substeps);
}

Partition uniform_anchor_mesh(const LiftedPath& x, std::size_t n) {
  if (n == 0) throw DomainError("uniform step count must be positive");
  return uniform_anchor_mesh_on(x, n, x.start(), x.end());
}

Partition resolve_mesh(const LiftedPath& x, const SolverConfig& cfg, const Control* omega) {
  cfg.validate();
  if (cfg.mesh) {
    const auto& mesh = *cfg.mesh;
    if (mesh.size() < 2) throw DomainError("mesh needs at least 2 points");
    for (std::size_t j = 0; j < mesh.size(); ++j) {
      x.require_anchor(mesh[j]);
      if (j > 0 && !(mesh[j] > mesh[j - 1])) throw DomainError("mesh must be strictly increasing");
    }
    return mesh;
  }
  if (cfg.uniform_steps) return uniform_anchor_mesh(x, *cfg.uniform_steps);
  if (cfg.alpha) {
    if (!omega) throw DomainError("adaptive mesh needs a control");
    return cfg.strategy == MeshStrategy::greedy ? greedy_mesh(x, *omega, *cfg.alpha)
                                                : dyadic_mesh(x, *omega, *cfg.alpha);
  }
  return x.times();
}

Trajectory solve(const PolynomialVectorField& f, const LiftedPath& x, const Point& z0, const SolverConfig& cfg,
                 const Control* omega) {
  check_inputs(f, x, static_cast<std::size_t>(z0.size()), cfg);
  if (!z0.allFinite()) throw DomainError("initial state is not finite");
  Trajectory out;
  out.times = resolve_mesh(x, cfg, omega);
  out.states.reserve(out.times.size());
  out.states.push_back(z0);
  for (std::size_t j = 0; j + 1 < out.times.size(); ++j) {
    const double s = out.times[j], t = out.times[j + 1];
    const LogOdeField w(f, step_logsig(x, s, t, cfg.degree));
    auto flow = adaptive_flow(w.polynomial(), out.states.back(), cfg);
    for (const auto& msg : w.warnings()) out.warnings.push_back("step " + std::to_string(j) + ": " + msg);
    out.steps.push_back({omega ? (*omega)(s, t) : -1.0, flow.substeps, flow.diff, max_residual(w.lie())});
    out.states.push_back(std::move(flow.z));
  }
  return out;
}

Trajectory solve_full_lift(const PolynomialVectorField& f, const LiftedPath& x, const TruncatedTensor& xi,
                           const SolverConfig& cfg, const Control* omega) {
  check_inputs(f, x, xi.dim(), cfg);
  if (xi.degree() != cfg.degree) throw DomainError("initial element must have degree floor(p)");
  if (!is_group_like(xi, 1e-8).is_group_like) throw DomainError("initial element is not group-like");
  auto level1 = [](const TruncatedTensor& y) {
    auto l = y.level(1);
    return Point(Eigen::Map<const Point>(l.data(), static_cast<Eigen::Index>(l.size())));
  };
  Trajectory out;
  out.times = resolve_mesh(x, cfg, omega);
  out.full_lift.push_back(xi);
  out.states.push_back(level1(xi));
  for (std::size_t j = 0; j + 1 < out.times.size(); ++j) {
    const double s = out.times[j], t = out.times[j + 1];
    const auto logsig = step_logsig(x, s, t, cfg.degree);
    const auto lie = is_lie(logsig);
    if (!lie.is_lie) out.warnings.push_back("step " + std::to_string(j) + ": log-signature is not a Lie element");
    auto flow = adaptive_flow_full(f, out.states.back(), logsig, cfg);
    out.full_lift.push_back(mul(out.full_lift.back(), flow.y));
    out.states.push_back(level1(out.full_lift.back()));
    out.steps.push_back({omega ? (*omega)(s, t) : -1.0, flow.substeps, flow.diff, max_residual(lie)});
  }
  return out;
}

Trajectory euler_solve(const PolynomialVectorField& f, const LiftedPath& x, const Point& z0, const SolverConfig& cfg,
                       const Control* omega) {
  check_inputs(f, x, static_cast<std::size_t>(z0.size()), cfg);
  Trajectory out;
  out.times = resolve_mesh(x, cfg, omega);
  out.states.push_back(z0);
  for (std::size_t j = 0; j + 1 < out.times.size(); ++j) {
    const double s = out.times[j], t = out.times[j + 1];
    const auto g = x.increment_at(s, t).truncated(cfg.degree);
    Point next = out.states.back() + euler_increment(f, g, out.states.back());
    if (!next.allFinite()) throw BlowUpError("Euler state became non-finite", j + 1);
    out.steps.push_back({omega ? (*omega)(s, t) : -1.0, 0, 0.0, 0.0});
    out.states.push_back(std::move(next));
  }
  return out;
}

Trajectory reference_solve(const PolynomialVectorField& f, const LiftedPath& x, const Point& z0,
                           const SolverConfig& cfg, std::size_t coarsest_steps) {
  auto ref = reference_config(cfg);
  ref.mesh = uniform_anchor_mesh_on(x, coarsest_steps * cfg.reference_refinement, x.start(), x.end());
  return solve(f, x, z0, ref);
}

SlopeFit fit_loglog(const std::vector<double>& x, const std::vector<double>& y, double floor) {
  if (x.size() != y.size()) throw DomainError("fit_loglog: length mismatch");
  if (x.size() < 4) throw DomainError("slope fits need at least 4 points");
  SlopeFit fit;
  fit.count = x.size();
  std::size_t at_floor = 0;
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0)) throw DomainError("fit_loglog: abscissae must be positive");
    if (!(y[i] > floor)) {
      ++at_floor;
      continue;
    }
    lx.push_back(std::log(x[i]));
    ly.push_back(std::log(y[i]));
  }
  if (2 * at_floor >= x.size() || lx.size() < 2) {
    fit.degenerate = true;
    fit.slope = std::numeric_limits<double>::quiet_NaN();
    fit.intercept = std::numeric_limits<double>::quiet_NaN();
    return fit;
  }
  const double n = static_cast<double>(lx.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) mx += lx[i] / n, my += ly[i] / n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
  }
  if (sxx == 0.0) throw DomainError("fit_loglog: abscissae are all equal");
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    const double r = ly[i] - (fit.intercept + fit.slope * lx[i]);
    ss += r * r;
  }
  fit.residual = std::sqrt(ss / n);
  fit.degenerate = at_floor > 0;
  return fit;
}

namespace {

// State at anchor s, obtained by a reference-resolution solve from the start.
Point state_at(const PolynomialVectorField& f, const LiftedPath& x, const Point& z0, const SolverConfig& cfg,
               double s) {
  if (x.require_anchor(s) == 0) return z0;
  auto ref = reference_config(cfg);
  ref.mesh = uniform_anchor_mesh_on(x, std::numeric_limits<std::size_t>::max() / 2, x.start(), s);
  return solve(f, x, z0, ref).states.back();
}

template <class StepFn>
ConvergenceReport ladder_study(const PolynomialVectorField& f, const LiftedPath& x, const Point& z0,
                               const SolverConfig& cfg, const std::vector<std::pair<double, double>>& ladder,
                               const Control& omega, std::string kind, StepFn step_error) {
  check_inputs(f, x, static_cast<std::size_t>(z0.size()), cfg);
  if (ladder.size() < 4) throw DomainError("convergence studies need at least 4 ladder points");
  const double q = static_cast<double>(cfg.degree + 1) / cfg.p;
  ConvergenceReport r;
  r.kind = std::move(kind);
  r.predicted = q;
  r.reference_substeps = cfg.substeps * cfg.reference_substep_factor;
  auto results = parallel_map(ladder.size(), [&](std::size_t i) {
    const auto [s, t] = ladder[i];
    if (!(s < t)) throw DomainError("ladder intervals need s < t");
    const Point zs = state_at(f, x, z0, cfg, s);
    auto [err, ref_steps] = step_error(zs, s, t);
    ConvergencePoint pt;
    pt.mesh_size = t - s;
    pt.steps = 1;
    pt.omega = omega(s, t);
    pt.error = err;
    pt.bound_sum = std::pow(pt.omega, q);
    return std::make_pair(pt, ref_steps);
  });
  for (auto& [pt, ref_steps] : results) {
    r.points.push_back(pt);
    r.reference_steps = std::max(r.reference_steps, ref_steps);
  }
  calibrate(r);
  return r;
}

}  // namespace

ConvergenceReport one_step_error_study(const PolynomialVectorField& f, const LiftedPath& x, const Point& z0,
                                       const SolverConfig& cfg, const std::vector<std::pair<double, double>>& ladder,
                                       const Control& omega) {
  return ladder_study(f, x, z0, cfg, ladder, omega, "one_step", [&](const Point& zs, double s, double t) {
    auto ref_cfg = reference_config(cfg);
    ref_cfg.mesh = uniform_anchor_mesh_on(x, cfg.reference_refinement, s, t);
    const auto ref = solve(f, x, zs, ref_cfg);
    SolverConfig one = cfg;
    one.mesh = Partition{s, t};
    one.uniform_steps.reset();
    one.alpha.reset();
    const auto approx = solve(f, x, zs, one);
    return std::make_pair((ref.states.back() - approx.states.back()).norm(), ref.times.size() - 1);
  });
}

ConvergenceReport one_step_cross_study(const PolynomialVectorField& f, const LiftedPath& x, const Point& z0,
                                       const SolverConfig& cfg, const std::vector<std::pair<double, double>>& ladder,
                                       const Control& omega) {
  return ladder_study(f, x, z0, cfg, ladder, omega, "one_step_cross", [&](const Point& zs, double s, double t) {
    SolverConfig one = cfg;
    one.mesh = Partition{s, t};
    one.uniform_steps.reset();
    one.alpha.reset();
    const auto logode = solve(f, x, zs, one);
    const auto euler = euler_solve(f, x, zs, one);
    return std::make_pair((logode.states.back() - euler.states.back()).norm(), std::size_t{0});
  });
}

ConvergenceReport global_convergence_study(const PolynomialVectorField& f, const LiftedPath& x, const Point& z0,
                                           const SolverConfig& cfg, const std::vector<std::size_t>& mesh_counts,
                                           const Control& omega) {
  check_inputs(f, x, static_cast<std::size_t>(z0.size()), cfg);
  if (mesh_counts.size() < 4) throw DomainError("convergence studies need at least 4 meshes");
  const double q = static_cast<double>(cfg.degree + 1) / cfg.p;
  const std::size_t finest = *std::max_element(mesh_counts.begin(), mesh_counts.end());

  ConvergenceReport r;
  r.kind = "global";
  r.predicted = static_cast<double>(cfg.degree);
  const auto ref = reference_solve(f, x, z0, cfg, finest);
  r.reference_steps = ref.times.size() - 1;
  r.reference_substeps = cfg.substeps * cfg.reference_substep_factor;

  r.points = parallel_map(mesh_counts.size(), [&](std::size_t i) {
    SolverConfig run = cfg;
    run.mesh = uniform_anchor_mesh(x, mesh_counts[i]);
    run.uniform_steps.reset();
    run.alpha.reset();
    const auto traj = solve(f, x, z0, run);
    ConvergencePoint pt;
    pt.steps = traj.times.size() - 1;
    pt.mesh_size = (x.end() - x.start()) / static_cast<double>(mesh_counts[i]);
    pt.error = (traj.states.back() - ref.states.back()).norm();
    for (std::size_t j = 0; j + 1 < traj.times.size(); ++j) {
      const double w = omega(traj.times[j], traj.times[j + 1]);
      pt.omega = std::max(pt.omega, w);
      pt.bound_sum += std::pow(w, q);
    }
    return pt;
  });
  calibrate(r);
  return r;
}

ContinuityReport continuity_probe(const PolynomialVectorField& f1, const PolynomialVectorField& f2,
                                  const LiftedPath& x1, const LiftedPath& x2, const TruncatedTensor& xi1,
                                  const TruncatedTensor& xi2, const SolverConfig& cfg, double alpha) {
  if (x1.size() != x2.size() ||
      !std::equal(x1.times().begin(), x1.times().end(), x2.times().begin(), [](double a, double b) {
        return std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(a));
      }))
    throw DomainError("continuity_probe: drivers must share an anchor grid");
  if (f1.driver_dim() != f2.driver_dim() || f1.state_dim() != f2.state_dim())
    throw DomainError("continuity_probe: vector fields differ in shape");
  if (!xi1.same_shape(xi2)) throw DomainError("continuity_probe: initial elements differ in shape");

  ContinuityReport r;
  r.alpha = alpha;
  r.initial_gap = additive_norm(xi1 - xi2);

  const auto n1 = f1.lip_gamma();
  const auto n2 = f2.lip_gamma();
  const double norm1 = n1.value > 0.0 ? n1.value : 1.0;
  const double norm2 = n2.value > 0.0 ? n2.value : 1.0;
  std::vector<PolyMap> diff;
  for (std::size_t i = 0; i < f1.driver_dim(); ++i) {
    PolyMap a = f1.field(i);
    a *= 1.0 / norm1;
    PolyMap b = f2.field(i);
    b *= -1.0 / norm2;
    a += b;
    diff.push_back(std::move(a));
  }
  const PolynomialVectorField g(f1.state_dim(), std::move(diff), f1.gamma(), f1.box_radius(), 1);
  r.field_gap = g.lip_gamma(f1.gamma() - 1.0, f1.box_radius()).value;

  const auto omega = control_from(x1, norm1, cfg.p);
  r.omega_alpha = omega_alpha(omega, alpha, x1.start(), x1.end());
  for (std::size_t n = 1; n <= cfg.degree; ++n) {
    r.driver_distances.push_back(dpn_distance(x1, x2, n, cfg.p, x1.start(), x1.end()));
    r.driver_distances_alpha.push_back(
        dpn_distance(x1, x2, n, cfg.p, x1.start(), x1.end(), AlphaRestriction{&omega, alpha}));
  }

  SolverConfig run = cfg;
  run.mesh = resolve_mesh(x1, cfg, &omega);
  run.uniform_steps.reset();
  run.alpha.reset();
  std::vector<std::pair<const PolynomialVectorField*, std::pair<const LiftedPath*, const TruncatedTensor*>>> jobs{
      {&f1, {&x1, &xi1}}, {&f2, {&x2, &xi2}}};
  auto trajs = parallel_map(2, [&](std::size_t i) {
    return solve_full_lift(*jobs[i].first, *jobs[i].second.first, *jobs[i].second.second, run);
  });
  const LiftedPath y1(trajs[0].times, trajs[0].full_lift);
  const LiftedPath y2(trajs[1].times, trajs[1].full_lift);
  for (std::size_t k = 1; k <= cfg.degree; ++k)
    r.solution_distances.push_back(dpn_distance(y1, y2, k, cfg.p, y1.start(), y1.end()));
  for (std::size_t j = 0; j < trajs[0].states.size(); ++j)
    r.sup_difference = std::max(r.sup_difference, (trajs[0].states[j] - trajs[1].states[j]).norm());
  return r;
}

}  // namespace rdelog
