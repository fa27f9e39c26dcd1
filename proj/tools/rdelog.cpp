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
// rdelog: signatures, p-variation and log-ODE solves from the command line.
//
// Exit codes: 0 ok, 2 parse error, 3 domain error, 4 numeric blow-up, 1 other.

#include <cmath>
#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rdelog/benchmarks.hpp"
#include "rdelog/errors.hpp"
#include "rdelog/io.hpp"
#include "rdelog/lie.hpp"
#include "rdelog/rough_path.hpp"
#include "rdelog/solver.hpp"

namespace {

using rdelog::io::Json;

struct Options {
  std::string path;
  std::string field;
  std::string builtin;
  std::string out;
  std::string z0;
  std::string strategy = "greedy";
  std::string study = "global";
  double p = 2.0;
  std::optional<double> gamma;
  std::optional<std::size_t> degree;
  std::optional<std::size_t> mesh;
  std::optional<double> alpha;
  std::size_t substeps = 32;
  std::uint64_t seed = 0;
  bool full_lift = false;
  bool euler = false;
  std::vector<std::size_t> meshes{8, 16, 32, 64, 128};
  std::size_t ladder_start = 5;
  std::size_t ladder_count = 6;
};

std::size_t resolved_degree(const Options& o) {
  if (!(o.p >= 1.0) || !std::isfinite(o.p)) throw rdelog::DomainError("p must be a finite real >= 1");
  return o.degree.value_or(static_cast<std::size_t>(std::floor(o.p)));
}

rdelog::LiftedPath load_driver(const Options& o, std::size_t degree) {
  if (degree == 0) throw rdelog::DomainError("degree must be positive");
  if (degree > rdelog::kMaxDegree) throw rdelog::DomainError("degree cap exceeded");
  if (!o.builtin.empty()) return rdelog::builtin_driver(o.builtin, degree, o.seed);
  if (o.path.empty()) throw rdelog::DomainError("need --path or --builtin-driver");
  return rdelog::lift_piecewise_linear(rdelog::io::read_csv_file(o.path), degree);
}

rdelog::Point parse_point(const std::string& text, std::size_t e) {
  rdelog::Point z = rdelog::Point::Zero(static_cast<Eigen::Index>(e));
  if (text.empty()) return z;
  std::vector<double> values;
  std::size_t start = 0;
  for (;;) {
    const auto pos = text.find(',', start);
    const std::string cell = text.substr(start, pos == std::string::npos ? std::string::npos : pos - start);
    try {
      std::size_t used = 0;
      values.push_back(std::stod(cell, &used));
      if (used != cell.size()) throw std::invalid_argument(cell);
    } catch (const std::exception&) {
      throw rdelog::ParseError("--z0: not a number: \"" + cell + "\"");
    }
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  if (values.size() != e) throw rdelog::DomainError("--z0 must have " + std::to_string(e) + " entries");
  for (std::size_t i = 0; i < e; ++i) z[static_cast<Eigen::Index>(i)] = values[i];
  return z;
}

// --gamma overrides the field file's value.
rdelog::SolverConfig solver_config(const Options& o, const rdelog::PolynomialVectorField& f) {
  rdelog::SolverConfig cfg;
  cfg.p = o.p;
  cfg.degree = resolved_degree(o);
  cfg.gamma = o.gamma.value_or(f.gamma());
  cfg.substeps = o.substeps;
  cfg.max_substeps = std::max<std::size_t>(512, o.substeps);
  if (o.mesh) cfg.uniform_steps = *o.mesh;
  if (o.alpha) cfg.alpha = *o.alpha;
  if (o.strategy == "dyadic") cfg.strategy = rdelog::MeshStrategy::dyadic;
  cfg.validate();
  return cfg;
}

Json run_header(const std::string& command, const Options& o) {
  Json j{{"command", command}, {"seed", o.seed}};
  if (!o.path.empty()) j["path"] = o.path;
  if (!o.builtin.empty()) j["builtin_driver"] = o.builtin;
  if (!o.field.empty()) j["field"] = o.field;
  return j;
}

struct LoadedField {
  rdelog::PolynomialVectorField field;
  bool radius_given;
};

LoadedField load_field(const Options& o) {
  if (o.field.empty()) throw rdelog::DomainError("need --field");
  const auto raw = rdelog::io::read_json_file(o.field);
  return {rdelog::io::field_from_json(raw), raw.contains("box_radius")};
}

// No radius in the file: pilot solve on the unit box, then take twice the
// sup-norm of the pilot trajectory (1 if the trajectory stays at 0).
rdelog::PolynomialVectorField resolve_radius(const LoadedField& lf, const rdelog::LiftedPath& x,
                                             const Eigen::VectorXd& z0, const rdelog::SolverConfig& cfg) {
  if (lf.radius_given) return lf.field;
  const auto& f = lf.field;
  const auto norm = f.lip_gamma(cfg.gamma, f.box_radius());
  const auto omega = rdelog::control_from(x, norm.value > 0.0 ? norm.value : 1.0, cfg.p);
  const auto pilot = rdelog::solve(f, x, z0, cfg, &omega);
  double sup = 0.0;
  for (const auto& z : pilot.states) sup = std::max(sup, z.lpNorm<Eigen::Infinity>());
  return f.with_box_radius(sup > 0.0 ? 2.0 * sup : 1.0);
}

Json cmd_sig(const Options& o) {
  const auto degree = o.degree.value_or(2);
  const auto x = load_driver(o, degree);
  Json j{{"config", run_header("sig", o)}};
  j["config"]["degree"] = degree;
  j["signature"] = rdelog::io::to_json(x.increment(0, x.size() - 1));
  return j;
}

Json cmd_logsig(const Options& o) {
  const auto degree = o.degree.value_or(2);
  const auto x = load_driver(o, degree);
  const auto ell = rdelog::log(x.increment(0, x.size() - 1));
  Json j{{"config", run_header("logsig", o)}};
  j["config"]["degree"] = degree;
  j["log_signature"] = rdelog::io::to_json(ell);
  j["lie"] = rdelog::io::to_json(rdelog::is_lie(ell));
  return j;
}

Json cmd_pvar(const Options& o) {
  const auto degree = resolved_degree(o);
  const auto x = load_driver(o, degree);
  Json j{{"config", run_header("pvar", o)}};
  j["config"]["p"] = o.p;
  j["config"]["degree"] = degree;
  j["p_variation"] = rdelog::p_variation(x, o.p, x.start(), x.end());
  return j;
}

Json cmd_solve(const Options& o) {
  const auto lf = load_field(o);
  const auto cfg = solver_config(o, lf.field);
  const auto x = load_driver(o, cfg.degree);
  const auto z0 = parse_point(o.z0, lf.field.state_dim());
  const auto f = resolve_radius(lf, x, z0, cfg);
  const auto norm = f.lip_gamma(cfg.gamma, f.box_radius());
  const auto omega = rdelog::control_from(x, norm.value > 0.0 ? norm.value : 1.0, cfg.p);

  rdelog::Trajectory traj;
  if (o.full_lift) {
    rdelog::TruncatedTensor a(f.state_dim(), cfg.degree);
    for (std::size_t i = 0; i < f.state_dim(); ++i) a.level(1)[i] = z0[static_cast<Eigen::Index>(i)];
    traj = rdelog::solve_full_lift(f, x, rdelog::exp(a), cfg, &omega);
  } else if (o.euler) {
    traj = rdelog::euler_solve(f, x, z0, cfg, &omega);
  } else {
    traj = rdelog::solve(f, x, z0, cfg, &omega);
  }
  Json config = run_header("solve", o);
  config["solver"] = rdelog::io::to_json(cfg);
  config["scheme"] = o.full_lift ? "log-ode-full-lift" : (o.euler ? "euler" : "log-ode");
  config["field_norm"] = norm.value;
  config["box_radius"] = f.box_radius();
  config["box_radius_source"] = lf.radius_given ? "field" : "pilot";
  config["z0"] = std::vector<double>(z0.data(), z0.data() + z0.size());
  Json j{{"config", std::move(config)}, {"mesh", traj.times}};
  j["trajectory"] = rdelog::io::to_json(traj);
  j["final_state"] = std::vector<double>(traj.states.back().data(), traj.states.back().data() + traj.states.back().size());
  j["errors"] = Json::array();
  return j;
}

Json cmd_converge(const Options& o) {
  const auto lf = load_field(o);
  const auto cfg = solver_config(o, lf.field);
  const auto x = load_driver(o, cfg.degree);
  const auto z0 = parse_point(o.z0, lf.field.state_dim());
  const auto f = resolve_radius(lf, x, z0, cfg);
  const auto norm = f.lip_gamma(cfg.gamma, f.box_radius());
  const auto omega = rdelog::control_from(x, norm.value > 0.0 ? norm.value : 1.0, cfg.p);

  rdelog::ConvergenceReport report;
  Json mesh = Json::array();
  if (o.study == "one-step") {
    std::vector<std::pair<double, double>> ladder;
    for (std::size_t k = 0; k < o.ladder_count; ++k) {
      const double h = (x.end() - x.start()) * std::ldexp(1.0, -static_cast<int>(o.ladder_start + k));
      const auto idx = x.anchor_index(x.start() + h);
      if (!idx) throw rdelog::DomainError("one-step ladder endpoint is not an anchor; refine the driver");
      ladder.emplace_back(x.start(), x.times()[*idx]);
      mesh.push_back(Json::array({x.start(), x.times()[*idx]}));
    }
    report = rdelog::one_step_error_study(f, x, z0, cfg, ladder, omega);
  } else {
    report = rdelog::global_convergence_study(f, x, z0, cfg, o.meshes, omega);
    mesh = o.meshes;
  }
  Json config = run_header("converge", o);
  config["solver"] = rdelog::io::to_json(cfg);
  config["study"] = o.study;
  config["field_norm"] = norm.value;
  config["box_radius"] = f.box_radius();
  config["box_radius_source"] = lf.radius_given ? "field" : "pilot";
  config["z0"] = std::vector<double>(z0.data(), z0.data() + z0.size());
  auto body = rdelog::io::to_json(report);
  Json j{{"config", std::move(config)}, {"mesh", std::move(mesh)}};
  for (auto& [k, v] : body.items()) j[k] = v;
  return j;
}

void emit(const Json& j, const std::string& out) {
  const auto text = j.dump(2) + "\n";
  if (out.empty())
    std::cout << text;
  else
    rdelog::io::write_text_file(out, text);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rdelog: rough paths, signatures and the log-ODE method"};
  app.require_subcommand(1);
  Options o;

  auto add_driver = [&](CLI::App* sub) {
    auto* path = sub->add_option("--path", o.path, "CSV sample path (header t,x1,...,xd)");
    auto* builtin = sub->add_option("--builtin-driver", o.builtin, "pure-area:c[:N] | planar:N | random:N");
    path->excludes(builtin);
    sub->add_option("--seed", o.seed, "seed for randomized drivers");
    sub->add_option("--out", o.out, "write JSON here instead of stdout");
  };
  auto add_solver = [&](CLI::App* sub) {
    sub->add_option("--field", o.field, "vector field JSON")->required();
    sub->add_option("--p", o.p, "roughness p >= 1");
    sub->add_option("--gamma", o.gamma, "Lip(gamma) regularity, gamma > p");
    sub->add_option("--degree", o.degree, "truncation degree (defaults to floor(p))");
    auto* mesh = sub->add_option("--mesh", o.mesh, "number of uniform mesh steps");
    auto* alpha = sub->add_option("--alpha", o.alpha, "adaptive mesh: every step has omega <= alpha");
    mesh->excludes(alpha);
    sub->add_option("--strategy", o.strategy, "adaptive strategy")->check(CLI::IsMember({"greedy", "dyadic"}));
    sub->add_option("--substeps", o.substeps, "RK4 substeps per unit-time step");
    sub->add_option("--z0", o.z0, "initial state, comma separated");
  };

  auto* sig = app.add_subcommand("sig", "signature of a piecewise-linear path");
  add_driver(sig);
  sig->add_option("--degree", o.degree, "truncation degree");
  auto* logsig = app.add_subcommand("logsig", "log-signature and Lie residuals");
  add_driver(logsig);
  logsig->add_option("--degree", o.degree, "truncation degree");
  auto* pvar = app.add_subcommand("pvar", "p-variation over anchor partitions");
  add_driver(pvar);
  pvar->add_option("--p", o.p, "p >= 1");
  pvar->add_option("--degree", o.degree, "lift degree (defaults to floor(p))");
  auto* solve = app.add_subcommand("solve", "log-ODE solve");
  add_driver(solve);
  add_solver(solve);
  solve->add_flag("--full-lift", o.full_lift, "integrate the group-valued solution");
  solve->add_flag("--euler", o.euler, "high-order Euler scheme instead of log-ODE");
  auto* converge = app.add_subcommand("converge", "convergence study against a refined reference");
  add_driver(converge);
  add_solver(converge);
  converge->add_option("--study", o.study, "global | one-step")->check(CLI::IsMember({"global", "one-step"}));
  converge->add_option("--meshes", o.meshes, "uniform step counts for the global study")->delimiter(',');
  converge->add_option("--ladder-start", o.ladder_start, "first one-step interval has length T/2^k");
  converge->add_option("--ladder-count", o.ladder_count, "number of one-step intervals");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    Json result;
    if (*sig) result = cmd_sig(o);
    else if (*logsig) result = cmd_logsig(o);
    else if (*pvar) result = cmd_pvar(o);
    else if (*solve) result = cmd_solve(o);
    else result = cmd_converge(o);
    emit(result, o.out);
    return 0;
  } catch (const rdelog::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const rdelog::DomainError& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return 3;
  } catch (const rdelog::NumericError& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
