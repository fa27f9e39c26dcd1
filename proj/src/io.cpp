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
#include "rdelog/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "rdelog/errors.hpp"

namespace rdelog::io {

namespace {

// Nulls for non-finite values would break round trips; they never reach here
// because the library rejects non-finite results.
Json number(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

template <class T>
T get(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing key \"") + key + "\"");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ParseError(std::string("key \"") + key + "\" has the wrong type");
  }
}

Json point_json(const Point& z) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < z.size(); ++i) a.push_back(number(z[i]));
  return a;
}

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) out.push_back(trim(cell));
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double parse_double(const std::string& s, std::size_t line) {
  double v = 0.0;
  const char* begin = s.data();
  const char* end = s.data() + s.size();
  if (!s.empty() && *begin == '+') ++begin;
  auto [ptr, ec] = std::from_chars(begin, end, v);
  if (s.empty() || ec != std::errc() || ptr != end) throw ParseError("not a number: \"" + s + "\"", line);
  if (!std::isfinite(v)) throw ParseError("non-finite value: \"" + s + "\"", line);
  return v;
}

}  // namespace

Json to_json(const TruncatedTensor& t) {
  Json levels = Json::array();
  for (std::size_t k = 0; k <= t.degree(); ++k) {
    Json lvl = Json::array();
    for (double c : t.level(k)) lvl.push_back(number(c));
    levels.push_back(std::move(lvl));
  }
  return Json{{"d", t.dim()}, {"n", t.degree()}, {"levels", std::move(levels)}};
}

TruncatedTensor tensor_from_json(const Json& j) {
  const auto d = get<std::size_t>(j, "d");
  const auto n = get<std::size_t>(j, "n");
  if (d == 0) throw ParseError("tensor dimension must be positive");
  if (n > 8) throw ParseError("tensor degree too large");
  const auto levels = get<std::vector<std::vector<double>>>(j, "levels");
  if (levels.size() > n + 1) throw ParseError("tensor has more levels than its degree allows");
  for (std::size_t k = 0; k < levels.size(); ++k)
    if (levels[k].size() != ipow(d, k))
      throw ParseError("tensor level " + std::to_string(k) + " must have " + std::to_string(ipow(d, k)) + " entries");
  try {
    return TruncatedTensor::from_levels(d, n, levels);
  } catch (const DomainError& e) {
    throw ParseError(e.what());
  }
}

Json to_json(const LiftedPath& x) {
  Json out = Json::array();
  for (std::size_t j = 0; j < x.size(); ++j) out.push_back(Json{{"t", x.times()[j]}, {"element", to_json(x.element(j))}});
  return out;
}

LiftedPath lifted_path_from_json(const Json& j) {
  if (!j.is_array()) throw ParseError("lifted path must be a JSON list");
  std::vector<double> times;
  std::vector<TruncatedTensor> elements;
  for (const auto& item : j) {
    times.push_back(get<double>(item, "t"));
    if (!item.contains("element")) throw ParseError("missing key \"element\"");
    elements.push_back(tensor_from_json(item.at("element")));
  }
  return LiftedPath(std::move(times), std::move(elements));
}

Json to_json(const PolynomialVectorField& f) {
  Json fields = Json::array();
  for (std::size_t i = 0; i < f.driver_dim(); ++i) {
    Json terms = Json::array();
    const auto& map = f.field(i);
    for (std::size_t c = 0; c < map.nout(); ++c)
      for (const auto& [ex, coeff] : map[c].terms())
        terms.push_back(Json{{"out_coord", c}, {"coeff", coeff}, {"exponents", ex}});
    fields.push_back(Json{{"letter", i}, {"terms", std::move(terms)}});
  }
  return Json{{"d", f.driver_dim()},
              {"e", f.state_dim()},
              {"gamma", f.gamma()},
              {"box_radius", f.box_radius()},
              {"fields", std::move(fields)}};
}

PolynomialVectorField field_from_json(const Json& j) {
  const auto d = get<std::size_t>(j, "d");
  const auto e = get<std::size_t>(j, "e");
  const auto gamma = get<double>(j, "gamma");
  const double radius = j.contains("box_radius") ? get<double>(j, "box_radius") : 1.0;
  if (d == 0 || e == 0) throw ParseError("vector field dimensions must be positive");
  if (!j.contains("fields") || !j.at("fields").is_array()) throw ParseError("missing list \"fields\"");
  std::vector<std::vector<MonomialTerm>> terms(d);
  std::vector<bool> seen(d, false);
  for (const auto& field : j.at("fields")) {
    const auto letter = get<std::size_t>(field, "letter");
    if (letter >= d) throw ParseError("field letter " + std::to_string(letter) + " out of range");
    if (seen[letter]) throw ParseError("field letter " + std::to_string(letter) + " given twice");
    seen[letter] = true;
    if (!field.contains("terms") || !field.at("terms").is_array()) throw ParseError("missing list \"terms\"");
    for (const auto& term : field.at("terms")) {
      MonomialTerm m{get<std::size_t>(term, "out_coord"), get<double>(term, "coeff"),
                     get<Exponents>(term, "exponents")};
      if (m.out_coord >= e) throw ParseError("out_coord out of range");
      if (m.exponents.size() != e) throw ParseError("exponents must have e entries");
      if (!std::isfinite(m.coeff)) throw ParseError("non-finite coefficient");
      terms[letter].push_back(std::move(m));
    }
  }
  return PolynomialVectorField::from_terms(d, e, terms, gamma, radius);
}

Json to_json(const LieDiagnostic& d) {
  return Json{{"residuals", d.residuals}, {"is_lie", d.is_lie}, {"tolerance", d.tolerance}};
}

Json to_json(const SolverConfig& cfg) {
  Json j{{"p", cfg.p},
         {"degree", cfg.degree},
         {"gamma", cfg.gamma},
         {"substeps", cfg.substeps},
         {"refine_substeps", cfg.refine_substeps},
         {"max_substeps", cfg.max_substeps},
         {"substep_tol", cfg.substep_tol},
         {"reference_refinement", cfg.reference_refinement},
         {"reference_substep_factor", cfg.reference_substep_factor}};
  if (cfg.mesh) j["mesh"] = *cfg.mesh;
  if (cfg.uniform_steps) j["uniform_steps"] = *cfg.uniform_steps;
  if (cfg.alpha) {
    j["alpha"] = *cfg.alpha;
    j["strategy"] = cfg.strategy == MeshStrategy::greedy ? "greedy" : "dyadic";
  }
  return j;
}

Json to_json(const Trajectory& traj) {
  Json states = Json::array();
  for (const auto& z : traj.states) states.push_back(point_json(z));
  Json steps = Json::array();
  for (const auto& s : traj.steps) {
    Json step{{"substeps", s.substeps}, {"self_difference", s.self_difference}, {"lie_residual", s.lie_residual}};
    step["omega"] = s.omega >= 0.0 ? Json(s.omega) : Json(nullptr);
    steps.push_back(std::move(step));
  }
  Json j{{"times", traj.times}, {"states", std::move(states)}, {"steps", std::move(steps)},
         {"warnings", traj.warnings}};
  if (!traj.full_lift.empty()) {
    Json lift = Json::array();
    for (const auto& y : traj.full_lift) lift.push_back(to_json(y));
    j["full_lift"] = std::move(lift);
  }
  return j;
}

Json to_json(const SlopeFit& fit) {
  return Json{{"fitted", number(fit.slope)},
              {"intercept", number(fit.intercept)},
              {"residual", fit.residual},
              {"count", fit.count},
              {"degenerate", fit.degenerate}};
}

Json to_json(const ConvergenceReport& r) {
  Json errors = Json::array();
  for (const auto& pt : r.points)
    errors.push_back(Json{{"mesh_size", pt.mesh_size},
                          {"steps", pt.steps},
                          {"omega", pt.omega},
                          {"global_error", pt.error},
                          {"bound_sum", pt.bound_sum}});
  Json slopes = to_json(r.fit);
  slopes["predicted"] = r.predicted;
  return Json{{"kind", r.kind},
              {"errors", std::move(errors)},
              {"slopes", std::move(slopes)},
              {"fitted_constant", r.fitted_constant},
              {"bound_holds", r.bound_holds},
              {"reference", Json{{"steps", r.reference_steps}, {"substeps", r.reference_substeps}}}};
}

Json to_json(const ContinuityReport& r) {
  return Json{{"initial_gap", r.initial_gap},
              {"field_gap", r.field_gap},
              {"driver_distances", r.driver_distances},
              {"driver_distances_alpha", r.driver_distances_alpha},
              {"omega_alpha", r.omega_alpha},
              {"alpha", r.alpha},
              {"solution_distances", r.solution_distances},
              {"sup_difference", r.sup_difference}};
}

SamplePath read_csv(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  std::size_t d = 0;
  SamplePath path;
  while (std::getline(in, line)) {
    ++lineno;
    if (lineno == 1 && line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
    if (trim(line).empty()) continue;
    const auto cells = split(line);
    if (d == 0) {
      if (cells.size() < 2 || cells[0] != "t") throw ParseError("header must read t,x1,...,xd", lineno);
      for (std::size_t i = 1; i < cells.size(); ++i)
        if (cells[i] != "x" + std::to_string(i)) throw ParseError("header must read t,x1,...,xd", lineno);
      d = cells.size() - 1;
      continue;
    }
    if (cells.size() != d + 1)
      throw ParseError("expected " + std::to_string(d + 1) + " columns, found " + std::to_string(cells.size()),
                       lineno);
    const double t = parse_double(cells[0], lineno);
    if (!path.times.empty() && !(t > path.times.back()))
      throw ParseError("times must be strictly increasing", lineno);
    Eigen::VectorXd x(static_cast<Eigen::Index>(d));
    for (std::size_t i = 0; i < d; ++i) x[static_cast<Eigen::Index>(i)] = parse_double(cells[i + 1], lineno);
    path.times.push_back(t);
    path.points.push_back(std::move(x));
  }
  if (d == 0) throw ParseError("empty file: missing header t,x1,...,xd");
  if (path.times.size() < 2) throw ParseError("need at least 2 samples");
  return path;
}

SamplePath read_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  return read_csv(in);
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("invalid JSON in ") + path + ": " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw DomainError("cannot write " + path);
  out << text;
  if (!out) throw DomainError("failed writing " + path);
}

}  // namespace rdelog::io
