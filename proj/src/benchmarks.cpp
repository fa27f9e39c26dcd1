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
#include "rdelog/benchmarks.hpp"

#include <charconv>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "rdelog/errors.hpp"

namespace rdelog {

namespace {

std::vector<double> uniform_times(std::size_t segments) {
  std::vector<double> t(segments + 1);
  for (std::size_t j = 0; j <= segments; ++j) t[j] = static_cast<double>(j) / static_cast<double>(segments);
  return t;
}

std::size_t parse_count(const std::string& s, const std::string& name) {
  std::size_t n = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), n);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size() || n == 0)
    throw ParseError("builtin driver \"" + name + "\": bad segment count \"" + s + "\"");
  if (n > (1u << 20)) throw DomainError("builtin driver \"" + name + "\": too many segments");
  return n;
}

}  // namespace

SamplePath planar_sample_path(std::size_t segments) {
  if (segments == 0) throw DomainError("planar path needs at least one segment");
  constexpr double pi = std::numbers::pi;
  SamplePath path;
  path.times = uniform_times(segments);
  for (double t : path.times) {
    Eigen::VectorXd x(2);
    x << 0.6 * std::sin(2 * pi * t) + 0.3 * t, 0.5 * (1 - std::cos(2 * pi * t)) + 0.2 * std::sin(6 * pi * t);
    path.points.push_back(std::move(x));
  }
  return path;
}

SamplePath random_walk(std::size_t dim, std::size_t steps, std::uint64_t seed, double scale) {
  if (dim == 0 || steps == 0) throw DomainError("random walk needs positive dimension and step count");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, scale);
  SamplePath path;
  path.times = uniform_times(steps);
  Eigen::VectorXd x = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(dim));
  path.points.push_back(x);
  for (std::size_t j = 0; j < steps; ++j) {
    for (auto& c : x) c += normal(rng);
    path.points.push_back(x);
  }
  return path;
}

PolynomialVectorField cubic_benchmark_field() {
  std::vector<std::vector<MonomialTerm>> terms(2);
  terms[0] = {{0, 1.0, {0, 0}}, {0, 0.3, {0, 1}}, {1, -0.4, {1, 0}}, {0, 0.2, {3, 0}}, {1, 0.25, {1, 2}}};
  terms[1] = {{1, 1.0, {0, 0}}, {0, 0.5, {1, 1}}, {1, 0.3, {0, 1}}, {1, -0.2, {0, 3}}, {0, 0.15, {2, 1}}};
  return PolynomialVectorField::from_terms(2, 2, terms, 3.0, 1.0);
}

LiftedPath builtin_driver(const std::string& name, std::size_t degree, std::uint64_t seed) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  for (std::size_t pos; (pos = name.find(':', start)) != std::string::npos; start = pos + 1)
    parts.push_back(name.substr(start, pos - start));
  parts.push_back(name.substr(start));

  if (parts[0] == "pure-area") {
    if (parts.size() < 2 || parts.size() > 3) throw ParseError("usage: pure-area:c[:N]");
    double c = 0.0;
    auto [ptr, ec] = std::from_chars(parts[1].data(), parts[1].data() + parts[1].size(), c);
    if (parts[1].empty() || ec != std::errc() || ptr != parts[1].data() + parts[1].size())
      throw ParseError("pure-area: bad coefficient \"" + parts[1] + "\"");
    if (degree != 2) throw DomainError("pure-area driver is defined at degree 2 only");
    const std::size_t n = parts.size() == 3 ? parse_count(parts[2], name) : 64;
    return pure_area_driver(c, 2, uniform_times(n));
  }
  if (parts.size() != 2) throw ParseError("unknown builtin driver \"" + name + "\"");
  const std::size_t n = parse_count(parts[1], name);
  if (parts[0] == "planar") return lift_piecewise_linear(planar_sample_path(n), degree);
  if (parts[0] == "random") return lift_piecewise_linear(random_walk(2, n, seed, 1.0 / std::sqrt(double(n))), degree);
  throw ParseError("unknown builtin driver \"" + name + "\"");
}

}  // namespace rdelog
