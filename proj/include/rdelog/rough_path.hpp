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
// Driving signals, p-variation and controls.
//
// All suprema over partitions run over anchor-time partitions. Between anchors a
// lifted path is read along the geodesic X_t = X_{t_j} ⊗ exp(θ log X_{t_j, t_{j+1}}),
// which is exact for piecewise-linear lifts and one-parameter-group drivers.

#ifndef RDELOG_ROUGH_PATH_HPP
#define RDELOG_ROUGH_PATH_HPP

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include <Eigen/Core>

#include "rdelog/tensor.hpp"

namespace rdelog {

// Finite increasing set of times spanning an interval, endpoints included.
using Partition = std::vector<double>;

struct SamplePath {
  std::vector<double> times;
  std::vector<Eigen::VectorXd> points;

  std::size_t dim() const { return points.empty() ? 0 : static_cast<std::size_t>(points.front().size()); }
  // Throws DomainError unless times strictly increase, dims agree and values are finite.
  void validate() const;
};

class LiftedPath {
 public:
  // elements[j] = X_{t_j}; each must have π_0 = 1.
  LiftedPath(std::vector<double> times, std::vector<TruncatedTensor> elements);

  std::size_t dim() const noexcept { return elements_.front().dim(); }
  std::size_t degree() const noexcept { return elements_.front().degree(); }
  std::size_t size() const noexcept { return times_.size(); }
  const std::vector<double>& times() const noexcept { return times_; }
  double start() const noexcept { return times_.front(); }
  double end() const noexcept { return times_.back(); }
  const TruncatedTensor& element(std::size_t j) const { return elements_.at(j); }
  const TruncatedTensor& element_inverse(std::size_t j) const { return inverses_.at(j); }

  // Index of an anchor equal to t (to 1e-12 relative), if any.
  std::optional<std::size_t> anchor_index(double t) const;
  std::size_t require_anchor(double t) const;

  // X_{t_i}^{-1} ⊗ X_{t_j}.
  TruncatedTensor increment(std::size_t i, std::size_t j) const;
  // X_s^{-1} ⊗ X_t for arbitrary s <= t in [start, end], via geodesic interpolation.
  TruncatedTensor increment_at(double s, double t) const;
  TruncatedTensor value_at(double t) const;

  LiftedPath dilated(double lambda) const;
  LiftedPath truncated(std::size_t degree) const;

 private:
  std::vector<double> times_;
  std::vector<TruncatedTensor> elements_;
  std::vector<TruncatedTensor> inverses_;
};

LiftedPath lift_piecewise_linear(const SamplePath& path, std::size_t degree);

// X_t = exp((t - t_0) c [e_1, e_2]) on the given anchor times; degree 2.
LiftedPath pure_area_driver(double c, std::size_t dim, std::vector<double> times);

// sup over anchor partitions D of [s, t] of Σ |||X_{t_j, t_{j+1}}|||^p, with |||.|||
// summed over levels 1..floor(p). s and t must be anchors.
double p_variation_power(const LiftedPath& x, double p, double s, double t);
double p_variation(const LiftedPath& x, double p, double s, double t);

// Same sum over an explicit sequence of group elements (consecutive increments).
double p_variation_power(const std::vector<TruncatedTensor>& elements, double p, std::size_t max_level);

class Control {
 public:
  // fn(s, t) must vanish on the diagonal and be sub-additive; `grid` is the anchor set.
  static Control closed_form(std::function<double(double, double)> fn, std::vector<double> grid);
  // ω(t_i, t_j) = (Σ_{i <= m < j} step_values[m])^exponent, exponent >= 1. Anchor-only.
  static Control tabulated(std::vector<double> grid, std::vector<double> step_values, double exponent = 1.0);
  // ω(s, t) = f_norm^p ‖X‖^p_{p-var, [s, t]}.
  static Control from_path(LiftedPath x, double f_norm, double p);
  // Pointwise sum over a shared grid.
  static Control sum(const Control& a, const Control& b);

  const std::vector<double>& grid() const;
  // True if ω can be evaluated at times off the anchor grid.
  bool continuous() const;

  double operator()(double s, double t) const;
  double between(std::size_t i, std::size_t j) const;  // anchor indices, i <= j

  struct Impl;

 private:
  explicit Control(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;
};

Control control_from(const LiftedPath& x, double f_norm, double p);

// sup over partitions of [s, t] drawn from `grid` (default: the control's anchors)
// with every piece's ω <= alpha, of Σ ω(t_j, t_{j+1}). Throws InadmissibleMeshError
// when some indivisible grid step has ω > alpha.
double omega_alpha(const Control& omega, double alpha, double s, double t,
                   const std::optional<std::vector<double>>& grid = std::nullopt);

struct AlphaRestriction {
  const Control* omega;
  double alpha;
};

// (sup_D Σ ‖π_n(X1_{t_j,t_{j+1}}) - π_n(X2_{t_j,t_{j+1}})‖^{p/n})^{n/p} over anchor partitions.
double dpn_distance(const LiftedPath& x1, const LiftedPath& x2, std::size_t n, double p, double s, double t,
                    std::optional<AlphaRestriction> restriction = std::nullopt);

inline constexpr double kDyadicTol = 1e-8;

// Nested partitions Λ(0), ..., Λ(levels); Λ(k) has 2^k + 1 points and each
// interval of Λ(k) is split into two pieces of equal ω.
std::vector<Partition> dyadic_partition(const Control& omega, double s, double t, std::size_t levels);

}  // namespace rdelog

#endif  // RDELOG_ROUGH_PATH_HPP
