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
#include "rdelog/rough_path.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>
#include <string>
#include <unordered_map>

#include "rdelog/errors.hpp"
#include "rdelog/lie.hpp"

namespace rdelog {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

bool same_time(double a, double b) { return std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(a)); }

std::size_t floor_p(double p) {
  if (!(p >= 1.0) || !std::isfinite(p)) throw DomainError("p must be a finite real >= 1");
  return static_cast<std::size_t>(std::floor(p));
}

double power(double x, double p) { return p == 2.0 ? x * x : (p == 1.0 ? x : std::pow(x, p)); }

// |||a^{-1} ⊗ b||| on levels 1..cap, reusing `buf`.
double increment_norm(const TruncatedTensor& a_inv, const TruncatedTensor& b, TruncatedTensor& buf, std::size_t cap) {
  mul_into(a_inv, b, buf, cap);
  double s = 0.0;
  for (std::size_t k = 1; k <= cap; ++k) {
    double sq = 0.0;
    for (double c : buf.level(k)) sq += c * c;
    const double nk = std::sqrt(sq);
    s += k == 1 ? nk : (k == 2 ? std::sqrt(nk) : std::pow(nk, 1.0 / static_cast<double>(k)));
  }
  return s;
}

// best[j] = max_{m<j} best[m] + cost(m, j), best[0] = 0.
template <class Cost>
double partition_sup(std::size_t count, Cost&& cost) {
  if (count < 2) return 0.0;
  std::vector<double> best(count, kNegInf);
  best[0] = 0.0;
  for (std::size_t j = 1; j < count; ++j)
    for (std::size_t m = 0; m < j; ++m)
      if (best[m] != kNegInf) best[j] = std::max(best[j], best[m] + cost(m, j));
  return best.back();
}

}  // namespace

void SamplePath::validate() const {
  if (times.size() != points.size()) throw DomainError("times and points differ in length");
  if (times.size() < 2) throw DomainError("need at least 2 samples");
  const auto d = points.front().size();
  if (d == 0) throw DomainError("sample points must have positive dimension");
  for (std::size_t j = 0; j < times.size(); ++j) {
    if (!std::isfinite(times[j])) throw DomainError("non-finite sample time");
    if (points[j].size() != d) throw DomainError("sample points differ in dimension");
    if (!points[j].allFinite()) throw DomainError("non-finite sample coordinate");
    if (j > 0 && !(times[j] > times[j - 1]))
      throw DomainError("sample times must be strictly increasing (repeated or decreasing time at index " +
                        std::to_string(j) + ")");
  }
}

LiftedPath::LiftedPath(std::vector<double> times, std::vector<TruncatedTensor> elements)
    : times_(std::move(times)), elements_(std::move(elements)) {
  if (times_.size() != elements_.size()) throw DomainError("times and elements differ in length");
  if (times_.size() < 2) throw DomainError("a lifted path needs at least 2 anchors");
  for (std::size_t j = 0; j < times_.size(); ++j) {
    if (!elements_[j].same_shape(elements_.front())) throw DomainError("lifted path elements differ in shape");
    if (std::abs(elements_[j].scalar() - 1.0) > kUnitScalarTol)
      throw DomainError("lifted path element is not a unit-scalar element");
    if (!std::isfinite(times_[j])) throw DomainError("non-finite anchor time");
    if (j > 0 && !(times_[j] > times_[j - 1])) throw DomainError("anchor times must be strictly increasing");
  }
  inverses_.reserve(elements_.size());
  for (const auto& x : elements_) inverses_.push_back(inverse(x));
}

std::optional<std::size_t> LiftedPath::anchor_index(double t) const {
  auto it = std::lower_bound(times_.begin(), times_.end(), t);
  if (it != times_.end() && same_time(*it, t)) return static_cast<std::size_t>(it - times_.begin());
  if (it != times_.begin() && same_time(*(it - 1), t)) return static_cast<std::size_t>(it - times_.begin() - 1);
  return std::nullopt;
}

std::size_t LiftedPath::require_anchor(double t) const {
  auto idx = anchor_index(t);
  if (!idx) throw DomainError("time " + std::to_string(t) + " is not an anchor time");
  return *idx;
}

TruncatedTensor LiftedPath::increment(std::size_t i, std::size_t j) const {
  if (i >= size() || j >= size()) throw DomainError("anchor index out of range");
  return mul(inverses_[i], elements_[j]);
}

TruncatedTensor LiftedPath::value_at(double t) const {
  if (t < start() && !same_time(t, start())) throw DomainError("time before the start of the path");
  if (t > end() && !same_time(t, end())) throw DomainError("time after the end of the path");
  if (auto idx = anchor_index(t)) return elements_[*idx];
  auto it = std::upper_bound(times_.begin(), times_.end(), t);
  const auto j = static_cast<std::size_t>(it - times_.begin()) - 1;
  const double theta = (t - times_[j]) / (times_[j + 1] - times_[j]);
  return mul(elements_[j], exp(log(increment(j, j + 1)) * theta));
}

TruncatedTensor LiftedPath::increment_at(double s, double t) const {
  if (s > t) throw DomainError("increment_at: s must not exceed t");
  auto is = anchor_index(s);
  auto it = anchor_index(t);
  if (is && it) return increment(*is, *it);
  const auto xs_inv = is ? inverses_[*is] : inverse(value_at(s));
  return mul(xs_inv, it ? elements_[*it] : value_at(t));
}

LiftedPath LiftedPath::dilated(double lambda) const {
  std::vector<TruncatedTensor> out;
  out.reserve(size());
  for (const auto& x : elements_) out.push_back(dilation(lambda, x));
  return LiftedPath(times_, std::move(out));
}

LiftedPath LiftedPath::truncated(std::size_t degree) const {
  std::vector<TruncatedTensor> out;
  out.reserve(size());
  for (const auto& x : elements_) out.push_back(x.truncated(degree));
  return LiftedPath(times_, std::move(out));
}

LiftedPath lift_piecewise_linear(const SamplePath& path, std::size_t degree) {
  path.validate();
  if (degree == 0) throw DomainError("degree must be positive");
  const std::size_t d = path.dim();
  std::vector<TruncatedTensor> elements;
  elements.reserve(path.times.size());
  elements.push_back(TruncatedTensor::unit(d, degree));
  for (std::size_t j = 1; j < path.times.size(); ++j) {
    TruncatedTensor step(d, degree);
    const Eigen::VectorXd dx = path.points[j] - path.points[j - 1];
    std::copy(dx.data(), dx.data() + dx.size(), step.level(1).begin());
    elements.push_back(mul(elements.back(), exp(step)));
  }
  return LiftedPath(path.times, std::move(elements));
}

LiftedPath pure_area_driver(double c, std::size_t dim, std::vector<double> times) {
  if (dim < 2) throw DomainError("pure_area_driver needs dimension >= 2");
  if (!std::isfinite(c)) throw DomainError("pure_area_driver: non-finite c");
  if (times.empty()) throw DomainError("pure_area_driver needs anchor times");
  const auto area = bracket(TruncatedTensor::letter(dim, 2, 0), TruncatedTensor::letter(dim, 2, 1));
  std::vector<TruncatedTensor> elements;
  elements.reserve(times.size());
  for (double t : times) elements.push_back(exp(area * ((t - times.front()) * c)));
  return LiftedPath(std::move(times), std::move(elements));
}

double p_variation_power(const std::vector<TruncatedTensor>& elements, double p, std::size_t max_level) {
  const std::size_t cap = std::min(floor_p(p), max_level);
  if (elements.size() < 2) return 0.0;
  std::vector<TruncatedTensor> inverses;
  inverses.reserve(elements.size());
  for (const auto& x : elements) inverses.push_back(inverse(x));
  TruncatedTensor buf(elements.front().dim(), elements.front().degree());
  return partition_sup(elements.size(), [&](std::size_t m, std::size_t j) {
    return power(increment_norm(inverses[m], elements[j], buf, cap), p);
  });
}

double p_variation_power(const LiftedPath& x, double p, double s, double t) {
  const std::size_t cap = floor_p(p);
  if (cap > x.degree()) throw DomainError("p_variation: floor(p) exceeds the degree of the path");
  const std::size_t i0 = x.require_anchor(s);
  const std::size_t i1 = x.require_anchor(t);
  if (i0 > i1) throw DomainError("p_variation: s must not exceed t");
  TruncatedTensor buf(x.dim(), x.degree());
  return partition_sup(i1 - i0 + 1, [&](std::size_t m, std::size_t j) {
    return power(increment_norm(x.element_inverse(i0 + m), x.element(i0 + j), buf, cap), p);
  });
}

double p_variation(const LiftedPath& x, double p, double s, double t) {
  return std::pow(p_variation_power(x, p, s, t), 1.0 / p);
}

// ---------------------------------------------------------------------------
// Controls

struct Control::Impl {
  std::vector<double> grid;

  explicit Impl(std::vector<double> g) : grid(std::move(g)) {
    if (grid.size() < 2) throw DomainError("a control needs at least 2 grid points");
    for (std::size_t j = 1; j < grid.size(); ++j)
      if (!(grid[j] > grid[j - 1])) throw DomainError("control grid must be strictly increasing");
  }
  virtual ~Impl() = default;
  virtual bool continuous() const = 0;
  virtual double between(std::size_t i, std::size_t j) const = 0;
  // Only called with s < t inside the grid span.
  virtual double at(double s, double t) const = 0;

  std::optional<std::size_t> index_of(double t) const {
    auto it = std::lower_bound(grid.begin(), grid.end(), t);
    if (it != grid.end() && same_time(*it, t)) return static_cast<std::size_t>(it - grid.begin());
    if (it != grid.begin() && same_time(*(it - 1), t)) return static_cast<std::size_t>(it - grid.begin() - 1);
    return std::nullopt;
  }
};

namespace {

struct ClosedFormControl final : Control::Impl {
  std::function<double(double, double)> fn;
  ClosedFormControl(std::function<double(double, double)> f, std::vector<double> g)
      : Impl(std::move(g)), fn(std::move(f)) {}
  bool continuous() const override { return true; }
  double between(std::size_t i, std::size_t j) const override { return i == j ? 0.0 : fn(grid[i], grid[j]); }
  double at(double s, double t) const override { return fn(s, t); }
};

struct TabulatedControl final : Control::Impl {
  std::vector<double> prefix;  // prefix[j] = Σ_{m<j} step_values[m]
  double exponent;
  TabulatedControl(std::vector<double> g, const std::vector<double>& steps, double q)
      : Impl(std::move(g)), exponent(q) {
    if (steps.size() + 1 != grid.size()) throw DomainError("need one step value per grid interval");
    if (!(q >= 1.0)) throw DomainError("tabulated control exponent must be >= 1");
    prefix.assign(grid.size(), 0.0);
    for (std::size_t m = 0; m < steps.size(); ++m) {
      if (!(steps[m] >= 0.0) || !std::isfinite(steps[m])) throw DomainError("step values must be finite and >= 0");
      prefix[m + 1] = prefix[m] + steps[m];
    }
  }
  bool continuous() const override { return false; }
  double between(std::size_t i, std::size_t j) const override { return power(prefix[j] - prefix[i], exponent); }
  double at(double s, double t) const override {
    auto i = index_of(s), j = index_of(t);
    if (!i || !j) throw DomainError("tabulated control evaluated off its anchor grid");
    return between(*i, *j);
  }
};

struct PathControl final : Control::Impl {
  LiftedPath path;
  double factor;
  double p;
  std::size_t cap;
  mutable std::mutex mutex;
  mutable std::unordered_map<std::size_t, std::vector<double>> rows;  // rows[i][k] = S(i, i + k)

  PathControl(LiftedPath x, double f_norm, double p_)
      : Impl(x.times()), path(std::move(x)), factor(std::pow(f_norm, p_)), p(p_), cap(floor_p(p_)) {
    if (!(f_norm > 0.0) || !std::isfinite(f_norm)) throw DomainError("control_from: f_norm must be positive");
    if (cap > path.degree()) throw DomainError("control_from: floor(p) exceeds the degree of the path");
  }

  bool continuous() const override { return true; }

  double between(std::size_t i, std::size_t j) const override {
    if (i == j) return 0.0;
    std::lock_guard lock(mutex);
    auto& row = rows[i];
    if (row.empty()) row.push_back(0.0);
    if (row.size() <= j - i) {
      TruncatedTensor buf(path.dim(), path.degree());
      std::vector<double> norms;
      while (row.size() <= j - i) {
        const std::size_t jj = i + row.size();
        double best = kNegInf;
        for (std::size_t m = i; m < jj; ++m)
          best = std::max(best, row[m - i] + power(increment_norm(path.element_inverse(m), path.element(jj), buf, cap), p));
        row.push_back(best);
      }
    }
    return factor * row[j - i];
  }

  double at(double s, double t) const override {
    auto i = index_of(s), j = index_of(t);
    if (i && j) return between(*i, *j);
    std::vector<TruncatedTensor> seq;
    seq.push_back(i ? path.element(*i) : path.value_at(s));
    auto lo = std::upper_bound(grid.begin(), grid.end(), s);
    for (auto it = lo; it != grid.end() && *it < t && !same_time(*it, t); ++it) {
      if (same_time(*it, s)) continue;
      seq.push_back(path.element(static_cast<std::size_t>(it - grid.begin())));
    }
    seq.push_back(j ? path.element(*j) : path.value_at(t));
    return factor * p_variation_power(seq, p, cap);
  }
};

struct SumControl final : Control::Impl {
  Control a, b;
  SumControl(Control x, Control y) : Impl(x.grid()), a(std::move(x)), b(std::move(y)) {
    const auto& ga = a.grid();
    const auto& gb = b.grid();
    if (ga.size() != gb.size() || !std::equal(ga.begin(), ga.end(), gb.begin(), same_time))
      throw DomainError("summed controls must share a grid");
  }
  bool continuous() const override { return a.continuous() && b.continuous(); }
  double between(std::size_t i, std::size_t j) const override { return a.between(i, j) + b.between(i, j); }
  double at(double s, double t) const override { return a(s, t) + b(s, t); }
};

}  // namespace

Control Control::closed_form(std::function<double(double, double)> fn, std::vector<double> grid) {
  return Control(std::make_shared<ClosedFormControl>(std::move(fn), std::move(grid)));
}

Control Control::tabulated(std::vector<double> grid, std::vector<double> step_values, double exponent) {
  return Control(std::make_shared<TabulatedControl>(std::move(grid), step_values, exponent));
}

Control Control::from_path(LiftedPath x, double f_norm, double p) {
  return Control(std::make_shared<PathControl>(std::move(x), f_norm, p));
}

Control Control::sum(const Control& a, const Control& b) { return Control(std::make_shared<SumControl>(a, b)); }

const std::vector<double>& Control::grid() const { return impl_->grid; }

bool Control::continuous() const { return impl_->continuous(); }

double Control::between(std::size_t i, std::size_t j) const {
  if (i > j || j >= impl_->grid.size()) throw DomainError("control: bad anchor indices");
  return impl_->between(i, j);
}

double Control::operator()(double s, double t) const {
  const auto& g = impl_->grid;
  if (s > t) throw DomainError("control: s must not exceed t");
  if ((s < g.front() && !same_time(s, g.front())) || (t > g.back() && !same_time(t, g.back())))
    throw DomainError("control evaluated outside its grid");
  if (s == t) return 0.0;
  return impl_->at(s, t);
}

Control control_from(const LiftedPath& x, double f_norm, double p) { return Control::from_path(x, f_norm, p); }

namespace {

// Grid points of `grid` spanning [s, t]; s and t must be grid points.
std::vector<double> sub_grid(const std::vector<double>& grid, double s, double t) {
  if (s > t) throw DomainError("s must not exceed t");
  std::vector<double> out;
  bool has_s = false, has_t = false;
  for (double g : grid) {
    if (same_time(g, s)) has_s = true;
    if (same_time(g, t)) has_t = true;
    if ((g >= s || same_time(g, s)) && (g <= t || same_time(g, t))) out.push_back(g);
  }
  if (!has_s || !has_t) throw DomainError("interval endpoints must be grid points");
  return out;
}

}  // namespace

double omega_alpha(const Control& omega, double alpha, double s, double t,
                   const std::optional<std::vector<double>>& grid) {
  if (!(alpha > 0.0)) throw DomainError("omega_alpha: alpha must be positive");
  const auto pts = sub_grid(grid ? *grid : omega.grid(), s, t);
  const std::size_t n = pts.size();
  for (std::size_t m = 0; m + 1 < n; ++m) {
    const double w = omega(pts[m], pts[m + 1]);
    if (w > alpha) throw InadmissibleMeshError(pts[m], pts[m + 1], w, alpha);
  }
  std::vector<double> best(n, kNegInf);
  best[0] = 0.0;
  for (std::size_t j = 1; j < n; ++j)
    for (std::size_t i = j; i-- > 0;) {
      const double w = omega(pts[i], pts[j]);
      if (w > alpha) break;  // ω(t_i, t_j) grows as i decreases
      best[j] = std::max(best[j], best[i] + w);
    }
  return best.back();
}

double dpn_distance(const LiftedPath& x1, const LiftedPath& x2, std::size_t n, double p, double s, double t,
                    std::optional<AlphaRestriction> restriction) {
  const std::size_t cap = floor_p(p);
  if (n == 0 || n > cap) throw DomainError("dpn_distance: need 1 <= n <= floor(p)");
  if (n > x1.degree() || n > x2.degree()) throw DomainError("dpn_distance: level exceeds path degree");
  if (x1.dim() != x2.dim()) throw DomainError("dpn_distance: paths differ in dimension");
  if (x1.size() != x2.size() || !std::equal(x1.times().begin(), x1.times().end(), x2.times().begin(), same_time))
    throw DomainError("dpn_distance: anchor grid mismatch");
  if (restriction && !(restriction->alpha > 0.0)) throw DomainError("dpn_distance: alpha must be positive");
  const std::size_t i0 = x1.require_anchor(s);
  const std::size_t i1 = x1.require_anchor(t);
  if (i0 > i1) throw DomainError("dpn_distance: s must not exceed t");
  const std::size_t count = i1 - i0 + 1;
  const auto& times = x1.times();
  if (restriction)
    for (std::size_t m = i0; m < i1; ++m) {
      const double w = (*restriction->omega)(times[m], times[m + 1]);
      if (w > restriction->alpha) throw InadmissibleMeshError(times[m], times[m + 1], w, restriction->alpha);
    }

  TruncatedTensor b1(x1.dim(), x1.degree()), b2(x2.dim(), x2.degree());
  const double exponent = p / static_cast<double>(n);
  std::vector<double> best(count, kNegInf);
  best[0] = 0.0;
  for (std::size_t j = 1; j < count; ++j)
    for (std::size_t m = j; m-- > 0;) {
      if (restriction && (*restriction->omega)(times[i0 + m], times[i0 + j]) > restriction->alpha) break;
      mul_into(x1.element_inverse(i0 + m), x1.element(i0 + j), b1, n);
      mul_into(x2.element_inverse(i0 + m), x2.element(i0 + j), b2, n);
      auto l1 = b1.level(n), l2 = b2.level(n);
      double sq = 0.0;
      for (std::size_t r = 0; r < l1.size(); ++r) sq += (l1[r] - l2[r]) * (l1[r] - l2[r]);
      best[j] = std::max(best[j], best[m] + std::pow(std::sqrt(sq), exponent));
    }
  return std::pow(best.back(), 1.0 / exponent);
}

namespace {

double split_point(const Control& omega, double a, double b) {
  const double parent = omega(a, b);
  if (parent == 0.0) return 0.5 * (a + b);
  const double tol = kDyadicTol * parent;
  auto imbalance = [&](double u) { return omega(a, u) - omega(u, b); };

  if (!omega.continuous()) {
    const auto& g = omega.grid();
    double best_u = 0.0, best_gap = std::numeric_limits<double>::infinity();
    for (double u : g) {
      if (u <= a || u >= b || same_time(u, a) || same_time(u, b)) continue;
      const double gap = std::abs(imbalance(u));
      if (gap < best_gap) best_gap = gap, best_u = u;
    }
    if (best_gap <= tol) return best_u;
    throw BisectionError(a, b, best_gap / parent);
  }

  double lo = a, hi = b;
  double mid = 0.5 * (lo + hi);
  double gap = imbalance(mid);
  for (int iter = 0; iter < 200; ++iter) {
    if (std::abs(gap) <= 0.5 * tol) return mid;
    (gap < 0.0 ? lo : hi) = mid;
    const double next = 0.5 * (lo + hi);
    if (next == lo || next == hi) break;
    mid = next;
    gap = imbalance(mid);
  }
  if (std::abs(gap) <= tol) return mid;
  throw BisectionError(a, b, std::abs(gap) / parent);
}

}  // namespace

std::vector<Partition> dyadic_partition(const Control& omega, double s, double t, std::size_t levels) {
  if (!(s < t)) throw DomainError("dyadic_partition: need s < t");
  if (levels > 20) throw DomainError("dyadic_partition: too many levels");
  std::vector<Partition> out{{s, t}};
  for (std::size_t level = 0; level < levels; ++level) {
    const auto& prev = out.back();
    Partition next;
    next.reserve(2 * prev.size() - 1);
    for (std::size_t j = 0; j + 1 < prev.size(); ++j) {
      next.push_back(prev[j]);
      next.push_back(split_point(omega, prev[j], prev[j + 1]));
    }
    next.push_back(prev.back());
    out.push_back(std::move(next));
  }
  return out;
}

}  // namespace rdelog
