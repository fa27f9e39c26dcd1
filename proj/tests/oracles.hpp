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
// Independent reference computations for the tests. Nothing here calls the
// library's algebra beyond element access, so agreement is meaningful.

#ifndef RDELOG_TESTS_ORACLES_HPP
#define RDELOG_TESTS_ORACLES_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include "rdelog/rough_path.hpp"
#include "rdelog/tensor.hpp"

namespace oracle {

using rdelog::TruncatedTensor;
using rdelog::Word;
using WordMap = std::map<Word, double>;

inline WordMap to_words(const TruncatedTensor& t) {
  WordMap out;
  for (std::size_t k = 0; k <= t.degree(); ++k) {
    const std::size_t count = rdelog::ipow(t.dim(), k);
    for (std::size_t i = 0; i < count; ++i) {
      // Decode the base-d index by hand.
      Word w(k);
      std::size_t r = i;
      for (std::size_t pos = k; pos-- > 0;) {
        w[pos] = r % t.dim();
        r /= t.dim();
      }
      out[w] = t.level(k)[i];
    }
  }
  return out;
}

// (a ⊗ b)(w) = Σ_{w = uv} a(u) b(v), truncated at n.
inline WordMap convolve(const WordMap& a, const WordMap& b, std::size_t n) {
  WordMap out;
  for (const auto& [u, cu] : a)
    for (const auto& [v, cv] : b) {
      if (u.size() + v.size() > n) continue;
      Word w = u;
      w.insert(w.end(), v.begin(), v.end());
      out[w] += cu * cv;
    }
  return out;
}

inline double max_diff(const WordMap& a, const TruncatedTensor& t) {
  const auto b = to_words(t);
  double m = 0.0;
  for (const auto& [w, c] : b) {
    auto it = a.find(w);
    m = std::max(m, std::abs(c - (it == a.end() ? 0.0 : it->second)));
  }
  return m;
}

// Σ_j x^{⊗j} / j! with x the word map of a (π_0 = 0), by repeated convolution.
inline WordMap exp_series(const WordMap& x, std::size_t n) {
  WordMap out{{Word{}, 1.0}};
  WordMap power{{Word{}, 1.0}};
  double fact = 1.0;
  for (std::size_t j = 1; j <= n; ++j) {
    power = convolve(power, x, n);
    fact *= static_cast<double>(j);
    for (const auto& [w, c] : power) out[w] += c / fact;
  }
  return out;
}

// All partitions of {0..count-1} containing both endpoints; cost(i, j) per piece.
inline double brute_force_partition_sup(std::size_t count, const std::function<double(std::size_t, std::size_t)>& cost,
                                        const std::function<bool(std::size_t, std::size_t)>& allowed = {}) {
  if (count < 2) return 0.0;
  const std::size_t interior = count - 2;
  double best = -1.0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << interior); ++mask) {
    std::vector<std::size_t> pts{0};
    for (std::size_t b = 0; b < interior; ++b)
      if (mask & (std::uint64_t{1} << b)) pts.push_back(b + 1);
    pts.push_back(count - 1);
    double s = 0.0;
    bool ok = true;
    for (std::size_t m = 0; m + 1 < pts.size(); ++m) {
      if (allowed && !allowed(pts[m], pts[m + 1])) {
        ok = false;
        break;
      }
      s += cost(pts[m], pts[m + 1]);
    }
    if (ok) best = std::max(best, s);
  }
  return best;
}

inline Eigen::MatrixXd expm(const Eigen::MatrixXd& a) { return a.exp(); }

// Composite trapezoid rule on samples.
inline double trapezoid(const std::vector<double>& x, const std::vector<double>& y) {
  double s = 0.0;
  for (std::size_t i = 0; i + 1 < x.size(); ++i) s += 0.5 * (y[i] + y[i + 1]) * (x[i + 1] - x[i]);
  return s;
}

// Central difference of a scalar function along coordinate `var`.
template <class F>
double central_difference(F&& f, Eigen::VectorXd x, std::size_t var, double h) {
  const auto i = static_cast<Eigen::Index>(var);
  const double x0 = x[i];
  x[i] = x0 + h;
  const double up = f(x);
  x[i] = x0 - h;
  const double down = f(x);
  return (up - down) / (2 * h);
}

inline TruncatedTensor random_tensor(std::mt19937_64& rng, std::size_t d, std::size_t n, double scalar, double scale = 1.0) {
  std::uniform_real_distribution<double> u(-scale, scale);
  TruncatedTensor t(d, n);
  for (auto& c : t.data()) c = u(rng);
  t.scalar() = scalar;
  return t;
}

inline rdelog::SamplePath random_path(std::mt19937_64& rng, std::size_t d, std::size_t segments, double scale = 1.0) {
  std::normal_distribution<double> normal(0.0, scale);
  rdelog::SamplePath p;
  Eigen::VectorXd x = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(d));
  for (std::size_t j = 0; j <= segments; ++j) {
    p.times.push_back(static_cast<double>(j));
    p.points.push_back(x);
    for (auto& c : x) c += normal(rng);
  }
  return p;
}

}  // namespace oracle

#endif  // RDELOG_TESTS_ORACLES_HPP
