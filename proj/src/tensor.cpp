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
#include "rdelog/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rdelog/errors.hpp"

namespace rdelog {

std::size_t ipow(std::size_t base, std::size_t exp) {
  std::size_t out = 1;
  for (std::size_t i = 0; i < exp; ++i) out *= base;
  return out;
}

std::size_t word_index(const Word& word, std::size_t dim) {
  std::size_t index = 0;
  for (auto letter : word) {
    if (letter >= dim) throw DomainError("letter " + std::to_string(letter) + " outside alphabet");
    index = index * dim + letter;
  }
  return index;
}

Word index_word(std::size_t index, std::size_t length, std::size_t dim) {
  Word word(length);
  for (std::size_t i = length; i-- > 0;) {
    word[i] = index % dim;
    index /= dim;
  }
  return word;
}

TruncatedTensor::TruncatedTensor(std::size_t dim, std::size_t degree) : dim_(dim), degree_(degree) {
  if (dim == 0) throw DomainError("tensor dimension must be positive");
  offsets_.resize(degree + 2);
  offsets_[0] = 0;
  std::size_t width = 1;
  for (std::size_t k = 0; k <= degree; ++k) {
    offsets_[k + 1] = offsets_[k] + width;
    width *= dim;
  }
  coeffs_.assign(offsets_.back(), 0.0);
}

TruncatedTensor TruncatedTensor::unit(std::size_t dim, std::size_t degree) {
  TruncatedTensor t(dim, degree);
  t.coeffs_[0] = 1.0;
  return t;
}

TruncatedTensor TruncatedTensor::letter(std::size_t dim, std::size_t degree, std::size_t i, double coeff) {
  if (i >= dim) throw DomainError("letter outside alphabet");
  if (degree == 0) throw DomainError("letter needs degree >= 1");
  TruncatedTensor t(dim, degree);
  t.level(1)[i] = coeff;
  return t;
}

TruncatedTensor TruncatedTensor::from_levels(std::size_t dim, std::size_t degree,
                                             const std::vector<std::vector<double>>& levels) {
  if (levels.size() > degree + 1) throw DomainError("more levels than degree + 1");
  TruncatedTensor t(dim, degree);
  for (std::size_t k = 0; k < levels.size(); ++k) {
    auto dst = t.level(k);
    if (levels[k].size() != dst.size())
      throw DomainError("level " + std::to_string(k) + " must hold " + std::to_string(dst.size()) +
                        " coefficients, got " + std::to_string(levels[k].size()));
    std::copy(levels[k].begin(), levels[k].end(), dst.begin());
  }
  if (!t.all_finite()) throw DomainError("non-finite coefficient");
  return t;
}

std::span<const double> TruncatedTensor::level(std::size_t k) const {
  if (k > degree_) throw DomainError("level " + std::to_string(k) + " out of range");
  return {coeffs_.data() + offsets_[k], offsets_[k + 1] - offsets_[k]};
}

std::span<double> TruncatedTensor::level(std::size_t k) {
  if (k > degree_) throw DomainError("level " + std::to_string(k) + " out of range");
  return {coeffs_.data() + offsets_[k], offsets_[k + 1] - offsets_[k]};
}

double TruncatedTensor::coeff(const Word& word) const { return level(word.size())[word_index(word, dim_)]; }

double& TruncatedTensor::coeff(const Word& word) { return level(word.size())[word_index(word, dim_)]; }

bool TruncatedTensor::all_finite() const noexcept {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](double x) { return std::isfinite(x); });
}

TruncatedTensor TruncatedTensor::truncated(std::size_t degree) const {
  TruncatedTensor out(dim_, degree);
  auto n = std::min(out.coeffs_.size(), coeffs_.size());
  std::copy_n(coeffs_.begin(), n, out.coeffs_.begin());
  return out;
}

TruncatedTensor& TruncatedTensor::operator+=(const TruncatedTensor& other) {
  if (!same_shape(other)) throw DomainError("tensor shape mismatch");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
  return *this;
}

TruncatedTensor& TruncatedTensor::operator-=(const TruncatedTensor& other) {
  if (!same_shape(other)) throw DomainError("tensor shape mismatch");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
  return *this;
}

TruncatedTensor& TruncatedTensor::operator*=(double s) noexcept {
  for (auto& c : coeffs_) c *= s;
  return *this;
}

namespace {

void require_finite(const TruncatedTensor& t, const char* op) {
  if (!t.all_finite()) throw NumericError(std::string(op) + " produced a non-finite coefficient");
}

void require_scalar(const TruncatedTensor& t, double value, const char* what) {
  if (std::abs(t.scalar() - value) > kUnitScalarTol) throw DomainError(what);
}

double sum_squares(std::span<const double> xs) {
  double s = 0.0;
  for (double x : xs) s += x * x;
  return s;
}

}  // namespace

double level_norm(const TruncatedTensor& t, std::size_t k) {
  if (k > t.degree()) throw DomainError("level " + std::to_string(k) + " out of range");
  return std::sqrt(sum_squares(t.level(k)));
}

double additive_norm(const TruncatedTensor& t) {
  double s = 0.0;
  for (std::size_t k = 0; k <= t.degree(); ++k) s += level_norm(t, k);
  return s;
}

double max_abs_diff(const TruncatedTensor& a, const TruncatedTensor& b) {
  if (!a.same_shape(b)) throw DomainError("tensor shape mismatch");
  double m = 0.0;
  auto x = a.data();
  auto y = b.data();
  for (std::size_t i = 0; i < x.size(); ++i) m = std::max(m, std::abs(x[i] - y[i]));
  return m;
}

std::vector<double> outer(std::span<const double> u, std::span<const double> v) {
  std::vector<double> out(u.size() * v.size());
  for (std::size_t i = 0; i < u.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) out[i * v.size() + j] = u[i] * v[j];
  return out;
}

void mul_into(const TruncatedTensor& a, const TruncatedTensor& b, TruncatedTensor& out, std::size_t max_level) {
  if (!a.same_shape(b) || !a.same_shape(out)) throw DomainError("tensor shape mismatch");
  max_level = std::min(max_level, a.degree());
  for (std::size_t k = max_level + 1; k-- > 0;) {
    auto dst = out.level(k);
    std::fill(dst.begin(), dst.end(), 0.0);
    for (std::size_t j = 0; j <= k; ++j) {
      auto left = a.level(j);
      auto right = b.level(k - j);
      const std::size_t width = right.size();
      for (std::size_t i = 0; i < left.size(); ++i) {
        const double l = left[i];
        if (l == 0.0) continue;
        double* row = dst.data() + i * width;
        for (std::size_t r = 0; r < width; ++r) row[r] += l * right[r];
      }
    }
  }
}

TruncatedTensor mul(const TruncatedTensor& a, const TruncatedTensor& b) {
  if (!a.same_shape(b)) throw DomainError("mul: tensor shape mismatch");
  TruncatedTensor out(a.dim(), a.degree());
  mul_into(a, b, out, a.degree());
  require_finite(out, "mul");
  return out;
}

// The three series below are exact polynomials after truncation: (g - 1)^{⊗j}
// vanishes below level j, so n nested products suffice.

TruncatedTensor inverse(const TruncatedTensor& g) {
  require_scalar(g, 1.0, "inverse: not a unit-scalar element");
  auto x = g;
  x.scalar() = 0.0;
  // Σ_j (-x)^j by Horner: r <- 1 - x r.
  auto one = TruncatedTensor::unit(g.dim(), g.degree());
  auto r = one;
  for (std::size_t j = 0; j < g.degree(); ++j) r = one - mul(x, r);
  require_finite(r, "inverse");
  return r;
}

TruncatedTensor exp(const TruncatedTensor& a) {
  if (std::abs(a.scalar()) > kUnitScalarTol) throw DomainError("exp: level 0 must vanish");
  auto x = a;
  x.scalar() = 0.0;
  auto one = TruncatedTensor::unit(a.dim(), a.degree());
  // 1 + x(1 + x/2(1 + x/3(...)))
  auto r = one;
  for (std::size_t j = a.degree(); j >= 1; --j) r = one + mul(x, r) * (1.0 / static_cast<double>(j));
  require_finite(r, "exp");
  return r;
}

TruncatedTensor log(const TruncatedTensor& g) {
  require_scalar(g, 1.0, "log: not a unit-scalar element");
  auto x = g;
  x.scalar() = 0.0;
  const std::size_t n = g.degree();
  if (n == 0) return TruncatedTensor(g.dim(), 0);
  // Σ_{j=1}^n (-1)^{j+1} x^j / j = x (c_1 + x (c_2 + ... x c_n)), c_j = (-1)^{j+1}/j.
  auto coef = [](std::size_t j) { return (j % 2 == 1 ? 1.0 : -1.0) / static_cast<double>(j); };
  auto r = TruncatedTensor::unit(g.dim(), n) * coef(n);
  for (std::size_t j = n - 1; j >= 1; --j) {
    r = mul(x, r);
    r.scalar() += coef(j);
  }
  r = mul(x, r);
  require_finite(r, "log");
  return r;
}

TruncatedTensor dilation(double lambda, const TruncatedTensor& g) {
  if (!(lambda > 0.0)) throw DomainError("dilation: lambda must be positive");
  auto out = g;
  double factor = 1.0;
  for (std::size_t k = 0; k <= g.degree(); ++k) {
    for (auto& c : out.level(k)) c *= factor;
    factor *= lambda;
  }
  require_finite(out, "dilation");
  return out;
}

double homogeneous_norm(const TruncatedTensor& g, std::size_t max_level) {
  require_scalar(g, 1.0, "homogeneous_norm: not a unit-scalar element");
  const std::size_t m = std::min(max_level, g.degree());
  double s = 0.0;
  for (std::size_t k = 1; k <= m; ++k) {
    const double nk = level_norm(g, k);
    s += k == 1 ? nk : (k == 2 ? std::sqrt(nk) : std::pow(nk, 1.0 / static_cast<double>(k)));
  }
  return s;
}

double homogeneous_norm(const TruncatedTensor& g) { return homogeneous_norm(g, g.degree()); }

}  // namespace rdelog
