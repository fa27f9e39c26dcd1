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
// Arithmetic in the truncated tensor algebra T^n(R^d).
//
// Level k of an element holds d^k coefficients indexed by words (i_1, ..., i_k),
// letters 0-based, stored in lexicographic order: the word index is
// i_1 d^{k-1} + ... + i_k. All levels live in one contiguous buffer.

#ifndef RDELOG_TENSOR_HPP
#define RDELOG_TENSOR_HPP

#include <cstddef>
#include <span>
#include <vector>

namespace rdelog {

using Word = std::vector<std::size_t>;

// Tolerance for "level 0 equals 1" (resp. 0) preconditions.
inline constexpr double kUnitScalarTol = 1e-9;

// Largest supported truncation degree for user-facing entry points.
inline constexpr std::size_t kMaxDegree = 5;

std::size_t ipow(std::size_t base, std::size_t exp);

// Lexicographic index of `word` within its level.
std::size_t word_index(const Word& word, std::size_t dim);

// Inverse of word_index.
Word index_word(std::size_t index, std::size_t length, std::size_t dim);

class TruncatedTensor {
 public:
  // Zero element.
  TruncatedTensor(std::size_t dim, std::size_t degree);

  static TruncatedTensor unit(std::size_t dim, std::size_t degree);
  static TruncatedTensor letter(std::size_t dim, std::size_t degree, std::size_t i, double coeff = 1.0);
  // `levels[k]` must have dim^k entries; missing trailing levels are zero.
  static TruncatedTensor from_levels(std::size_t dim, std::size_t degree,
                                     const std::vector<std::vector<double>>& levels);

  std::size_t dim() const noexcept { return dim_; }
  std::size_t degree() const noexcept { return degree_; }

  std::span<const double> level(std::size_t k) const;
  std::span<double> level(std::size_t k);
  std::span<const double> data() const noexcept { return coeffs_; }
  std::span<double> data() noexcept { return coeffs_; }

  double scalar() const noexcept { return coeffs_[0]; }
  double& scalar() noexcept { return coeffs_[0]; }

  double coeff(const Word& word) const;
  double& coeff(const Word& word);

  bool same_shape(const TruncatedTensor& other) const noexcept {
    return dim_ == other.dim_ && degree_ == other.degree_;
  }
  bool all_finite() const noexcept;

  // Same elements with levels above `degree` dropped (or zero-padded).
  TruncatedTensor truncated(std::size_t degree) const;

  TruncatedTensor& operator+=(const TruncatedTensor& other);
  TruncatedTensor& operator-=(const TruncatedTensor& other);
  TruncatedTensor& operator*=(double s) noexcept;

  friend TruncatedTensor operator+(TruncatedTensor a, const TruncatedTensor& b) { return a += b; }
  friend TruncatedTensor operator-(TruncatedTensor a, const TruncatedTensor& b) { return a -= b; }
  friend TruncatedTensor operator*(TruncatedTensor a, double s) { return a *= s; }
  friend TruncatedTensor operator*(double s, TruncatedTensor a) { return a *= s; }
  friend TruncatedTensor operator-(TruncatedTensor a) { return a *= -1.0; }

  friend bool operator==(const TruncatedTensor&, const TruncatedTensor&) = default;

 private:
  std::size_t offset(std::size_t k) const noexcept { return offsets_[k]; }

  std::size_t dim_;
  std::size_t degree_;
  std::vector<std::size_t> offsets_;  // degree_ + 2 entries
  std::vector<double> coeffs_;
};

// Euclidean norm of level k.
double level_norm(const TruncatedTensor& t, std::size_t k);

// Sum of level norms (the additive norm on L^n).
double additive_norm(const TruncatedTensor& t);

// Largest absolute coefficient difference; shapes must match.
double max_abs_diff(const TruncatedTensor& a, const TruncatedTensor& b);

TruncatedTensor mul(const TruncatedTensor& a, const TruncatedTensor& b);

// Writes a ⊗ b into `out` (which must have the same shape) without allocating.
// Only levels 0..max_level are computed; the rest of `out` is left untouched.
void mul_into(const TruncatedTensor& a, const TruncatedTensor& b, TruncatedTensor& out, std::size_t max_level);

// Tensor product of two homogeneous coefficient blocks: u (length d^j) ⊗ v (d^m).
std::vector<double> outer(std::span<const double> u, std::span<const double> v);

TruncatedTensor inverse(const TruncatedTensor& g);
TruncatedTensor exp(const TruncatedTensor& a);
TruncatedTensor log(const TruncatedTensor& g);
TruncatedTensor dilation(double lambda, const TruncatedTensor& g);

// Σ_{k=1}^{m} ‖π_k(g)‖^{1/k} with m = min(max_level, degree). Requires π_0(g) = 1.
double homogeneous_norm(const TruncatedTensor& g, std::size_t max_level);
double homogeneous_norm(const TruncatedTensor& g);

}  // namespace rdelog

#endif  // RDELOG_TENSOR_HPP
