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
// Free Lie algebra structure inside T^n(R^d).
//
// Lie elements are recognised with the Dynkin-Specht-Wever criterion rather than
// a Hall or Lyndon basis: a homogeneous degree-k tensor a is Lie iff r(a) = k a,
// where r is right-nested bracketing r(v_1...v_k) = [v_1, [v_2, ..., [v_{k-1}, v_k]]].

#ifndef RDELOG_LIE_HPP
#define RDELOG_LIE_HPP

#include <vector>

#include "rdelog/tensor.hpp"

namespace rdelog {

inline constexpr double kLieTol = 1e-9;

struct LieDiagnostic {
  std::vector<double> residuals;  // residuals[k-1] for level k
  bool is_lie = true;
  double tolerance = kLieTol;
};

struct GroupLikeDiagnostic {
  double max_residual = 0.0;
  bool is_group_like = true;
  double tolerance = 0.0;
};

// Applies r level by level. Requires π_0(a) = 0.
TruncatedTensor dynkin_map(const TruncatedTensor& a);

// Per-level residual ‖r(a_k) - k a_k‖ / max(1, ‖a_k‖).
LieDiagnostic is_lie(const TruncatedTensor& a, double tol = kLieTol);

// log(exp(a) ⊗ exp(b)).
TruncatedTensor bch(const TruncatedTensor& a, const TruncatedTensor& b);

// [a, b] = a ⊗ b - b ⊗ a, truncated.
TruncatedTensor bracket(const TruncatedTensor& a, const TruncatedTensor& b);

// All order-preserving interleavings of u and v, with multiplicity.
std::vector<Word> shuffle_product(const Word& u, const Word& v);

// Checks ⟨g,u⟩⟨g,v⟩ = Σ_{w ∈ u⧢v} ⟨g,w⟩ for all nonempty u, v with |u| + |v| <= degree,
// plus π_0(g) = 1. Residuals are absolute.
GroupLikeDiagnostic is_group_like(const TruncatedTensor& g, double tol);

}  // namespace rdelog

#endif  // RDELOG_LIE_HPP
