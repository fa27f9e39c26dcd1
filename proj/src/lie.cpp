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
#include "rdelog/lie.hpp"

#include <algorithm>
#include <cmath>

#include "rdelog/errors.hpp"

namespace rdelog {

namespace {

// r on one homogeneous block of length dim^k:
// r(e_i ⊗ x) = e_i ⊗ r(x) - r(x) ⊗ e_i, r = id on level 1.
std::vector<double> right_nested(std::span<const double> block, std::size_t dim, std::size_t k) {
  if (k <= 1) return {block.begin(), block.end()};
  const std::size_t tail = block.size() / dim;  // dim^{k-1}
  std::vector<double> out(block.size(), 0.0);
  for (std::size_t i = 0; i < dim; ++i) {
    auto inner = right_nested(block.subspan(i * tail, tail), dim, k - 1);
    // e_i ⊗ inner
    for (std::size_t r = 0; r < tail; ++r) out[i * tail + r] += inner[r];
    // inner ⊗ e_i
    for (std::size_t r = 0; r < tail; ++r) out[r * dim + i] -= inner[r];
  }
  return out;
}

}  // namespace

TruncatedTensor dynkin_map(const TruncatedTensor& a) {
  if (std::abs(a.scalar()) > kUnitScalarTol) throw DomainError("dynkin_map: level 0 must vanish");
  TruncatedTensor out(a.dim(), a.degree());
  for (std::size_t k = 1; k <= a.degree(); ++k) {
    auto mapped = right_nested(a.level(k), a.dim(), k);
    std::copy(mapped.begin(), mapped.end(), out.level(k).begin());
  }
  return out;
}

LieDiagnostic is_lie(const TruncatedTensor& a, double tol) {
  auto mapped = dynkin_map(a);
  LieDiagnostic diag;
  diag.tolerance = tol;
  for (std::size_t k = 1; k <= a.degree(); ++k) {
    auto src = a.level(k);
    auto dst = mapped.level(k);
    double diff = 0.0;
    for (std::size_t i = 0; i < src.size(); ++i) {
      const double d = dst[i] - static_cast<double>(k) * src[i];
      diff += d * d;
    }
    const double residual = std::sqrt(diff) / std::max(1.0, level_norm(a, k));
    diag.residuals.push_back(residual);
    if (!(residual <= tol)) diag.is_lie = false;
  }
  return diag;
}

TruncatedTensor bch(const TruncatedTensor& a, const TruncatedTensor& b) {
  if (!a.same_shape(b)) throw DomainError("bch: tensor shape mismatch");
  return log(mul(exp(a), exp(b)));
}

TruncatedTensor bracket(const TruncatedTensor& a, const TruncatedTensor& b) { return mul(a, b) - mul(b, a); }

std::vector<Word> shuffle_product(const Word& u, const Word& v) {
  if (u.empty()) return {v};
  if (v.empty()) return {u};
  // Words ending in the last letter of u, then those ending in the last letter of v.
  std::vector<Word> out;
  Word u_head(u.begin(), u.end() - 1);
  Word v_head(v.begin(), v.end() - 1);
  for (auto& w : shuffle_product(u_head, v)) {
    w.push_back(u.back());
    out.push_back(std::move(w));
  }
  for (auto& w : shuffle_product(u, v_head)) {
    w.push_back(v.back());
    out.push_back(std::move(w));
  }
  return out;
}

GroupLikeDiagnostic is_group_like(const TruncatedTensor& g, double tol) {
  GroupLikeDiagnostic diag;
  diag.tolerance = tol;
  diag.max_residual = std::abs(g.scalar() - 1.0);
  const std::size_t d = g.dim();
  const std::size_t n = g.degree();
  for (std::size_t lu = 1; lu < n; ++lu) {
    for (std::size_t lv = lu; lu + lv <= n; ++lv) {  // symmetric in (u, v)
      const std::size_t nu = ipow(d, lu), nv = ipow(d, lv);
      for (std::size_t iu = 0; iu < nu; ++iu) {
        const Word u = index_word(iu, lu, d);
        const double gu = g.level(lu)[iu];
        for (std::size_t iv = 0; iv < nv; ++iv) {
          const Word v = index_word(iv, lv, d);
          double rhs = 0.0;
          for (const auto& w : shuffle_product(u, v)) rhs += g.coeff(w);
          diag.max_residual = std::max(diag.max_residual, std::abs(gu * g.level(lv)[iv] - rhs));
        }
      }
    }
  }
  diag.is_group_like = diag.max_residual <= tol;
  return diag;
}

}  // namespace rdelog
