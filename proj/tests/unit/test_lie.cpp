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
#include <doctest.h>

#include <algorithm>
#include <random>

#include "../oracles.hpp"
#include "rdelog/errors.hpp"
#include "rdelog/lie.hpp"
#include "rdelog/rough_path.hpp"

using namespace rdelog;

namespace {

TruncatedTensor area(std::size_t d, std::size_t n, std::size_t i, std::size_t j) {
  return bracket(TruncatedTensor::letter(d, n, i), TruncatedTensor::letter(d, n, j));
}

TruncatedTensor path_signature(std::mt19937_64& rng, std::size_t d, std::size_t n, std::size_t segments) {
  const auto x = lift_piecewise_linear(oracle::random_path(rng, d, segments, 0.8), n);
  return x.increment(0, x.size() - 1);
}

// Right-nested bracket of random letters, as a degree-k tensor.
TruncatedTensor random_bracket(std::mt19937_64& rng, std::size_t d, std::size_t n, std::size_t k) {
  std::uniform_int_distribution<std::size_t> letter(0, d - 1);
  auto t = TruncatedTensor::letter(d, n, letter(rng));
  for (std::size_t i = 1; i < k; ++i) t = bracket(TruncatedTensor::letter(d, n, letter(rng)), t);
  return t;
}

}  // namespace

TEST_CASE("dynkin map examples") {
  const auto e1 = TruncatedTensor::letter(2, 2, 0);
  CHECK(dynkin_map(e1) == e1);
  const auto a = area(2, 2, 0, 1);
  CHECK(max_abs_diff(dynkin_map(a), a * 2.0) == 0.0);
  TruncatedTensor e12(2, 2);
  e12.coeff({0, 1}) = 1.0;
  const auto r = dynkin_map(e12);
  CHECK(max_abs_diff(r, a) == 0.0);
  CHECK(max_abs_diff(r, e12 * 2.0) > 0.5);
  CHECK_THROWS_AS(dynkin_map(TruncatedTensor::unit(2, 2)), DomainError);
}

TEST_CASE("Dynkin-Specht-Wever on bracket monomials") {
  std::mt19937_64 rng(11);
  for (int rep = 0; rep < 50; ++rep) {
    const std::size_t k = 1 + rep % 4;
    const auto b = random_bracket(rng, 3, 4, k);
    CHECK(max_abs_diff(dynkin_map(b), b * static_cast<double>(k)) <= 1e-12);
  }
}

TEST_CASE("is_lie") {
  const auto a = TruncatedTensor::letter(2, 2, 0) + area(2, 2, 0, 1) * 0.5;
  const auto diag = is_lie(a);
  CHECK(diag.is_lie);
  CHECK(diag.residuals.size() == 2);
  for (double r : diag.residuals) CHECK(r == 0.0);

  TruncatedTensor e12(2, 2);
  e12.coeff({0, 1}) = 1.0;
  const auto bad = is_lie(e12);
  CHECK_FALSE(bad.is_lie);
  CHECK(bad.residuals[1] > 1e-3);

  std::mt19937_64 rng(12);
  for (int rep = 0; rep < 10; ++rep) {
    const auto ell = log(path_signature(rng, 2, 3, 3));
    const auto d = is_lie(ell);
    CHECK(d.is_lie);
    for (double r : d.residuals) CHECK(r <= 1e-9);
  }
}

TEST_CASE("bch") {
  std::mt19937_64 rng(13);
  const auto a = log(path_signature(rng, 2, 3, 2));
  CHECK(max_abs_diff(bch(a, TruncatedTensor(2, 3)), a) <= 1e-14);
  CHECK(max_abs_diff(bch(a, a * -1.0), TruncatedTensor(2, 3)) <= 1e-14);

  const auto e1 = TruncatedTensor::letter(2, 2, 0), e2 = TruncatedTensor::letter(2, 2, 1);
  const auto expected = e1 + e2 + area(2, 2, 0, 1) * 0.5;
  CHECK(max_abs_diff(bch(e1, e2), expected) <= 1e-15);

  // Degree 3 terms: a + b + [a,b]/2 + ([a,[a,b]] + [b,[b,a]])/12.
  for (int rep = 0; rep < 10; ++rep) {
    const auto x = oracle::random_tensor(rng, 2, 3, 0.0).truncated(1).truncated(3);
    const auto y = oracle::random_tensor(rng, 2, 3, 0.0).truncated(1).truncated(3);
    const auto xy = bracket(x, y);
    const auto series = x + y + xy * 0.5 + (bracket(x, xy) + bracket(y, bracket(y, x))) * (1.0 / 12.0);
    CHECK(max_abs_diff(bch(x, y), series) <= 1e-14);
  }
  for (int rep = 0; rep < 10; ++rep) {
    const auto x = log(path_signature(rng, 3, 4, 2));
    const auto y = log(path_signature(rng, 3, 4, 3));
    CHECK(is_lie(bch(x, y)).is_lie);
  }
}

TEST_CASE("shuffle product") {
  auto sorted = [](std::vector<Word> v) {
    std::sort(v.begin(), v.end());
    return v;
  };
  CHECK(sorted(shuffle_product({0}, {1})) == std::vector<Word>{{0, 1}, {1, 0}});
  CHECK(shuffle_product({0, 2}, {}) == std::vector<Word>{{0, 2}});
  CHECK(sorted(shuffle_product({0, 1}, {2})) == std::vector<Word>{{0, 1, 2}, {0, 2, 1}, {2, 0, 1}});
  // Multiplicity: (1) ⧢ (1) = 2 (1,1).
  CHECK(shuffle_product({0}, {0}) == std::vector<Word>{{0, 0}, {0, 0}});
  CHECK(shuffle_product({0, 1, 2}, {3, 4}).size() == 10);
}

TEST_CASE("group-like elements and the shuffle identity") {
  std::mt19937_64 rng(14);
  for (int rep = 0; rep < 20; ++rep) {
    const auto g = path_signature(rng, 2 + rep % 2, 4, 4);
    const auto d = is_group_like(g, 1e-9);
    CHECK(d.is_group_like);
    CHECK(d.max_residual <= 1e-9);
    CHECK(is_lie(log(g)).is_lie);
  }
  // exp of a Lie element passes; a generic unit-scalar element does not.
  const auto lie = TruncatedTensor::letter(2, 3, 0) * 0.3 + area(2, 3, 0, 1) * 1.7;
  CHECK(is_group_like(exp(lie), 1e-12).is_group_like);
  const auto generic = oracle::random_tensor(rng, 2, 3, 1.0);
  CHECK_FALSE(is_group_like(generic, 1e-6).is_group_like);
  auto off = exp(lie);
  off.scalar() = 1.1;
  CHECK_FALSE(is_group_like(off, 1e-6).is_group_like);
}
