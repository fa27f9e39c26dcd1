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
#include "rdelog/vector_field.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "rdelog/errors.hpp"

namespace rdelog {

std::size_t strict_floor(double gamma) {
  if (!(gamma > 0.0)) throw DomainError("gamma must be positive");
  return static_cast<std::size_t>(std::ceil(gamma)) - 1;
}

namespace {

constexpr std::size_t kMaxCompositionOrder = 6;

void check_field_shapes(std::size_t e, const std::vector<PolyMap>& fields) {
  if (e == 0) throw DomainError("state dimension must be positive");
  if (fields.empty()) throw DomainError("need at least one driving field");
  for (const auto& f : fields)
    if (f.nvars() != e || f.nout() != e) throw DomainError("each field must map R^e to R^e");
}

}  // namespace

PolynomialVectorField::PolynomialVectorField(std::size_t e, std::vector<PolyMap> fields, double gamma,
                                             double box_radius, std::size_t max_order)
    : e_(e), fields_(std::move(fields)), gamma_(gamma), box_radius_(box_radius) {
  check_field_shapes(e_, fields_);
  if (!(box_radius_ > 0.0)) throw DomainError("box radius must be positive");
  derivative_order_ = strict_floor(gamma_);
  max_order_ = max_order ? max_order : derivative_order_ + 1;
  if (max_order_ > kMaxCompositionOrder) throw DomainError("composition order cap exceeded");

  const std::size_t d = fields_.size();
  derivatives_.resize(d);
  for (std::size_t i = 0; i < d; ++i) {
    derivatives_[i].push_back({fields_[i]});
    for (std::size_t j = 1; j <= derivative_order_; ++j) {
      const auto& prev = derivatives_[i][j - 1];
      std::vector<PolyMap> next;
      next.reserve(prev.size() * e_);
      for (const auto& p : prev)
        for (std::size_t a = 0; a < e_; ++a) next.push_back(p.derivative(a));
      derivatives_[i].push_back(std::move(next));
    }
  }

  compositions_.resize(max_order_ + 1);
  compositions_[1] = fields_;
  for (std::size_t k = 2; k <= max_order_; ++k) {
    const auto& prev = compositions_[k - 1];
    compositions_[k].reserve(d * prev.size());
    for (std::size_t a = 0; a < d; ++a)
      for (const auto& g : prev) compositions_[k].push_back(g.directional_derivative(fields_[a]));
  }
}

PolynomialVectorField PolynomialVectorField::from_terms(std::size_t d, std::size_t e,
                                                        const std::vector<std::vector<MonomialTerm>>& terms,
                                                        double gamma, double box_radius, std::size_t max_order) {
  if (terms.size() != d) throw DomainError("need one term list per driving letter");
  std::vector<PolyMap> fields;
  for (const auto& letter_terms : terms) {
    std::vector<Polynomial> comps(e, Polynomial(e));
    for (const auto& t : letter_terms) {
      if (t.out_coord >= e) throw DomainError("output coordinate out of range");
      if (t.exponents.size() != e) throw DomainError("exponent vector must have e entries");
      if (!std::isfinite(t.coeff)) throw DomainError("non-finite coefficient");
      comps[t.out_coord].add_term(t.exponents, t.coeff);
    }
    fields.emplace_back(e, std::move(comps));
  }
  return PolynomialVectorField(e, std::move(fields), gamma, box_radius, max_order);
}

PolynomialVectorField PolynomialVectorField::linear(const std::vector<Eigen::MatrixXd>& matrices, double gamma,
                                                    double box_radius, std::size_t max_order) {
  if (matrices.empty()) throw DomainError("need at least one matrix");
  const auto e = static_cast<std::size_t>(matrices.front().rows());
  std::vector<std::vector<MonomialTerm>> terms;
  for (const auto& a : matrices) {
    if (static_cast<std::size_t>(a.rows()) != e || static_cast<std::size_t>(a.cols()) != e)
      throw DomainError("matrices must be square and of equal size");
    std::vector<MonomialTerm> ts;
    for (std::size_t r = 0; r < e; ++r)
      for (std::size_t c = 0; c < e; ++c) {
        Exponents ex(e, 0);
        ex[c] = 1;
        ts.push_back({r, a(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)), ex});
      }
    terms.push_back(std::move(ts));
  }
  return from_terms(matrices.size(), e, terms, gamma, box_radius, max_order);
}

unsigned PolynomialVectorField::polynomial_degree() const {
  unsigned deg = 0;
  for (const auto& f : fields_) deg = std::max(deg, f.total_degree());
  return deg;
}

const PolyMap& PolynomialVectorField::derivative(std::size_t i, std::size_t j, std::size_t tuple) const {
  if (i >= fields_.size()) throw DomainError("letter out of range");
  if (j > derivative_order_) throw DomainError("derivative order exceeds the cached order");
  return derivatives_[i][j].at(tuple);
}

const PolyMap& PolynomialVectorField::composition(const Word& w) const {
  return composition(w.size(), word_index(w, driver_dim()));
}

const PolyMap& PolynomialVectorField::composition(std::size_t k, std::size_t index) const {
  if (k == 0 || k > max_order_)
    throw DomainError("f_circ_k: order " + std::to_string(k) + " exceeds available derivatives (max " +
                      std::to_string(max_order_) + ")");
  return compositions_[k].at(index);
}

PolynomialVectorField PolynomialVectorField::with_box_radius(double radius) const {
  auto out = *this;
  if (!(radius > 0.0)) throw DomainError("box radius must be positive");
  out.box_radius_ = radius;
  return out;
}

PolynomialVectorField PolynomialVectorField::scaled(double s) const {
  std::vector<PolyMap> fields;
  for (const auto& f : fields_) fields.push_back(f * s);
  return PolynomialVectorField(e_, std::move(fields), gamma_, box_radius_, max_order_);
}

LipGammaEstimate PolynomialVectorField::lip_gamma(double gamma, double radius) const {
  if (!(radius > 0.0)) throw DomainError("box radius must be positive");
  const std::size_t top = strict_floor(gamma);
  if (top > derivative_order_) throw DomainError("lip_gamma: gamma exceeds the cached derivative order");
  LipGammaEstimate est;
  est.gamma = gamma;
  est.box_radius = radius;
  est.derivative_sups.assign(top + 1, 0.0);

  // Frobenius norm over (letter, output, derivative multi-index) bounds the operator norm.
  auto deriv_norm_sq = [&](std::size_t j, const Point& z, const Point* other) {
    double s = 0.0;
    for (std::size_t i = 0; i < fields_.size(); ++i)
      for (const auto& p : derivatives_[i][j]) {
        Point v = p(z);
        if (other) v -= p(*other);
        s += v.squaredNorm();
      }
    return s;
  };

  const std::size_t per_axis = e_ <= 2 ? 21 : (e_ == 3 ? 11 : 5);
  std::vector<std::size_t> counter(e_, 0);
  Point z(static_cast<Eigen::Index>(e_));
  for (;;) {
    for (std::size_t a = 0; a < e_; ++a)
      z[static_cast<Eigen::Index>(a)] =
          -radius + 2.0 * radius * static_cast<double>(counter[a]) / static_cast<double>(per_axis - 1);
    for (std::size_t j = 0; j <= top; ++j)
      est.derivative_sups[j] = std::max(est.derivative_sups[j], std::sqrt(deriv_norm_sq(j, z, nullptr)));
    std::size_t a = 0;
    while (a < e_ && ++counter[a] == per_axis) counter[a++] = 0;
    if (a == e_) break;
  }

  const double exponent = gamma - static_cast<double>(top);
  std::mt19937_64 rng(0x5eedULL);
  std::uniform_real_distribution<double> unif(-radius, radius);
  Point u(static_cast<Eigen::Index>(e_)), w(static_cast<Eigen::Index>(e_));
  for (int pair = 0; pair < 200; ++pair) {
    for (std::size_t a = 0; a < e_; ++a) {
      u[static_cast<Eigen::Index>(a)] = unif(rng);
      w[static_cast<Eigen::Index>(a)] = unif(rng);
    }
    const double dist = (u - w).norm();
    if (dist == 0.0) continue;
    est.holder_constant =
        std::max(est.holder_constant, std::sqrt(deriv_norm_sq(top, u, &w)) / std::pow(dist, exponent));
  }
  est.value = est.holder_constant;
  for (double s : est.derivative_sups) est.value = std::max(est.value, s);
  return est;
}

PolynomialVectorField translate(const PolynomialVectorField& f, const Point& eta) {
  if (static_cast<std::size_t>(eta.size()) != f.state_dim()) throw DomainError("translate: shift has wrong dimension");
  std::span<const double> shift(eta.data(), static_cast<std::size_t>(eta.size()));
  std::vector<PolyMap> fields;
  for (std::size_t i = 0; i < f.driver_dim(); ++i) fields.push_back(f.field(i).translated(shift));
  return PolynomialVectorField(f.state_dim(), std::move(fields), f.gamma(), f.box_radius(), f.max_order());
}

Point f_circ_k(const PolynomialVectorField& f, std::span<const double> v, std::size_t k, const Point& z) {
  if (k == 0) throw DomainError("f_circ_k: k must be positive");
  if (k > f.max_order())
    throw DomainError("f_circ_k: order " + std::to_string(k) + " exceeds available derivatives");
  if (v.size() != ipow(f.driver_dim(), k)) throw DomainError("f_circ_k: coefficient block has wrong length");
  if (static_cast<std::size_t>(z.size()) != f.state_dim()) throw DomainError("f_circ_k: point has wrong dimension");
  Point out = Point::Zero(z.size());
  for (std::size_t w = 0; w < v.size(); ++w)
    if (v[w] != 0.0) f.composition(k, w).accumulate(z, v[w], out);
  return out;
}

std::vector<std::vector<std::size_t>> ordered_shuffles(const std::vector<std::size_t>& blocks) {
  std::size_t k = 0;
  for (auto j : blocks) {
    if (j == 0) throw DomainError("ordered_shuffles: block sizes must be positive");
    k += j;
  }
  std::vector<std::size_t> sigma(k);
  std::iota(sigma.begin(), sigma.end(), 1);
  std::vector<std::vector<std::size_t>> out;
  do {
    bool ok = true;
    std::size_t start = 0;
    std::size_t prev_end_image = 0;
    for (auto j : blocks) {
      for (std::size_t i = start + 1; ok && i < start + j; ++i) ok = sigma[i - 1] < sigma[i];
      const std::size_t end_image = sigma[start + j - 1];
      if (ok && start > 0) ok = prev_end_image < end_image;
      prev_end_image = end_image;
      start += j;
      if (!ok) break;
    }
    if (ok) out.push_back(sigma);
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return out;
}

std::vector<std::vector<std::size_t>> compositions_of(std::size_t k) {
  if (k == 0) return {{}};
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t first = 1; first <= k; ++first)
    for (auto rest : compositions_of(k - first)) {
      rest.insert(rest.begin(), first);
      out.push_back(std::move(rest));
    }
  return out;
}

namespace {

void check_driver(const PolynomialVectorField& f, const TruncatedTensor& t, const Point& z) {
  if (t.dim() != f.driver_dim()) throw DomainError("driver tensor dimension does not match the field");
  if (t.degree() > f.max_order()) throw DomainError("driver tensor degree exceeds the cached composition order");
  if (static_cast<std::size_t>(z.size()) != f.state_dim()) throw DomainError("point has wrong dimension");
}

// The lifted field multiplies on the right, so the block ordering that matches
// F(f)^{∘k} constrains the first element of each block instead of the last:
// σ(1) < σ(j_1 + 1) < ... < σ(j_1 + ... + j_{m-1} + 1). These are the mirror
// images i -> k + 1 - σ(k + 1 - i) of OS(j_m, ..., j_1).
std::vector<std::vector<std::size_t>> mirrored_shuffles(const std::vector<std::size_t>& blocks) {
  const std::vector<std::size_t> reversed(blocks.rbegin(), blocks.rend());
  auto out = ordered_shuffles(reversed);
  for (auto& sigma : out) {
    const std::size_t k = sigma.size();
    std::vector<std::size_t> m(k);
    for (std::size_t i = 1; i <= k; ++i) m[i - 1] = k + 1 - sigma[k - i];
    sigma = std::move(m);
  }
  return out;
}

// Σ_{k>=1} Σ_{(j_1..j_m) ⊨ k} Σ_{σ ∈ mirrored OS(j)} (f^{∘j_m} ⊗ ... ⊗ f^{∘j_1})(σ π_k t)(Id)(z), placed at level m.
//
// Tensor factors carry labels right to left: a word (w_1, ..., w_k) is
// v_k ⊗ ... ⊗ v_1 with v_i = e_{w_{k+1-i}}. σ sends label i to v_{σ(i)}, and
// block b consumes labels j_1 + ... + j_{b-1} + 1 .. j_1 + ... + j_b, so the
// leftmost letters feed block m, which is also the leftmost output factor.
TruncatedTensor shuffle_expansion(const PolynomialVectorField& f, const TruncatedTensor& t, const Point& z) {
  const std::size_t d = f.driver_dim();
  const std::size_t e = f.state_dim();
  const std::size_t n = t.degree();
  TruncatedTensor out(e, n);

  // values[len][w] = f^{∘len}(e_w)(Id)(z)
  std::vector<std::vector<Point>> values(n + 1);
  for (std::size_t len = 1; len <= n; ++len) {
    const std::size_t count = ipow(d, len);
    values[len].reserve(count);
    for (std::size_t w = 0; w < count; ++w) values[len].push_back(f.composition(len, w)(z));
  }

  for (std::size_t k = 1; k <= n; ++k) {
    auto coeffs = t.level(k);
    for (const auto& blocks : compositions_of(k)) {
      const std::size_t m = blocks.size();
      auto dst = out.level(m);
      const auto shuffles = mirrored_shuffles(blocks);
      Word w(k), permuted(k);
      for (std::size_t wi = 0; wi < coeffs.size(); ++wi) {
        const double c = coeffs[wi];
        if (c == 0.0) continue;
        w = index_word(wi, k, d);
        for (const auto& sigma : shuffles) {
          for (std::size_t i = 1; i <= k; ++i) permuted[k - i] = w[k - sigma[i - 1]];
          // Chunks left to right have sizes j_m, ..., j_1.
          std::vector<double> acc{c};
          std::size_t pos = 0;
          for (std::size_t b = m; b-- > 0;) {
            const std::size_t len = blocks[b];
            Word chunk(permuted.begin() + static_cast<std::ptrdiff_t>(pos),
                       permuted.begin() + static_cast<std::ptrdiff_t>(pos + len));
            const Point& v = values[len][word_index(chunk, d)];
            acc = outer(acc, std::span<const double>(v.data(), static_cast<std::size_t>(v.size())));
            pos += len;
          }
          for (std::size_t i = 0; i < acc.size(); ++i) dst[i] += acc[i];
        }
      }
    }
  }
  return out;
}

}  // namespace

Point euler_increment(const PolynomialVectorField& f, const TruncatedTensor& g, const Point& z) {
  check_driver(f, g, z);
  if (std::abs(g.scalar() - 1.0) > kUnitScalarTol) throw DomainError("euler_increment: not a unit-scalar element");
  Point out = Point::Zero(z.size());
  for (std::size_t k = 1; k <= g.degree(); ++k) out += f_circ_k(f, g.level(k), k, z);
  return out;
}

TruncatedTensor euler_increment_full(const PolynomialVectorField& f, const TruncatedTensor& g, const Point& z) {
  check_driver(f, g, z);
  if (std::abs(g.scalar() - 1.0) > kUnitScalarTol) throw DomainError("euler_increment: not a unit-scalar element");
  const std::size_t d = f.driver_dim();
  const std::size_t e = f.state_dim();
  const std::size_t n = g.degree();
  const auto shifted = translate(f, z);

  // Coordinates of L^n(R^e) laid out like a TruncatedTensor over R^e.
  TruncatedTensor layout(e, n);
  std::vector<std::size_t> offset(n + 1);
  for (std::size_t k = 0; k <= n; ++k) offset[k] = static_cast<std::size_t>(layout.level(k).data() - layout.data().data());
  const std::size_t nvars = layout.data().size();

  // Embed a polynomial in the level-1 coordinates.
  auto embed = [&](const Polynomial& p) {
    Polynomial out(nvars);
    for (const auto& [ex, c] : p.terms()) {
      Exponents big(nvars, 0);
      for (std::size_t a = 0; a < e; ++a) big[offset[1] + a] = ex[a];
      out.add_term(big, c);
    }
    return out;
  };

  // F(f)(e_a)(l) = l ⊗ f_a(π_1 l), truncated at level n.
  std::vector<PolyMap> lifted;
  for (std::size_t a = 0; a < d; ++a) {
    std::vector<Polynomial> comps(nvars, Polynomial(nvars));
    std::vector<Polynomial> fa;
    for (std::size_t c = 0; c < e; ++c) fa.push_back(embed(shifted.field(a)[c]));
    for (std::size_t m = 1; m <= n; ++m) {
      const std::size_t prev_width = ipow(e, m - 1);
      for (std::size_t idx = 0; idx < prev_width; ++idx) {
        const auto l = Polynomial::variable(nvars, offset[m - 1] + idx);
        for (std::size_t c = 0; c < e; ++c) comps[offset[m] + idx * e + c] = l * fa[c];
      }
    }
    lifted.emplace_back(nvars, std::move(comps));
  }

  Eigen::VectorXd one = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(nvars));
  one[0] = 1.0;
  Eigen::VectorXd acc = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(nvars));

  // Nested directional derivatives by prefix letter: G_{a u} = D(G_u) · F_a.
  std::vector<PolyMap> level_maps = lifted;
  for (std::size_t k = 1; k <= n; ++k) {
    if (k > 1) {
      std::vector<PolyMap> next;
      next.reserve(d * level_maps.size());
      for (std::size_t a = 0; a < d; ++a)
        for (const auto& gm : level_maps) next.push_back(gm.directional_derivative(lifted[a]));
      level_maps = std::move(next);
    }
    auto coeffs = g.level(k);
    for (std::size_t w = 0; w < coeffs.size(); ++w)
      if (coeffs[w] != 0.0) level_maps[w].accumulate(one, coeffs[w], acc);
  }

  TruncatedTensor out(e, n);
  std::copy(acc.data(), acc.data() + acc.size(), out.data().begin());
  return out;
}

TruncatedTensor euler_increment_via_shuffles_full(const PolynomialVectorField& f, const TruncatedTensor& g,
                                                  const Point& z) {
  check_driver(f, g, z);
  if (std::abs(g.scalar() - 1.0) > kUnitScalarTol) throw DomainError("euler_increment: not a unit-scalar element");
  return shuffle_expansion(f, g, z);
}

Point euler_increment_via_shuffles(const PolynomialVectorField& f, const TruncatedTensor& g, const Point& z) {
  auto full = euler_increment_via_shuffles_full(f, g, z);
  auto lvl = full.level(1);
  return Eigen::Map<const Eigen::VectorXd>(lvl.data(), static_cast<Eigen::Index>(lvl.size()));
}

LogOdeField::LogOdeField(const PolynomialVectorField& f, const TruncatedTensor& logsig) {
  const std::size_t e = f.state_dim();
  if (logsig.dim() != f.driver_dim()) throw DomainError("log-signature dimension does not match the field");
  if (logsig.degree() > f.max_order()) throw DomainError("log-signature degree exceeds the cached composition order");
  if (std::abs(logsig.scalar()) > kUnitScalarTol) throw DomainError("log_ode_rhs: level 0 must vanish");
  lie_ = is_lie(logsig, kLieTol);
  if (!lie_.is_lie) warnings_.push_back("log-signature is not a Lie element within tolerance");

  std::vector<Polynomial> comps(e, Polynomial(e));
  for (std::size_t k = 1; k <= logsig.degree(); ++k) {
    auto coeffs = logsig.level(k);
    for (std::size_t w = 0; w < coeffs.size(); ++w) {
      if (coeffs[w] == 0.0) continue;
      const auto& g = f.composition(k, w);
      for (std::size_t c = 0; c < e; ++c) comps[c] += g[c] * coeffs[w];
    }
  }
  field_ = PolyMap(e, std::move(comps));
}

Point log_ode_rhs(const PolynomialVectorField& f, const TruncatedTensor& logsig, const Point& z) {
  if (static_cast<std::size_t>(z.size()) != f.state_dim()) throw DomainError("point has wrong dimension");
  return LogOdeField(f, logsig)(z);
}

TruncatedTensor level_drivers(const PolynomialVectorField& f, const TruncatedTensor& logsig, const Point& z) {
  check_driver(f, logsig, z);
  if (std::abs(logsig.scalar()) > kUnitScalarTol) throw DomainError("level_drivers: level 0 must vanish");
  return shuffle_expansion(f, logsig, z);
}

}  // namespace rdelog
