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
// Polynomial driving vector fields f = (f_1, ..., f_d), f_i : R^e -> R^e, and
// the differential-operator calculus built on them.
//
// For a word w = (w_1, ..., w_k) the composed operator applied to the identity,
//
//   f^{∘k}(e_{w_1} ⊗ ... ⊗ e_{w_k})(Id) = D(...D(D f_{w_k} · f_{w_{k-1}}) ...) · f_{w_1},
//
// is again a polynomial field; these are built once per field and cached, so
// f^{∘k} of any level-k tensor is a linear combination of cached maps.

#ifndef RDELOG_VECTOR_FIELD_HPP
#define RDELOG_VECTOR_FIELD_HPP

#include <cstddef>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "rdelog/lie.hpp"
#include "rdelog/polynomial.hpp"
#include "rdelog/tensor.hpp"

namespace rdelog {

using Point = Eigen::VectorXd;

// Largest integer strictly below gamma.
std::size_t strict_floor(double gamma);

struct MonomialTerm {
  std::size_t out_coord;
  double coeff;
  Exponents exponents;
};

struct LipGammaEstimate {
  double gamma = 0.0;
  double box_radius = 0.0;
  double value = 0.0;
  std::vector<double> derivative_sups;  // sup of ‖D^j f‖ for j = 0..strict_floor(gamma)
  double holder_constant = 0.0;         // of the top derivative, sampled
  bool holder_is_estimate = true;
};

class PolynomialVectorField {
 public:
  // `fields[i]` is f_i as a map R^e -> R^e. Compositions are cached up to
  // `max_order` (default strict_floor(gamma) + 1).
  PolynomialVectorField(std::size_t e, std::vector<PolyMap> fields, double gamma, double box_radius = 1.0,
                        std::size_t max_order = 0);

  // Builds from per-letter monomial lists.
  static PolynomialVectorField from_terms(std::size_t d, std::size_t e,
                                          const std::vector<std::vector<MonomialTerm>>& terms, double gamma,
                                          double box_radius = 1.0, std::size_t max_order = 0);
  // f_i(z) = A_i z.
  static PolynomialVectorField linear(const std::vector<Eigen::MatrixXd>& matrices, double gamma,
                                      double box_radius = 1.0, std::size_t max_order = 0);

  std::size_t driver_dim() const noexcept { return fields_.size(); }
  std::size_t state_dim() const noexcept { return e_; }
  double gamma() const noexcept { return gamma_; }
  double box_radius() const noexcept { return box_radius_; }
  std::size_t max_order() const noexcept { return max_order_; }
  unsigned polynomial_degree() const;

  const PolyMap& field(std::size_t i) const { return fields_.at(i); }
  Point operator()(std::size_t i, const Point& z) const { return fields_.at(i)(z); }

  // ∂^j f_i / ∂z_{a_1} ... ∂z_{a_j} for the multi-index with lexicographic index `tuple`.
  const PolyMap& derivative(std::size_t i, std::size_t j, std::size_t tuple) const;
  std::size_t derivative_order() const noexcept { return derivative_order_; }

  // Cached f^{∘k}(e_w)(Id) for |w| = k.
  const PolyMap& composition(const Word& w) const;
  const PolyMap& composition(std::size_t k, std::size_t word_index) const;

  PolynomialVectorField with_box_radius(double radius) const;
  PolynomialVectorField scaled(double s) const;

  LipGammaEstimate lip_gamma(double gamma, double radius) const;
  LipGammaEstimate lip_gamma() const { return lip_gamma(gamma_, box_radius_); }

 private:
  std::size_t e_;
  std::vector<PolyMap> fields_;
  double gamma_;
  double box_radius_;
  std::size_t max_order_;
  std::size_t derivative_order_;
  // derivatives_[i][j][tuple]
  std::vector<std::vector<std::vector<PolyMap>>> derivatives_;
  // compositions_[k][word_index], k = 1..max_order
  std::vector<std::vector<PolyMap>> compositions_;
};

// f(· + eta).
PolynomialVectorField translate(const PolynomialVectorField& f, const Point& eta);

// f^{∘k}(v)(Id)(z) for a level-k coefficient block v (length d^k).
Point f_circ_k(const PolynomialVectorField& f, std::span<const double> v, std::size_t k, const Point& z);

// Permutations σ of {1..k} (as rows σ(1), ..., σ(k)) in OS(j_1, ..., j_m).
std::vector<std::vector<std::size_t>> ordered_shuffles(const std::vector<std::size_t>& blocks);

// All compositions (j_1, ..., j_m), j_i >= 1, of k.
std::vector<std::vector<std::size_t>> compositions_of(std::size_t k);

// Σ_{k=1}^{deg g} f^{∘k}(π_k g)(Id)(z).
Point euler_increment(const PolynomialVectorField& f, const TruncatedTensor& g, const Point& z);

// Σ_k F(f(·+z))^{∘k}(π_k g)(Id)(1) in T^{deg g}(R^e), computed from the lifted
// field F(f)(v)(l) = l ⊗ f_v(π_1 l) by nested symbolic directional derivatives.
TruncatedTensor euler_increment_full(const PolynomialVectorField& f, const TruncatedTensor& g, const Point& z);

// The same tensor assembled from ordered shuffles of the cached f^{∘j} maps.
TruncatedTensor euler_increment_via_shuffles_full(const PolynomialVectorField& f, const TruncatedTensor& g,
                                                  const Point& z);
Point euler_increment_via_shuffles(const PolynomialVectorField& f, const TruncatedTensor& g, const Point& z);

// Autonomous vector field W(z) = Σ_l f^{∘l}(π_l ℓ)(Id)(z) for a Lie element ℓ.
class LogOdeField {
 public:
  LogOdeField(const PolynomialVectorField& f, const TruncatedTensor& logsig);

  Point operator()(const Point& z) const { return field_(z); }
  const PolyMap& polynomial() const noexcept { return field_; }
  const LieDiagnostic& lie() const noexcept { return lie_; }
  // Non-empty when ℓ failed the Lie test; the field is still evaluated.
  const std::vector<std::string>& warnings() const noexcept { return warnings_; }

 private:
  PolyMap field_;
  LieDiagnostic lie_;
  std::vector<std::string> warnings_;
};

Point log_ode_rhs(const PolynomialVectorField& f, const TruncatedTensor& logsig, const Point& z);

// H_j(z) = Σ_{l=j}^{deg ℓ} Σ_{i_1+...+i_j=l} Σ_σ (f^{∘i_j} ⊗ ... ⊗ f^{∘i_1})(σ π_l ℓ)(Id)(z),
// returned as levels 1..deg ℓ of a tensor over R^e (level 0 is zero). σ ranges
// over the block-start ordered shuffles (mirror images of OS(i_j, ..., i_1)); that
// arrangement reproduces F(f)^{∘l} when the output factors do not commute.
TruncatedTensor level_drivers(const PolynomialVectorField& f, const TruncatedTensor& logsig, const Point& z);

}  // namespace rdelog

#endif  // RDELOG_VECTOR_FIELD_HPP
