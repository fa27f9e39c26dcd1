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
// Sparse multivariate polynomials with exact differentiation.

#ifndef RDELOG_POLYNOMIAL_HPP
#define RDELOG_POLYNOMIAL_HPP

#include <cstddef>
#include <map>
#include <span>
#include <vector>

#include <Eigen/Core>

namespace rdelog {

using Exponents = std::vector<unsigned>;

class Polynomial {
 public:
  explicit Polynomial(std::size_t nvars = 0) : nvars_(nvars) {}

  static Polynomial constant(std::size_t nvars, double c);
  static Polynomial variable(std::size_t nvars, std::size_t i);

  std::size_t nvars() const noexcept { return nvars_; }
  const std::map<Exponents, double>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  unsigned total_degree() const;

  // Adds coeff * x^exponents; exact cancellations drop the term.
  void add_term(const Exponents& exponents, double coeff);

  double operator()(std::span<const double> x) const;

  Polynomial derivative(std::size_t var) const;
  // p(x + shift), re-expanded in monomials.
  Polynomial translated(std::span<const double> shift) const;

  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  Polynomial& operator*=(double s);

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, double s) { return a *= s; }
  friend Polynomial operator*(double s, Polynomial a) { return a *= s; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);

 private:
  std::size_t nvars_;
  std::map<Exponents, double> terms_;
};

// A polynomial map R^n -> R^m with a flattened evaluator for hot loops.
class PolyMap {
 public:
  PolyMap() = default;
  PolyMap(std::size_t nvars, std::vector<Polynomial> components);

  static PolyMap zero(std::size_t nvars, std::size_t nout);

  std::size_t nvars() const noexcept { return nvars_; }
  std::size_t nout() const noexcept { return components_.size(); }
  const std::vector<Polynomial>& components() const noexcept { return components_; }
  const Polynomial& operator[](std::size_t i) const { return components_[i]; }
  unsigned total_degree() const;

  Eigen::VectorXd operator()(const Eigen::VectorXd& x) const;
  // Accumulates scale * map(x) into out.
  void accumulate(const Eigen::VectorXd& x, double scale, Eigen::VectorXd& out) const;

  // Directional derivative x -> D(this)(x)[direction(x)].
  PolyMap directional_derivative(const PolyMap& direction) const;
  // Partial derivative of every component.
  PolyMap derivative(std::size_t var) const;
  PolyMap translated(std::span<const double> shift) const;

  PolyMap& operator+=(const PolyMap& other);
  PolyMap& operator*=(double s);
  friend PolyMap operator+(PolyMap a, const PolyMap& b) { return a += b; }
  friend PolyMap operator-(PolyMap a, const PolyMap& b) { return a += b * -1.0; }
  friend PolyMap operator*(PolyMap a, double s) { return a *= s; }

 private:
  void compile();

  std::size_t nvars_ = 0;
  std::vector<Polynomial> components_;
  // Flattened monomials and (component, monomial, coeff) triples.
  std::vector<unsigned> monomial_exponents_;  // nmonomials * nvars_
  std::vector<unsigned> max_power_;           // per variable
  struct Entry {
    std::size_t component;
    std::size_t monomial;
    double coeff;
  };
  std::vector<Entry> entries_;
  std::size_t nmonomials_ = 0;
};

}  // namespace rdelog

#endif  // RDELOG_POLYNOMIAL_HPP
