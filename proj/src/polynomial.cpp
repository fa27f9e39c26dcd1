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
#include "rdelog/polynomial.hpp"

#include <algorithm>
#include <cmath>

#include "rdelog/errors.hpp"

namespace rdelog {

Polynomial Polynomial::constant(std::size_t nvars, double c) {
  Polynomial p(nvars);
  p.add_term(Exponents(nvars, 0), c);
  return p;
}

Polynomial Polynomial::variable(std::size_t nvars, std::size_t i) {
  if (i >= nvars) throw DomainError("variable index out of range");
  Polynomial p(nvars);
  Exponents e(nvars, 0);
  e[i] = 1;
  p.add_term(e, 1.0);
  return p;
}

unsigned Polynomial::total_degree() const {
  unsigned deg = 0;
  for (const auto& [e, c] : terms_) {
    unsigned s = 0;
    for (auto x : e) s += x;
    deg = std::max(deg, s);
  }
  return deg;
}

void Polynomial::add_term(const Exponents& exponents, double coeff) {
  if (exponents.size() != nvars_) throw DomainError("exponent vector has wrong length");
  if (coeff == 0.0) return;
  auto [it, inserted] = terms_.try_emplace(exponents, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second == 0.0) terms_.erase(it);
  }
}

double Polynomial::operator()(std::span<const double> x) const {
  if (x.size() != nvars_) throw DomainError("polynomial evaluated at a point of wrong dimension");
  double s = 0.0;
  for (const auto& [e, c] : terms_) {
    double m = c;
    for (std::size_t i = 0; i < nvars_; ++i)
      for (unsigned k = 0; k < e[i]; ++k) m *= x[i];
    s += m;
  }
  return s;
}

Polynomial Polynomial::derivative(std::size_t var) const {
  if (var >= nvars_) throw DomainError("variable index out of range");
  Polynomial out(nvars_);
  for (const auto& [e, c] : terms_) {
    if (e[var] == 0) continue;
    auto de = e;
    de[var] -= 1;
    out.add_term(de, c * static_cast<double>(e[var]));
  }
  return out;
}

Polynomial Polynomial::translated(std::span<const double> shift) const {
  if (shift.size() != nvars_) throw DomainError("shift has wrong dimension");
  // Π_i (x_i + s_i)^{e_i}, expanded one variable at a time.
  Polynomial out(nvars_);
  for (const auto& [e, c] : terms_) {
    Polynomial term = Polynomial::constant(nvars_, c);
    for (std::size_t i = 0; i < nvars_; ++i) {
      if (e[i] == 0) continue;
      Polynomial factor(nvars_);
      double binom = 1.0;
      for (unsigned k = 0; k <= e[i]; ++k) {
        Exponents ek(nvars_, 0);
        ek[i] = k;
        factor.add_term(ek, binom * std::pow(shift[i], static_cast<double>(e[i] - k)));
        binom = binom * static_cast<double>(e[i] - k) / static_cast<double>(k + 1);
      }
      term = term * factor;
    }
    out += term;
  }
  return out;
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  if (other.nvars_ != nvars_) throw DomainError("polynomial arity mismatch");
  for (const auto& [e, c] : other.terms_) add_term(e, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
  if (other.nvars_ != nvars_) throw DomainError("polynomial arity mismatch");
  for (const auto& [e, c] : other.terms_) add_term(e, -c);
  return *this;
}

Polynomial& Polynomial::operator*=(double s) {
  if (s == 0.0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, c] : terms_) c *= s;
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.nvars_ != b.nvars_) throw DomainError("polynomial arity mismatch");
  Polynomial out(a.nvars_);
  Exponents e(a.nvars_);
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) {
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      out.add_term(e, ca * cb);
    }
  return out;
}

PolyMap::PolyMap(std::size_t nvars, std::vector<Polynomial> components)
    : nvars_(nvars), components_(std::move(components)) {
  for (const auto& p : components_)
    if (p.nvars() != nvars_) throw DomainError("polynomial map component has wrong arity");
  compile();
}

PolyMap PolyMap::zero(std::size_t nvars, std::size_t nout) {
  return PolyMap(nvars, std::vector<Polynomial>(nout, Polynomial(nvars)));
}

unsigned PolyMap::total_degree() const {
  unsigned deg = 0;
  for (const auto& p : components_) deg = std::max(deg, p.total_degree());
  return deg;
}

void PolyMap::compile() {
  std::map<Exponents, std::size_t> index;
  entries_.clear();
  monomial_exponents_.clear();
  max_power_.assign(nvars_, 0);
  for (std::size_t c = 0; c < components_.size(); ++c) {
    for (const auto& [e, coeff] : components_[c].terms()) {
      auto [it, inserted] = index.try_emplace(e, index.size());
      if (inserted) {
        monomial_exponents_.insert(monomial_exponents_.end(), e.begin(), e.end());
        for (std::size_t i = 0; i < nvars_; ++i) max_power_[i] = std::max(max_power_[i], e[i]);
      }
      entries_.push_back({c, it->second, coeff});
    }
  }
  nmonomials_ = index.size();
}

void PolyMap::accumulate(const Eigen::VectorXd& x, double scale, Eigen::VectorXd& out) const {
  if (static_cast<std::size_t>(x.size()) != nvars_) throw DomainError("polynomial map evaluated at wrong dimension");
  // powers[i][k] = x_i^k
  thread_local std::vector<double> powers;
  thread_local std::vector<double> monomials;
  std::size_t stride = 0;
  for (auto m : max_power_) stride = std::max<std::size_t>(stride, m + 1);
  powers.assign(nvars_ * stride, 1.0);
  for (std::size_t i = 0; i < nvars_; ++i)
    for (unsigned k = 1; k <= max_power_[i]; ++k) powers[i * stride + k] = powers[i * stride + k - 1] * x[i];
  monomials.assign(nmonomials_, 1.0);
  for (std::size_t m = 0; m < nmonomials_; ++m) {
    const unsigned* e = monomial_exponents_.data() + m * nvars_;
    double v = 1.0;
    for (std::size_t i = 0; i < nvars_; ++i)
      if (e[i]) v *= powers[i * stride + e[i]];
    monomials[m] = v;
  }
  for (const auto& entry : entries_) out[entry.component] += scale * entry.coeff * monomials[entry.monomial];
}

Eigen::VectorXd PolyMap::operator()(const Eigen::VectorXd& x) const {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(nout()));
  accumulate(x, 1.0, out);
  return out;
}

PolyMap PolyMap::directional_derivative(const PolyMap& direction) const {
  if (direction.nvars_ != nvars_ || direction.nout() != nvars_)
    throw DomainError("directional derivative needs a vector field on the same space");
  std::vector<Polynomial> out(nout(), Polynomial(nvars_));
  for (std::size_t a = 0; a < nvars_; ++a) {
    if (direction.components_[a].is_zero()) continue;
    for (std::size_t c = 0; c < nout(); ++c) {
      auto partial = components_[c].derivative(a);
      if (!partial.is_zero()) out[c] += partial * direction.components_[a];
    }
  }
  return PolyMap(nvars_, std::move(out));
}

PolyMap PolyMap::derivative(std::size_t var) const {
  std::vector<Polynomial> out;
  out.reserve(nout());
  for (const auto& p : components_) out.push_back(p.derivative(var));
  return PolyMap(nvars_, std::move(out));
}

PolyMap PolyMap::translated(std::span<const double> shift) const {
  std::vector<Polynomial> out;
  out.reserve(nout());
  for (const auto& p : components_) out.push_back(p.translated(shift));
  return PolyMap(nvars_, std::move(out));
}

PolyMap& PolyMap::operator+=(const PolyMap& other) {
  if (other.nvars_ != nvars_ || other.nout() != nout()) throw DomainError("polynomial map shape mismatch");
  for (std::size_t c = 0; c < nout(); ++c) components_[c] += other.components_[c];
  compile();
  return *this;
}

PolyMap& PolyMap::operator*=(double s) {
  for (auto& p : components_) p *= s;
  compile();
  return *this;
}

}  // namespace rdelog
