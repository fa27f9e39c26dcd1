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
#ifndef RDELOG_ERRORS_HPP
#define RDELOG_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rdelog {

// Violated precondition on an argument (shape mismatch, wrong level-0 value, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Malformed input file. `line` is 1-based, 0 when not applicable.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line = 0)
      : std::runtime_error(line ? what + " (line " + std::to_string(line) + ")" : what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// Arithmetic produced a non-finite value.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Non-finite state during ODE integration.
class BlowUpError : public NumericError {
 public:
  BlowUpError(const std::string& what, std::size_t substep)
      : NumericError(what + " (substep " + std::to_string(substep) + ")"), substep_(substep) {}
  std::size_t substep() const noexcept { return substep_; }

 private:
  std::size_t substep_;
};

// An indivisible anchor step whose control value exceeds the allowed bound.
class InadmissibleMeshError : public DomainError {
 public:
  InadmissibleMeshError(double s, double t, double omega, double alpha)
      : DomainError("inadmissible mesh: interval [" + std::to_string(s) + ", " + std::to_string(t) +
                    "] has omega " + std::to_string(omega) + " > alpha " + std::to_string(alpha)),
        s_(s), t_(t) {}
  double s() const noexcept { return s_; }
  double t() const noexcept { return t_; }

 private:
  double s_, t_;
};

// Dyadic bisection could not balance a control within tolerance.
class BisectionError : public DomainError {
 public:
  BisectionError(double s, double t, double imbalance)
      : DomainError("cannot bisect control on [" + std::to_string(s) + ", " + std::to_string(t) +
                    "]: achieved relative imbalance " + std::to_string(imbalance)),
        imbalance_(imbalance) {}
  double imbalance() const noexcept { return imbalance_; }

 private:
  double imbalance_;
};

}  // namespace rdelog

#endif  // RDELOG_ERRORS_HPP
