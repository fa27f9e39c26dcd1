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
// Built-in drivers and fields used by the CLI, the tests and the examples.

#ifndef RDELOG_BENCHMARKS_HPP
#define RDELOG_BENCHMARKS_HPP

#include <cstddef>
#include <cstdint>
#include <string>

#include "rdelog/rough_path.hpp"
#include "rdelog/vector_field.hpp"

namespace rdelog {

// x(t) = (0.6 sin 2πt + 0.3 t, 0.5 (1 - cos 2πt) + 0.2 sin 6πt) on [0, 1],
// sampled at segments + 1 uniform times.
SamplePath planar_sample_path(std::size_t segments);

// Gaussian random walk in R^dim with per-step standard deviation `scale`,
// on uniform times in [0, 1].
SamplePath random_walk(std::size_t dim, std::size_t steps, std::uint64_t seed, double scale);

// Two non-commuting cubic fields on R^2 (gamma = 3, box radius 1).
PolynomialVectorField cubic_benchmark_field();

// "pure-area:c[:N]", "planar:N" or "random:N". N counts segments (default 64 for
// pure-area). Throws ParseError on an unknown name.
LiftedPath builtin_driver(const std::string& name, std::size_t degree, std::uint64_t seed);

}  // namespace rdelog

#endif  // RDELOG_BENCHMARKS_HPP
