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
// JSON and CSV formats.
//
//   tensor:        {"d": 2, "n": 2, "levels": [[1], [x1, x2], [x11, x12, x21, x22]]}
//   lifted path:   [{"t": 0.0, "element": <tensor>}, ...]
//   vector field:  {"d", "e", "gamma", "box_radius",
//                   "fields": [{"letter": i, "terms": [{"out_coord", "coeff", "exponents": [...]}]}]}
//   sample path:   CSV with header t,x1,...,xd
//
// Letters and output coordinates are 0-based.

#ifndef RDELOG_IO_HPP
#define RDELOG_IO_HPP

#include <istream>
#include <string>

#include <json.hpp>

#include "rdelog/rough_path.hpp"
#include "rdelog/solver.hpp"
#include "rdelog/tensor.hpp"
#include "rdelog/vector_field.hpp"

namespace rdelog::io {

using Json = nlohmann::ordered_json;

Json to_json(const TruncatedTensor& t);
TruncatedTensor tensor_from_json(const Json& j);

Json to_json(const LiftedPath& x);
LiftedPath lifted_path_from_json(const Json& j);

Json to_json(const PolynomialVectorField& f);
PolynomialVectorField field_from_json(const Json& j);

Json to_json(const LieDiagnostic& d);
Json to_json(const SolverConfig& cfg);
Json to_json(const Trajectory& traj);
Json to_json(const SlopeFit& fit);
Json to_json(const ConvergenceReport& r);
Json to_json(const ContinuityReport& r);

// Throws ParseError with 1-based line numbers.
SamplePath read_csv(std::istream& in);
SamplePath read_csv_file(const std::string& path);

Json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace rdelog::io

#endif  // RDELOG_IO_HPP
