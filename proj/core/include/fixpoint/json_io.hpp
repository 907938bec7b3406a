// Copyright 2026 The Fixpoint Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <string>

#include <nlohmann/json.hpp>

#include "fixpoint/coupled_tripled.hpp"
#include "fixpoint/matrix.hpp"
#include "fixpoint/nonneg_matrix.hpp"
#include "fixpoint/norms.hpp"
#include "fixpoint/perov.hpp"
#include "fixpoint/picard.hpp"

namespace fixpoint {

using nlohmann::json;

// Serializes with sorted keys and every floating-point number printed with 17
// significant digits, so doubles survive a round trip bit for bit. Non-finite
// numbers become null. indent < 0 gives a single line.
std::string dump_json(const json& j, int indent = 2);

// {"n": int, "rows": [[...], ...]}
json to_json(const NonnegativeMatrix& a);
// Throws SchemaError naming `path` on any violation.
NonnegativeMatrix matrix_from_json(const json& j, const std::string& path = "");
// expected_size == 0 accepts any nonempty length.
Vector vector_from_json(const json& j, std::size_t expected_size, const std::string& path);

json to_json(const EliminationTable& t);
json to_json(const NormalityVerdict& v);
json to_json(const SpectralEstimate& s);
// {"weights": [...], "alpha": ..., "beta": ..., "gamma": ...}
json to_json(const Renorming& r);
// Iterate trace thinned to every `trace_every`-th point (the last iterate is
// always kept), residual and bound arrays in full.
json to_json(const PicardRun& run, std::size_t trace_every = 1);
json to_json(const PerovRun& run, std::size_t trace_every = 1);
json to_json(const TripledSolution& sol, std::size_t trace_every = 1);

}  // namespace fixpoint
