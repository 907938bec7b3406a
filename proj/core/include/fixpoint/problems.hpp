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

#include <functional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "fixpoint/coupled_tripled.hpp"
#include "fixpoint/perov.hpp"

namespace fixpoint {

// Builds the component maps T_i (one per coordinate of R^n) of a named map
// family from the payload of a linear_system problem.
using MapFamilyBuilder = std::function<std::vector<FactorMap>(
    const nlohmann::json& payload, const NonnegativeMatrix& a, const Vector& b)>;

// Built-in families: "linear" (Ax + b), "affine_saturated"
// (clamp(Ax + b, lower, upper)) and "expression" (one expression per
// coordinate in "maps"). Registering an existing name replaces it.
void register_map_family(const std::string& name, MapFamilyBuilder builder);
std::vector<std::string> map_family_names();

struct LinearSystemProblem {
  NonnegativeMatrix contraction;
  SystemOfMaps system;
  std::string family;
};

// Payload: {"A": matrix, "b": [...], "start"?: [...], "order"?: [+-1...],
//           "family"?: name, family-specific keys}. Throws SchemaError.
LinearSystemProblem linear_system_from_json(const nlohmann::json& payload);

// Payload: {"F": expr or [expr], "alphas": [a1,a2,a3],
//           "start": [[...],[...],[...]], "base_dim": m, "monotone_declared"?: bool}
TripledProblem tripled_from_json(const nlohmann::json& payload);

// Payload: {"F": expr or [expr], "alpha": a, "start": [[...],[...]],
//           "base_dim": m, "monotone_declared"?: bool}
TripledProblem coupled_from_json(const nlohmann::json& payload);

}  // namespace fixpoint
