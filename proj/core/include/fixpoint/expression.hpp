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
#include <span>
#include <vector>

#include <nlohmann/json.hpp>

#include "fixpoint/matrix.hpp"

namespace fixpoint {

// Arithmetic expression over the coordinates of k argument vectors.
//
// JSON forms:
//   3.5                      constant
//   {"const": 3.5}           constant
//   {"var": [slot, coord]}   coordinate `coord` of argument `slot`
//   {"var": i}               shorthand: [0, i] with one argument, [i, 0] otherwise
//   {"add": [e, ...]}        sum
//   {"mul": [e, ...]}        product
//   {"min": [e, ...]}        minimum
//   {"max": [e, ...]}        maximum
class Expression {
 public:
  enum class Kind { kConst, kVar, kAdd, kMul, kMin, kMax };

  // Throws SchemaError with a JSON-pointer-like path on malformed input or
  // out-of-range variables.
  static Expression parse(const nlohmann::json& j, std::size_t slots, std::size_t dim,
                          const std::string& path = "");

  static Expression constant(double v);
  static Expression var(std::size_t slot, std::size_t coord);
  static Expression combine(Kind kind, std::vector<Expression> children);

  double eval(std::span<const Vector> args) const;
  nlohmann::json to_json() const;

 private:
  Kind kind_ = Kind::kConst;
  double value_ = 0.0;
  std::size_t slot_ = 0;
  std::size_t coord_ = 0;
  std::vector<Expression> children_;
};

// One expression per output coordinate.
class ExpressionMap {
 public:
  ExpressionMap() = default;
  explicit ExpressionMap(std::vector<Expression> outputs) : outputs_(std::move(outputs)) {}

  // Accepts a single expression (dim == 1) or an array of `dim` expressions.
  static ExpressionMap parse(const nlohmann::json& j, std::size_t slots, std::size_t dim,
                             const std::string& path);

  std::size_t dim() const noexcept { return outputs_.size(); }
  Vector eval(std::span<const Vector> args) const;
  nlohmann::json to_json() const;

 private:
  std::vector<Expression> outputs_;
};

}  // namespace fixpoint
