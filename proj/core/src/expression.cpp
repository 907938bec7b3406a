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

#include "fixpoint/expression.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "fixpoint/error.hpp"

namespace fixpoint {

namespace {

using nlohmann::json;

[[noreturn]] void schema_error(const std::string& path, const std::string& msg) {
  throw Error(ErrorCode::kSchemaError, (path.empty() ? "/" : path) + ": " + msg);
}

std::size_t index_value(const json& j, const std::string& path) {
  if (!j.is_number_integer() || j.get<long long>() < 0) {
    schema_error(path, "expected a nonnegative integer");
  }
  return j.get<std::size_t>();
}

}  // namespace

Expression Expression::constant(double v) {
  Expression e;
  e.kind_ = Kind::kConst;
  e.value_ = v;
  return e;
}

Expression Expression::var(std::size_t slot, std::size_t coord) {
  Expression e;
  e.kind_ = Kind::kVar;
  e.slot_ = slot;
  e.coord_ = coord;
  return e;
}

Expression Expression::combine(Kind kind, std::vector<Expression> children) {
  if (children.empty()) {
    throw Error(ErrorCode::kSchemaError, "operator needs at least one operand");
  }
  Expression e;
  e.kind_ = kind;
  e.children_ = std::move(children);
  return e;
}

Expression Expression::parse(const json& j, std::size_t slots, std::size_t dim,
                             const std::string& path) {
  if (j.is_number()) {
    const double v = j.get<double>();
    if (!std::isfinite(v)) schema_error(path, "constant must be finite");
    return constant(v);
  }
  if (!j.is_object() || j.size() != 1) {
    schema_error(path, "expected a number or a single-key operator object");
  }
  const std::string key = j.begin().key();
  const json& body = j.begin().value();
  const std::string sub = path + "/" + key;
  if (key == "const") {
    if (!body.is_number()) schema_error(sub, "expected a number");
    return constant(body.get<double>());
  }
  if (key == "var") {
    std::size_t slot = 0;
    std::size_t coord = 0;
    if (body.is_array()) {
      if (body.size() != 2) schema_error(sub, "expected [slot, coord]");
      slot = index_value(body[0], sub + "/0");
      coord = index_value(body[1], sub + "/1");
    } else if (slots == 1) {
      coord = index_value(body, sub);
    } else {
      slot = index_value(body, sub);
    }
    if (slot >= slots) {
      schema_error(sub, "slot " + std::to_string(slot) + " out of range (" +
                            std::to_string(slots) + " arguments)");
    }
    if (coord >= dim) {
      schema_error(sub, "coordinate " + std::to_string(coord) + " out of range (dim " +
                            std::to_string(dim) + ")");
    }
    return var(slot, coord);
  }
  Kind kind;
  if (key == "add") {
    kind = Kind::kAdd;
  } else if (key == "mul") {
    kind = Kind::kMul;
  } else if (key == "min") {
    kind = Kind::kMin;
  } else if (key == "max") {
    kind = Kind::kMax;
  } else {
    schema_error(path, "unknown operator '" + key + "'");
  }
  if (!body.is_array() || body.empty()) schema_error(sub, "expected a nonempty array");
  std::vector<Expression> children;
  for (std::size_t i = 0; i < body.size(); ++i)
    children.push_back(parse(body[i], slots, dim, sub + "/" + std::to_string(i)));
  return combine(kind, std::move(children));
}

double Expression::eval(std::span<const Vector> args) const {
  switch (kind_) {
    case Kind::kConst:
      return value_;
    case Kind::kVar:
      return args[slot_][coord_];
    case Kind::kAdd: {
      double s = 0.0;
      for (const auto& c : children_) s += c.eval(args);
      return s;
    }
    case Kind::kMul: {
      double p = 1.0;
      for (const auto& c : children_) p *= c.eval(args);
      return p;
    }
    case Kind::kMin: {
      double m = std::numeric_limits<double>::infinity();
      for (const auto& c : children_) m = std::min(m, c.eval(args));
      return m;
    }
    case Kind::kMax: {
      double m = -std::numeric_limits<double>::infinity();
      for (const auto& c : children_) m = std::max(m, c.eval(args));
      return m;
    }
  }
  return 0.0;
}

json Expression::to_json() const {
  switch (kind_) {
    case Kind::kConst:
      return json{{"const", value_}};
    case Kind::kVar:
      return json{{"var", json::array({slot_, coord_})}};
    default:
      break;
  }
  json arr = json::array();
  for (const auto& c : children_) arr.push_back(c.to_json());
  const char* key = kind_ == Kind::kAdd   ? "add"
                    : kind_ == Kind::kMul ? "mul"
                    : kind_ == Kind::kMin ? "min"
                                          : "max";
  return json{{key, std::move(arr)}};
}

ExpressionMap ExpressionMap::parse(const json& j, std::size_t slots, std::size_t dim,
                                   const std::string& path) {
  std::vector<Expression> outputs;
  if (j.is_array()) {
    if (j.size() != dim) {
      schema_error(path, "expected " + std::to_string(dim) + " output expressions");
    }
    for (std::size_t i = 0; i < j.size(); ++i)
      outputs.push_back(Expression::parse(j[i], slots, dim, path + "/" + std::to_string(i)));
  } else {
    if (dim != 1) schema_error(path, "expected an array of expressions");
    outputs.push_back(Expression::parse(j, slots, dim, path));
  }
  return ExpressionMap(std::move(outputs));
}

Vector ExpressionMap::eval(std::span<const Vector> args) const {
  Vector out;
  out.reserve(outputs_.size());
  for (const auto& e : outputs_) out.push_back(e.eval(args));
  return out;
}

json ExpressionMap::to_json() const {
  json arr = json::array();
  for (const auto& e : outputs_) arr.push_back(e.to_json());
  return arr;
}

}  // namespace fixpoint
