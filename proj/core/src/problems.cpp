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

#include "fixpoint/problems.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <string>

#include "fixpoint/error.hpp"
#include "fixpoint/expression.hpp"
#include "fixpoint/json_io.hpp"

namespace fixpoint {

namespace {

[[noreturn]] void schema_error(const std::string& path, const std::string& msg) {
  throw Error(ErrorCode::kSchemaError, path + ": " + msg);
}

const json& require(const json& payload, const std::string& key) {
  if (!payload.is_object()) schema_error("/payload", "expected an object");
  if (!payload.contains(key)) schema_error("/payload/" + key, "missing required field");
  return payload[key];
}

std::size_t require_dim(const json& payload, const std::string& key) {
  const json& j = require(payload, key);
  if (!j.is_number_integer() || j.get<long long>() < 1) {
    schema_error("/payload/" + key, "expected an integer >= 1");
  }
  return j.get<std::size_t>();
}

bool optional_bool(const json& payload, const std::string& key, bool fallback) {
  if (!payload.contains(key)) return fallback;
  if (!payload[key].is_boolean()) schema_error("/payload/" + key, "expected a boolean");
  return payload[key].get<bool>();
}

std::vector<FactorMap> linear_family(const json&, const NonnegativeMatrix& a,
                                     const Vector& b) {
  std::vector<FactorMap> out;
  for (std::size_t i = 0; i < a.size(); ++i) {
    out.push_back([a, b, i](std::span<const double> x) {
      double s = b[i];
      for (std::size_t j = 0; j < a.size(); ++j) s += a(i, j) * x[j];
      return Vector{s};
    });
  }
  return out;
}

std::vector<FactorMap> affine_saturated_family(const json& payload,
                                               const NonnegativeMatrix& a,
                                               const Vector& b) {
  const std::size_t n = a.size();
  const Vector lower = vector_from_json(require(payload, "lower"), n, "/payload/lower");
  const Vector upper = vector_from_json(require(payload, "upper"), n, "/payload/upper");
  for (std::size_t i = 0; i < n; ++i) {
    if (lower[i] > upper[i]) {
      schema_error("/payload/lower/" + std::to_string(i), "lower bound exceeds upper bound");
    }
  }
  std::vector<FactorMap> out;
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back([a, b, i, lo = lower[i], hi = upper[i]](std::span<const double> x) {
      double s = b[i];
      for (std::size_t j = 0; j < a.size(); ++j) s += a(i, j) * x[j];
      return Vector{std::clamp(s, lo, hi)};
    });
  }
  return out;
}

std::vector<FactorMap> expression_family(const json& payload, const NonnegativeMatrix& a,
                                         const Vector&) {
  const std::size_t n = a.size();
  const json& maps = require(payload, "maps");
  if (!maps.is_array() || maps.size() != n) {
    schema_error("/payload/maps", "expected " + std::to_string(n) + " expressions");
  }
  std::vector<FactorMap> out;
  for (std::size_t i = 0; i < n; ++i) {
    Expression e = Expression::parse(maps[i], 1, n, "/payload/maps/" + std::to_string(i));
    out.push_back([e = std::move(e)](std::span<const double> x) {
      const Vector arg(x.begin(), x.end());
      return Vector{e.eval(std::span<const Vector>(&arg, 1))};
    });
  }
  return out;
}

struct Registry {
  std::mutex mu;
  std::map<std::string, MapFamilyBuilder> families{
      {"linear", linear_family},
      {"affine_saturated", affine_saturated_family},
      {"expression", expression_family},
  };
};

Registry& registry() {
  static Registry r;
  return r;
}

template <std::size_t K>
std::array<Vector, K> start_slots(const json& payload, std::size_t m) {
  const json& s = require(payload, "start");
  if (!s.is_array() || s.size() != K) {
    schema_error("/payload/start", "expected " + std::to_string(K) + " slot vectors");
  }
  std::array<Vector, K> out;
  for (std::size_t i = 0; i < K; ++i)
    out[i] = vector_from_json(s[i], m, "/payload/start/" + std::to_string(i));
  return out;
}

}  // namespace

void register_map_family(const std::string& name, MapFamilyBuilder builder) {
  auto& r = registry();
  std::lock_guard lock(r.mu);
  r.families[name] = std::move(builder);
}

std::vector<std::string> map_family_names() {
  auto& r = registry();
  std::lock_guard lock(r.mu);
  std::vector<std::string> names;
  for (const auto& [name, _] : r.families) names.push_back(name);
  return names;
}

LinearSystemProblem linear_system_from_json(const json& payload) {
  NonnegativeMatrix a = matrix_from_json(require(payload, "A"), "/payload/A");
  const std::size_t n = a.size();
  const Vector b = vector_from_json(require(payload, "b"), n, "/payload/b");
  const Vector start = payload.contains("start")
                           ? vector_from_json(payload["start"], n, "/payload/start")
                           : Vector(n, 0.0);
  std::vector<int> dirs(n, 1);
  if (payload.contains("order")) {
    const json& o = payload["order"];
    if (!o.is_array() || o.size() != n) {
      schema_error("/payload/order", "expected " + std::to_string(n) + " directions");
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (!o[i].is_number_integer() || (o[i] != 1 && o[i] != -1)) {
        schema_error("/payload/order/" + std::to_string(i), "direction must be 1 or -1");
      }
      dirs[i] = o[i].get<int>();
    }
  }
  std::string family = "linear";
  if (payload.contains("family")) {
    if (!payload["family"].is_string()) schema_error("/payload/family", "expected a string");
    family = payload["family"].get<std::string>();
  }
  MapFamilyBuilder builder;
  {
    auto& r = registry();
    std::lock_guard lock(r.mu);
    const auto it = r.families.find(family);
    if (it == r.families.end()) {
      schema_error("/payload/family", "unknown map family '" + family + "'");
    }
    builder = it->second;
  }
  std::vector<FactorMap> components = builder(payload, a, b);
  SystemOfMaps system(ProductSpace::uniform(n, 1, dirs), std::move(components), start);
  return LinearSystemProblem{std::move(a), std::move(system), family};
}

TripledProblem tripled_from_json(const json& payload) {
  const std::size_t m = require_dim(payload, "base_dim");
  const Vector alphas = vector_from_json(require(payload, "alphas"), 3, "/payload/alphas");
  const ExpressionMap f = ExpressionMap::parse(require(payload, "F"), 3, m, "/payload/F");
  auto start = start_slots<3>(payload, m);
  TripledMap fn = [f](std::span<const double> x, std::span<const double> y,
                      std::span<const double> z) {
    const std::vector<Vector> args{Vector(x.begin(), x.end()), Vector(y.begin(), y.end()),
                                   Vector(z.begin(), z.end())};
    return f.eval(args);
  };
  return TripledProblem::tripled(std::move(fn), {alphas[0], alphas[1], alphas[2]},
                                 std::move(start),
                                 optional_bool(payload, "monotone_declared", true));
}

TripledProblem coupled_from_json(const json& payload) {
  const std::size_t m = require_dim(payload, "base_dim");
  const json& aj = require(payload, "alpha");
  if (!aj.is_number()) schema_error("/payload/alpha", "expected a number");
  const ExpressionMap f = ExpressionMap::parse(require(payload, "F"), 2, m, "/payload/F");
  auto start = start_slots<2>(payload, m);
  CoupledMap fn = [f](std::span<const double> x, std::span<const double> y) {
    const std::vector<Vector> args{Vector(x.begin(), x.end()), Vector(y.begin(), y.end())};
    return f.eval(args);
  };
  return TripledProblem::coupled(std::move(fn), aj.get<double>(), std::move(start),
                                 optional_bool(payload, "monotone_declared", true));
}

}  // namespace fixpoint
