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

#include "fixpoint/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <string>

#include "fixpoint/error.hpp"

namespace fixpoint {

namespace {

[[noreturn]] void schema_error(const std::string& path, const std::string& msg) {
  throw Error(ErrorCode::kSchemaError, (path.empty() ? "/" : path) + ": " + msg);
}

void write_double(std::string& out, double v) {
  if (!std::isfinite(v)) {
    out += "null";
    return;
  }
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  std::string s(buf);
  if (s.find_first_of(".eE") == std::string::npos) s += ".0";
  out += s;
}

void write_string(std::string& out, const std::string& s) {
  // nlohmann's escaping is already correct for strings.
  out += json(s).dump();
}

void write(std::string& out, const json& j, int indent, int depth) {
  const bool pretty = indent >= 0;
  auto newline = [&](int d) {
    if (!pretty) return;
    out += '\n';
    out.append(static_cast<std::size_t>(d * indent), ' ');
  };
  switch (j.type()) {
    case json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ',';
        first = false;
        newline(depth + 1);
        write_string(out, it.key());
        out += pretty ? ": " : ":";
        write(out, it.value(), indent, depth + 1);
      }
      newline(depth);
      out += '}';
      return;
    }
    case json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      // Arrays of scalars stay on one line.
      bool scalars = true;
      for (const auto& e : j) scalars = scalars && !e.is_structured();
      out += '[';
      bool first = true;
      for (const auto& e : j) {
        if (!first) out += scalars && pretty ? ", " : ",";
        first = false;
        if (!scalars) newline(depth + 1);
        write(out, e, indent, depth + 1);
      }
      if (!scalars) newline(depth);
      out += ']';
      return;
    }
    case json::value_t::number_float:
      write_double(out, j.get<double>());
      return;
    case json::value_t::string:
      write_string(out, j.get<std::string>());
      return;
    default:
      out += j.dump();
      return;
  }
}

json vector_json(std::span<const double> v) { return json(Vector(v.begin(), v.end())); }

}  // namespace

std::string dump_json(const json& j, int indent) {
  std::string out;
  write(out, j, indent, 0);
  if (indent >= 0) out += '\n';
  return out;
}

json to_json(const NonnegativeMatrix& a) {
  return json{{"n", a.size()}, {"rows", a.matrix().rows()}};
}

NonnegativeMatrix matrix_from_json(const json& j, const std::string& path) {
  if (!j.is_object()) schema_error(path, "matrix must be an object {\"n\", \"rows\"}");
  if (!j.contains("n") || !j["n"].is_number_integer() || j["n"].get<long long>() < 1) {
    schema_error(path + "/n", "expected an integer >= 1");
  }
  const auto n = j["n"].get<std::size_t>();
  if (!j.contains("rows") || !j["rows"].is_array() || j["rows"].size() != n) {
    schema_error(path + "/rows", "expected an array of " + std::to_string(n) + " rows");
  }
  Matrix m(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Vector row = vector_from_json(j["rows"][i], n, path + "/rows/" + std::to_string(i));
    for (std::size_t c = 0; c < n; ++c) {
      if (row[c] < 0.0) {
        schema_error(path + "/rows/" + std::to_string(i) + "/" + std::to_string(c),
                     "entries must be nonnegative");
      }
      m(i, c) = row[c];
    }
  }
  return NonnegativeMatrix(std::move(m));
}

Vector vector_from_json(const json& j, std::size_t expected_size, const std::string& path) {
  if (!j.is_array() || j.empty()) schema_error(path, "expected a nonempty array of numbers");
  if (expected_size != 0 && j.size() != expected_size) {
    schema_error(path, "expected " + std::to_string(expected_size) + " entries, got " +
                           std::to_string(j.size()));
  }
  Vector v;
  v.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) schema_error(path + "/" + std::to_string(i), "expected a number");
    const double x = j[i].get<double>();
    if (!std::isfinite(x)) schema_error(path + "/" + std::to_string(i), "must be finite");
    v.push_back(x);
  }
  return v;
}

json to_json(const EliminationTable& t) {
  return json{{"n", t.n},
              {"pivots", t.pivots},
              {"complete", t.complete()},
              {"scaled", t.scaled}};
}

json to_json(const NormalityVerdict& v) {
  json j{{"normal", v.normal}, {"method", std::string(method_name(v.method))}};
  j["certificate"] = v.certificate ? json(*v.certificate) : json(nullptr);
  if (v.refutation) {
    j["refutation"] = json{{"lambda", v.refutation->lambda},
                           {"vector", v.refutation->vector},
                           {"residual", v.refutation->residual}};
  } else {
    j["refutation"] = nullptr;
  }
  return j;
}

json to_json(const SpectralEstimate& s) {
  return json{{"rho", s.rho},
              {"lower", s.lower},
              {"upper", s.upper},
              {"epsilon_used", s.epsilon_used},
              {"converged", s.converged}};
}

json to_json(const Renorming& r) {
  return json{{"weights", r.weights}, {"alpha", r.alpha}, {"beta", r.beta}, {"gamma", r.gamma}};
}

json to_json(const PicardRun& run, std::size_t trace_every) {
  if (trace_every == 0) trace_every = 1;
  json trace = json::array();
  json trace_index = json::array();
  for (std::size_t n = 0; n < run.iterates.size(); ++n) {
    if (n % trace_every == 0 || n + 1 == run.iterates.size()) {
      trace.push_back(vector_json(run.iterates[n]));
      trace_index.push_back(n);
    }
  }
  return json{{"alpha", run.alpha},
              {"converged", run.converged},
              {"steps", run.steps},
              {"iterations", run.iterates.empty() ? 0 : run.iterates.size() - 1},
              {"fixed_point", run.fixed_point},
              {"fixed_point_residual", run.fixed_point_residual},
              {"residuals", run.residuals},
              {"a_priori", run.a_priori},
              {"a_posteriori", run.a_posteriori},
              {"order_warnings", run.order_warnings},
              {"trace_every", trace_every},
              {"trace_index", std::move(trace_index)},
              {"trace", std::move(trace)}};
}

json to_json(const PerovRun& run, std::size_t trace_every) {
  return json{{"run", to_json(run.run, trace_every)},
              {"certificate", run.certificate},
              {"renorming", to_json(run.renorming)},
              {"vector_residuals", run.vector_residuals}};
}

json to_json(const TripledSolution& sol, std::size_t trace_every) {
  json j{{"route", std::string(route_name(sol.route))},
         {"run", to_json(sol.run, trace_every)},
         {"fixed_point", sol.fixed_point},
         {"slot_residuals", sol.slot_residuals},
         {"monotone_violations", sol.monotone_violations}};
  if (sol.perov) {
    j["certificate"] = sol.perov->certificate;
    j["renorming"] = to_json(sol.perov->renorming);
    j["vector_residuals"] = sol.perov->vector_residuals;
  }
  if (sol.cross_check) {
    j["cross_check"] = to_json(*sol.cross_check, trace_every);
    j["route_distance"] = *sol.route_distance;
  }
  return j;
}

}  // namespace fixpoint
