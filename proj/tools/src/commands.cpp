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

#include "fixpoint/cli/commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include <spdlog/spdlog.h>

#include "fixpoint/error.hpp"
#include "fixpoint/json_io.hpp"
#include "fixpoint/nonneg_matrix.hpp"
#include "fixpoint/norms.hpp"
#include "fixpoint/perov.hpp"
#include "fixpoint/picard.hpp"
#include "fixpoint/problems.hpp"

#ifndef FIXPOINT_VERSION
#define FIXPOINT_VERSION "0.0.0"
#endif

namespace fixpoint::cli {

namespace {

constexpr const char* kKinds[] = {"matrix", "linear_system", "tripled", "coupled"};
// Points kept when checking comparability components on a trace.
constexpr std::size_t kComponentSample = 256;
// Comparable pairs drawn for the sampled vector-contraction check.
constexpr std::size_t kContractionSamples = 64;

[[noreturn]] void schema_error(const std::string& path, const std::string& msg) {
  throw Error(ErrorCode::kSchemaError, path + ": " + msg);
}

std::pair<std::size_t, std::size_t> line_and_column(const std::string& text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t col = 1;
  for (std::size_t i = 0; i < std::min(byte, text.size()); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

const json& number_option(const json& opts, const char* key) {
  const json& v = opts[key];
  if (!v.is_number()) schema_error(std::string("/options/") + key, "expected a number");
  return v;
}

std::size_t count_option(const json& opts, const char* key) {
  const json& v = opts[key];
  if (!v.is_number_integer() || v.get<long long>() < 1) {
    schema_error(std::string("/options/") + key, "expected an integer >= 1");
  }
  return v.get<std::size_t>();
}

json options_json(const RunOptions& o) {
  json j{{"tol", o.tol},
         {"max_iter", o.max_iter},
         {"route", std::string(route_name(o.route))},
         {"trace_every", o.trace_every},
         {"seed", o.seed}};
  if (o.lambda) j["lambda"] = *o.lambda;
  return j;
}

// Four normality tests, the certificate or refutation, the renorming and the
// Neumann inverse for a matrix payload.
json analyze_matrix(const NonnegativeMatrix& a, const RunOptions& o) {
  const EliminationTable table = matkowski_eliminate(a);
  const std::vector<double> minors = leading_minors(a);
  const NormalityVerdict verdict = classify_normality(a);
  const bool by_matkowski = table.complete();
  const bool by_minors = is_admissible(a);
  const SpectralEstimate sp = spectral_radius(a, std::max(o.tol, 1e-14));
  bool by_spectrum = false;
  if (sp.upper < 1.0) {
    by_spectrum = true;
  } else if (!(sp.lower >= 1.0 - NormalityOptions{}.positivity_tol)) {
    throw Error(ErrorCode::kUndecided, "spectral bracket [" + std::to_string(sp.lower) + ", " +
                                           std::to_string(sp.upper) + "] contains 1");
  }
  const bool by_powers = is_asymptotic(a, o.tol, std::min<std::size_t>(o.max_iter, 100'000));
  spdlog::debug("matkowski={} admissible={} spectral={} asymptotic={}", by_matkowski,
                by_minors, by_spectrum, by_powers);

  const json table_json{{"matkowski", by_matkowski},
                        {"admissible", by_minors},
                        {"spectral", by_spectrum},
                        {"asymptotic", by_powers}};
  if (!(by_matkowski == by_minors && by_minors == by_spectrum && by_spectrum == by_powers &&
        by_matkowski == verdict.normal)) {
    throw Error(ErrorCode::kInternalDisagreement,
                "normality characterizations disagree: " + table_json.dump());
  }

  json r{{"n", a.size()},
         {"matrix", to_json(a)},
         {"equivalence", table_json},
         {"normal", verdict.normal},
         {"elimination", to_json(table)},
         {"leading_minors", minors},
         {"spectral", to_json(sp)},
         {"verdict", to_json(verdict)}};
  if (verdict.normal) {
    // The certificate solves (I - A) z = 1; its direction (max entry 1) is
    // the scale-free form, e.g. (1, 1, 1) for constant row sums.
    Vector dir = *verdict.certificate;
    const double top = *std::max_element(dir.begin(), dir.end());
    for (double& v : dir) v /= top;
    r["certificate_direction"] = dir;
    r["renorming"] = to_json(build_renorming(a));
    r["neumann_inverse"] = to_json(neumann_inverse(a, std::max(o.tol, 1e-15)));
  } else {
    r["certificate_direction"] = nullptr;
    r["renorming"] = nullptr;
    r["neumann_inverse"] = nullptr;
  }
  return r;
}

json certify_matrix(const NonnegativeMatrix& a, const RunOptions& o) {
  const double nu = nu_estimate(a, o.tol);
  const bool normal = is_normal_matkowski(a);
  json r{{"n", a.size()},
         {"nu", nu},
         {"nu_bracket", {std::max(0.0, nu - o.tol), nu + o.tol}},
         {"normal", normal}};
  r["certificate"] = normal ? json(*normality_certificate(a).certificate) : json(nullptr);
  if (!o.lambda) {
    r["lambda"] = nullptr;
    r["witnessed"] = nullptr;
    r["witness"] = nullptr;
    return r;
  }
  const double lambda = *o.lambda;
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
    throw Error(ErrorCode::kInvalidArgument, "lambda must be finite and >= 0");
  }
  r["lambda"] = lambda;
  // A z < lambda z for some z > 0 exactly when A / lambda is normal; the
  // zero matrix is the only one admitting A z <= 0.
  std::optional<Vector> witness;
  if (lambda == 0.0) {
    bool zero = true;
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = 0; j < a.size(); ++j) zero = zero && a(i, j) == 0.0;
    if (zero) witness = Vector(a.size(), 1.0);
  } else {
    const NonnegativeMatrix scaled = a.scaled(1.0 / lambda);
    if (is_normal_matkowski(scaled)) witness = *normality_certificate(scaled).certificate;
  }
  r["witnessed"] = witness.has_value();
  r["witness"] = witness ? json(*witness) : json(nullptr);
  return r;
}

// Evenly spaced subsample of the iterates (always keeping the last) with the
// number of comparability components among them.
json uniqueness_witness(const PicardRun& run, const Order& order) {
  std::vector<Vector> pts;
  const std::size_t m = run.iterates.size();
  const std::size_t stride = std::max<std::size_t>(1, m / kComponentSample);
  for (std::size_t i = 0; i < m; i += stride) pts.push_back(run.iterates[i]);
  if (!run.iterates.empty() && (m - 1) % stride != 0) pts.push_back(run.iterates.back());
  const auto comps = comparability_components(pts, order);
  return json{{"status", "witnessed on sample"},
              {"points", pts.size()},
              {"components", comps.size()}};
}

// Comparable pairs scattered around the trace, checked against the declared
// matrix. Reported, never fatal.
json contraction_sample(const LinearSystemProblem& p, const PicardRun& run,
                        std::uint64_t seed) {
  const auto& space = p.system.space();
  const std::size_t d = space.total_dim();
  Vector lo(d, 0.0);
  Vector hi(d, 0.0);
  for (std::size_t i = 0; i < d; ++i) {
    lo[i] = hi[i] = run.iterates.front()[i];
    for (const auto& x : run.iterates) {
      lo[i] = std::min(lo[i], x[i]);
      hi[i] = std::max(hi[i], x[i]);
    }
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const auto& dirs = space.order().directions();
  std::vector<StatePair> pairs;
  for (std::size_t s = 0; s < kContractionSamples; ++s) {
    Vector x(d);
    Vector y(d);
    for (std::size_t i = 0; i < d; ++i) {
      const double span = hi[i] - lo[i] + 1.0;
      x[i] = lo[i] - 0.5 + span * u(rng);
      y[i] = x[i] + dirs[i] * span * u(rng);
    }
    pairs.push_back({std::move(x), std::move(y)});
  }
  const auto rep = verify_vector_contraction(associate_selfmap(p.system), space,
                                             p.contraction, pairs);
  return json{{"samples", pairs.size()},
              {"worst_slack", rep.worst_slack},
              {"violations", rep.violations.size()},
              {"seed", seed}};
}

json solve_problem(const ProblemFile& f, const RunOptions& o) {
  if (f.kind == "linear_system") {
    const LinearSystemProblem p = linear_system_from_json(f.payload);
    const PerovRun pr = perov_solve(p.system, p.contraction, o.tol, o.max_iter);
    spdlog::info("perov solve converged after {} steps", pr.run.steps);
    return json{{"family", p.family},
                {"fixed_point", pr.run.fixed_point},
                {"perov", to_json(pr, o.trace_every)},
                {"contraction_check", contraction_sample(p, pr.run, o.seed)},
                {"uniqueness", uniqueness_witness(pr.run, p.system.space().order())}};
  }
  const TripledProblem p =
      f.kind == "tripled" ? tripled_from_json(f.payload) : coupled_from_json(f.payload);
  TripledSolveOptions so;
  so.route = o.route;
  so.seed = o.seed;
  const TripledSolution sol = solve_tripled(p, o.tol, o.max_iter, so);
  spdlog::info("{} solve ({}) converged after {} steps", f.kind, route_name(sol.route),
               sol.run.steps);
  if (sol.monotone_violations > 0) {
    spdlog::warn("{} sampled pairs contradict the declared mixed monotonicity",
                 sol.monotone_violations);
  }
  json r = to_json(sol, o.trace_every);
  r["uniqueness"] = uniqueness_witness(sol.run, p.space().order());
  return r;
}

}  // namespace

ProblemFile parse_problem(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    const auto [line, col] = line_and_column(text, e.byte == 0 ? 0 : e.byte - 1);
    throw Error(ErrorCode::kParseError, "line " + std::to_string(line) + ", column " +
                                            std::to_string(col) + ": " + e.what());
  }
  if (!j.is_object()) schema_error("/", "problem file must be a JSON object");
  for (const auto& [key, _] : j.items()) {
    if (key != "kind" && key != "payload" && key != "options") {
      schema_error("/" + key, "unknown key");
    }
  }
  if (!j.contains("kind") || !j["kind"].is_string()) schema_error("/kind", "expected a string");
  ProblemFile f;
  f.kind = j["kind"].get<std::string>();
  if (std::find(std::begin(kKinds), std::end(kKinds), f.kind) == std::end(kKinds)) {
    schema_error("/kind", "unknown kind '" + f.kind + "'");
  }
  if (!j.contains("payload") || !j["payload"].is_object()) {
    schema_error("/payload", "expected an object");
  }
  f.payload = j["payload"];
  if (j.contains("options")) {
    if (!j["options"].is_object()) schema_error("/options", "expected an object");
    f.options = j["options"];
  }
  return f;
}

ProblemFile load_problem(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_problem(ss.str());
}

RunOptions resolve_options(const ProblemFile& file, const OptionOverrides& flags) {
  RunOptions o;
  const json& opts = file.options;
  for (const auto& [key, _] : opts.items()) {
    static const char* known[] = {"tol", "max_iter", "route", "trace_every",
                                  "seed", "lambda", "output"};
    if (std::find_if(std::begin(known), std::end(known),
                     [&](const char* k) { return key == k; }) == std::end(known)) {
      schema_error("/options/" + key, "unknown option");
    }
  }
  if (opts.contains("tol")) o.tol = number_option(opts, "tol").get<double>();
  if (opts.contains("max_iter")) o.max_iter = count_option(opts, "max_iter");
  if (opts.contains("trace_every")) o.trace_every = count_option(opts, "trace_every");
  if (opts.contains("seed")) {
    if (!opts["seed"].is_number_unsigned()) schema_error("/options/seed", "expected an integer");
    o.seed = opts["seed"].get<std::uint64_t>();
  }
  if (opts.contains("lambda")) o.lambda = number_option(opts, "lambda").get<double>();
  std::optional<std::string> route;
  if (opts.contains("route")) {
    if (!opts["route"].is_string()) schema_error("/options/route", "expected a string");
    route = opts["route"].get<std::string>();
  }
  if (opts.contains("output")) {
    if (!opts["output"].is_string()) schema_error("/options/output", "expected a string");
    o.out = opts["output"].get<std::string>();
  }

  if (flags.tol) o.tol = *flags.tol;
  if (flags.max_iter) o.max_iter = *flags.max_iter;
  if (flags.trace_every) o.trace_every = *flags.trace_every;
  if (flags.seed) o.seed = *flags.seed;
  if (flags.lambda) o.lambda = flags.lambda;
  if (flags.route) route = flags.route;
  if (flags.out) o.out = flags.out;

  if (route) {
    const auto r = parse_route(*route);
    if (!r) {
      throw Error(ErrorCode::kInvalidArgument,
                  "route must be vector, max_metric or both, got '" + *route + "'");
    }
    o.route = *r;
  }
  if (!(o.tol > 0.0) || !std::isfinite(o.tol)) {
    throw Error(ErrorCode::kInvalidArgument, "InvalidTolerance: tol must be finite and > 0");
  }
  if (o.max_iter == 0) throw Error(ErrorCode::kInvalidArgument, "max_iter must be >= 1");
  if (o.trace_every == 0) throw Error(ErrorCode::kInvalidArgument, "trace_every must be >= 1");
  return o;
}

std::string payload_hash(const json& payload) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const unsigned char c : dump_json(payload, -1)) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

CommandOutcome run_command(const std::string& command, const std::string& path,
                           const OptionOverrides& flags) {
  const auto t0 = std::chrono::steady_clock::now();
  CommandOutcome out;
  json& rep = out.report;
  rep["artifact_version"] = FIXPOINT_VERSION;
  rep["command"] = command;
  rep["input"] = nullptr;
  rep["result"] = nullptr;
  rep["error"] = nullptr;
  std::optional<std::string> target = flags.out;
  try {
    const ProblemFile file = load_problem(path);
    const RunOptions o = resolve_options(file, flags);
    target = o.out;
    rep["input"] = json{{"kind", file.kind},
                        {"hash", payload_hash(file.payload)},
                        {"payload", file.payload},
                        {"options", options_json(o)}};
    const bool wants_matrix = command == "analyze" || command == "certify";
    if (wants_matrix != (file.kind == "matrix")) {
      throw Error(ErrorCode::kSchemaError,
                  "/kind: command '" + command + "' does not accept kind '" + file.kind + "'");
    }
    if (command == "solve") {
      rep["result"] = solve_problem(file, o);
      rep["termination"] = "converged";
    } else {
      const NonnegativeMatrix a = matrix_from_json(file.payload, "/payload");
      rep["result"] = command == "analyze" ? analyze_matrix(a, o) : certify_matrix(a, o);
      rep["termination"] = "completed";
    }
    rep["status"] = "ok";
    out.exit_code = 0;
  } catch (const Error& e) {
    spdlog::error("{}", e.what());
    rep["status"] = "error";
    rep["termination"] = std::string(error_code_name(e.code()));
    rep["error"] = json{{"code", static_cast<int>(e.code())},
                        {"name", std::string(error_code_name(e.code()))},
                        {"message", e.what()}};
    rep["error"]["index"] = e.index() ? json(*e.index()) : json(nullptr);
    out.exit_code = static_cast<int>(e.code());
  }
  rep["wall_time_s"] =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (target) {
    try {
      write_atomically(*target, dump_json(rep));
    } catch (const Error& e) {
      spdlog::error("{}", e.what());
      if (out.exit_code == 0) out.exit_code = static_cast<int>(e.code());
    }
  }
  return out;
}

void write_atomically(const std::string& path, const std::string& text) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw Error(ErrorCode::kIoError, "cannot write '" + tmp.string() + "'");
    os << text;
    os.flush();
    if (!os) throw Error(ErrorCode::kIoError, "short write to '" + tmp.string() + "'");
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw Error(ErrorCode::kIoError, "cannot rename onto '" + path + "'");
  }
}

std::string summarize(const json& report) {
  std::ostringstream os;
  os << report["command"].get<std::string>() << ": ";
  if (report["status"] == "error") {
    os << report["error"]["message"].get<std::string>();
    return os.str();
  }
  const json& r = report["result"];
  const std::string cmd = report["command"].get<std::string>();
  auto vec = [](const json& v) { return dump_json(v, -1); };
  if (cmd == "analyze") {
    os << (r["normal"].get<bool>() ? "normal" : "not normal") << " by all four tests"
       << " (rho in [" << r["spectral"]["lower"].get<double>() << ", "
       << r["spectral"]["upper"].get<double>() << "])";
    if (r["normal"].get<bool>()) os << "; certificate direction " << vec(r["certificate_direction"]);
  } else if (cmd == "certify") {
    os << "nu ~ " << r["nu"].get<double>();
    if (!r["lambda"].is_null()) {
      os << "; A z < " << r["lambda"].get<double>() << " z "
         << (r["witnessed"].get<bool>() ? "witnessed by " + vec(r["witness"]) : "refused");
    }
  } else {
    os << "fixed point " << vec(r["fixed_point"]);
  }
  return os.str();
}

std::string exit_code_help() {
  std::ostringstream os;
  os << "Exit codes:\n  0  success (solve: converged)\n  1  command-line usage error\n";
  for (int c = static_cast<int>(ErrorCode::kParseError);
       c <= static_cast<int>(ErrorCode::kIoError); ++c) {
    os << (c < 10 ? "  " : " ") << c << "  " << error_code_name(static_cast<ErrorCode>(c))
       << "\n";
  }
  return os.str();
}

}  // namespace fixpoint::cli
