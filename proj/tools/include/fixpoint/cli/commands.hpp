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

#include <cstdint>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "fixpoint/coupled_tripled.hpp"

namespace fixpoint::cli {

// A problem file on disk: {"kind": ..., "payload": {...}, "options": {...}}.
struct ProblemFile {
  std::string kind;  // matrix | linear_system | tripled | coupled
  nlohmann::json payload;
  nlohmann::json options = nlohmann::json::object();
};

// Effective run settings. Command-line flags override the file's "options".
struct RunOptions {
  double tol = 1e-10;
  std::size_t max_iter = 1'000'000;
  Route route = Route::kVector;
  std::size_t trace_every = 1;
  std::uint64_t seed = 0;
  std::optional<double> lambda;
  std::optional<std::string> out;
};

// Flags given on the command line; unset members defer to the file.
struct OptionOverrides {
  std::optional<double> tol;
  std::optional<std::size_t> max_iter;
  std::optional<std::string> route;
  std::optional<std::size_t> trace_every;
  std::optional<std::uint64_t> seed;
  std::optional<double> lambda;
  std::optional<std::string> out;
};

// Throws ParseError (with line and column) or SchemaError.
ProblemFile parse_problem(const std::string& text);
ProblemFile load_problem(const std::string& path);
RunOptions resolve_options(const ProblemFile& file, const OptionOverrides& flags);

// FNV-1a 64-bit hash of the compact canonical dump, as 16 hex digits.
std::string payload_hash(const nlohmann::json& payload);

struct CommandOutcome {
  nlohmann::json report;
  int exit_code = 0;
};

// Each command catches library errors and folds them into the report; the
// exit code is 0 on success and the error's numeric code otherwise.
CommandOutcome run_command(const std::string& command, const std::string& path,
                           const OptionOverrides& flags);

// Writes `text` to `path` through a temporary file and a rename.
void write_atomically(const std::string& path, const std::string& text);

// One-paragraph human summary of a report.
std::string summarize(const nlohmann::json& report);

// Exit-code table for --help.
std::string exit_code_help();

}  // namespace fixpoint::cli
