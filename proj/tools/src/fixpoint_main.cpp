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

// fixpoint: analyze nonnegative matrices and solve ordered fixed-point
// problems from JSON problem files.

#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "fixpoint/cli/commands.hpp"
#include "fixpoint/json_io.hpp"

namespace {

void configure_logging() {
  auto logger = spdlog::stderr_color_mt("fixpoint");
  spdlog::set_default_logger(logger);
  spdlog::set_pattern("[%l] %v");
  const char* env = std::getenv("FIXPOINT_LOG");
  const std::string level = env ? env : "info";
  if (level == "quiet") {
    spdlog::set_level(spdlog::level::off);
  } else if (level == "debug") {
    spdlog::set_level(spdlog::level::debug);
  } else {
    if (level != "info") spdlog::warn("FIXPOINT_LOG='{}' not recognized; using info", level);
    spdlog::set_level(spdlog::level::info);
  }
}

}  // namespace

int main(int argc, char** argv) {
  configure_logging();

  CLI::App app{"Normality tests for nonnegative matrices and Picard/Perov solvers for "
               "ordered fixed-point problems."};
  app.footer(fixpoint::cli::exit_code_help() +
             "\nEnvironment:\n  FIXPOINT_LOG  quiet | info | debug (default info)");
  app.require_subcommand(1);

  fixpoint::cli::OptionOverrides flags;
  std::string path;
  bool print_json = false;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("problem", path, "Problem file (JSON)")->required();
    sub->add_option_function<double>(
        "--tol", [&](double v) { flags.tol = v; }, "Tolerance (default 1e-10)");
    sub->add_option_function<std::size_t>(
        "--max-iter", [&](std::size_t v) { flags.max_iter = v; },
        "Iteration cap (default 1000000)");
    sub->add_option_function<std::string>(
        "--out", [&](const std::string& v) { flags.out = v; }, "Write the JSON report here");
    sub->add_option_function<std::size_t>(
        "--trace-every", [&](std::size_t v) { flags.trace_every = v; },
        "Keep every k-th iterate in the report trace");
    sub->add_option_function<std::uint64_t>(
        "--seed", [&](std::uint64_t v) { flags.seed = v; },
        "Seed for sampling-based checks");
    sub->add_flag("--json", print_json, "Print the report instead of a summary");
  };

  CLI::App* analyze = app.add_subcommand(
      "analyze", "All four normality tests, certificate, renorming and Neumann inverse");
  add_common(analyze);
  CLI::App* certify = app.add_subcommand(
      "certify", "Estimate nu(A); with --lambda, look for z > 0 with A z < lambda z");
  add_common(certify);
  certify->add_option_function<double>(
      "--lambda", [&](double v) { flags.lambda = v; }, "Level to witness");
  CLI::App* solve = app.add_subcommand("solve", "Solve a linear_system, tripled or coupled problem");
  add_common(solve);
  solve->add_option_function<std::string>(
      "--route", [&](const std::string& v) { flags.route = v; },
      "vector | max_metric | both (tripled and coupled problems)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // --help and --version exit 0; usage errors exit 1.
    return app.exit(e) == 0 ? 0 : 1;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  const auto outcome = fixpoint::cli::run_command(command, path, flags);
  if (print_json) {
    std::cout << fixpoint::dump_json(outcome.report);
  } else {
    std::cout << fixpoint::cli::summarize(outcome.report) << '\n';
  }
  return outcome.exit_code;
}
