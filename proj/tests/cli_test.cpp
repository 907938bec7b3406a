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

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "fixpoint/error.hpp"
#include "fixpoint/json_io.hpp"

namespace fixpoint::cli {
namespace {

namespace fs = std::filesystem;

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("fixpoint_cli_test_" + std::string(::testing::UnitTest::GetInstance()
                                                   ->current_test_info()
                                                   ->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string write(const std::string& name, const std::string& text) {
    const fs::path p = dir_ / name;
    std::ofstream(p) << text;
    return p.string();
  }

  fs::path dir_;
};

const char* kSymMatrix = R"({"kind": "matrix",
  "payload": {"n": 2, "rows": [[0.5, 0.25], [0.25, 0.5]]}})";

TEST_F(CliTest, ParseErrorCarriesLineAndColumn) {
  try {
    parse_problem("{\n  \"kind\": \"matrix\",\n  \"payload\": {,}\n}");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kParseError);
    EXPECT_NE(std::string(e.what()).find("line 3, column 15"), std::string::npos) << e.what();
  }
  const auto out = run_command("analyze", write("bad.json", "{\"kind\": "), {});
  EXPECT_EQ(out.exit_code, static_cast<int>(ErrorCode::kParseError));
  EXPECT_EQ(out.report["status"], "error");
  EXPECT_EQ(out.report["error"]["name"], "ParseError");
}

TEST_F(CliTest, SchemaErrors) {
  EXPECT_THROW(parse_problem(R"({"kind": "tensor", "payload": {}})"), Error);
  EXPECT_THROW(parse_problem(R"({"kind": "matrix"})"), Error);
  EXPECT_THROW(parse_problem(R"({"kind": "matrix", "payload": {}, "extra": 1})"), Error);
  const auto f = parse_problem(R"({"kind": "matrix", "payload": {}, "options": {"tl": 1}})");
  EXPECT_THROW(resolve_options(f, {}), Error);

  // Command and kind must match.
  const auto out = run_command("solve", write("m.json", kSymMatrix), {});
  EXPECT_EQ(out.exit_code, static_cast<int>(ErrorCode::kSchemaError));
}

TEST_F(CliTest, OptionsResolveWithFlagPrecedence) {
  const auto f = parse_problem(
      R"({"kind": "tripled", "payload": {}, "options": {"tol": 1e-6, "route": "both"}})");
  auto o = resolve_options(f, {});
  EXPECT_EQ(o.tol, 1e-6);
  EXPECT_EQ(o.route, Route::kBoth);
  EXPECT_EQ(o.max_iter, 1'000'000u);
  OptionOverrides flags;
  flags.tol = 1e-9;
  flags.route = "max_metric";
  o = resolve_options(f, flags);
  EXPECT_EQ(o.tol, 1e-9);
  EXPECT_EQ(o.route, Route::kMaxMetric);
  flags.route = "diagonal";
  EXPECT_THROW(resolve_options(f, flags), Error);
}

TEST_F(CliTest, PayloadHashIsStableAndSensitive) {
  const json a = json::parse(R"({"b": [1, 2], "a": 0.5})");
  const json b = json::parse(R"({"a": 0.5, "b": [1, 2]})");
  EXPECT_EQ(payload_hash(a), payload_hash(b));
  EXPECT_EQ(payload_hash(a).size(), 16u);
  EXPECT_NE(payload_hash(a), payload_hash(json::parse(R"({"a": 0.5, "b": [1, 3]})")));
}

TEST_F(CliTest, CertifyLambdaExamples) {
  const std::string path = write("sym.json", kSymMatrix);
  OptionOverrides flags;
  flags.lambda = 0.8;
  auto out = run_command("certify", path, flags);
  ASSERT_EQ(out.exit_code, 0);
  EXPECT_NEAR(out.report["result"]["nu"].get<double>(), 0.75, 1e-9);
  EXPECT_TRUE(out.report["result"]["witnessed"].get<bool>());
  flags.lambda = 0.7;
  out = run_command("certify", path, flags);
  ASSERT_EQ(out.exit_code, 0);
  EXPECT_FALSE(out.report["result"]["witnessed"].get<bool>());
  EXPECT_TRUE(out.report["result"]["witness"].is_null());

  out = run_command("certify",
                    write("zero.json", R"({"kind": "matrix",
                      "payload": {"n": 2, "rows": [[0, 0], [0, 0]]}})"),
                    {});
  ASSERT_EQ(out.exit_code, 0);
  EXPECT_EQ(out.report["result"]["nu"].get<double>(), 0.0);
  EXPECT_EQ(out.report["result"]["certificate"], json({1.0, 1.0}));
}

TEST_F(CliTest, AnalyzeReportsFourWayTable) {
  auto out = run_command("analyze", write("sym.json", kSymMatrix), {});
  ASSERT_EQ(out.exit_code, 0);
  for (const auto& [k, v] : out.report["result"]["equivalence"].items()) EXPECT_TRUE(v) << k;

  out = run_command("analyze",
                    write("crit.json", R"({"kind": "matrix",
                      "payload": {"n": 1, "rows": [[0.9999999999999]]}})"),
                    {});
  EXPECT_EQ(out.exit_code, static_cast<int>(ErrorCode::kUndecided));
}

TEST_F(CliTest, SolveExitCodes) {
  auto out = run_command("solve",
                         write("lin.json", R"({"kind": "linear_system", "payload": {
                             "A": {"n": 2, "rows": [[0.5, 0.25], [0.25, 0.5]]},
                             "b": [1, 1]}})"),
                         {});
  ASSERT_EQ(out.exit_code, 0);
  EXPECT_EQ(out.report["termination"], "converged");
  EXPECT_NEAR(out.report["result"]["fixed_point"][0].get<double>(), 4.0, 1e-8);

  out = run_command("solve",
                    write("id.json", R"({"kind": "linear_system", "payload": {
                        "A": {"n": 2, "rows": [[1, 0], [0, 1]]}, "b": [0, 0]}})"),
                    {});
  EXPECT_EQ(out.exit_code, static_cast<int>(ErrorCode::kNotNormal));

  OptionOverrides few;
  few.max_iter = 3;
  out = run_command("solve",
                    write("slow.json", R"({"kind": "linear_system", "payload": {
                        "A": {"n": 1, "rows": [[0.9]]}, "b": [1]}})"),
                    few);
  EXPECT_EQ(out.exit_code, static_cast<int>(ErrorCode::kMaxIterExceeded));

  out = run_command("solve", (dir_ / "missing.json").string(), {});
  EXPECT_EQ(out.exit_code, static_cast<int>(ErrorCode::kIoError));
}

TEST_F(CliTest, ExitCodesAreDistinct) {
  std::set<int> codes{0, 1};
  for (int c = static_cast<int>(ErrorCode::kParseError);
       c <= static_cast<int>(ErrorCode::kIoError); ++c) {
    EXPECT_TRUE(codes.insert(c).second);
    EXPECT_NE(exit_code_help().find(std::string(error_code_name(static_cast<ErrorCode>(c)))),
              std::string::npos);
  }
}

TEST_F(CliTest, ReportIsWrittenAtomicallyAndRoundTrips) {
  const std::string path = write("lin.json", R"({"kind": "linear_system", "payload": {
      "A": {"n": 2, "rows": [[0.5, 0.25], [0.25, 0.5]]}, "b": [1, 1]}})");
  OptionOverrides flags;
  flags.out = (dir_ / "report.json").string();
  const auto out = run_command("solve", path, flags);
  ASSERT_EQ(out.exit_code, 0);
  EXPECT_FALSE(fs::exists(dir_ / "report.json.tmp"));
  std::ifstream in(*flags.out);
  std::stringstream ss;
  ss << in.rdbuf();
  const json back = json::parse(ss.str());
  EXPECT_EQ(dump_json(back), ss.str());
  EXPECT_EQ(back["result"]["fixed_point"], out.report["result"]["fixed_point"]);

  // The echoed input is itself a problem file that reproduces the verdict.
  json echo = back["input"];
  echo.erase("hash");
  const auto again = run_command("solve", write("echo.json", echo.dump()), {});
  ASSERT_EQ(again.exit_code, 0);
  EXPECT_EQ(again.report["result"], out.report["result"]);
  EXPECT_EQ(again.report["input"]["hash"], out.report["input"]["hash"]);
}

TEST_F(CliTest, ReportsAreDeterministic) {
  const std::string path = write("sym.json", kSymMatrix);
  auto strip = [](json r) {
    r.erase("wall_time_s");
    return dump_json(r);
  };
  EXPECT_EQ(strip(run_command("analyze", path, {}).report),
            strip(run_command("analyze", path, {}).report));
}

}  // namespace
}  // namespace fixpoint::cli
