// Copyright 2026 The modalbench Authors
// SPDX-License-Identifier: Apache-2.0
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "modalbench/cli/cli.h"

namespace modalbench {
namespace {

struct Result {
  int rc;
  std::string out, err;
};

Result Invoke(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int rc = RunCli(args, out, err);
  return {rc, out.str(), err.str()};
}

std::string TempPath(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("modalbench_cli_" + name)).string();
}

TEST(CliTest, ProveExample) {
  const auto r = Invoke({"prove", "p|q; ~p |- q", "--mode", "local", "--frames", "t"});
  EXPECT_EQ(r.rc, 0);
  EXPECT_EQ(r.out, "valid\n");
  const auto nec = Invoke({"prove", "p |- []p", "--mode", "global", "--frames", "t", "--oracle"});
  EXPECT_EQ(nec.rc, 0);
  EXPECT_EQ(nec.out, "valid\noracle: valid\n");
}

TEST(CliTest, ErrorsAreOneJsonLine) {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"prove", "p |- ("}, {"prove", "p |- q", "--frob"}, {}, {"eval", "--dataset", "/nonexistent", "--out", "x",
                                                                   "--mock", "uniform"}}) {
    const auto r = Invoke(args);
    EXPECT_NE(r.rc, 0);
    ASSERT_EQ(std::count(r.err.begin(), r.err.end(), '\n'), 1) << r.err;
    const auto j = nlohmann::json::parse(r.err);
    EXPECT_TRUE(j.contains("error") && j.contains("message")) << r.err;
  }
  EXPECT_EQ(nlohmann::json::parse(Invoke({"prove", "p |- ("}).err)["error"], "syntax");
  EXPECT_EQ(nlohmann::json::parse(Invoke({"eval", "--dataset", "/nonexistent", "--out", "x", "--mock", "uniform"}).err)["error"],
            "missing_file");
}

TEST(CliTest, HelpListsDefaults) {
  const auto r = Invoke({"generate", "--help"});
  EXPECT_EQ(r.rc, 0);
  for (const char* s : {"--families", "[main24]", "--n", "[1000]", "--seed", "[42]", "--lexicon", "[natural]"}) {
    EXPECT_NE(r.out.find(s), std::string::npos) << s;
  }
}

TEST(CliTest, AuditSummary) {
  const auto r = Invoke({"audit-catalog"});
  EXPECT_EQ(r.rc, 0);
  EXPECT_NE(r.out.find("34 rows, 33 match, 1 divergent distribution-possibility-theorem"), std::string::npos);
}

TEST(CliTest, GenerateEvalAnalyzeAreDeterministic) {
  const auto data = TempPath("data.jsonl");
  ASSERT_EQ(Invoke({"generate", "--families", "main24,distribution", "--n", "3", "--out", data}).rc, 0);
  std::ifstream meta(data + ".meta.json");
  EXPECT_EQ(nlohmann::json::parse(meta)["seed"], 42);
  const auto a = TempPath("a.jsonl"), b = TempPath("b.jsonl");
  std::filesystem::remove(a);
  std::filesystem::remove(b);
  ASSERT_EQ(Invoke({"eval", "--dataset", data, "--out", a, "--mock", "oracle"}).rc, 0);
  ASSERT_EQ(Invoke({"eval", "--dataset", data, "--out", b, "--mock", "oracle"}).rc, 0);
  auto slurp = [](const std::string& p) {
    std::ifstream in(p);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
  };
  EXPECT_EQ(slurp(a), slurp(b));
  const auto dir = TempPath("reports");
  std::filesystem::remove_all(dir);
  EXPECT_EQ(Invoke({"analyze", "--results", a, "--out", dir}).rc, 0);
  EXPECT_TRUE(std::filesystem::exists(std::filesystem::path(dir) / "accuracy_contrasts.csv"));
  EXPECT_EQ(Invoke({"eval", "--dataset", data, "--out", a, "--mock", "uniform", "--offline", data}).rc, 1);
}

}  // namespace
}  // namespace modalbench
