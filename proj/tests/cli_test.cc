// Copyright 2026 The WDP Accountant Authors
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

#include "cli.h"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/strings/str_split.h"
#include "gtest/gtest.h"
#include "json.hpp"

namespace wdp::cli {
namespace {

using Json = nlohmann::json;

struct Outcome {
  int code = 0;
  std::string out;
  std::string err;
};

Outcome Call(const std::string& line, std::optional<std::string> env_seed = std::nullopt) {
  std::vector<std::string> args = absl::StrSplit(line, ' ');
  std::ostringstream out;
  std::ostringstream err;
  Outcome o;
  o.code = Run(args, out, err, env_seed);
  o.out = out.str();
  o.err = err.str();
  return o;
}

Json CallJson(const std::string& line) {
  Outcome o = Call(line);
  EXPECT_EQ(o.code, 0) << o.err;
  return Json::parse(o.out);
}

std::filesystem::path TempPath(const std::string& name) {
  return std::filesystem::path(::testing::TempDir()) / name;
}

TEST(CliTest, BasicMechanismExamples) {
  EXPECT_EQ(CallJson("mech --kind gaussian --sigma 1 --sens 1 --mu 1 --framework wdp")
                ["results"]["epsilon"],
            0.5);
  EXPECT_EQ(CallJson("mech --kind gaussian --sigma 1 --framework dp")["results"]["epsilon"],
            "unbounded");
  EXPECT_EQ(CallJson("mech --kind laplace --lambda 1 --framework rdp --alpha 1")
                ["results"]["epsilon"],
            0.3678794412);
}

TEST(CliTest, ModuleExamples) {
  EXPECT_EQ(CallJson("convert --from rdp --alpha 2 --eps 2 --sens 1 --mu 1")["results"]
                    ["epsilon"],
            1.0);
  EXPECT_EQ(CallJson("compose --sequential 0.3,0.5")["results"]["epsilon"], 0.8);

  const std::filesystem::path state = TempPath("cli_state.json");
  std::ofstream(state) << R"({"mu": 1, "beta": 1, "delta": 1e-5, "losses": [0.5, 1.25], "steps": 2})";
  const Json j =
      CallJson("account --losses-file " + state.string() + " --delta 1e-10 --beta 1");
  EXPECT_NEAR(j["results"]["epsilon"].get<double>(), 1.75 + 10 * std::log(10.0), 1e-8);
  EXPECT_EQ(j["config"]["delta"], 1e-10);
}

TEST(CliTest, EnvelopeIsSchemaStable) {
  for (const std::string line :
       {"mech --kind laplace --lambda 1", "mech --kind laplace --lambda 1 --sweep-order 1:2:1 --format json",
        "convert --from dp --eps 1", "compose --parallel 1,2", "account --steps 1 --distance 1",
        "ot --p [[0,1]] --q [[1,1]]", "ot --audit --sigma 2 --samples 100",
        "simulate --steps 1 --examples 5"}) {
    const Json j = CallJson(line);
    std::vector<std::string> keys;
    for (const auto& [key, value] : j.items()) keys.push_back(key);
    EXPECT_EQ(keys, (std::vector<std::string>{"command", "config", "results", "warnings"}))
        << line;
    EXPECT_EQ(j["command"], line.substr(0, line.find(' ')));
    EXPECT_TRUE(j["config"].is_object());
    EXPECT_TRUE(j["results"].is_object());
    EXPECT_TRUE(j["warnings"].is_array());
  }
}

TEST(CliTest, ValidationFailuresExitTwo) {
  for (const std::string line :
       {"mech --kind gaussian", "mech --kind cauchy --sigma 1", "mech --kind gaussian --sigma 0",
        "mech --kind gaussian --sigma 1 --framework rdp",
        "mech --kind gaussian --sigma 1 --framework dp --sweep-order 1:2:1",
        "mech --kind gaussian --sigma 1 --sweep-order 3:1:1", "convert --from dp",
        "convert --from rdp --eps 1", "convert --from wdp --eps 1 --to rdp",
        "convert --from wdp --eps 1 --lipschitz 0", "compose", "compose --sequential 1,x",
        "compose --sequential 1 --parallel 1", "compose --group 0 --eps 1",
        "compose --advanced 0.1", "account", "account --steps 2",
        "account --losses-file /nonexistent/state.json", "ot --p [[0,1]]",
        "ot --p [[0,1]] --q [[0,0.5]]", "ot --p [[0,1]] --q [[1,1]] --dual --mu 2",
        "ot --p [[0,1]] --q [[1,1]] --map warp", "simulate --steps 0",
        "simulate --clip-quantile 1.5", "simulate --policy median", "--format xml mech",
        "nosuch"}) {
    Outcome o = Call(line);
    EXPECT_EQ(o.code, kExitValidation) << line << "\n" << o.out << o.err;
    EXPECT_FALSE(o.err.empty()) << line;
  }
}

TEST(CliTest, ExitCodeMapping) {
  EXPECT_EQ(ExitCodeFor(absl::OkStatus()), kExitOk);
  EXPECT_EQ(ExitCodeFor(absl::InvalidArgumentError("x")), kExitValidation);
  EXPECT_EQ(ExitCodeFor(absl::FailedPreconditionError("x")), kExitValidation);
  EXPECT_EQ(ExitCodeFor(absl::NotFoundError("x")), kExitValidation);
  EXPECT_EQ(ExitCodeFor(absl::InternalError("x")), kExitNumeric);
  EXPECT_EQ(ExitCodeFor(absl::OutOfRangeError("x")), kExitNumeric);
}

TEST(CliTest, HelpExitsZero) {
  Outcome o = Call("--help");
  EXPECT_EQ(o.code, 0);
  EXPECT_NE(o.out.find("simulate"), std::string::npos);
}

TEST(CliTest, SeedFlagAndEnvironmentOverride) {
  const std::string line = "ot --audit --sigma 1 --samples 500";
  const Json base = CallJson(line);
  EXPECT_EQ(base["config"]["seed"], kDefaultSeed);
  const Json flagged = CallJson(line + " --seed 11");
  EXPECT_EQ(flagged["config"]["seed"], 11);
  EXPECT_NE(flagged["results"]["empirical"], base["results"]["empirical"]);

  Outcome env = Call(line + " --seed 11", "12");
  ASSERT_EQ(env.code, 0);
  const Json overridden = Json::parse(env.out);
  EXPECT_EQ(overridden["config"]["seed"], 12);
  EXPECT_EQ(Call(line + " --seed 12").out, env.out);

  EXPECT_EQ(Call(line, "abc").code, kExitValidation);
}

TEST(CliTest, SweepDefaultsToCsv) {
  Outcome o = Call("mech --kind gaussian --sigma 2 --sweep-order 1:3:1");
  ASSERT_EQ(o.code, 0);
  EXPECT_EQ(o.out, "mu,epsilon\n1,0.25\n2,0.3535533906\n3,0.396850263\n");
}

TEST(CliTest, GaussianRdpSweepSkipsOrderOne) {
  Outcome o = Call("mech --kind gaussian --sigma 1 --framework rdp --sweep-order 1:3:1");
  ASSERT_EQ(o.code, 0);
  EXPECT_EQ(o.out, "alpha,epsilon\n2,1\n3,1.5\n");
  EXPECT_NE(o.err.find("skipped alpha=1"), std::string::npos);
}

TEST(CliTest, ConvertWarnsAboutDefaultLipschitz) {
  EXPECT_EQ(CallJson("convert --from wdp --eps 1")["warnings"].size(), 1u);
  EXPECT_EQ(CallJson("convert --from wdp --eps 1 --lipschitz 1")["warnings"].size(), 0u);
  EXPECT_EQ(CallJson("convert --from dp --eps 1")["warnings"].size(), 0u);
}

TEST(CliTest, AccountSaveResumes) {
  const std::filesystem::path first = TempPath("cli_first.json");
  const std::filesystem::path second = TempPath("cli_second.json");
  const Json a = CallJson("account --steps 3 --distance 1 --q 0.2 --save " + first.string());
  const Json b = CallJson("account --losses-file " + first.string() +
                          " --steps 2 --distance 1 --q 0.2 --save " + second.string());
  const Json all = CallJson("account --steps 5 --distance 1 --q 0.2");
  EXPECT_EQ(a["results"]["steps"], 3);
  EXPECT_EQ(b["results"]["steps"], 5);
  EXPECT_EQ(b["results"]["epsilon"], all["results"]["epsilon"]);
  // The order of stored losses cannot change.
  EXPECT_EQ(Call("account --losses-file " + first.string() + " --mu 2").code,
            kExitValidation);
}

TEST(CliTest, AccountTargetEpsilonReportsDelta) {
  const Json j = CallJson("account --steps 2 --distance 0 --sigma 0.1 --epsilon 10");
  const double total = j["results"]["total_loss"];
  EXPECT_NEAR(j["results"]["delta_at_target"].get<double>(), std::exp(total - 10), 1e-12);
  EXPECT_EQ(j["results"]["vacuous"], false);
}

TEST(CliTest, SimulateWritesCsvAndSidecar) {
  const std::filesystem::path csv = TempPath("curve.csv");
  Outcome o = Call("simulate --steps 5 --examples 20 --clip-quantile 0.5 --format csv --out " +
                   csv.string());
  ASSERT_EQ(o.code, 0) << o.err;
  std::ifstream in(csv);
  std::ostringstream body;
  body << in.rdbuf();
  EXPECT_EQ(body.str(), o.out);
  EXPECT_EQ(o.out.substr(0, o.out.find('\n')), "step,epsilon_wdp,epsilon_rdp_baseline");

  std::ifstream meta_in(TempPath("curve.json"));
  ASSERT_TRUE(meta_in);
  const Json meta = Json::parse(meta_in);
  EXPECT_EQ(meta["seed"], kDefaultSeed);
  EXPECT_EQ(meta["clip_quantile"], 0.5);
  EXPECT_FALSE(meta["clip_threshold"].is_null());
  for (const char* key : {"sigma", "policy", "q", "mu", "beta", "delta"}) {
    EXPECT_TRUE(meta.contains(key)) << key;
  }
}

TEST(CliTest, SimulateThreadsDoNotChangeOutput) {
  EXPECT_EQ(Call("simulate --steps 8 --examples 60 --format csv").out,
            Call("simulate --steps 8 --examples 60 --format csv --threads 3").out);
}

TEST(CliTest, OtModes) {
  const Json d = CallJson("ot --p [[0,0.5],[2,0.5]] --q [[1,1]] --mu 2 --method simplex");
  EXPECT_EQ(d["results"]["distance"], 1.0);
  const Json dual = CallJson("ot --p [[0,0.5],[2,0.5]] --q [[1,1]] --dual");
  EXPECT_EQ(dual["results"]["primal"], 1.0);
  EXPECT_EQ(dual["results"]["dual"], 1.0);
  const Json push = CallJson("ot --p [[0,0.5],[2,0.5]] --q [[1,1]] --map const:4");
  EXPECT_EQ(push["results"]["after"], 0.0);
  EXPECT_EQ(push["results"]["non_expansive"], true);
  EXPECT_TRUE(push["warnings"].empty());
}

TEST(CliTest, AuditReportsBothNumbers) {
  const Json j = CallJson("ot --audit --sigma 1 --sens 2 --samples 50000");
  EXPECT_NEAR(j["results"]["empirical"].get<double>(), 2.0, 0.04);
  EXPECT_EQ(j["results"]["closed_form"], 1.0);
  EXPECT_EQ(j["results"]["empirical_exceeds_closed_form"], true);
  EXPECT_EQ(j["warnings"].size(), 1u);
}

}  // namespace
}  // namespace wdp::cli
