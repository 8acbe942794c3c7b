// Copyright 2026 The transcheck Authors
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

#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include <json.hpp>

#include "transcheck/cli/commands.h"
#include "transcheck/cli/config.h"
#include "transcheck/perturb/perturbation.h"
#include "transcheck/support/text.h"
#include "transcheck/support/workdir.h"

namespace transcheck::cli {
namespace {

namespace fs = std::filesystem;

const fs::path kFixtures = TC_FIXTURE_DIR;

struct Outcome {
  int code = 0;
  std::string out;
  std::string err;
};

Outcome Cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  Outcome o;
  o.code = RunCli(args, out, err);
  o.out = out.str();
  o.err = err.str();
  return o;
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    work_ = std::make_unique<Workdir>("cli-test");
    demo_ = work_->path() / "demo";
    fs::copy(kFixtures / "demo", demo_, fs::copy_options::recursive);
    conf_ = (demo_ / "demo.conf").string();
  }

  std::string Slurp(const fs::path& p) { return ReadFile(p).value_or("<missing>"); }

  std::unique_ptr<Workdir> work_;
  fs::path demo_;
  std::string conf_;
};

TEST_F(CliTest, ConfigResolvesPathsAgainstTheConfigFile) {
  CliConfig c = LoadCliConfig(fs::path(conf_));
  EXPECT_EQ(c.corpus, demo_ / "corpus");
  EXPECT_EQ(c.ledger, demo_ / "out/ledger.jsonl");
  EXPECT_EQ(c.runs, 4);
  EXPECT_EQ(c.k, 2);
  EXPECT_EQ(c.max_iterations, 3);
  EXPECT_EQ(c.checker, CheckerKind::kSimulated);
  ASSERT_EQ(c.models.size(), 2u);
  EXPECT_EQ(c.models[0].label(), "mock-a");
  EXPECT_EQ(c.models[1].script_path, (demo_ / "mock-b.json").string());
  EXPECT_EQ(c.perturbations,
            (std::vector<std::string>{"identity", "signature-change", "condition-duplication"}));
}

TEST(CliConfigDefaults, OutputPathsLiveInTheWorkspace) {
  CliConfig c = LoadCliConfig(std::nullopt, {{"workspace", "/srv/exp"}});
  EXPECT_EQ(c.ledger, fs::path("/srv/exp/ledger.jsonl"));
  EXPECT_EQ(c.reports, fs::path("/srv/exp/reports"));
  EXPECT_EQ(c.runs, 20);
  EXPECT_EQ(c.k, 5);
  EXPECT_EQ(c.max_iterations, 5);
}

TEST_F(CliTest, OverridesWinAndShapeTheHash) {
  CliConfig base = LoadCliConfig(fs::path(conf_));
  CliConfig parallel = LoadCliConfig(fs::path(conf_), {{"parallelism", "4"}});
  CliConfig longer = LoadCliConfig(fs::path(conf_), {{"max_iterations", "5"}});
  EXPECT_EQ(parallel.parallelism, 4);
  EXPECT_EQ(parallel.hash, base.hash);
  EXPECT_EQ(longer.max_iterations, 5);
  EXPECT_NE(longer.hash, base.hash);
}

TEST_F(CliTest, BadSettingsAreConfigErrors) {
  EXPECT_THROW(LoadCliConfig(std::nullopt, {{"colour", "red"}}), ConfigError);
  EXPECT_THROW(LoadCliConfig(std::nullopt, {{"runs", "0"}}), ConfigError);
  EXPECT_THROW(LoadCliConfig(std::nullopt, {{"runs", "3x"}}), ConfigError);
  EXPECT_THROW(LoadCliConfig(std::nullopt, {{"perturbations", "identity, nope"}}),
               ConfigError);
  EXPECT_THROW(LoadCliConfig(std::nullopt, {{"checkers.no_such", "1"}}), ConfigError);
  EXPECT_THROW(LoadCliConfig(std::nullopt, {{"model.x.kind", "scripted"}}), ConfigError);
  EXPECT_THROW(LoadCliConfig(std::nullopt, {{"perturbation_model", "ghost"}}), ConfigError);
  EXPECT_THROW(LoadCliConfig(fs::path(demo_ / "missing.conf")), ConfigError);
}

TEST(PerturbationSpecs, GroupsExpandToRegistryIds) {
  std::vector<std::string> all = ExpandPerturbations("all");
  EXPECT_EQ(all, perturb::RegistryIds());
  for (const std::string& id : ExpandPerturbations("deterministic")) {
    EXPECT_EQ(perturb::FindPerturbation(id)->mode, perturb::Mode::kDeterministic) << id;
  }
  for (const std::string& id : ExpandPerturbations("offline")) {
    EXPECT_FALSE(perturb::FindPerturbation(id)->needs_model) << id;
  }
  EXPECT_EQ(ExpandPerturbations("de-morgan, identity, de-morgan"),
            (std::vector<std::string>{"de-morgan", "identity"}));
}

TEST_F(CliTest, UsageErrorsExitTwoAndHelpExitsZero) {
  EXPECT_EQ(Cli({}).code, kExitConfig);
  EXPECT_EQ(Cli({"frobnicate"}).code, kExitConfig);
  EXPECT_EQ(Cli({"translate", "--bogus"}).code, kExitConfig);
  Outcome help = Cli({"--help"});
  EXPECT_EQ(help.code, kExitOk);
  EXPECT_NE(help.out.find("evaluate"), std::string::npos);
}

TEST_F(CliTest, StatsOnMissingCorpusNamesThePath) {
  Outcome o = Cli({"stats", "--corpus", (demo_ / "nowhere").string()});
  EXPECT_EQ(o.code, kExitConfig);
  EXPECT_NE(o.err.find((demo_ / "nowhere").string()), std::string::npos) << o.err;
}

TEST_F(CliTest, StatsWritesReports) {
  Outcome o = Cli({"stats", "-c", conf_});
  ASSERT_EQ(o.code, kExitOk) << o.err;
  EXPECT_TRUE(o.out.empty());
  fs::path reports = demo_ / "out/reports";
  EXPECT_TRUE(StartsWith(Slurp(reports / "corpus_stats.csv"),
                         "scope,metric,count,min,avg,stddev,max\nall,LOC,3,"));
  std::string files = Slurp(reports / "corpus_files.csv");
  EXPECT_NE(files.find("\nclamp.c,default,5,5,"), std::string::npos) << files;
  auto j = nlohmann::json::parse(Slurp(reports / "corpus_stats.json"));
  EXPECT_EQ(j["files"].size(), 3u);
}

TEST_F(CliTest, TranslateResumesAndIsDeterministic) {
  Outcome first = Cli({"translate", "-c", conf_});
  ASSERT_EQ(first.code, kExitOk) << first.err;
  EXPECT_NE(first.err.find("[1/72] add.c identity mock-a run 0: success"), std::string::npos)
      << first.err;
  EXPECT_NE(first.err.find("72 new runs"), std::string::npos);
  std::string ledger = Slurp(demo_ / "out/ledger.jsonl");

  Outcome again = Cli({"translate", "-c", conf_});
  ASSERT_EQ(again.code, kExitOk) << again.err;
  EXPECT_NE(again.err.find("0 new runs"), std::string::npos) << again.err;
  EXPECT_EQ(Slurp(demo_ / "out/ledger.jsonl"), ledger);

  Outcome parallel =
      Cli({"translate", "-c", conf_, "-j", "3", "--ledger", (demo_ / "par.jsonl").string()});
  ASSERT_EQ(parallel.code, kExitOk) << parallel.err;
  EXPECT_EQ(Slurp(demo_ / "par.jsonl"), ledger);
}

TEST_F(CliTest, TranslateRefusesALedgerFromAnotherConfig) {
  ASSERT_EQ(Cli({"translate", "-c", conf_, "-n", "1"}).code, kExitOk);
  Outcome o = Cli({"translate", "-c", conf_, "-n", "1", "--max-iterations", "5"});
  EXPECT_EQ(o.code, kExitConfig);
  EXPECT_NE(o.err.find("ledger error"), std::string::npos) << o.err;
}

TEST_F(CliTest, EvaluateWritesEveryReport) {
  ASSERT_EQ(Cli({"translate", "-c", conf_}).code, kExitOk);
  Outcome o = Cli({"evaluate", "-c", conf_, "--samples", "50", "--set-size", "2"});
  ASSERT_EQ(o.code, kExitOk) << o.err;
  fs::path reports = demo_ / "out/reports";
  // mock-a: add passes, clamp passes on the second try, is_leap never.
  EXPECT_EQ(Slurp(reports / "pass_table__mock-a.csv"),
            "Check,<=1,<=2,<=3\n"
            "Compilation success,0.6667,1.0000,1.0000\n"
            "Final result,0.3333,0.6667,0.6667\n");
  EXPECT_EQ(Slurp(reports / "solved_sets.csv"),
            "region,files\nmock-a,1\nmock-a+mock-b,1\nmock-b,1\nunion,3\nunsolved,0\n");
  for (const char* name :
       {"aggregates.csv", "error_distribution.csv", "failure_histogram__mock-b.csv",
        "failure_histogram__mock-b.plot.json", "token_curve__mock-a.csv",
        "token_curve__mock-a.plot.json", "aggregate_samples__mock-a.json"}) {
    EXPECT_TRUE(fs::exists(reports / name)) << name;
  }
}

TEST_F(CliTest, EvaluateSelectsReportsByFlag) {
  ASSERT_EQ(Cli({"translate", "-c", conf_}).code, kExitOk);
  fs::path out = demo_ / "only";
  Outcome o = Cli({"evaluate", "-c", conf_, "--errors", "-o", out.string()});
  ASSERT_EQ(o.code, kExitOk) << o.err;
  std::vector<std::string> names;
  for (const auto& e : fs::directory_iterator(out)) names.push_back(e.path().filename());
  EXPECT_EQ(names, std::vector<std::string>{"error_distribution.csv"});
}

TEST_F(CliTest, EvaluateReportsCoverageGaps) {
  ASSERT_EQ(Cli({"translate", "-c", conf_, "-n", "1"}).code, kExitOk);
  Outcome o = Cli({"evaluate", "-c", conf_, "--robust", "--set", "runs=1"});
  EXPECT_EQ(o.code, kExitCoverage);
  EXPECT_NE(o.err.find("coverage gaps"), std::string::npos) << o.err;
  EXPECT_EQ(Cli({"evaluate", "-c", conf_, "--ledger", (demo_ / "none.jsonl").string()}).code,
            kExitConfig);
}

TEST_F(CliTest, PerturbWritesCopiesAndManifest) {
  fs::path out = demo_ / "perturbed";
  Outcome o = Cli({"perturb", "-c", conf_, "-p", "constant-insertion,identifier-typos", "--seed", "7",
                   "--skip-self-check", "-o", out.string()});
  ASSERT_EQ(o.code, kExitOk) << o.err;
  EXPECT_TRUE(fs::exists(out / "corpus__constant-insertion__det/is_leap.c"));
  EXPECT_TRUE(fs::exists(out / "corpus__identifier-typos__7/clamp.c"));
  auto manifest = nlohmann::json::parse(Slurp(out / "manifest.json"));
  ASSERT_EQ(manifest["entries"].size(), 6u);
  for (const auto& e : manifest["entries"]) {
    EXPECT_FALSE(e.contains("self_check"));
    if (e["perturbation"] == "identifier-typos") {
      EXPECT_EQ(e["seed"], 7);
    }
  }
  std::string leap = Slurp(out / "corpus__constant-insertion__det/is_leap.c");
  EXPECT_NE(leap, Slurp(demo_ / "corpus/is_leap.c"));
}

TEST_F(CliTest, PerturbNeedsAModelForModelPerturbations) {
  Outcome o = Cli({"perturb", "-c", conf_, "-p", "comment-insertion", "--skip-self-check"});
  EXPECT_EQ(o.code, kExitConfig);
  EXPECT_NE(o.err.find("perturbation_model"), std::string::npos) << o.err;
}

TEST_F(CliTest, PerturbFailsWhenTheSelfCheckCannotRun) {
  Outcome o = Cli({"perturb", "-c", conf_, "-p", "signature-change", "--set",
                   "checkers.clang=/nonexistent/clang", "-o", (demo_ / "p").string()});
  EXPECT_EQ(o.code, kExitSelfCheck);
  EXPECT_NE(o.err.find("infrastructure"), std::string::npos) << o.err;
}

}  // namespace
}  // namespace transcheck::cli
