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
#include <fstream>
#include <mutex>

#include "transcheck/checkers/simulated_checker.h"
#include "transcheck/corpus/source_unit.h"
#include "transcheck/llm/scripted_backend.h"
#include "transcheck/pipeline/experiment.h"
#include "transcheck/pipeline/ledger.h"
#include "transcheck/pipeline/translate.h"
#include "transcheck/support/text.h"
#include "transcheck/support/workdir.h"

namespace transcheck::pipeline {
namespace {

namespace fs = std::filesystem;
using checkers::CheckStage;
using corpus::MakeSourceUnit;

const char kAdd[] = "int add(int a, int b) { return a + b; }\n";
const char kGood[] = "```rust\npub fn add(a: i32, b: i32) -> i32 { a.wrapping_add(b) }\n```";
const char kBroken[] = "```rust\nCOMPILE_ERROR\n```";

// Remembers every conversation it was asked to complete.
class RecordingBackend : public llm::ChatBackend {
 public:
  explicit RecordingBackend(const std::string& script_json, std::string label = "mock") {
    llm::BackendConfig config;
    config.model_id = std::move(label);
    inner_ = std::make_unique<llm::ScriptedBackend>(
        config, llm::ParseScript(nlohmann::json::parse(script_json)));
  }
  llm::Completion Complete(const llm::Conversation& conversation,
                           const llm::RequestContext& context) override {
    {
      std::lock_guard lock(mu_);
      seen_.push_back(conversation);
    }
    return inner_->Complete(conversation, context);
  }
  const llm::BackendConfig& config() const override { return inner_->config(); }
  std::vector<llm::Conversation> seen() const {
    std::lock_guard lock(mu_);
    return seen_;
  }

 private:
  std::unique_ptr<llm::ScriptedBackend> inner_;
  mutable std::mutex mu_;
  std::vector<llm::Conversation> seen_;
};

checkers::SimulatedChecker Checker() {
  return checkers::SimulatedChecker(checkers::ParseSimulatedRules(nlohmann::json::parse(R"([
      {"match": "COMPILE_ERROR", "stage": "Compiled", "result": "fail",
       "diagnostics": ["error[E0425]: cannot find value `b` in this scope"]},
      {"match": "LINT_ME", "stage": "Linted", "result": "fail",
       "diagnostics": ["warning: this could be simplified"]},
      {"match": "a + 2", "stage": "Fuzzed", "result": "counterexample",
       "counterexample": {"function": "add", "failure_kind": "value-mismatch",
                          "inputs": [{"name": "a", "value": "0"}, {"name": "b", "value": "0"}],
                          "c_output": [{"name": "return", "value": "0"}],
                          "rust_output": [{"name": "return", "value": "2"}]}},
      {"match": "BROKEN_HARNESS", "stage": "Fuzzed", "result": "infra:FuzzingSetup"}])")));
}

TranslateOptions Quiet() {
  TranslateOptions o;
  o.keep_failed_workdirs = false;
  o.record_timing = false;
  return o;
}

RunRecord Identity(int run = 0) {
  RunRecord r;
  r.source_id = "add.c";
  r.perturbation_id = "identity";
  r.model_id = "mock";
  r.run_index = run;
  return r;
}

std::string Response(const std::string& text) { return nlohmann::json(text).dump(); }

TEST(TranslateTest, CorrectFirstTime) {
  RecordingBackend backend("[{\"response\": " + Response(kGood) + "}]");
  auto checker = Checker();
  RunRecord r = TranslateWithFeedback(MakeSourceUnit("add.c", kAdd), backend, checker,
                                      Quiet(), Identity());
  EXPECT_TRUE(r.success);
  ASSERT_EQ(r.attempts.size(), 1u);
  EXPECT_TRUE(r.attempts[0].fenced);
  EXPECT_EQ(r.attempts[0].reports.size(), 3u);
  for (CheckStage s : checkers::kAllStages) EXPECT_EQ(r.first_iteration.at(s), 1);
  EXPECT_FALSE(r.error_category);
  r.Validate(5);
  ASSERT_EQ(backend.seen().size(), 1u);
  EXPECT_TRUE(StartsWith(backend.seen()[0].messages()[0].content,
                         "Translate the following C code to Rust."));
}

TEST(TranslateTest, CompileFailureThenSuccess) {
  RecordingBackend backend("[{\"response\": " + Response(kBroken) + "}, {\"response\": " +
                           Response(kGood) + "}]");
  auto checker = Checker();
  RunRecord r = TranslateWithFeedback(MakeSourceUnit("add.c", kAdd), backend, checker,
                                      Quiet(), Identity());
  EXPECT_TRUE(r.success);
  ASSERT_EQ(r.attempts.size(), 2u);
  std::map<CheckStage, int> expected = {
      {CheckStage::kCompiled, 2}, {CheckStage::kLinted, 2}, {CheckStage::kFuzzed, 2}};
  EXPECT_EQ(r.first_iteration, expected);
  ASSERT_EQ(r.attempts[0].reports.size(), 1u);
  EXPECT_EQ(r.attempts[0].failed_stage(), CheckStage::kCompiled);
  // One conversation: prompt, answer, feedback.
  const auto seen = backend.seen();
  const auto& second = seen.at(1).messages();
  ASSERT_EQ(second.size(), 3u);
  EXPECT_TRUE(StartsWith(second[2].content, "You made the following mistakes: "));
  EXPECT_NE(second[2].content.find("error[E0425]"), std::string::npos);
}

TEST(TranslateTest, GivesUpAfterFiveAttempts) {
  RecordingBackend backend(R"({"mode": "keyed", "entries": [{"response": )" +
                           Response(kBroken) + "}]}");
  auto checker = Checker();
  RunRecord r = TranslateWithFeedback(MakeSourceUnit("add.c", kAdd), backend, checker,
                                      Quiet(), Identity());
  EXPECT_FALSE(r.success);
  EXPECT_EQ(r.attempts.size(), 5u);
  EXPECT_TRUE(r.first_iteration.empty());
  EXPECT_FALSE(r.error_category);
  EXPECT_EQ(backend.seen().size(), 5u);
  EXPECT_EQ(backend.seen().back().messages().size(), 9u);

  TranslateOptions once = Quiet();
  once.max_iterations = 1;
  RunRecord single = TranslateWithFeedback(MakeSourceUnit("add.c", kAdd), backend, checker,
                                           once, Identity());
  EXPECT_EQ(single.attempts.size(), 1u);
}

TEST(TranslateTest, LintAndCounterexampleFeedback) {
  std::string lint = "```rust\n// LINT_ME\npub fn add(a: i32, b: i32) -> i32 { a + b }\n```";
  std::string wrong = "```rust\npub fn add(a: i32, b: i32) -> i32 { a + 2 }\n```";
  RecordingBackend backend("[{\"response\": " + Response(lint) + "}, {\"response\": " +
                           Response(wrong) + "}, {\"response\": " + Response(kGood) + "}]");
  auto checker = Checker();
  RunRecord r = TranslateWithFeedback(MakeSourceUnit("add.c", kAdd), backend, checker,
                                      Quiet(), Identity());
  EXPECT_TRUE(r.success);
  std::map<CheckStage, int> expected = {
      {CheckStage::kCompiled, 1}, {CheckStage::kLinted, 2}, {CheckStage::kFuzzed, 3}};
  EXPECT_EQ(r.first_iteration, expected);
  auto turns = backend.seen().back().messages();
  ASSERT_EQ(turns.size(), 5u);
  EXPECT_NE(turns[2].content.find("warning: this could be simplified"), std::string::npos);
  EXPECT_NE(turns[4].content.find("Counterexample in function `add`"), std::string::npos);
  EXPECT_NE(turns[4].content.find("Rust output: return = 2"), std::string::npos);
}

TEST(TranslateTest, InfrastructureFailuresStopTheRun) {
  auto checker = Checker();
  RecordingBackend refusing(R"([{"error": "content_filter"}])");
  RunRecord llm = TranslateWithFeedback(MakeSourceUnit("add.c", kAdd), refusing, checker,
                                        Quiet(), Identity());
  EXPECT_FALSE(llm.success);
  EXPECT_EQ(llm.error_category, ErrorCategory::kLlmApi);
  EXPECT_TRUE(llm.attempts.empty());

  RecordingBackend harness("[{\"response\": " +
                           Response("```rust\n// BROKEN_HARNESS\npub fn add() {}\n```") + "}]");
  RunRecord setup = TranslateWithFeedback(MakeSourceUnit("add.c", kAdd), harness, checker,
                                          Quiet(), Identity());
  EXPECT_EQ(setup.error_category, ErrorCategory::kFuzzingSetup);
  EXPECT_EQ(setup.attempts.size(), 1u);
  EXPECT_EQ(harness.seen().size(), 1u);

  RecordingBackend fine("[{\"response\": " + Response(kGood) + "}]");
  RunRecord none = TranslateWithFeedback(MakeSourceUnit("empty.c", "static int hidden;\n"),
                                         fine, checker, Quiet(), Identity());
  EXPECT_FALSE(none.fuzzable);
  EXPECT_EQ(none.error_category, ErrorCategory::kFuzzingSetup);
  EXPECT_EQ(none.first_iteration.size(), 2u);
}

TEST(TranslateTest, ClassifiesFailures) {
  FailureContext link;
  link.report = checkers::MakeInfraError(CheckStage::kFuzzed, ErrorCategory::kFuzzingSetup,
                                         {"undefined reference to `add`"});
  EXPECT_EQ(ClassifyError(link), ErrorCategory::kFuzzingSetup);
  FailureContext filter;
  filter.llm_error = llm::LlmErrorKind::kContentFilter;
  EXPECT_EQ(ClassifyError(filter), ErrorCategory::kLlmApi);
  FailureContext crash;
  crash.exception = "std::bad_alloc";
  EXPECT_EQ(ClassifyError(crash), ErrorCategory::kTranslationSystem);
  FailureContext timeout;
  timeout.timed_out = true;
  EXPECT_EQ(ClassifyError(timeout), ErrorCategory::kTranslationSystem);
  FailureContext fuzzer;
  fuzzer.report = checkers::MakeFailure(CheckStage::kFuzzed, {"fuzzer died"});
  EXPECT_EQ(ClassifyError(fuzzer), ErrorCategory::kFuzzingException);
}

TEST(TranslateTest, TokenTotalsAreTheSumOfCalls) {
  RecordingBackend backend(
      "[{\"response\": " + Response(kBroken) +
      R"(, "usage": {"prompt": 120, "completion": 40, "reasoning": 7}},)"
      "{\"response\": " + Response(kGood) +
      R"(, "usage": {"prompt": 300, "completion": 55}}])");
  auto checker = Checker();
  RunRecord r = TranslateWithFeedback(MakeSourceUnit("add.c", kAdd), backend, checker,
                                      Quiet(), Identity());
  llm::TokenUsage total = r.TotalUsage();
  EXPECT_EQ(total.prompt, 420);
  EXPECT_EQ(total.completion, 95);
  EXPECT_EQ(total.reasoning, 7);
}

TEST(RecordTest, JsonRoundTripAndInvariants) {
  RecordingBackend backend("[{\"response\": " + Response(kBroken) + "}, {\"response\": " +
                           Response(kGood) + "}]");
  auto checker = Checker();
  RunRecord r = TranslateWithFeedback(MakeSourceUnit("add.c", kAdd), backend, checker,
                                      Quiet(), Identity());
  r.perturbation_seed = 99;
  std::string line = ToJson(r).dump();
  RunRecord back = RunRecordFromJson(nlohmann::json::parse(line));
  EXPECT_EQ(ToJson(back).dump(), line);
  EXPECT_EQ(back.perturbation_seed, 99u);
  EXPECT_DOUBLE_EQ(MeanIterations({r, back}), 2.0);

  RunRecord bad = r;
  bad.success = false;
  EXPECT_THROW(bad.Validate(5), std::logic_error);
  EXPECT_THROW(r.Validate(1), std::logic_error);
  bad = r;
  bad.first_iteration[CheckStage::kCompiled] = 3;
  EXPECT_THROW(bad.Validate(5), std::logic_error);
  EXPECT_THROW(RunRecordFromJson(nlohmann::json::parse(R"({"type": "run"})")),
               std::invalid_argument);
}

// ---- ledger and experiments ---------------------------------------------

class ExperimentTest : public ::testing::Test {
 protected:
  void SetUp() override {
    work_ = std::make_unique<Workdir>("pipeline-test");
    units_ = {MakeSourceUnit("add.c", kAdd),
              MakeSourceUnit("sub.c", "int sub(int a, int b) { return a - b; }\n")};
  }

  // Runs 0 and 2 of sub.c fail once before succeeding.
  static std::string Script() {
    std::string sub = "```rust\npub fn sub(a: i32, b: i32) -> i32 { a.wrapping_sub(b) }\n```";
    return R"({"mode": "keyed", "entries": [)"
           R"({"match": "int add", "response": )" + Response(kGood) + "},"
           R"({"match": "int sub", "response": )" + Response(sub) + "},"
           R"({"match": "int sub", "runs": [0, 2], "response": )" + Response(kBroken) + "},"
           R"({"match": "int sub", "runs": [0, 2], "turn": 1, "response": )" + Response(sub) +
           "}]}";
  }

  ExperimentConfig Config(const fs::path& ledger, RecordingBackend* backend,
                          checkers::Checker* checker) {
    ExperimentConfig c;
    c.corpus = units_;
    c.backends = {backend};
    c.checker = checker;
    c.runs_per_cell = 3;
    c.translate = Quiet();
    c.ledger_path = ledger;
    c.config_hash = "abc123";
    return c;
  }

  std::unique_ptr<Workdir> work_;
  std::vector<corpus::SourceUnit> units_;
};

TEST_F(ExperimentTest, OneRecordPerCell) {
  RecordingBackend backend(Script());
  auto checker = Checker();
  ExperimentSummary s = RunExperiment(Config(work_->path() / "l.jsonl", &backend, &checker));
  EXPECT_EQ(s.total, 6u);
  EXPECT_EQ(s.appended, 6u);
  EXPECT_EQ(s.succeeded, 6u);
  LedgerContents contents = ReadLedger(work_->path() / "l.jsonl");
  ASSERT_TRUE(contents.metadata);
  EXPECT_EQ(contents.metadata->config_hash, "abc123");
  EXPECT_EQ(contents.metadata->checker, "simulated");
  ASSERT_EQ(contents.records.size(), 6u);
  EXPECT_EQ(contents.records[3].source_id, "sub.c");
  EXPECT_EQ(contents.records[3].attempts.size(), 2u);
  EXPECT_EQ(contents.records[4].attempts.size(), 1u);
  for (const RunRecord& r : contents.records) EXPECT_FALSE(r.perturbation_seed);
}

TEST_F(ExperimentTest, ResumeIsByteIdentical) {
  auto checker = Checker();
  RecordingBackend a(Script()), b(Script());
  fs::path whole = work_->path() / "whole.jsonl";
  fs::path split = work_->path() / "split.jsonl";
  RunExperiment(Config(whole, &a, &checker));

  ExperimentConfig first = Config(split, &b, &checker);
  first.max_new_runs = 4;
  EXPECT_EQ(RunExperiment(first).appended, 4u);
  ExperimentSummary rest = RunExperiment(Config(split, &b, &checker));
  EXPECT_EQ(rest.skipped, 4u);
  EXPECT_EQ(rest.appended, 2u);
  EXPECT_EQ(ReadFile(whole), ReadFile(split));

  EXPECT_EQ(RunExperiment(Config(split, &b, &checker)).appended, 0u);
  EXPECT_EQ(ReadFile(whole), ReadFile(split));
}

TEST_F(ExperimentTest, ParallelRunsMatchSequentialOnes) {
  auto checker = Checker();
  RecordingBackend a(Script()), b(Script());
  ExperimentConfig seq = Config(work_->path() / "seq.jsonl", &a, &checker);
  ExperimentConfig par = Config(work_->path() / "par.jsonl", &b, &checker);
  par.parallelism = 3;
  RunExperiment(seq);
  RunExperiment(par);
  EXPECT_EQ(ReadFile(seq.ledger_path), ReadFile(par.ledger_path));
}

TEST_F(ExperimentTest, TruncatedLastLineIsRedone) {
  auto checker = Checker();
  RecordingBackend a(Script()), b(Script());
  fs::path whole = work_->path() / "whole.jsonl";
  fs::path torn = work_->path() / "torn.jsonl";
  RunExperiment(Config(whole, &a, &checker));
  std::string text = *ReadFile(whole);
  // Cut the last record in half.
  std::size_t last = text.rfind('\n', text.size() - 2);
  std::ofstream(torn, std::ios::binary) << text.substr(0, last + 40);
  ExperimentSummary s = RunExperiment(Config(torn, &b, &checker));
  EXPECT_EQ(s.appended, 1u);
  ASSERT_EQ(s.warnings.size(), 1u);
  EXPECT_EQ(ReadFile(whole), ReadFile(torn));
}

TEST_F(ExperimentTest, RejectsMismatchesAndBadConfigs) {
  auto checker = Checker();
  RecordingBackend backend(Script());
  fs::path path = work_->path() / "l.jsonl";
  RunExperiment(Config(path, &backend, &checker));
  ExperimentConfig other = Config(path, &backend, &checker);
  other.config_hash = "different";
  EXPECT_THROW(RunExperiment(other), LedgerError);

  ExperimentConfig model = Config(work_->path() / "m.jsonl", &backend, &checker);
  model.perturbations = {"identity", "comment-roundtrip"};
  EXPECT_THROW(RunExperiment(model), std::invalid_argument);
  ExperimentConfig unknown = Config(work_->path() / "u.jsonl", &backend, &checker);
  unknown.perturbations = {"no-such-thing"};
  EXPECT_THROW(RunExperiment(unknown), std::invalid_argument);

  std::ofstream(work_->path() / "dup.jsonl")
      << ToJson(MakeMetadata(Config(path, &backend, &checker))).dump() << "\n"
      << ToJson(Identity()).dump() << "\n"
      << ToJson(Identity()).dump() << "\n";
  EXPECT_THROW(ReadLedger(work_->path() / "dup.jsonl"), LedgerError);
}

TEST_F(ExperimentTest, StochasticPerturbationsGetPerRunSeeds) {
  auto checker = Checker();
  RecordingBackend backend(Script());
  ExperimentConfig c = Config(work_->path() / "s.jsonl", &backend, &checker);
  units_[0] = MakeSourceUnit("add.c", "// adds numbers\nint add(int a, int b) { return a + b; }\n");
  c.corpus = units_;
  c.perturbations = {"identity", "comment-typos", "loop-swap"};
  c.runs_per_cell = 2;
  RunExperiment(c);
  auto records = ReadLedger(c.ledger_path).records;
  ASSERT_EQ(records.size(), 12u);
  std::set<std::uint64_t> seeds;
  for (const RunRecord& r : records) {
    if (r.perturbation_id == "comment-typos") {
      ASSERT_TRUE(r.perturbation_seed);
      seeds.insert(*r.perturbation_seed);
    } else {
      EXPECT_FALSE(r.perturbation_seed);
    }
  }
  EXPECT_EQ(seeds.size(), 4u);
  // The model saw the perturbed comment.
  bool typo_seen = false;
  for (const auto& conv : backend.seen()) {
    std::string_view first = conv.FirstUserMessage();
    if (first.find("int add") != std::string_view::npos &&
        first.find("adds numbers") == std::string_view::npos) {
      typo_seen = true;
    }
  }
  EXPECT_TRUE(typo_seen);
}

}  // namespace
}  // namespace transcheck::pipeline
