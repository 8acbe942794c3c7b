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

#include "transcheck/pipeline/translate.h"

#include <stdexcept>

#include "transcheck/support/text.h"
#include "transcheck/support/workdir.h"

namespace transcheck::pipeline {

namespace fs = std::filesystem;
using checkers::CheckReport;
using checkers::CheckStage;
using Clock = std::chrono::steady_clock;

void TranslateOptions::Validate() const {
  if (max_iterations < 1) throw std::invalid_argument("max_iterations must be at least 1");
  if (feedback_cap == 0) throw std::invalid_argument("feedback_cap must be positive");
  if (wall_clock_cap.count() <= 0) {
    throw std::invalid_argument("wall_clock_cap must be positive");
  }
}

ErrorCategory ClassifyError(const FailureContext& failure) {
  if (failure.llm_error) return ErrorCategory::kLlmApi;
  if (failure.report && failure.report->infra_error) return *failure.report->infra_error;
  if (failure.report && failure.report->stage == CheckStage::kFuzzed) {
    return ErrorCategory::kFuzzingException;
  }
  return ErrorCategory::kTranslationSystem;
}

namespace {

double Seconds(Clock::time_point since) {
  return std::chrono::duration<double>(Clock::now() - since).count();
}

std::string DirName(const RunRecord& r) {
  std::string name = r.source_id + "__" + r.perturbation_id + "__" + r.model_id + "__" +
                     std::to_string(r.run_index);
  for (char& c : name) {
    if (c == '/' || c == '\\' || c == ':' || c == ' ') c = '_';
  }
  return name;
}

void Fail(RunRecord& record, const FailureContext& failure, std::string detail) {
  record.success = false;
  record.error_category = ClassifyError(failure);
  record.error_detail = std::move(detail);
}

}  // namespace

RunRecord TranslateWithFeedback(const corpus::SourceUnit& unit, llm::ChatBackend& backend,
                                checkers::Checker& checker,
                                const TranslateOptions& options, RunRecord record) {
  options.Validate();
  const Clock::time_point start = Clock::now();
  record.attempts.clear();
  record.first_iteration.clear();
  record.success = false;
  record.error_category.reset();
  record.error_detail.clear();
  record.fuzzable = !unit.FuzzTargets().empty();

  Workdir dir(DirName(record), options.workdir);
  llm::RequestContext context{record.source_id, record.perturbation_id, record.run_index};
  llm::Conversation conversation;
  auto over_budget = [&] { return Clock::now() - start > options.wall_clock_cap; };

  try {
    conversation.AddUser(llm::BuildTranslationPrompt(unit.text));
    for (int iteration = 1; iteration <= options.max_iterations; ++iteration) {
      const Clock::time_point attempt_start = Clock::now();
      llm::Completion completion;
      try {
        completion = backend.Complete(conversation, context);
      } catch (const llm::LlmError& e) {
        FailureContext failure;
        failure.llm_error = e.kind();
        Fail(record, failure, std::string(llm::ToString(e.kind())) + ": " + e.what());
        break;
      }
      conversation.AddAssistant(completion.text.empty() ? std::string(" ") : completion.text);

      AttemptRecord attempt;
      attempt.iteration = iteration;
      attempt.usage = completion.usage;
      std::vector<std::string> feedback;
      try {
        llm::ExtractedCode code = llm::ExtractCode(completion.text);
        attempt.rust_source = code.source;
        attempt.fenced = code.confidence == llm::CodeConfidence::kFenced;
      } catch (const std::invalid_argument&) {
        attempt.reports.push_back(checkers::MakeFailure(
            CheckStage::kCompiled, {"the response did not contain any code"}));
      }

      fs::path attempt_dir = dir.path() / ("attempt-" + std::to_string(iteration));
      std::optional<FailureContext> infra;
      if (attempt.reports.empty()) {
        for (CheckStage stage : checkers::kAllStages) {
          CheckReport report;
          switch (stage) {
            case CheckStage::kCompiled:
              report = checker.Compile(attempt.rust_source, attempt_dir);
              break;
            case CheckStage::kLinted:
              report = checker.Lint(attempt.rust_source, attempt_dir);
              break;
            case CheckStage::kFuzzed:
              report = checker.Fuzz(unit, attempt.rust_source, attempt_dir);
              break;
          }
          attempt.reports.push_back(report);
          if (report.infra_error) {
            infra = FailureContext{report, std::nullopt, false, ""};
            break;
          }
          if (!report.success) break;
          record.first_iteration.emplace(stage, iteration);
          if (over_budget()) break;
        }
      }
      const CheckReport& last = attempt.reports.back();
      if (!last.success && !last.infra_error) feedback = last.FeedbackItems();
      attempt.wall_time = options.record_timing ? Seconds(attempt_start) : 0;
      bool succeeded = attempt.succeeded();
      record.attempts.push_back(std::move(attempt));

      if (succeeded) {
        record.success = true;
        break;
      }
      if (infra) {
        Fail(record, *infra, Join(infra->report->diagnostics, "\n"));
        break;
      }
      if (over_budget()) {
        FailureContext failure;
        failure.timed_out = true;
        Fail(record, failure, "run exceeded the wall-clock cap");
        break;
      }
      if (iteration < options.max_iterations) {
        if (feedback.empty()) feedback.push_back("the check failed without diagnostics");
        conversation.AddUser(llm::BuildFeedbackPrompt(feedback, options.feedback_cap));
      }
    }
  } catch (const std::exception& e) {
    FailureContext failure;
    failure.exception = e.what();
    Fail(record, failure, std::string("internal error: ") + e.what());
  }

  record.wall_time = options.record_timing ? Seconds(start) : 0;
  if (!record.success && options.keep_failed_workdirs) dir.Retain();
  return record;
}

}  // namespace transcheck::pipeline
