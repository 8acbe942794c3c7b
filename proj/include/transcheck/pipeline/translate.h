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

#ifndef TRANSCHECK_PIPELINE_TRANSLATE_H_
#define TRANSCHECK_PIPELINE_TRANSLATE_H_

#include <chrono>
#include <filesystem>
#include <optional>
#include <string>

#include "transcheck/checkers/checker.h"
#include "transcheck/corpus/source_unit.h"
#include "transcheck/llm/chat.h"
#include "transcheck/llm/prompts.h"
#include "transcheck/pipeline/records.h"

namespace transcheck::pipeline {

struct TranslateOptions {
  int max_iterations = 5;
  std::size_t feedback_cap = llm::kDefaultFeedbackCap;
  // Checked between steps; external tools carry their own timeouts.
  std::chrono::seconds wall_clock_cap{30 * 60};
  // Parent of the per-run directories; the system temp dir when empty.
  std::filesystem::path workdir;
  bool keep_failed_workdirs = true;
  // Off for byte-reproducible ledgers: wall times are written as 0.
  bool record_timing = true;

  void Validate() const;  // throws std::invalid_argument
};

// What went wrong when a run stopped for reasons other than the model's code.
struct FailureContext {
  std::optional<checkers::CheckReport> report;
  std::optional<llm::LlmErrorKind> llm_error;
  bool timed_out = false;
  std::string exception;
};

ErrorCategory ClassifyError(const FailureContext& failure);

// One run of the generate-and-check loop. The model sees `unit.text`; the
// fuzzing stage compares against the same unit. `record` carries the run's
// identity fields in and is filled in place.
RunRecord TranslateWithFeedback(const corpus::SourceUnit& unit,
                                llm::ChatBackend& backend,
                                checkers::Checker& checker,
                                const TranslateOptions& options,
                                RunRecord record);

}  // namespace transcheck::pipeline

#endif  // TRANSCHECK_PIPELINE_TRANSLATE_H_
