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

#ifndef TRANSCHECK_PIPELINE_EXPERIMENT_H_
#define TRANSCHECK_PIPELINE_EXPERIMENT_H_

#include <cstddef>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "transcheck/checkers/checker.h"
#include "transcheck/corpus/source_unit.h"
#include "transcheck/llm/chat.h"
#include "transcheck/pipeline/ledger.h"
#include "transcheck/pipeline/translate.h"

namespace transcheck::pipeline {

struct ExperimentConfig {
  std::vector<corpus::SourceUnit> corpus;
  std::vector<std::string> perturbations = {"identity"};
  // Translation models; labels must be unique.
  std::vector<llm::ChatBackend*> backends;
  // Used by perturbations that need a model.
  llm::ChatBackend* perturbation_model = nullptr;
  checkers::Checker* checker = nullptr;
  int runs_per_cell = 20;
  int parallelism = 1;
  TranslateOptions translate;
  std::filesystem::path ledger_path;
  std::string config_hash;
  // Stop after this many new records (simulates an interruption).
  std::optional<std::size_t> max_new_runs;
  // Called after each appended record, from the committing thread.
  std::function<void(const RunRecord&, std::size_t done, std::size_t total)> on_record;

  void Validate() const;  // throws std::invalid_argument
};

struct ExperimentSummary {
  std::size_t total = 0;     // cells × runs
  std::size_t skipped = 0;   // already in the ledger
  std::size_t appended = 0;
  std::size_t succeeded = 0; // among appended
  std::vector<std::string> warnings;
};

ExperimentMetadata MakeMetadata(const ExperimentConfig& config);

// One record per (file, perturbation, model, run index), appended in that
// nesting order. Existing keys are skipped, so a rerun resumes where an
// interrupted one stopped.
ExperimentSummary RunExperiment(const ExperimentConfig& config);

}  // namespace transcheck::pipeline

#endif  // TRANSCHECK_PIPELINE_EXPERIMENT_H_
