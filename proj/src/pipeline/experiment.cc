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

#include "transcheck/pipeline/experiment.h"

#include <atomic>
#include <condition_variable>
#include <map>
#include <mutex>
#include <set>
#include <stdexcept>
#include <thread>

#include "transcheck/perturb/perturbation.h"

namespace transcheck::pipeline {

void ExperimentConfig::Validate() const {
  if (corpus.empty()) throw std::invalid_argument("corpus is empty");
  if (perturbations.empty()) throw std::invalid_argument("no perturbations selected");
  if (backends.empty()) throw std::invalid_argument("no translation model configured");
  if (checker == nullptr) throw std::invalid_argument("no checker configured");
  if (runs_per_cell < 1) throw std::invalid_argument("runs_per_cell must be at least 1");
  if (parallelism < 1) throw std::invalid_argument("parallelism must be at least 1");
  if (ledger_path.empty()) throw std::invalid_argument("ledger path is empty");
  translate.Validate();
  std::set<std::string> labels;
  for (const llm::ChatBackend* b : backends) {
    if (b == nullptr) throw std::invalid_argument("null backend");
    if (!labels.insert(b->config().label()).second) {
      throw std::invalid_argument("duplicate model label " + b->config().label());
    }
  }
  std::set<std::string> seen;
  for (const std::string& id : perturbations) {
    const perturb::PerturbationSpec* spec = perturb::FindPerturbation(id);
    if (spec == nullptr) throw std::invalid_argument("unknown perturbation " + id);
    if (!seen.insert(id).second) throw std::invalid_argument("duplicate perturbation " + id);
    if (spec->needs_model && perturbation_model == nullptr) {
      throw std::invalid_argument("perturbation " + id + " needs a model");
    }
  }
}

ExperimentMetadata MakeMetadata(const ExperimentConfig& config) {
  ExperimentMetadata meta;
  meta.config_hash = config.config_hash;
  for (const llm::ChatBackend* b : config.backends) meta.models.push_back(b->config().label());
  meta.perturbations = config.perturbations;
  meta.runs_per_cell = config.runs_per_cell;
  meta.max_iterations = config.translate.max_iterations;
  meta.checker = config.checker->Name();
  meta.versions = config.checker->Versions();
  return meta;
}

namespace {

struct Job {
  const corpus::SourceUnit* unit;
  const perturb::PerturbationSpec* spec;
  llm::ChatBackend* backend;
  int run_index;
};

// Perturbed inputs, shared by every run that uses the same seed.
class PerturbationCache {
 public:
  explicit PerturbationCache(llm::ChatBackend* model) : model_(model) {}

  struct Entry {
    std::optional<corpus::SourceUnit> unit;
    std::optional<std::uint64_t> seed;
    std::optional<ErrorCategory> error;
    std::string detail;
  };

  Entry Get(const Job& job) {
    std::optional<std::uint64_t> seed;
    if (job.spec->mode == perturb::Mode::kStochastic) {
      seed = perturb::DefaultSeed(job.unit->id, job.spec->id, job.run_index);
    }
    std::string key = job.unit->id + "\n" + job.spec->id + "\n" +
                      (seed ? std::to_string(*seed) : std::string("-"));
    {
      std::lock_guard lock(mu_);
      if (auto it = cache_.find(key); it != cache_.end()) return it->second;
    }
    Entry entry;
    entry.seed = seed;
    try {
      perturb::PerturbedUnit p = perturb::Apply(*job.spec, *job.unit, seed.value_or(0),
                                                job.spec->needs_model ? model_ : nullptr);
      entry.unit = perturb::ToSourceUnit(p, *job.unit);
    } catch (const perturb::PerturbationError& e) {
      entry.error = e.category();
      entry.detail = std::string("perturbation failed: ") + e.what();
    } catch (const std::exception& e) {
      entry.error = ErrorCategory::kTranslationSystem;
      entry.detail = std::string("perturbation failed: ") + e.what();
    }
    std::lock_guard lock(mu_);
    return cache_.emplace(key, std::move(entry)).first->second;
  }

 private:
  llm::ChatBackend* model_;
  std::mutex mu_;
  std::map<std::string, Entry> cache_;
};

RunRecord Execute(const Job& job, PerturbationCache& cache, const ExperimentConfig& config) {
  RunRecord record;
  record.source_id = job.unit->id;
  record.perturbation_id = job.spec->id;
  record.model_id = job.backend->config().label();
  record.run_index = job.run_index;
  PerturbationCache::Entry input = cache.Get(job);
  record.perturbation_seed = input.seed;
  if (!input.unit) {
    record.fuzzable = !job.unit->FuzzTargets().empty();
    record.error_category = input.error;
    record.error_detail = input.detail;
    return record;
  }
  RunRecord out = TranslateWithFeedback(*input.unit, *job.backend, *config.checker,
                                        config.translate, record);
  out.perturbation_seed = input.seed;
  return out;
}

}  // namespace

ExperimentSummary RunExperiment(const ExperimentConfig& config) {
  config.Validate();
  Ledger ledger = Ledger::Open(config.ledger_path, MakeMetadata(config));
  ExperimentSummary summary;
  summary.warnings = ledger.warnings();

  std::vector<Job> jobs;
  for (const corpus::SourceUnit& unit : config.corpus) {
    for (const std::string& id : config.perturbations) {
      for (llm::ChatBackend* backend : config.backends) {
        for (int run = 0; run < config.runs_per_cell; ++run) {
          ++summary.total;
          Job job{&unit, perturb::FindPerturbation(id), backend, run};
          if (ledger.Contains(RunKey{unit.id, id, backend->config().label(), run})) {
            ++summary.skipped;
            continue;
          }
          jobs.push_back(job);
        }
      }
    }
  }
  std::size_t limit = jobs.size();
  if (config.max_new_runs) limit = std::min(limit, *config.max_new_runs);
  jobs.resize(limit);

  PerturbationCache cache(config.perturbation_model);
  std::vector<std::optional<RunRecord>> results(jobs.size());
  std::mutex mu;
  std::condition_variable ready;
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) {
      RunRecord r = Execute(jobs[i], cache, config);
      std::lock_guard lock(mu);
      results[i] = std::move(r);
      ready.notify_all();
    }
  };
  std::vector<std::thread> threads;
  int workers = std::min<int>(config.parallelism, static_cast<int>(jobs.size()));
  if (workers > 1) {
    for (int w = 0; w < workers; ++w) threads.emplace_back(worker);
  } else {
    worker();
  }

  // Records are committed in job order.
  std::exception_ptr failure;
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    RunRecord r;
    {
      std::unique_lock lock(mu);
      ready.wait(lock, [&] { return results[i].has_value(); });
      r = std::move(*results[i]);
      results[i].reset();
    }
    try {
      ledger.Append(r);
    } catch (...) {
      failure = std::current_exception();
      next = jobs.size();
      break;
    }
    ++summary.appended;
    if (r.success) ++summary.succeeded;
    if (config.on_record) config.on_record(r, summary.skipped + summary.appended, summary.total);
  }
  for (std::thread& t : threads) t.join();
  if (failure) std::rethrow_exception(failure);
  return summary;
}

}  // namespace transcheck::pipeline
