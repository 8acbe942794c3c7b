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

#include "transcheck/cli/commands.h"

#include <algorithm>
#include <map>
#include <memory>
#include <set>

#include <CLI11.hpp>
#include <fmt/core.h>
#include <json.hpp>

#include "transcheck/checkers/simulated_checker.h"
#include "transcheck/checkers/toolchain_checker.h"
#include "transcheck/cli/config.h"
#include "transcheck/corpus/corpus.h"
#include "transcheck/evalkit/metrics.h"
#include "transcheck/evalkit/report.h"
#include "transcheck/perturb/perturbation.h"
#include "transcheck/perturb/self_check.h"
#include "transcheck/pipeline/experiment.h"
#include "transcheck/pipeline/ledger.h"
#include "transcheck/support/text.h"
#include "transcheck/support/workdir.h"

namespace transcheck::cli {

namespace fs = std::filesystem;

namespace {

CliConfig Load(const CommonOptions& common,
               std::map<std::string, std::string> extra = {}) {
  std::map<std::string, std::string> overrides;
  for (const std::string& item : common.overrides) {
    std::size_t eq = item.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw ConfigError("--set expects key=value, got '" + item + "'");
    }
    overrides[std::string(Trim(item.substr(0, eq)))] =
        std::string(Trim(item.substr(eq + 1)));
  }
  for (auto& [key, value] : extra) overrides[key] = std::move(value);
  return LoadCliConfig(common.config, overrides);
}

corpus::CorpusIndex LoadCorpusFor(const CliConfig& config, std::ostream& err) {
  if (config.corpus.empty()) throw ConfigError("no corpus configured");
  std::optional<corpus::GroupMap> groups;
  if (config.groups) groups = corpus::LoadGroupManifest(*config.groups);
  corpus::CorpusIndex index = corpus::LoadCorpus(config.corpus, groups);
  for (const std::string& w : index.warnings) err << "warning: " << w << "\n";
  return index;
}

std::unique_ptr<corpus::Tokenizer> MakeTokenizer(const std::string& spec) {
  if (spec == "approx") return std::make_unique<corpus::ApproxTokenizer>();
  constexpr std::string_view kPrefix = "command:";
  if (StartsWith(spec, kPrefix)) {
    std::vector<std::string> argv;
    for (const std::string& part : Split(Trim(spec.substr(kPrefix.size())), ' ')) {
      if (!part.empty()) argv.push_back(part);
    }
    if (argv.empty()) throw ConfigError("tokenizer command is empty");
    return std::make_unique<corpus::CommandTokenizer>(std::move(argv));
  }
  throw ConfigError("tokenizer: expected approx or command: <argv>, got '" + spec + "'");
}

std::unique_ptr<checkers::Checker> MakeChecker(const CliConfig& config) {
  if (config.checker == CheckerKind::kSimulated) {
    if (!config.simulated_rules) return std::make_unique<checkers::SimulatedChecker>();
    return std::make_unique<checkers::SimulatedChecker>(
        checkers::SimulatedChecker::Load(*config.simulated_rules));
  }
  return std::make_unique<checkers::ToolchainChecker>(config.toolchain, config.fuzz);
}

std::string FileLabel(std::string_view text) {
  std::string out;
  for (char c : text) {
    bool keep = std::isalnum(static_cast<unsigned char>(c)) || c == '.' || c == '-' ||
                c == '_';
    out += keep ? c : '_';
  }
  return out;
}

void WriteJson(const fs::path& dir, const std::string& name,
               const nlohmann::ordered_json& j) {
  evalkit::WriteReport(dir, name, j.dump(2) + "\n");
}

}  // namespace

int Stats(const StatsOptions& options, std::ostream& err) {
  CliConfig config = Load(options.common);
  corpus::CorpusIndex index = LoadCorpusFor(config, err);
  std::unique_ptr<corpus::Tokenizer> tokenizer = MakeTokenizer(config.tokenizer);
  corpus::CorpusReport report = corpus::BuildCorpusReport(index, *tokenizer, options.group);
  for (const std::string& w : report.warnings) err << "warning: " << w << "\n";
  fs::path out = options.out.value_or(config.reports);
  evalkit::WriteReport(out, "corpus_stats.csv", corpus::CorpusReportCsv(report));
  evalkit::WriteReport(out, "corpus_files.csv", corpus::CorpusFilesCsv(report));
  WriteJson(out, "corpus_stats.json", corpus::CorpusReportJson(report));
  err << fmt::format("{} files summarized into {}\n", report.files.size(), out.string());
  return kExitOk;
}

int Perturb(const PerturbOptions& options, std::ostream& err) {
  CliConfig config = Load(options.common);
  std::vector<const perturb::PerturbationSpec*> specs;
  bool needs_model = false;
  for (const std::string& id : config.perturbations) {
    specs.push_back(perturb::FindPerturbation(id));
    needs_model = needs_model || specs.back()->needs_model;
  }
  std::unique_ptr<llm::ChatBackend> model;
  if (needs_model) {
    if (!config.perturbation_model) {
      throw ConfigError("the selected perturbations need a model; set perturbation_model");
    }
    model = llm::MakeBackend(*config.FindModel(*config.perturbation_model));
  }
  corpus::CorpusIndex index = LoadCorpusFor(config, err);
  fs::path out = options.out.value_or(config.reports / "perturbed");
  std::string corpus_name = fs::path(config.corpus).filename().string();
  if (corpus_name.empty()) corpus_name = fs::path(config.corpus).parent_path().filename().string();

  nlohmann::ordered_json manifest;
  manifest["corpus"] = config.corpus.string();
  manifest["entries"] = nlohmann::ordered_json::array();
  std::size_t failures = 0;
  std::size_t infra = 0;
  for (const perturb::PerturbationSpec* spec : specs) {
    bool stochastic = spec->mode == perturb::Mode::kStochastic;
    std::string seed_label = !stochastic      ? "det"
                             : options.seed ? std::to_string(*options.seed)
                                            : "default";
    fs::path dir = out / (corpus_name + "__" + spec->id + "__" + seed_label);
    for (const corpus::SourceUnit& unit : index.units) {
      std::uint64_t seed = options.seed.value_or(perturb::DefaultSeed(unit.id, spec->id, 0));
      nlohmann::ordered_json entry;
      entry["source"] = unit.id;
      entry["perturbation"] = spec->id;
      entry["seed"] = stochastic ? nlohmann::ordered_json(seed) : nlohmann::ordered_json(nullptr);
      perturb::PerturbedUnit perturbed;
      try {
        perturbed = perturb::Apply(*spec, unit, seed, model.get());
      } catch (const perturb::PerturbationError& e) {
        err << fmt::format("{} {}: {} ({})\n", spec->id, unit.id, e.what(),
                           ToString(e.category()));
        entry["error"] = e.what();
        entry["error_category"] = ToString(e.category());
        manifest["entries"].push_back(std::move(entry));
        continue;
      } catch (const std::invalid_argument& e) {
        err << fmt::format("{} {}: {}\n", spec->id, unit.id, e.what());
        entry["error"] = e.what();
        manifest["entries"].push_back(std::move(entry));
        continue;
      }
      fs::path file = dir / unit.id;
      WriteFileAtomic(file, perturbed.text);
      entry["output"] = fs::relative(file, out).generic_string();
      entry["changed"] = perturbed.changed(unit);
      entry["notes"] = perturbed.notes;
      entry["renames"] = perturbed.renames;
      entry["param_orders"] = perturbed.param_orders;
      if (!options.skip_self_check) {
        Workdir work("selfcheck", config.workdir.value_or(fs::path()));
        perturb::SelfCheckResult check = perturb::SelfCheck(
            unit, perturbed, config.self_check_budget, work.path(), config.toolchain,
            config.fuzz);
        entry["self_check"] = perturb::ToJson(check);
        if (check.verdict == perturb::Verdict::kInfraError) {
          ++infra;
        } else if (check.verdict != perturb::Verdict::kEquivalent) {
          ++failures;
        }
        err << fmt::format("{} {}: {}{}\n", spec->id, unit.id, ToString(check.verdict),
                           check.note.empty() ? "" : " (" + check.note + ")");
      }
      manifest["entries"].push_back(std::move(entry));
    }
  }
  WriteJson(out, "manifest.json", manifest);
  if (failures > 0 || infra > 0) {
    err << fmt::format("self-check: {} semantic failure(s), {} infrastructure error(s)\n",
                       failures, infra);
    return kExitSelfCheck;
  }
  return kExitOk;
}

int Translate(const TranslateCommandOptions& options, std::ostream& err) {
  CliConfig config = Load(options.common);
  if (config.models.empty()) throw ConfigError("no models configured");
  corpus::CorpusIndex index = LoadCorpusFor(config, err);

  std::vector<std::unique_ptr<llm::ChatBackend>> owned;
  pipeline::ExperimentConfig experiment;
  for (const llm::BackendConfig& m : config.models) {
    owned.push_back(llm::MakeBackend(m));
    experiment.backends.push_back(owned.back().get());
  }
  if (config.perturbation_model) {
    owned.push_back(llm::MakeBackend(*config.FindModel(*config.perturbation_model)));
    experiment.perturbation_model = owned.back().get();
  }
  std::unique_ptr<checkers::Checker> checker = MakeChecker(config);
  experiment.corpus = index.units;
  experiment.perturbations = config.perturbations;
  experiment.checker = checker.get();
  experiment.runs_per_cell = config.runs;
  experiment.parallelism = config.parallelism;
  experiment.translate.max_iterations = config.max_iterations;
  experiment.translate.feedback_cap = config.feedback_cap;
  experiment.translate.wall_clock_cap = config.wall_clock_cap;
  experiment.translate.keep_failed_workdirs = config.keep_failed_workdirs;
  experiment.translate.record_timing = config.record_timing;
  if (config.workdir) experiment.translate.workdir = *config.workdir;
  experiment.ledger_path = config.ledger;
  experiment.config_hash = config.hash;
  experiment.on_record = [&err](const pipeline::RunRecord& r, std::size_t done,
                                std::size_t total) {
    std::string outcome = r.success ? fmt::format("success after {} iteration(s)",
                                                  r.attempts.size())
                          : r.error_category
                              ? std::string(ToString(*r.error_category))
                              : "failed";
    err << fmt::format("[{}/{}] {} {} {} run {}: {}\n", done, total, r.source_id,
                       r.perturbation_id, r.model_id, r.run_index, outcome);
  };
  try {
    experiment.Validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  pipeline::ExperimentSummary summary = pipeline::RunExperiment(experiment);
  for (const std::string& w : summary.warnings) err << "warning: " << w << "\n";
  err << fmt::format("{} new runs ({} succeeded), {} already in {}\n", summary.appended,
                     summary.succeeded, summary.skipped, config.ledger.string());
  return kExitOk;
}

int Evaluate(const EvaluateOptions& options, std::ostream& err) {
  CliConfig config = Load(options.common);
  std::vector<fs::path> paths = options.ledgers;
  if (paths.empty()) paths.push_back(config.ledger);

  std::vector<pipeline::RunRecord> records;
  std::set<pipeline::RunKey> keys;
  int max_iterations = config.max_iterations;
  for (const fs::path& path : paths) {
    if (!fs::exists(path)) throw ConfigError("ledger not found: " + path.string());
    pipeline::LedgerContents contents = pipeline::ReadLedger(path);
    for (const std::string& w : contents.warnings) err << "warning: " << w << "\n";
    if (contents.metadata) {
      max_iterations = std::max(max_iterations, contents.metadata->max_iterations);
    }
    for (pipeline::RunRecord& r : contents.records) {
      if (!keys.insert(r.key()).second) {
        throw ConfigError("run " + r.key().ToString() + " appears in more than one ledger");
      }
      records.push_back(std::move(r));
    }
  }

  std::vector<std::string> models;
  for (const pipeline::RunRecord& r : records) {
    if (std::find(models.begin(), models.end(), r.model_id) == models.end()) {
      models.push_back(r.model_id);
    }
  }
  std::sort(models.begin(), models.end());
  if (options.model) {
    if (std::find(models.begin(), models.end(), *options.model) == models.end()) {
      throw ConfigError("model '" + *options.model + "' has no runs in the ledger");
    }
    models = {*options.model};
  }
  std::optional<std::string> perturbation;
  if (options.perturbation != "all") perturbation = options.perturbation;

  bool any = options.pass_table || options.robust || options.augmented ||
             options.token_curve || options.failure_hist || options.errors ||
             options.solved_sets;
  auto wanted = [any](bool flag) { return flag || !any; };
  fs::path out = options.out.value_or(config.reports);
  std::vector<int> caps;
  for (int i = 1; i <= max_iterations; ++i) caps.push_back(i);
  std::vector<std::string> gaps;

  if (wanted(options.pass_table)) {
    for (const std::string& m : models) {
      evalkit::RecordFilter filter{m, perturbation, std::nullopt};
      evalkit::PassTable table = evalkit::PassTableByIteration(
          records, filter, {checkers::CheckStage::kCompiled, checkers::CheckStage::kFuzzed},
          caps, config.k);
      evalkit::WriteReport(out, "pass_table__" + FileLabel(m) + ".csv",
                           evalkit::PassTableCsv(table));
      WriteJson(out, "pass_table__" + FileLabel(m) + ".json", evalkit::PassTableJson(table));
      for (const auto& row : table.cells) {
        for (const evalkit::PassCell& cell : row) {
          for (const std::string& g : cell.gaps) {
            if (std::find(gaps.begin(), gaps.end(), m + ": " + g) == gaps.end()) {
              gaps.push_back(m + ": " + g);
            }
          }
        }
      }
    }
  }

  if (wanted(options.robust) || wanted(options.augmented)) {
    std::vector<std::string> perturbations;
    for (const std::string& id : perturb::RegistryIds()) {
      bool present = std::any_of(records.begin(), records.end(),
                                 [&id](const auto& r) { return r.perturbation_id == id; });
      if (present) perturbations.push_back(id);
    }
    std::vector<evalkit::AggregateRow> rows;
    for (const std::string& m : models) {
      try {
        evalkit::PassMatrix matrix =
            evalkit::BuildPassMatrix(records, m, perturbations, config.k);
        std::vector<std::size_t> columns(perturbations.size());
        for (std::size_t i = 0; i < columns.size(); ++i) columns[i] = i;
        evalkit::AggregateRow row;
        row.model = m;
        row.set_label = "all";
        row.robust = evalkit::Aggregate(matrix, columns, evalkit::AggregateKind::kMin);
        row.mean = evalkit::Aggregate(matrix, columns, evalkit::AggregateKind::kMean);
        row.augmented = evalkit::Aggregate(matrix, columns, evalkit::AggregateKind::kMax);
        rows.push_back(row);
        if (options.samples > 0) {
          std::vector<evalkit::SampledAggregate> samples = evalkit::SampleAggregates(
              matrix, options.set_size, options.samples, options.seed);
          WriteJson(out, "aggregate_samples__" + FileLabel(m) + ".json",
                    evalkit::PlotJson(evalkit::SampledAggregateSeries(samples)));
        }
      } catch (const evalkit::CoverageError& e) {
        for (const std::string& g : e.gaps()) gaps.push_back(m + ": " + g);
      }
    }
    evalkit::WriteReport(out, "aggregates.csv", evalkit::AggregatesCsv(rows));
  }

  if (wanted(options.token_curve)) {
    std::vector<int> ks = {1};
    if (config.k != 1) ks.push_back(config.k);
    for (const std::string& m : models) {
      evalkit::TokenCurve curve = evalkit::TokenCostCurve(
          records, evalkit::RecordFilter{m, perturbation, std::nullopt}, ks, caps);
      if (curve.runs_without_usage > 0) {
        err << fmt::format("warning: {}: {} run(s) without token usage left out\n", m,
                           curve.runs_without_usage);
      }
      evalkit::WriteReport(out, "token_curve__" + FileLabel(m) + ".csv",
                           evalkit::TokenCurveCsv(curve));
      WriteJson(out, "token_curve__" + FileLabel(m) + ".plot.json",
                evalkit::PlotJson(evalkit::TokenCurveSeries(curve)));
    }
  }

  if (wanted(options.failure_hist)) {
    for (const std::string& m : models) {
      std::vector<pipeline::RunRecord> subset;
      evalkit::RecordFilter filter{m, perturbation, std::nullopt};
      for (const pipeline::RunRecord& r : records) {
        if (filter.Matches(r)) subset.push_back(r);
      }
      evalkit::FailureHistogram h = evalkit::BuildFailureHistogram(subset, max_iterations);
      evalkit::WriteReport(out, "failure_histogram__" + FileLabel(m) + ".csv",
                           evalkit::FailureHistogramCsv(h));
      WriteJson(out, "failure_histogram__" + FileLabel(m) + ".plot.json",
                evalkit::PlotJson(evalkit::FailureHistogramSeries(h)));
    }
  }

  if (wanted(options.errors)) {
    std::vector<pipeline::RunRecord> subset;
    for (const pipeline::RunRecord& r : records) {
      if (std::find(models.begin(), models.end(), r.model_id) != models.end()) {
        subset.push_back(r);
      }
    }
    evalkit::WriteReport(out, "error_distribution.csv",
                         evalkit::ErrorDistributionCsv(evalkit::ErrorDistribution(subset)));
  }

  if (wanted(options.solved_sets)) {
    std::map<std::string, std::vector<pipeline::RunRecord>> per_model;
    for (const std::string& m : models) per_model[m];
    evalkit::RecordFilter filter{std::nullopt, perturbation, std::nullopt};
    for (const pipeline::RunRecord& r : records) {
      if (per_model.count(r.model_id) > 0 && filter.Matches(r)) {
        per_model[r.model_id].push_back(r);
      }
    }
    try {
      evalkit::SolvedSets sets = evalkit::ComputeSolvedSets(per_model);
      evalkit::WriteReport(out, "solved_sets.csv", evalkit::SolvedSetsCsv(sets));
      WriteJson(out, "solved_sets.json", evalkit::SolvedSetsJson(sets));
    } catch (const std::invalid_argument& e) {
      gaps.push_back(std::string("solved sets: ") + e.what());
    }
  }

  if (!gaps.empty()) {
    err << "coverage gaps:\n";
    for (const std::string& g : gaps) err << "  " << g << "\n";
    return kExitCoverage;
  }
  err << fmt::format("{} runs from {} ledger(s) evaluated into {}\n", records.size(),
                     paths.size(), out.string());
  return kExitOk;
}

int RunCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Robustness benchmarking of C-to-Rust translation", "transcheck"};
  app.require_subcommand(1);

  CommonOptions common;
  auto add_common = [&common](CLI::App* sub) {
    sub->add_option("-c,--config", common.config, "Experiment config file");
    sub->add_option("--set", common.overrides, "Override a config setting (key=value)");
  };
  std::map<std::string, std::string> flags;
  auto add_setting = [&flags](CLI::App* sub, const std::string& name, const std::string& key,
                              const std::string& help) {
    sub->add_option_function<std::string>(
        name, [&flags, key](const std::string& v) { flags[key] = v; }, help);
  };

  StatsOptions stats;
  CLI::App* stats_cmd = app.add_subcommand("stats", "Corpus size and complexity report");
  add_common(stats_cmd);
  add_setting(stats_cmd, "--corpus", "corpus", "Corpus directory");
  add_setting(stats_cmd, "--groups", "groups", "Group manifest (id = group lines)");
  add_setting(stats_cmd, "--tokenizer", "tokenizer", "approx or command: <argv>");
  stats_cmd->add_option("--group", stats.group, "Only summarize this group");
  stats_cmd->add_option("-o,--out", stats.out, "Report directory");

  PerturbOptions perturb;
  CLI::App* perturb_cmd =
      app.add_subcommand("perturb", "Write perturbed copies of the corpus");
  add_common(perturb_cmd);
  add_setting(perturb_cmd, "--corpus", "corpus", "Corpus directory");
  add_setting(perturb_cmd, "-p,--perturbations", "perturbations",
              "Comma list of ids, or all / deterministic / offline");
  add_setting(perturb_cmd, "--budget", "self_check_budget",
              "Self-check fuzzing seconds per file");
  perturb_cmd->add_option("--seed", perturb.seed, "Seed for stochastic perturbations");
  perturb_cmd->add_option("-o,--out", perturb.out, "Output directory");
  perturb_cmd->add_flag("--skip-self-check", perturb.skip_self_check,
                        "Do not verify semantic equivalence");

  TranslateCommandOptions translate;
  CLI::App* translate_cmd =
      app.add_subcommand("translate", "Run the translation experiment into a ledger");
  add_common(translate_cmd);
  add_setting(translate_cmd, "--max-iterations", "max_iterations",
              "Feedback iterations per run");
  add_setting(translate_cmd, "-n,--runs", "runs", "Runs per (file, perturbation, model)");
  add_setting(translate_cmd, "-p,--perturbations", "perturbations",
              "Comma list of ids, or all / deterministic / offline");
  add_setting(translate_cmd, "--ledger", "ledger", "Ledger file");
  add_setting(translate_cmd, "-j,--parallelism", "parallelism", "Worker threads");

  EvaluateOptions evaluate;
  CLI::App* evaluate_cmd = app.add_subcommand("evaluate", "Compute reports from ledgers");
  add_common(evaluate_cmd);
  add_setting(evaluate_cmd, "-k", "k", "k of pass@k");
  evaluate_cmd->add_option("--ledger", evaluate.ledgers, "Ledger files (repeatable)");
  evaluate_cmd->add_option("-o,--out", evaluate.out, "Report directory");
  evaluate_cmd->add_option("--model", evaluate.model, "Only this model");
  evaluate_cmd->add_option("--perturbation", evaluate.perturbation,
                           "Perturbation for per-model tables, or all")
      ->capture_default_str();
  evaluate_cmd->add_flag("--pass-table", evaluate.pass_table, "pass@k by iteration cap");
  evaluate_cmd->add_flag("--robust", evaluate.robust, "Min over perturbations");
  evaluate_cmd->add_flag("--augmented", evaluate.augmented, "Max over perturbations");
  evaluate_cmd->add_flag("--token-curve", evaluate.token_curve, "Token cost curve");
  evaluate_cmd->add_flag("--failure-hist", evaluate.failure_hist,
                         "Failures by stage and iteration");
  evaluate_cmd->add_flag("--errors", evaluate.errors, "Error category distribution");
  evaluate_cmd->add_flag("--solved-sets", evaluate.solved_sets,
                         "Files solved per model and their overlaps");
  evaluate_cmd->add_option("--samples", evaluate.samples,
                           "Sampled perturbation sets for aggregate histograms");
  evaluate_cmd->add_option("--set-size", evaluate.set_size, "Size of each sampled set")
      ->capture_default_str();
  evaluate_cmd->add_option("--seed", evaluate.seed, "Sampling seed")->capture_default_str();

  std::vector<std::string> storage = args;
  storage.insert(storage.begin(), "transcheck");
  std::vector<const char*> argv;
  for (const std::string& s : storage) argv.push_back(s.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }
  for (const auto& [key, value] : flags) common.overrides.push_back(key + "=" + value);

  try {
    if (*stats_cmd) {
      stats.common = common;
      return Stats(stats, err);
    }
    if (*perturb_cmd) {
      perturb.common = common;
      return Perturb(perturb, err);
    }
    if (*translate_cmd) {
      translate.common = common;
      return Translate(translate, err);
    }
    evaluate.common = common;
    return Evaluate(evaluate, err);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
  } catch (const corpus::CorpusError& e) {
    err << "corpus error: " << e.what() << "\n";
  } catch (const pipeline::LedgerError& e) {
    err << "ledger error: " << e.what() << "\n";
  } catch (const evalkit::CoverageError& e) {
    err << "coverage gaps: " << Join(e.gaps(), "; ") << "\n";
    return kExitCoverage;
  } catch (const std::invalid_argument& e) {
    err << "invalid setting: " << e.what() << "\n";
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return kExitConfig;
}

}  // namespace transcheck::cli
