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

#include "transcheck/perturb/perturbation.h"

#include <algorithm>
#include <numeric>
#include <random>

#include "rewrite.h"
#include "transcheck/corpus/c_parser.h"
#include "transcheck/support/text.h"

namespace transcheck::perturb {

namespace {

struct Entry {
  PerturbationSpec spec;
  Outcome (*fn)(const Context&);
};

Outcome IdentityTransform(const Context& ctx) {
  return {ctx.unit.text, {}, {}, {}};
}

Entry Make(std::string id, Level level, Mode mode, bool model,
           std::string description, Outcome (*fn)(const Context&)) {
  PerturbationSpec spec;
  spec.id = std::move(id);
  spec.level = level;
  spec.mode = mode;
  spec.needs_model = model;
  spec.description = std::move(description);
  return {std::move(spec), fn};
}

const std::vector<Entry>& Entries() {
  using L = Level;
  constexpr Mode kDet = Mode::kDeterministic;
  constexpr Mode kRand = Mode::kStochastic;
  static const std::vector<Entry> kEntries = {
      Make("identity", L::kNone, kDet, false, "no change", IdentityTransform),
      Make("comment-roundtrip", L::kI, kRand, true,
           "comments translated to another language and back", CommentRoundTrip),
      Make("comment-typos", L::kI, kRand, false, "typos in comment words",
           CommentTypos),
      Make("comment-removal", L::kI, kDet, false, "all comments removed",
           CommentRemoval),
      Make("comment-insertion", L::kI, kRand, true,
           "model-written comment above each function", CommentInsertion),
      Make("indentation-reformat", L::kI, kDet, false,
           "re-indented by brace depth with tabs", IndentationReformat),
      Make("identifier-typos", L::kII, kRand, false,
           "typos in a random subset of identifiers", IdentifierTypos),
      Make("naming-convention", L::kII, kDet, false,
           "snake_case and camelCase swapped", NamingConvention),
      Make("short-identifiers", L::kII, kDet, false,
           "identifiers replaced by short names", ShortIdentifiers),
      Make("identifier-roundtrip", L::kII, kRand, true,
           "identifiers translated to another language and back",
           IdentifierRoundTrip),
      Make("identifier-improvement", L::kII, kRand, true,
           "identifiers renamed by the model", IdentifierImprovement),
      Make("constant-insertion", L::kIII, kDet, false,
           "literals in function bodies replaced by named macros",
           ConstantInsertion),
      Make("dead-code", L::kIII, kRand, false,
           "unreachable branches and unused locals", DeadCode),
      Make("declaration-insertion", L::kIII, kDet, false,
           "redundant prototypes for included standard headers",
           DeclarationInsertion),
      Make("function-extraction", L::kIV, kRand, true,
           "model extracts code into helper functions", FunctionExtraction),
      Make("signature-change", L::kIV, kDet, false,
           "parameter order reversed at definition and call sites",
           SignatureChange),
      Make("loop-swap", L::kV, kDet, false,
           "for loops become while loops and vice versa", LoopSwap),
      Make("condition-swap", L::kV, kDet, false,
           "if/else branches swapped under a negated condition", ConditionSwap),
      Make("condition-duplication", L::kVI, kDet, false,
           "side-effect-free conditions repeated with &&", ConditionDuplication),
      Make("de-morgan", L::kVI, kDet, false,
           "logical expressions rewritten with De Morgan's laws", DeMorgan),
  };
  return kEntries;
}

}  // namespace

std::string_view ToString(Level level) {
  switch (level) {
    case Level::kNone:
      return "-";
    case Level::kI:
      return "I";
    case Level::kII:
      return "II";
    case Level::kIII:
      return "III";
    case Level::kIV:
      return "IV";
    case Level::kV:
      return "V";
    case Level::kVI:
      return "VI";
  }
  return "?";
}

std::optional<Level> ParseLevel(std::string_view text) {
  for (Level l : {Level::kNone, Level::kI, Level::kII, Level::kIII, Level::kIV,
                  Level::kV, Level::kVI}) {
    if (ToString(l) == text) return l;
  }
  return std::nullopt;
}

std::string_view ToString(Mode mode) {
  return mode == Mode::kDeterministic ? "deterministic" : "stochastic";
}

const std::vector<PerturbationSpec>& Registry() {
  static const std::vector<PerturbationSpec> kSpecs = [] {
    std::vector<PerturbationSpec> specs;
    for (const Entry& e : Entries()) specs.push_back(e.spec);
    return specs;
  }();
  return kSpecs;
}

const PerturbationSpec* FindPerturbation(std::string_view id) {
  for (const PerturbationSpec& spec : Registry()) {
    if (spec.id == id) return &spec;
  }
  return nullptr;
}

std::vector<std::string> RegistryIds() {
  std::vector<std::string> ids;
  for (const PerturbationSpec& spec : Registry()) ids.push_back(spec.id);
  return ids;
}

std::uint64_t DefaultSeed(std::string_view source_id,
                          std::string_view perturbation_id, int run_index) {
  std::uint64_t h = Fnv1a64(source_id);
  h = HashCombine(h, perturbation_id);
  return HashCombine(h, std::to_string(run_index));
}

PerturbedUnit Apply(const PerturbationSpec& spec, const corpus::SourceUnit& unit,
                    std::uint64_t seed, llm::ChatBackend* model) {
  const Entry* entry = nullptr;
  for (const Entry& e : Entries()) {
    if (e.spec.id == spec.id) entry = &e;
  }
  if (entry == nullptr) {
    throw std::invalid_argument("unknown perturbation: " + spec.id);
  }
  if (spec.needs_model && model == nullptr) {
    throw std::invalid_argument("perturbation " + spec.id + " needs a model backend");
  }
  PerturbedUnit out;
  out.source_id = unit.id;
  out.perturbation_id = spec.id;
  out.identity = spec.identity();
  if (spec.mode == Mode::kStochastic) out.seed = seed;
  if (out.identity) {
    out.text = unit.text;
    return out;
  }
  corpus::ParsedFile file = corpus::ParseFile(unit.text);
  if (!file.errors.empty()) {
    throw std::invalid_argument(unit.id + " does not parse: " + file.errors.front());
  }
  Context ctx{spec, unit, file, seed, model};
  Outcome outcome = entry->fn(ctx);
  out.text = std::move(outcome.text);
  out.notes = std::move(outcome.notes);
  out.renames = std::move(outcome.renames);
  out.param_orders = std::move(outcome.param_orders);
  if (out.text == unit.text && out.notes.empty()) {
    out.notes.push_back("no-op: nothing to change");
  }
  return out;
}

corpus::SourceUnit ToSourceUnit(const PerturbedUnit& perturbed,
                                const corpus::SourceUnit& original) {
  corpus::SourceUnit unit =
      corpus::MakeSourceUnit(original.id, perturbed.text, original.group);
  unit.origin_dir = original.origin_dir;
  return unit;
}

std::vector<std::vector<std::string>> SampleSets(
    const std::vector<std::string>& ids, std::size_t set_size,
    std::size_t count, std::uint64_t seed) {
  if (set_size == 0 || set_size > ids.size()) {
    throw std::invalid_argument("set size must be between 1 and " +
                                std::to_string(ids.size()));
  }
  auto identity = std::find(ids.begin(), ids.end(), kIdentityId);
  if (identity == ids.end()) {
    throw std::invalid_argument("id list lacks identity");
  }
  std::size_t identity_pos = static_cast<std::size_t>(identity - ids.begin());
  std::vector<std::size_t> others;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (i != identity_pos) others.push_back(i);
  }
  std::mt19937_64 rng(seed);
  std::vector<std::vector<std::string>> sets;
  sets.reserve(count);
  for (std::size_t s = 0; s < count; ++s) {
    std::vector<std::size_t> pool = others;
    // Partial Fisher-Yates.
    for (std::size_t i = 0; i + 1 < set_size; ++i) {
      std::size_t j = i + static_cast<std::size_t>(rng() % (pool.size() - i));
      std::swap(pool[i], pool[j]);
    }
    std::vector<std::size_t> chosen(pool.begin(), pool.begin() + (set_size - 1));
    chosen.push_back(identity_pos);
    std::sort(chosen.begin(), chosen.end());
    std::vector<std::string> set;
    for (std::size_t i : chosen) set.push_back(ids[i]);
    sets.push_back(std::move(set));
  }
  return sets;
}

}  // namespace transcheck::perturb
