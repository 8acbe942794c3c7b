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

#ifndef TRANSCHECK_PERTURB_PERTURBATION_H_
#define TRANSCHECK_PERTURB_PERTURBATION_H_

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "transcheck/corpus/source_unit.h"
#include "transcheck/llm/chat.h"
#include "transcheck/support/error_category.h"

namespace transcheck::perturb {

// kNone is used by Identity only.
enum class Level { kNone, kI, kII, kIII, kIV, kV, kVI };
enum class Mode { kDeterministic, kStochastic };

std::string_view ToString(Level level);
std::optional<Level> ParseLevel(std::string_view text);
std::string_view ToString(Mode mode);

inline constexpr std::string_view kIdentityId = "identity";

struct PerturbationSpec {
  std::string id;
  Level level = Level::kNone;
  Mode mode = Mode::kDeterministic;
  bool needs_model = false;
  std::string description;
  std::map<std::string, std::string> params;

  bool identity() const { return id == kIdentityId; }
  // Deterministic and offline.
  bool pure() const { return mode == Mode::kDeterministic && !needs_model; }
};

struct PerturbedUnit {
  std::string source_id;
  std::string perturbation_id;
  std::optional<std::uint64_t> seed;
  std::string text;
  bool identity = false;
  // "no-op: ..." when the perturbation found nothing to change.
  std::vector<std::string> notes;
  // Original -> new name for renamed functions and file-scope variables.
  std::map<std::string, std::string> renames;
  // Keyed by original function name: perturbed parameter i is original
  // parameter order[i].
  std::map<std::string, std::vector<std::size_t>> param_orders;

  bool changed(const corpus::SourceUnit& original) const {
    return text != original.text;
  }
};

// Raised for model failures (category kLlmApi) and for model output that
// cannot be used.
class PerturbationError : public std::runtime_error {
 public:
  PerturbationError(ErrorCategory category, const std::string& message)
      : std::runtime_error(message), category_(category) {}
  ErrorCategory category() const { return category_; }

 private:
  ErrorCategory category_;
};

// Identity first, then levels I to VI.
const std::vector<PerturbationSpec>& Registry();
const PerturbationSpec* FindPerturbation(std::string_view id);
std::vector<std::string> RegistryIds();

std::uint64_t DefaultSeed(std::string_view source_id,
                          std::string_view perturbation_id, int run_index);

// Throws std::invalid_argument when the spec needs a model and none is given
// or when the unit has parse errors, PerturbationError for model problems.
PerturbedUnit Apply(const PerturbationSpec& spec,
                    const corpus::SourceUnit& unit, std::uint64_t seed,
                    llm::ChatBackend* model = nullptr);

// Re-extracts interfaces from the perturbed text. Keeps id, group and
// origin directory of `original`.
corpus::SourceUnit ToSourceUnit(const PerturbedUnit& perturbed,
                                const corpus::SourceUnit& original);

// `count` sets of `set_size` ids each, Identity always included, drawn
// without replacement within a set. Ids inside a set keep registry order.
// Throws std::invalid_argument when set_size is 0 or exceeds the id count.
std::vector<std::vector<std::string>> SampleSets(
    const std::vector<std::string>& ids, std::size_t set_size,
    std::size_t count, std::uint64_t seed);

}  // namespace transcheck::perturb

#endif  // TRANSCHECK_PERTURB_PERTURBATION_H_
