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

#ifndef TRANSCHECK_PERTURB_REWRITE_H_
#define TRANSCHECK_PERTURB_REWRITE_H_

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "transcheck/corpus/c_parser.h"
#include "transcheck/llm/chat.h"
#include "transcheck/perturb/perturbation.h"

namespace transcheck::perturb {

// Non-overlapping edits over a token vector.
class TokenEditor {
 public:
  explicit TokenEditor(const std::vector<corpus::Token>& tokens);

  // Replaces tokens [begin, end). False (and no change) when any of them is
  // already edited.
  bool Replace(std::size_t begin, std::size_t end, std::string text);
  bool Free(std::size_t begin, std::size_t end) const;
  void InsertBefore(std::size_t index, std::string_view text);
  void InsertAfter(std::size_t index, std::string_view text);
  bool empty() const { return edits_ == 0; }
  std::string Render() const;

 private:
  const std::vector<corpus::Token>& tokens_;
  std::vector<std::optional<std::string>> replaced_;
  std::vector<std::string> before_;
  std::vector<std::string> after_;
  std::size_t edits_ = 0;
};

std::string TokenText(const std::vector<corpus::Token>& tokens,
                      std::size_t begin, std::size_t end);
// Significant, non-directive token indices in [begin, end).
std::vector<std::size_t> CodeTokens(const std::vector<corpus::Token>& tokens,
                                    std::size_t begin, std::size_t end);
bool InsideFunctionBody(const corpus::ParsedFile& file, std::size_t index);
// Offset of the first character of the line holding `offset`.
std::size_t LineStart(std::string_view text, std::size_t offset);

struct Outcome {
  std::string text;
  std::vector<std::string> notes;
  std::map<std::string, std::string> renames;
  std::map<std::string, std::vector<std::size_t>> param_orders;
};

struct Context {
  const PerturbationSpec& spec;
  const corpus::SourceUnit& unit;
  const corpus::ParsedFile& file;
  std::uint64_t seed;
  llm::ChatBackend* model;
};

using Rng = std::mt19937_64;
Rng MakeRng(const Context& ctx);
std::size_t Pick(Rng& rng, std::size_t n);
bool Chance(Rng& rng, double p);

// Swap, drop or double one letter. Empty when the word is too short.
std::string Typo(std::string_view word, Rng& rng);

// ---- identifiers ----

bool IsIdentifier(std::string_view text);

struct RenameScope {
  std::vector<std::string> names;  // renamable, first-occurrence order
  std::set<std::string> functions;
  std::set<std::string> globals;
  std::set<std::string> taken;  // every identifier spelled in the file
};

RenameScope CollectRenamable(const corpus::ParsedFile& file);
// Names declared as locals in tokens [begin, end).
std::set<std::string> DeclaredNames(const corpus::ParsedFile& file,
                                    std::size_t begin, std::size_t end);
// Usable as a fresh identifier: valid, not reserved, not taken.
bool FreshName(std::string_view name, const std::set<std::string>& taken);
// Renames every identifier token except member names after '.' / '->'.
Outcome RenameAll(const Context& ctx, const RenameScope& scope,
                  const std::map<std::string, std::string>& renames);

// ---- model ----

// Sends one user message and parses a JSON value out of the reply (fenced
// block or first bracketed span).
nlohmann::json AskJson(const Context& ctx, const std::string& prompt);
std::string AskText(const Context& ctx, const std::string& prompt);
std::string Param(const Context& ctx, const std::string& key);

// ---- transforms ----

Outcome CommentRoundTrip(const Context& ctx);
Outcome CommentTypos(const Context& ctx);
Outcome CommentRemoval(const Context& ctx);
Outcome CommentInsertion(const Context& ctx);
Outcome IndentationReformat(const Context& ctx);
Outcome IdentifierTypos(const Context& ctx);
Outcome NamingConvention(const Context& ctx);
Outcome ShortIdentifiers(const Context& ctx);
Outcome IdentifierRoundTrip(const Context& ctx);
Outcome IdentifierImprovement(const Context& ctx);
Outcome ConstantInsertion(const Context& ctx);
Outcome DeadCode(const Context& ctx);
Outcome DeclarationInsertion(const Context& ctx);
Outcome FunctionExtraction(const Context& ctx);
Outcome SignatureChange(const Context& ctx);
Outcome LoopSwap(const Context& ctx);
Outcome ConditionSwap(const Context& ctx);
Outcome ConditionDuplication(const Context& ctx);
Outcome DeMorgan(const Context& ctx);

}  // namespace transcheck::perturb

#endif  // TRANSCHECK_PERTURB_REWRITE_H_
