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

#include <cctype>

#include "rewrite.h"
#include "transcheck/support/text.h"

namespace transcheck::perturb {

namespace {

// Accepts proposals that are fresh and distinct; others keep their name.
std::map<std::string, std::string> Accept(
    const RenameScope& scope,
    const std::vector<std::pair<std::string, std::string>>& proposals) {
  std::map<std::string, std::string> out;
  std::set<std::string> taken = scope.taken;
  for (const auto& [from, to] : proposals) {
    if (to == from || !FreshName(to, taken)) continue;
    out[from] = to;
    taken.insert(to);
  }
  return out;
}

std::string ToCamel(const std::string& name) {
  std::string out;
  bool upper = false;
  for (char c : name) {
    if (c == '_') {
      upper = true;
    } else {
      out += upper ? static_cast<char>(std::toupper(static_cast<unsigned char>(c))) : c;
      upper = false;
    }
  }
  return out;
}

std::string ToSnake(const std::string& name) {
  std::string out;
  for (std::size_t i = 0; i < name.size(); ++i) {
    unsigned char c = static_cast<unsigned char>(name[i]);
    if (std::isupper(c) && i > 0 &&
        (std::islower(static_cast<unsigned char>(name[i - 1])) ||
         std::isdigit(static_cast<unsigned char>(name[i - 1])))) {
      out += '_';
    }
    out += static_cast<char>(std::tolower(c));
  }
  return out;
}

std::string Sanitize(std::string_view text) {
  std::string out;
  for (char c : Trim(text)) {
    if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') {
      out += c;
    } else if (!out.empty() && out.back() != '_') {
      out += '_';
    }
  }
  while (!out.empty() && out.back() == '_') out.pop_back();
  return out;
}

std::string Language(const Context& ctx) {
  std::string lang = Param(ctx, "language");
  return lang.empty() ? "German" : lang;
}

}  // namespace

Outcome IdentifierTypos(const Context& ctx) {
  RenameScope scope = CollectRenamable(ctx.file);
  if (scope.names.empty()) return RenameAll(ctx, scope, {});
  Rng rng = MakeRng(ctx);
  std::vector<bool> pick(scope.names.size());
  bool any = false;
  for (std::size_t i = 0; i < pick.size(); ++i) {
    pick[i] = Chance(rng, 0.5);
    any = any || pick[i];
  }
  if (!any) pick[Pick(rng, pick.size())] = true;
  std::vector<std::pair<std::string, std::string>> proposals;
  std::set<std::string> taken = scope.taken;
  for (std::size_t i = 0; i < pick.size(); ++i) {
    if (!pick[i]) continue;
    for (int attempt = 0; attempt < 10; ++attempt) {
      std::string typo = Typo(scope.names[i], rng);
      if (!typo.empty() && FreshName(typo, taken)) {
        proposals.emplace_back(scope.names[i], typo);
        taken.insert(typo);
        break;
      }
    }
  }
  return RenameAll(ctx, scope, Accept(scope, proposals));
}

Outcome NamingConvention(const Context& ctx) {
  RenameScope scope = CollectRenamable(ctx.file);
  std::vector<std::pair<std::string, std::string>> proposals;
  for (const std::string& name : scope.names) {
    if (name.front() == '_' || name.back() == '_') continue;
    if (name.find('_') != std::string::npos) {
      proposals.emplace_back(name, ToCamel(name));
    } else {
      proposals.emplace_back(name, ToSnake(name));
    }
  }
  return RenameAll(ctx, scope, Accept(scope, proposals));
}

Outcome ShortIdentifiers(const Context& ctx) {
  RenameScope scope = CollectRenamable(ctx.file);
  std::vector<std::pair<std::string, std::string>> proposals;
  std::set<std::string> taken = scope.taken;
  std::size_t counter = 0;
  auto next = [&counter]() {
    std::string s;
    std::size_t n = counter++;
    do {
      s.insert(s.begin(), static_cast<char>('a' + n % 26));
      n = n / 26;
    } while (n-- > 0);
    return s;
  };
  for (const std::string& name : scope.names) {
    std::size_t mark = counter;
    std::string candidate = next();
    while (!FreshName(candidate, taken)) candidate = next();
    if (candidate.size() >= name.size()) {
      counter = mark;
      continue;
    }
    proposals.emplace_back(name, candidate);
    taken.insert(candidate);
  }
  return RenameAll(ctx, scope, Accept(scope, proposals));
}

Outcome IdentifierRoundTrip(const Context& ctx) {
  RenameScope scope = CollectRenamable(ctx.file);
  if (scope.names.empty()) return RenameAll(ctx, scope, {});
  auto request = [&](const std::string& lang, const std::vector<std::string>& in) {
    nlohmann::json reply = AskJson(
        ctx, "Translate each of the following identifiers from a C program to " +
                 lang +
                 ". Keep the identifier style (underscores, capitalization). "
                 "Reply with only a JSON array of strings in the same order.\n" +
                 nlohmann::json(in).dump(2));
    if (!reply.is_array() || reply.size() != in.size()) {
      throw PerturbationError(ErrorCategory::kLlmApi,
                              ctx.spec.id + ": expected a JSON array of " +
                                  std::to_string(in.size()) + " strings");
    }
    std::vector<std::string> out;
    for (const auto& e : reply) {
      out.push_back(e.is_string() ? Sanitize(e.get<std::string>()) : "");
    }
    return out;
  };
  std::vector<std::string> there = request(Language(ctx), scope.names);
  std::vector<std::string> back = request("English", there);
  std::vector<std::pair<std::string, std::string>> proposals;
  for (std::size_t i = 0; i < scope.names.size(); ++i) {
    proposals.emplace_back(scope.names[i], back[i]);
  }
  Outcome out = RenameAll(ctx, scope, Accept(scope, proposals));
  if (out.text == ctx.unit.text) out.notes.push_back("no-op: names survived unchanged");
  return out;
}

Outcome IdentifierImprovement(const Context& ctx) {
  RenameScope scope = CollectRenamable(ctx.file);
  if (scope.names.empty()) return RenameAll(ctx, scope, {});
  std::string prompt = Param(ctx, "prompt");
  if (prompt.empty()) {
    prompt =
        "Suggest clearer, more descriptive names for the following identifiers "
        "of the C program below. Reply with only a JSON object that maps each "
        "identifier to its new name.";
  }
  nlohmann::json reply =
      AskJson(ctx, prompt + "\n" + nlohmann::json(scope.names).dump() +
                       "\n```c\n" + ctx.unit.text + "\n```");
  if (!reply.is_object()) {
    throw PerturbationError(ErrorCategory::kLlmApi,
                            ctx.spec.id + ": expected a JSON object");
  }
  std::vector<std::pair<std::string, std::string>> proposals;
  for (const std::string& name : scope.names) {
    auto it = reply.find(name);
    if (it != reply.end() && it->is_string()) {
      proposals.emplace_back(name, Sanitize(it->get<std::string>()));
    }
  }
  return RenameAll(ctx, scope, Accept(scope, proposals));
}

}  // namespace transcheck::perturb
