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

using corpus::Token;
using corpus::TokenKind;

namespace {

std::string MacroName(const std::string& literal) {
  std::string out = "CONST_";
  for (char c : literal) {
    out += std::isalnum(static_cast<unsigned char>(c))
               ? static_cast<char>(std::toupper(static_cast<unsigned char>(c)))
               : '_';
  }
  return out;
}

std::set<std::string> AllIdentifiers(const std::vector<Token>& tokens) {
  std::set<std::string> out;
  for (const Token& t : tokens) {
    if (t.kind == TokenKind::kIdentifier) out.insert(t.text);
  }
  return out;
}

// Index of the first token on the line holding token i.
std::size_t LineBegin(const std::vector<Token>& tokens, std::size_t i) {
  while (i > 0 && tokens[i - 1].kind != TokenKind::kNewline) --i;
  return i;
}

}  // namespace

Outcome ConstantInsertion(const Context& ctx) {
  const auto& tokens = ctx.file.tokens;
  if (ctx.file.functions.empty()) return {ctx.unit.text, {"no-op: no functions"}, {}, {}};
  std::set<std::string> taken = AllIdentifiers(tokens);
  std::map<std::string, std::string> names;  // literal -> macro
  std::vector<std::string> order;
  TokenEditor editor(tokens);
  for (const auto& fn : ctx.file.functions) {
    for (std::size_t i : CodeTokens(tokens, fn.body_open + 1, fn.body_close)) {
      const Token& t = tokens[i];
      if (t.kind != TokenKind::kNumber || t.text == "0" || t.text == "1") continue;
      auto it = names.find(t.text);
      if (it == names.end()) {
        std::string base = MacroName(t.text);
        std::string name = base;
        for (int k = 2; taken.count(name) > 0; ++k) name = base + "_" + std::to_string(k);
        taken.insert(name);
        it = names.emplace(t.text, name).first;
        order.push_back(t.text);
      }
      editor.Replace(i, i + 1, it->second);
    }
  }
  if (order.empty()) return {ctx.unit.text, {"no-op: no literals in function bodies"}, {}, {}};
  std::string block;
  for (const std::string& literal : order) {
    block += "#define " + names[literal] + " " + literal + "\n";
  }
  std::size_t first = ctx.file.functions.front().header_begin;
  for (const auto& fn : ctx.file.functions) first = std::min(first, fn.header_begin);
  // After the last directive line in front of the first function.
  std::size_t directive = std::string::npos;
  for (std::size_t i = 0; i < first; ++i) {
    if (tokens[i].in_directive) directive = i;
  }
  if (directive == std::string::npos) {
    editor.InsertBefore(0, block + "\n");
  } else {
    std::size_t nl = directive;
    while (nl < tokens.size() && tokens[nl].kind != TokenKind::kNewline) ++nl;
    if (nl < tokens.size()) {
      editor.InsertAfter(nl, "\n" + block);
    } else {
      editor.InsertAfter(directive, "\n\n" + block);
    }
  }
  return {editor.Render(), {}, {}, {}};
}

Outcome DeadCode(const Context& ctx) {
  const auto& tokens = ctx.file.tokens;
  std::vector<std::size_t> sites;
  for (const auto& fn : ctx.file.functions) {
    sites.push_back(fn.body_open);
    std::vector<std::size_t> code = CodeTokens(tokens, fn.body_open + 1, fn.body_close);
    for (std::size_t k = 1; k < code.size(); ++k) {
      if (tokens[code[k]].text != "{") continue;
      const Token& prev = tokens[code[k - 1]];
      if (prev.text == "else" || prev.text == "do") {
        sites.push_back(code[k]);
      } else if (prev.text == ")") {
        std::size_t open = code[k - 1];
        // Walk back to the matching '('.
        int depth = 0;
        std::size_t j = k - 1;
        for (;; --j) {
          const std::string& s = tokens[code[j]].text;
          if (s == ")") ++depth;
          if (s == "(" && --depth == 0) {
            open = code[j];
            break;
          }
          if (j == 0) break;
        }
        std::size_t kw = corpus::PrevSignificant(tokens, open);
        if (kw != std::string::npos &&
            (tokens[kw].text == "if" || tokens[kw].text == "while" ||
             tokens[kw].text == "for")) {
          sites.push_back(code[k]);
        }
      }
    }
  }
  if (sites.empty()) return {ctx.unit.text, {"no-op: no function bodies"}, {}, {}};
  Rng rng = MakeRng(ctx);
  std::set<std::string> taken = AllIdentifiers(tokens);
  std::size_t count = std::min(sites.size(), 1 + Pick(rng, 2));
  std::set<std::size_t> chosen;
  while (chosen.size() < count) chosen.insert(sites[Pick(rng, sites.size())]);
  TokenEditor editor(tokens);
  int serial = 0;
  for (std::size_t site : chosen) {
    std::string name;
    do {
      name = "unused_" + std::to_string(++serial);
    } while (taken.count(name) > 0);
    std::string value = std::to_string(2 + Pick(rng, 98));
    std::string decl = "int " + name + " = " + value + "; (void)" + name + ";";
    std::string code;
    switch (Pick(rng, 4)) {
      case 0:
        code = decl;
        break;
      case 1:
        code = "if (0) { " + decl + " }";
        break;
      case 2:
        code = "while (0) { " + decl + " }";
        break;
      default:
        code = "do { " + decl + " } while (0);";
        break;
    }
    std::size_t next = corpus::NextSignificant(tokens, site + 1);
    bool own_line = TokenText(tokens, site + 1, next).find('\n') != std::string::npos;
    if (own_line && next < tokens.size()) {
      std::string indent = tokens[next - 1].kind == TokenKind::kWhitespace
                               ? tokens[next - 1].text
                               : "";
      if (tokens[next].text == "}") indent += "  ";
      editor.InsertAfter(site, "\n" + indent + code);
    } else {
      editor.InsertAfter(site, " " + code);
    }
  }
  return {editor.Render(), {}, {}, {}};
}

Outcome DeclarationInsertion(const Context& ctx) {
  static const std::map<std::string, std::pair<std::string, std::string>> kDecls = {
      {"<stdio.h>", {"printf", "int (printf)(const char *format, ...);"}},
      {"<stdlib.h>", {"abs", "int (abs)(int value);"}},
      {"<string.h>", {"strlen", "size_t (strlen)(const char *text);"}},
      {"<math.h>", {"fabs", "double (fabs)(double value);"}},
      {"<ctype.h>", {"isdigit", "int (isdigit)(int c);"}},
      {"<time.h>", {"clock", "clock_t (clock)(void);"}},
      {"<assert.h>", {"", ""}},
  };
  const auto& tokens = ctx.file.tokens;
  TokenEditor editor(tokens);
  bool any = false;
  std::set<std::string> used;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (tokens[i].kind != TokenKind::kHeaderName) continue;
    auto it = kDecls.find(tokens[i].text);
    if (it == kDecls.end() || it->second.first.empty()) continue;
    const auto& [name, decl] = it->second;
    if (used.count(name) || ctx.file.FindFunction(name) ||
        ctx.file.FindVariable(name)) {
      continue;
    }
    bool macro = false;
    for (const auto& m : ctx.file.macros) macro = macro || m.name == name;
    if (macro) continue;
    used.insert(name);
    std::size_t nl = i;
    while (nl < tokens.size() && tokens[nl].kind != TokenKind::kNewline) ++nl;
    if (nl < tokens.size()) {
      editor.InsertAfter(nl, decl + "\n");
    } else {
      editor.InsertAfter(tokens.size() - 1, "\n" + decl + "\n");
    }
    any = true;
  }
  Outcome out{editor.Render(), {}, {}, {}};
  if (!any) out.notes.push_back("no-op: no known standard includes");
  return out;
}

}  // namespace transcheck::perturb
