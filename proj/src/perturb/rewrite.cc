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

#include "rewrite.h"

#include <algorithm>
#include <cctype>

#include "transcheck/corpus/c_lexer.h"
#include "transcheck/llm/prompts.h"
#include "transcheck/support/text.h"

namespace transcheck::perturb {

using corpus::Token;
using corpus::TokenKind;

TokenEditor::TokenEditor(const std::vector<Token>& tokens)
    : tokens_(tokens),
      replaced_(tokens.size()),
      before_(tokens.size()),
      after_(tokens.size()) {}

bool TokenEditor::Free(std::size_t begin, std::size_t end) const {
  for (std::size_t i = begin; i < end; ++i) {
    if (replaced_[i]) return false;
  }
  return true;
}

bool TokenEditor::Replace(std::size_t begin, std::size_t end,
                          std::string text) {
  if (begin >= end || end > tokens_.size() || !Free(begin, end)) return false;
  replaced_[begin] = std::move(text);
  for (std::size_t i = begin + 1; i < end; ++i) replaced_[i] = std::string();
  ++edits_;
  return true;
}

void TokenEditor::InsertBefore(std::size_t index, std::string_view text) {
  before_[index] += text;
  ++edits_;
}

void TokenEditor::InsertAfter(std::size_t index, std::string_view text) {
  after_[index] += text;
  ++edits_;
}

std::string TokenEditor::Render() const {
  std::string out;
  for (std::size_t i = 0; i < tokens_.size(); ++i) {
    out += before_[i];
    out += replaced_[i] ? *replaced_[i] : tokens_[i].text;
    out += after_[i];
  }
  return out;
}

std::string TokenText(const std::vector<Token>& tokens, std::size_t begin,
                      std::size_t end) {
  std::string out;
  for (std::size_t i = begin; i < end && i < tokens.size(); ++i) {
    out += tokens[i].text;
  }
  return out;
}

std::vector<std::size_t> CodeTokens(const std::vector<Token>& tokens,
                                    std::size_t begin, std::size_t end) {
  std::vector<std::size_t> out;
  for (std::size_t i = begin; i < end && i < tokens.size(); ++i) {
    if (tokens[i].IsSignificant() && !tokens[i].in_directive) out.push_back(i);
  }
  return out;
}

bool InsideFunctionBody(const corpus::ParsedFile& file, std::size_t index) {
  for (const auto& fn : file.functions) {
    if (index > fn.body_open && index < fn.body_close) return true;
  }
  return false;
}

std::size_t LineStart(std::string_view text, std::size_t offset) {
  std::size_t nl = text.rfind('\n', offset == 0 ? 0 : offset - 1);
  if (offset == 0 || nl == std::string_view::npos) return 0;
  return nl + 1;
}

Rng MakeRng(const Context& ctx) {
  return Rng(HashCombine(HashCombine(ctx.seed, ctx.spec.id), ctx.unit.text));
}

std::size_t Pick(Rng& rng, std::size_t n) {
  return n == 0 ? 0 : static_cast<std::size_t>(rng() % n);
}

bool Chance(Rng& rng, double p) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53 < p;
}

std::string Typo(std::string_view word, Rng& rng) {
  std::vector<std::size_t> letters;
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (std::isalpha(static_cast<unsigned char>(word[i]))) letters.push_back(i);
  }
  if (letters.size() < 3) return "";
  std::string out(word);
  for (int attempt = 0; attempt < 8; ++attempt) {
    std::size_t at = letters[1 + Pick(rng, letters.size() - 1)];
    switch (Pick(rng, 3)) {
      case 0:
        if (out[at - 1] != out[at] &&
            std::isalpha(static_cast<unsigned char>(out[at - 1]))) {
          std::swap(out[at - 1], out[at]);
          return out;
        }
        break;
      case 1:
        out.erase(at, 1);
        return out;
      default:
        out.insert(at, 1, out[at]);
        return out;
    }
  }
  out.insert(letters.back(), 1, out[letters.back()]);
  return out;
}

// ---- identifiers ------------------------------------------------------

bool IsIdentifier(std::string_view text) {
  if (text.empty() ||
      !(std::isalpha(static_cast<unsigned char>(text[0])) || text[0] == '_')) {
    return false;
  }
  return std::all_of(text.begin(), text.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

namespace {

const std::set<std::string, std::less<>>& Reserved() {
  static const std::set<std::string, std::less<>> kReserved = {
      "main", "bool", "true", "false", "NULL", "EOF", "errno", "assert",
      "stdin", "stdout", "stderr", "offsetof", "va_list", "va_start",
      "va_arg", "va_end", "size_t", "ssize_t", "ptrdiff_t", "wchar_t",
      "FILE", "abs", "labs", "llabs", "div", "atoi", "atol", "atof", "strtol",
      "strtoul", "strtod", "malloc", "calloc", "realloc", "free", "exit",
      "abort", "qsort", "bsearch", "rand", "srand", "getenv", "system",
      "printf", "fprintf", "sprintf", "snprintf", "scanf", "sscanf", "puts",
      "putchar", "getchar", "fputs", "fgets", "fopen", "fclose", "fread",
      "fwrite", "memcpy", "memmove", "memset", "memcmp", "memchr", "strlen",
      "strcpy", "strncpy", "strcat", "strncat", "strcmp", "strncmp",
      "strchr", "strrchr", "strstr", "strtok", "strdup", "isalpha",
      "isdigit", "isalnum", "isspace", "isupper", "islower", "toupper",
      "tolower", "isprint", "ispunct", "isxdigit", "sqrt", "pow", "exp",
      "log", "log2", "log10", "sin", "cos", "tan", "asin", "acos", "atan",
      "atan2", "sinh", "cosh", "tanh", "floor", "ceil", "round", "trunc",
      "fabs", "fmod", "fmin", "fmax", "hypot", "cbrt", "j0", "j1", "jn",
      "y0", "y1", "yn", "gamma", "signbit", "isnan", "isinf", "time",
      "clock", "index", "rindex", "min", "max", "select", "read", "write",
      "open", "close", "signal", "raise", "remove", "rename", "link",
      "unlink", "sleep", "wait", "kill", "pipe", "dup", "random", "div_t",
      "alarm", "access", "fork", "exec", "environ", "optarg", "optind"};
  return kReserved;
}

bool AllUpper(std::string_view s) {
  bool letter = false;
  for (char c : s) {
    if (std::islower(static_cast<unsigned char>(c))) return false;
    if (std::isalpha(static_cast<unsigned char>(c))) letter = true;
  }
  return letter;
}

const std::set<std::string, std::less<>>& TypeWords() {
  static const std::set<std::string, std::less<>> kTypes = {
      "void", "char", "short", "int", "long", "float", "double", "signed",
      "unsigned", "_Bool", "_Complex", "bool", "size_t", "ssize_t",
      "ptrdiff_t", "intptr_t", "uintptr_t", "int8_t", "int16_t", "int32_t",
      "int64_t", "uint8_t", "uint16_t", "uint32_t", "uint64_t", "wchar_t",
      "FILE", "time_t", "clock_t", "off_t", "intmax_t", "uintmax_t"};
  return kTypes;
}

bool IsQualifier(std::string_view s) {
  return s == "const" || s == "volatile" || s == "static" ||
         s == "register" || s == "auto" || s == "extern" || s == "inline" ||
         s == "restrict" || s == "_Thread_local" || s == "_Atomic";
}

// Skips to the matching closer when tokens[i] opens a bracket.
std::size_t SkipGroup(const std::vector<Token>& tokens, std::size_t i) {
  const std::string& t = tokens[i].text;
  if (t == "(" || t == "[" || t == "{") {
    std::size_t close = corpus::MatchBracket(tokens, i);
    if (close != std::string::npos) return close;
  }
  return i;
}

// Parses one declaration starting at code token position k. Appends the
// declared names and returns true when it looked like a declaration.
bool ParseLocalDeclaration(const corpus::ParsedFile& file,
                           const std::vector<std::size_t>& code,
                           std::size_t k, std::set<std::string>* names) {
  const auto& tokens = file.tokens;
  bool typed = false;
  std::size_t i = k;
  while (i < code.size()) {
    const Token& t = tokens[code[i]];
    if (IsQualifier(t.text)) {
      ++i;
    } else if (t.text == "struct" || t.text == "union" || t.text == "enum") {
      typed = true;
      ++i;
      if (i < code.size() && tokens[code[i]].kind == TokenKind::kIdentifier) ++i;
      if (i < code.size() && tokens[code[i]].text == "{") {
        std::size_t close = SkipGroup(tokens, code[i]);
        while (i < code.size() && code[i] <= close) ++i;
      }
    } else if (TypeWords().count(t.text) > 0 || file.typedefs.count(t.text)) {
      typed = true;
      ++i;
    } else if (!typed && t.kind == TokenKind::kIdentifier && i + 1 < code.size() &&
               tokens[code[i + 1]].kind == TokenKind::kIdentifier &&
               !IsQualifier(tokens[code[i + 1]].text)) {
      typed = true;
      ++i;
    } else {
      break;
    }
  }
  if (!typed) return false;
  bool any = false;
  while (i < code.size()) {
    while (i < code.size() &&
           (tokens[code[i]].text == "*" || tokens[code[i]].text == "(" ||
            IsQualifier(tokens[code[i]].text))) {
      ++i;
    }
    if (i >= code.size() || tokens[code[i]].kind != TokenKind::kIdentifier) {
      return any;
    }
    names->insert(tokens[code[i]].text);
    any = true;
    ++i;
    while (i < code.size() && tokens[code[i]].text != "," &&
           tokens[code[i]].text != ";") {
      std::size_t close = SkipGroup(tokens, code[i]);
      while (i < code.size() && code[i] < close) ++i;
      ++i;
    }
    if (i >= code.size() || tokens[code[i]].text == ";") return any;
    ++i;
  }
  return any;
}

}  // namespace

std::set<std::string> DeclaredNames(const corpus::ParsedFile& file,
                                    std::size_t begin, std::size_t end) {
  std::set<std::string> names;
  std::vector<std::size_t> code = CodeTokens(file.tokens, begin, end);
  for (std::size_t k = 0; k < code.size(); ++k) {
    bool start = k == 0;
    if (k > 0) {
      const std::string& prev = file.tokens[code[k - 1]].text;
      start = prev == ";" || prev == "{" || prev == "}" ||
              (prev == "(" && k >= 2 && file.tokens[code[k - 2]].text == "for");
    }
    if (start) ParseLocalDeclaration(file, code, k, &names);
  }
  return names;
}

bool FreshName(std::string_view name, const std::set<std::string>& taken) {
  return IsIdentifier(name) && name[0] != '_' && !corpus::IsCKeyword(name) &&
         !AllUpper(name) && Reserved().count(name) == 0 &&
         taken.count(std::string(name)) == 0;
}

RenameScope CollectRenamable(const corpus::ParsedFile& file) {
  const auto& tokens = file.tokens;
  RenameScope scope;
  std::set<std::string> excluded = {"main"};
  std::set<std::string> defined;
  for (const auto& fn : file.functions) defined.insert(fn.name);
  for (const auto& p : file.prototypes) defined.insert(p.name);
  bool uses_func_name = false;
  std::set<std::string> stringifying;
  for (const auto& m : file.macros) {
    if (m.body.find('#') != std::string::npos) stringifying.insert(m.name);
  }
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const Token& t = tokens[i];
    if (t.kind != TokenKind::kIdentifier) continue;
    scope.taken.insert(t.text);
    if (t.text == "__func__" || t.text == "__FUNCTION__") uses_func_name = true;
    std::size_t prev = corpus::PrevSignificant(tokens, i, true);
    std::size_t next = corpus::NextSignificant(tokens, i + 1, true);
    if (prev != std::string::npos &&
        (tokens[prev].text == "." || tokens[prev].text == "->")) {
      excluded.insert(t.text);
    }
    bool call = next < tokens.size() && tokens[next].text == "(";
    if (call && !t.in_directive && defined.count(t.text) == 0) {
      excluded.insert(t.text);
    }
    if (call && stringifying.count(t.text) > 0) {
      std::size_t close = corpus::MatchBracket(tokens, next);
      for (std::size_t j = next; j < close && j < tokens.size(); ++j) {
        if (tokens[j].kind == TokenKind::kIdentifier) excluded.insert(tokens[j].text);
      }
    }
  }
  // Members declared in struct or union bodies.
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const Token& t = tokens[i];
    if (!(t.kind == TokenKind::kKeyword && (t.text == "struct" || t.text == "union"))) {
      continue;
    }
    std::size_t j = corpus::NextSignificant(tokens, i + 1);
    if (j < tokens.size() && tokens[j].kind == TokenKind::kIdentifier) {
      j = corpus::NextSignificant(tokens, j + 1);
    }
    if (j >= tokens.size() || tokens[j].text != "{") continue;
    std::size_t close = corpus::MatchBracket(tokens, j);
    for (std::size_t m = j; m < close && m < tokens.size(); ++m) {
      if (tokens[m].kind == TokenKind::kIdentifier) excluded.insert(tokens[m].text);
    }
  }
  for (const auto& m : file.macros) excluded.insert(m.name);

  std::set<std::string> candidates;
  for (const auto& fn : file.functions) {
    if (!uses_func_name) {
      candidates.insert(fn.name);
      scope.functions.insert(fn.name);
    }
    for (const auto& p : fn.params) {
      if (p.name_token) candidates.insert(p.name);
    }
    for (const std::string& n : DeclaredNames(file, fn.body_open + 1, fn.body_close)) {
      candidates.insert(n);
    }
  }
  for (const auto& v : file.variables) {
    if (v.is_extern) continue;
    candidates.insert(v.name);
    scope.globals.insert(v.name);
  }
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const std::string& name = tokens[i].text;
    if (tokens[i].kind != TokenKind::kIdentifier || candidates.count(name) == 0 ||
        excluded.count(name) > 0 || name[0] == '_') {
      continue;
    }
    if (std::find(scope.names.begin(), scope.names.end(), name) ==
        scope.names.end()) {
      scope.names.push_back(name);
    }
  }
  std::erase_if(scope.functions, [&](const std::string& n) {
    return std::find(scope.names.begin(), scope.names.end(), n) == scope.names.end();
  });
  std::erase_if(scope.globals, [&](const std::string& n) {
    return std::find(scope.names.begin(), scope.names.end(), n) == scope.names.end();
  });
  return scope;
}

Outcome RenameAll(const Context& ctx, const RenameScope& scope,
                  const std::map<std::string, std::string>& renames) {
  Outcome out;
  const auto& tokens = ctx.file.tokens;
  TokenEditor editor(tokens);
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (tokens[i].kind != TokenKind::kIdentifier) continue;
    auto it = renames.find(tokens[i].text);
    if (it == renames.end()) continue;
    std::size_t prev = corpus::PrevSignificant(tokens, i, true);
    if (prev != std::string::npos &&
        (tokens[prev].text == "." || tokens[prev].text == "->")) {
      continue;
    }
    editor.Replace(i, i + 1, it->second);
  }
  out.text = editor.Render();
  for (const auto& [from, to] : renames) {
    if (scope.functions.count(from) || scope.globals.count(from)) {
      out.renames[from] = to;
    }
  }
  if (renames.empty()) out.notes.push_back("no-op: no renamable identifiers");
  return out;
}

// ---- model ----------------------------------------------------------

std::string Param(const Context& ctx, const std::string& key) {
  auto it = ctx.spec.params.find(key);
  return it == ctx.spec.params.end() ? std::string() : it->second;
}

std::string AskText(const Context& ctx, const std::string& prompt) {
  llm::Conversation conversation;
  conversation.AddUser(prompt);
  llm::RequestContext request{ctx.unit.id, ctx.spec.id, 0};
  try {
    return ctx.model->Complete(conversation, request).text;
  } catch (const llm::LlmError& e) {
    throw PerturbationError(ErrorCategory::kLlmApi,
                            ctx.spec.id + ": model request failed: " + e.what());
  }
}

nlohmann::json AskJson(const Context& ctx, const std::string& prompt) {
  std::string reply = AskText(ctx, prompt);
  std::string body = reply;
  try {
    body = llm::ExtractCode(reply).source;
  } catch (const std::invalid_argument&) {
  }
  std::size_t open = body.find_first_of("[{");
  std::size_t close = body.find_last_of("]}");
  if (open != std::string::npos && close != std::string::npos && close > open) {
    body = body.substr(open, close - open + 1);
  }
  nlohmann::json j = nlohmann::json::parse(body, nullptr, false);
  if (j.is_discarded()) {
    throw PerturbationError(ErrorCategory::kLlmApi,
                            ctx.spec.id + ": model reply is not JSON");
  }
  return j;
}

}  // namespace transcheck::perturb
