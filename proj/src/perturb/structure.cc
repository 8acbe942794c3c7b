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

#include <algorithm>

#include "rewrite.h"
#include "transcheck/llm/prompts.h"
#include "transcheck/support/text.h"

namespace transcheck::perturb {

using corpus::Token;
using corpus::TokenKind;

namespace {

constexpr std::size_t kNpos = std::string::npos;

struct Range {
  std::size_t begin;
  std::size_t end;
};

bool IsOpen(const std::string& s) { return s == "(" || s == "[" || s == "{"; }

// Splits [begin, end) at depth-0 occurrences of `sep`.
std::vector<Range> SplitTop(const std::vector<Token>& tokens, std::size_t begin,
                            std::size_t end, std::string_view sep) {
  std::vector<Range> parts;
  std::size_t start = begin;
  for (std::size_t i = begin; i < end; ++i) {
    if (!tokens[i].IsSignificant()) continue;
    if (IsOpen(tokens[i].text)) {
      std::size_t close = corpus::MatchBracket(tokens, i);
      if (close == kNpos || close >= end) return {};
      i = close;
    } else if (tokens[i].text == sep) {
      parts.push_back({start, i});
      start = i + 1;
    }
  }
  parts.push_back({start, end});
  return parts;
}

bool TopLevelHas(const std::vector<Token>& tokens, std::size_t begin,
                 std::size_t end, std::initializer_list<std::string_view> ops) {
  for (std::size_t i = begin; i < end; ++i) {
    if (!tokens[i].IsSignificant()) continue;
    if (IsOpen(tokens[i].text)) {
      std::size_t close = corpus::MatchBracket(tokens, i);
      if (close == kNpos) return true;
      i = close;
      continue;
    }
    for (std::string_view op : ops) {
      if (tokens[i].text == op) return true;
    }
  }
  return false;
}

const std::initializer_list<std::string_view> kAssignOps = {
    "=", "+=", "-=", "*=", "/=", "%=", "&=", "|=", "^=", "<<=", ">>="};

bool HasSideEffects(const std::vector<Token>& tokens, std::size_t begin,
                    std::size_t end) {
  for (std::size_t i = begin; i < end; ++i) {
    const Token& t = tokens[i];
    if (!t.IsSignificant()) continue;
    if (t.text == "++" || t.text == "--") return true;
    for (std::string_view op : kAssignOps) {
      if (t.text == op) return true;
    }
    if (t.kind == TokenKind::kIdentifier) {
      std::size_t next = corpus::NextSignificant(tokens, i + 1);
      if (next < end && tokens[next].text == "(") return true;
    }
  }
  return false;
}

std::string Text(const std::vector<Token>& tokens, Range r) {
  return std::string(Trim(TokenText(tokens, r.begin, r.end)));
}

bool Blank(const std::vector<Token>& tokens, Range r) {
  return CodeTokens(tokens, r.begin, r.end).empty();
}

// Operands that can take a leading '!' without parentheses.
bool Atomic(const std::vector<Token>& tokens, Range r) {
  std::vector<std::size_t> code = CodeTokens(tokens, r.begin, r.end);
  if (code.empty()) return false;
  std::size_t k = 0;
  while (k < code.size() && tokens[code[k]].text == "!") ++k;
  if (k == code.size()) return false;
  const Token& head = tokens[code[k]];
  if (head.text == "(") {
    return corpus::MatchBracket(tokens, code[k]) == code.back();
  }
  if (head.kind != TokenKind::kIdentifier && head.kind != TokenKind::kNumber &&
      head.kind != TokenKind::kChar && head.kind != TokenKind::kString) {
    return false;
  }
  ++k;
  while (k < code.size()) {
    const std::string& s = tokens[code[k]].text;
    if (s == "(" || s == "[") {
      std::size_t close = corpus::MatchBracket(tokens, code[k]);
      while (k < code.size() && code[k] <= close) ++k;
    } else if ((s == "." || s == "->") && k + 1 < code.size() &&
               tokens[code[k + 1]].kind == TokenKind::kIdentifier) {
      k += 2;
    } else {
      return false;
    }
  }
  return true;
}

std::string Negate(const std::vector<Token>& tokens, Range r) {
  std::string text = Text(tokens, r);
  return Atomic(tokens, r) ? "!" + text : "!(" + text + ")";
}

// The negated operands of a logical expression split at its weakest
// operator, joined by the dual operator. Empty when not applicable.
std::string Distribute(const std::vector<Token>& tokens, std::size_t begin,
                       std::size_t end) {
  if (TopLevelHas(tokens, begin, end, {"?", ","}) ||
      TopLevelHas(tokens, begin, end, kAssignOps)) {
    return "";
  }
  bool has_or = TopLevelHas(tokens, begin, end, {"||"});
  std::vector<Range> parts = SplitTop(tokens, begin, end, has_or ? "||" : "&&");
  if (parts.size() < 2) return "";
  std::vector<std::string> negated;
  for (Range r : parts) {
    if (Blank(tokens, r)) return "";
    negated.push_back(Negate(tokens, r));
  }
  return Join(negated, has_or ? " && " : " || ");
}

struct Paren {
  std::size_t keyword;
  std::size_t open;
  std::size_t close;
};

// `kw (...)` constructs inside function bodies.
std::vector<Paren> Keyword(const corpus::ParsedFile& file, std::string_view kw) {
  std::vector<Paren> out;
  const auto& tokens = file.tokens;
  for (const auto& fn : file.functions) {
    for (std::size_t i : CodeTokens(tokens, fn.body_open + 1, fn.body_close)) {
      if (tokens[i].kind != TokenKind::kKeyword || tokens[i].text != kw) continue;
      std::size_t open = corpus::NextSignificant(tokens, i + 1);
      if (open >= tokens.size() || tokens[open].text != "(") continue;
      std::size_t close = corpus::MatchBracket(tokens, open);
      if (close == kNpos) continue;
      out.push_back({i, open, close});
    }
  }
  return out;
}

std::size_t BlockAfter(const std::vector<Token>& tokens, std::size_t close) {
  std::size_t next = corpus::NextSignificant(tokens, close + 1);
  return next < tokens.size() && tokens[next].text == "{" ? next : kNpos;
}

std::string LineIndent(const std::vector<Token>& tokens, std::size_t i) {
  while (i > 0 && tokens[i - 1].kind != TokenKind::kNewline) --i;
  return tokens[i].kind == TokenKind::kWhitespace ? tokens[i].text : "";
}

bool Contains(const std::vector<Token>& tokens, Range r, std::string_view word) {
  for (std::size_t i = r.begin; i < r.end; ++i) {
    if (tokens[i].Is(word)) return true;
  }
  return false;
}

}  // namespace

Outcome SignatureChange(const Context& ctx) {
  const auto& tokens = ctx.file.tokens;
  TokenEditor editor(tokens);
  Outcome out;
  for (const auto& fn : ctx.file.functions) {
    std::size_t n = fn.params.size();
    if (fn.name == "main" || fn.variadic || n < 2) continue;
    std::set<std::string> names;
    for (const auto& p : fn.params) names.insert(p.name);
    bool ok = true;
    // Parameters referring to each other (array bounds) pin the order.
    for (const auto& p : fn.params) {
      for (std::size_t i = p.begin; i < p.end; ++i) {
        if (tokens[i].kind == TokenKind::kIdentifier && names.count(tokens[i].text) &&
            (!p.name_token || i != *p.name_token)) {
          ok = false;
        }
      }
    }
    std::vector<std::pair<Range, std::vector<Range>>> lists;
    auto params_of = [&](std::size_t open, std::size_t close,
                         const std::vector<corpus::ParamDecl>& params) {
      std::vector<Range> r;
      for (const auto& p : params) r.push_back({p.begin, p.end});
      lists.push_back({{open + 1, close}, r});
    };
    params_of(fn.params_open, fn.params_close, fn.params);
    std::set<std::size_t> declared = {fn.name_token};
    for (const auto& proto : ctx.file.prototypes) {
      if (proto.name != fn.name) continue;
      declared.insert(proto.name_token);
      if (proto.params.size() == n) {
        params_of(proto.params_open, proto.params_close, proto.params);
      } else if (!proto.params.empty()) {
        ok = false;
      }
    }
    for (std::size_t i = 0; ok && i < tokens.size(); ++i) {
      if (tokens[i].kind != TokenKind::kIdentifier || tokens[i].text != fn.name ||
          declared.count(i)) {
        continue;
      }
      std::size_t prev = corpus::PrevSignificant(tokens, i, true);
      if (prev != kNpos && (tokens[prev].text == "." || tokens[prev].text == "->")) {
        continue;
      }
      std::size_t open = corpus::NextSignificant(tokens, i + 1, true);
      if (tokens[i].in_directive || open >= tokens.size() || tokens[open].text != "(") {
        ok = false;
        break;
      }
      std::size_t close = corpus::MatchBracket(tokens, open);
      if (close == kNpos) {
        ok = false;
        break;
      }
      std::vector<Range> args = SplitTop(tokens, open + 1, close, ",");
      if (args.size() != n || HasSideEffects(tokens, open + 1, close)) {
        ok = false;
        break;
      }
      lists.push_back({{open + 1, close}, args});
    }
    for (const auto& [whole, parts] : lists) {
      ok = ok && editor.Free(whole.begin, whole.end);
    }
    if (!ok) {
      out.notes.push_back("kept signature of " + fn.name);
      continue;
    }
    for (const auto& [whole, parts] : lists) {
      std::vector<std::string> texts;
      for (auto it = parts.rbegin(); it != parts.rend(); ++it) {
        texts.push_back(Text(tokens, *it));
      }
      editor.Replace(whole.begin, whole.end, Join(texts, ", "));
    }
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = n - 1 - i;
    out.param_orders[fn.name] = order;
  }
  out.text = editor.Render();
  if (out.param_orders.empty()) {
    out.notes.push_back("no-op: no function with reorderable parameters");
  }
  return out;
}

Outcome LoopSwap(const Context& ctx) {
  const auto& tokens = ctx.file.tokens;
  TokenEditor editor(tokens);
  int swapped = 0;
  std::vector<Paren> fors = Keyword(ctx.file, "for");
  // Innermost first, so closing braces nest correctly.
  std::sort(fors.begin(), fors.end(),
            [](const Paren& a, const Paren& b) { return a.keyword > b.keyword; });
  for (const Paren& p : fors) {
    std::vector<Range> header = SplitTop(tokens, p.open + 1, p.close, ";");
    std::size_t body_open = BlockAfter(tokens, p.close);
    if (header.size() != 3 || body_open == kNpos) continue;
    std::size_t body_close = corpus::MatchBracket(tokens, body_open);
    Range body{body_open + 1, body_close};
    if (Contains(tokens, body, "continue")) continue;
    Range init = header[0], cond = header[1], step = header[2];
    std::set<std::string> inner = DeclaredNames(ctx.file, body.begin, body.end);
    bool shadowed = false;
    for (std::size_t i = step.begin; i < step.end; ++i) {
      shadowed = shadowed || (tokens[i].kind == TokenKind::kIdentifier &&
                              inner.count(tokens[i].text) > 0);
    }
    if (shadowed) continue;
    bool declares = !DeclaredNames(ctx.file, init.begin, init.end + 1).empty();
    std::size_t prev = corpus::PrevSignificant(tokens, p.keyword);
    bool statement_position =
        prev != kNpos && (tokens[prev].text == ";" || tokens[prev].text == "{" ||
                          tokens[prev].text == "}" || tokens[prev].text == ":");
    bool block = declares || !statement_position;
    std::string head = block ? "{ " : "";
    if (!Blank(tokens, init)) head += Text(tokens, init) + "; ";
    head += "while" + TokenText(tokens, p.keyword + 1, p.open) + "(";
    std::vector<std::size_t> cond_code = CodeTokens(tokens, cond.begin, cond.end);
    std::size_t cond_first = cond.end;
    std::size_t cond_last = cond.end;
    if (cond_code.empty()) {
      head += "1";
    } else {
      cond_first = cond_code.front();
      cond_last = cond_code.back() + 1;
    }
    if (!editor.Free(p.keyword, p.close + 1)) continue;
    editor.Replace(p.keyword, cond_first, head);
    editor.Replace(cond_last, p.close, "");
    if (!Blank(tokens, step)) {
      std::size_t last = corpus::PrevSignificant(tokens, body_close);
      std::string gap = TokenText(tokens, last + 1, body_close);
      if (last == body_open) {
        editor.InsertAfter(body_open, " " + Text(tokens, step) + "; ");
      } else if (gap.find('\n') != std::string::npos) {
        editor.InsertAfter(last, "\n" + LineIndent(tokens, last) + Text(tokens, step) + ";");
      } else {
        editor.InsertAfter(last, " " + Text(tokens, step) + ";");
      }
    }
    if (block) editor.InsertAfter(body_close, " }");
    ++swapped;
  }
  for (const Paren& p : Keyword(ctx.file, "while")) {
    std::size_t next = corpus::NextSignificant(tokens, p.close + 1);
    if (next >= tokens.size() || tokens[next].text == ";") continue;
    if (!editor.Free(p.keyword, p.keyword + 1)) continue;
    editor.Replace(p.keyword, p.keyword + 1, "for");
    editor.InsertAfter(p.open, "; ");
    editor.InsertBefore(p.close, ";");
    ++swapped;
  }
  Outcome out{editor.Render(), {}, {}, {}};
  if (swapped == 0) out.notes.push_back("no-op: no convertible loops");
  return out;
}

Outcome ConditionSwap(const Context& ctx) {
  const auto& tokens = ctx.file.tokens;
  TokenEditor editor(tokens);
  int swapped = 0;
  for (const Paren& p : Keyword(ctx.file, "if")) {
    std::size_t then_open = BlockAfter(tokens, p.close);
    if (then_open == kNpos) continue;
    std::size_t then_close = corpus::MatchBracket(tokens, then_open);
    std::size_t kw = corpus::NextSignificant(tokens, then_close + 1);
    if (kw >= tokens.size() || !tokens[kw].Is("else")) continue;
    std::size_t else_open = BlockAfter(tokens, kw);
    if (else_open == kNpos) continue;
    std::size_t else_close = corpus::MatchBracket(tokens, else_open);
    if (!editor.Free(p.open, else_close + 1)) continue;
    std::string cond = Text(tokens, {p.open + 1, p.close});
    std::string then_text = TokenText(tokens, then_open, then_close + 1);
    std::string else_text = TokenText(tokens, else_open, else_close + 1);
    editor.Replace(p.open + 1, p.close, "!(" + cond + ")");
    editor.Replace(then_open, then_close + 1, else_text);
    editor.Replace(else_open, else_close + 1, then_text);
    ++swapped;
  }
  Outcome out{editor.Render(), {}, {}, {}};
  if (swapped == 0) out.notes.push_back("no-op: no if/else with two blocks");
  return out;
}

Outcome ConditionDuplication(const Context& ctx) {
  const auto& tokens = ctx.file.tokens;
  TokenEditor editor(tokens);
  int duplicated = 0;
  std::vector<Paren> sites = Keyword(ctx.file, "if");
  for (const Paren& p : Keyword(ctx.file, "while")) sites.push_back(p);
  for (const Paren& p : sites) {
    Range cond{p.open + 1, p.close};
    if (Blank(tokens, cond) || HasSideEffects(tokens, cond.begin, cond.end)) continue;
    std::string c = Text(tokens, cond);
    if (editor.Replace(cond.begin, cond.end, "(" + c + ") && (" + c + ")")) {
      ++duplicated;
    }
  }
  Outcome out{editor.Render(), {}, {}, {}};
  if (duplicated == 0) out.notes.push_back("no-op: no side-effect-free conditions");
  return out;
}

Outcome DeMorgan(const Context& ctx) {
  const auto& tokens = ctx.file.tokens;
  TokenEditor editor(tokens);
  int rewritten = 0;
  for (const auto& fn : ctx.file.functions) {
    for (std::size_t bang : CodeTokens(tokens, fn.body_open + 1, fn.body_close)) {
      if (tokens[bang].text != "!") continue;
      std::size_t open = corpus::NextSignificant(tokens, bang + 1);
      if (open >= tokens.size() || tokens[open].text != "(") continue;
      std::size_t close = corpus::MatchBracket(tokens, open);
      if (close == kNpos) continue;
      std::string dist = Distribute(tokens, open + 1, close);
      if (dist.empty()) continue;
      std::size_t prev = corpus::PrevSignificant(tokens, bang);
      std::size_t next = corpus::NextSignificant(tokens, close + 1);
      bool alone = prev != kNpos && tokens[prev].text == "(" &&
                   next < tokens.size() && tokens[next].text == ")";
      if (editor.Replace(bang, close + 1, alone ? dist : "(" + dist + ")")) {
        ++rewritten;
      }
    }
  }
  std::vector<Paren> sites = Keyword(ctx.file, "if");
  for (const Paren& p : Keyword(ctx.file, "while")) sites.push_back(p);
  for (const Paren& p : sites) {
    if (!editor.Free(p.open + 1, p.close)) continue;
    std::string dist = Distribute(tokens, p.open + 1, p.close);
    if (dist.empty()) continue;
    if (editor.Replace(p.open + 1, p.close, "!(" + dist + ")")) ++rewritten;
  }
  Outcome out{editor.Render(), {}, {}, {}};
  if (rewritten == 0) out.notes.push_back("no-op: no logical expressions");
  return out;
}

Outcome FunctionExtraction(const Context& ctx) {
  std::string prompt = Param(ctx, "prompt");
  if (prompt.empty()) {
    prompt =
        "Refactor the following C code by extracting parts of the function "
        "bodies into new helper functions. Keep every existing function with "
        "the same name, parameters and behavior. Reply with the complete C file "
        "in one code block.";
  }
  std::string reply = AskText(ctx, prompt + "\n```c\n" + ctx.unit.text + "\n```");
  std::string code;
  try {
    code = llm::ExtractCode(reply).source;
  } catch (const std::invalid_argument&) {
    throw PerturbationError(ErrorCategory::kLlmApi, ctx.spec.id + ": empty reply");
  }
  corpus::ParsedFile parsed = corpus::ParseFile(code);
  if (!parsed.errors.empty()) {
    throw PerturbationError(ErrorCategory::kLlmApi,
                            ctx.spec.id + ": reply does not parse: " + parsed.errors.front());
  }
  for (const auto& fn : ctx.file.functions) {
    const corpus::FunctionDefinition* kept = parsed.FindFunction(fn.name);
    if (kept == nullptr || kept->params.size() != fn.params.size()) {
      throw PerturbationError(ErrorCategory::kLlmApi,
                              ctx.spec.id + ": reply changed or dropped " + fn.name);
    }
  }
  if (!code.empty() && code.back() != '\n') code += '\n';
  return {code, {}, {}, {}};
}

}  // namespace transcheck::perturb
