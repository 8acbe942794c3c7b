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

struct CommentParts {
  std::string open;
  std::string body;
  std::string close;
};

CommentParts SplitComment(const Token& t) {
  if (t.kind == TokenKind::kLineComment) return {"//", t.text.substr(2), ""};
  std::string body = t.text.substr(2);
  std::string close;
  if (EndsWith(body, "*/")) {
    body.resize(body.size() - 2);
    close = "*/";
  }
  return {"/*", body, close};
}

bool IsLayout(const Token& t) {
  return t.kind == TokenKind::kWhitespace || t.kind == TokenKind::kNewline;
}

std::size_t LineBegin(const std::vector<Token>& tokens, std::size_t i) {
  while (i > 0 && tokens[i - 1].kind != TokenKind::kNewline) --i;
  return i;
}

std::string Sanitize(std::string text, bool line_comment) {
  for (char& c : text) {
    if (line_comment && (c == '\n' || c == '\r')) c = ' ';
  }
  std::size_t at;
  while ((at = text.find("*/")) != std::string::npos) text.replace(at, 2, "* /");
  if (line_comment) {
    while (!text.empty() && text.back() == '\\') text.pop_back();
  }
  return text;
}

std::vector<std::string> StringArray(const nlohmann::json& j, std::size_t want,
                                     const std::string& what) {
  if (!j.is_array() || j.size() != want) {
    throw PerturbationError(ErrorCategory::kLlmApi,
                            what + ": expected a JSON array of " +
                                std::to_string(want) + " strings");
  }
  std::vector<std::string> out;
  for (const auto& e : j) {
    if (!e.is_string()) {
      throw PerturbationError(ErrorCategory::kLlmApi,
                              what + ": array entry is not a string");
    }
    out.push_back(e.get<std::string>());
  }
  return out;
}

std::string Language(const Context& ctx) {
  std::string lang = Param(ctx, "language");
  return lang.empty() ? "German" : lang;
}

}  // namespace

Outcome CommentRemoval(const Context& ctx) {
  const auto& tokens = ctx.file.tokens;
  TokenEditor editor(tokens);
  bool any = false;
  std::size_t i = 0;
  while (i < tokens.size()) {
    std::size_t end = i;
    while (end < tokens.size() && tokens[end].kind != TokenKind::kNewline) ++end;
    if (end < tokens.size()) ++end;
    bool has_comment = false;
    bool only_comments = true;
    for (std::size_t k = i; k < end; ++k) {
      if (tokens[k].IsComment()) {
        has_comment = true;
      } else if (!IsLayout(tokens[k])) {
        only_comments = false;
      }
    }
    if (has_comment && only_comments) {
      editor.Replace(i, end, "");
      any = true;
    } else if (has_comment) {
      for (std::size_t k = i; k < end; ++k) {
        if (!tokens[k].IsComment()) continue;
        bool glue = k > 0 && k + 1 < tokens.size() && !IsLayout(tokens[k - 1]) &&
                    !IsLayout(tokens[k + 1]);
        editor.Replace(k, k + 1, glue ? " " : "");
        any = true;
      }
      // Trailing blanks left in front of the line end.
      std::size_t last = end;
      while (last > i && (tokens[last - 1].kind == TokenKind::kNewline)) --last;
      for (std::size_t k = last; k > i; --k) {
        const Token& t = tokens[k - 1];
        if (t.kind == TokenKind::kWhitespace || t.IsComment()) {
          if (t.kind == TokenKind::kWhitespace) editor.Replace(k - 1, k, "");
        } else {
          break;
        }
      }
    }
    i = end;
  }
  Outcome out{editor.Render(), {}, {}, {}};
  if (!any) out.notes.push_back("no-op: no comments");
  return out;
}

Outcome CommentTypos(const Context& ctx) {
  const auto& tokens = ctx.file.tokens;
  Rng rng = MakeRng(ctx);
  struct Word {
    std::size_t token;
    std::size_t at;
    std::size_t len;
  };
  std::vector<Word> words;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (!tokens[i].IsComment()) continue;
    const std::string& text = tokens[i].text;
    std::size_t limit = text.size() - (EndsWith(text, "*/") ? 2 : 0);
    std::size_t k = 2;
    while (k < limit) {
      if (!std::isalpha(static_cast<unsigned char>(text[k]))) {
        ++k;
        continue;
      }
      std::size_t b = k;
      while (k < limit && std::isalpha(static_cast<unsigned char>(text[k]))) ++k;
      if (k - b >= 4) words.push_back({i, b, k - b});
    }
  }
  if (words.empty()) return {ctx.unit.text, {"no-op: no comment words"}, {}, {}};
  std::vector<bool> pick(words.size());
  bool any = false;
  for (std::size_t w = 0; w < words.size(); ++w) {
    pick[w] = Chance(rng, 0.25);
    any = any || pick[w];
  }
  if (!any) pick[Pick(rng, words.size())] = true;
  std::map<std::size_t, std::string> texts;
  // Right to left so offsets stay valid.
  for (std::size_t w = words.size(); w-- > 0;) {
    if (!pick[w]) continue;
    auto [it, fresh] = texts.emplace(words[w].token, tokens[words[w].token].text);
    std::string& text = it->second;
    std::string typo = Typo(text.substr(words[w].at, words[w].len), rng);
    if (!typo.empty()) text.replace(words[w].at, words[w].len, typo);
  }
  TokenEditor editor(tokens);
  for (auto& [i, text] : texts) editor.Replace(i, i + 1, std::move(text));
  return {editor.Render(), {}, {}, {}};
}

Outcome CommentRoundTrip(const Context& ctx) {
  const auto& tokens = ctx.file.tokens;
  std::vector<std::size_t> index;
  std::vector<std::string> bodies;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (!tokens[i].IsComment()) continue;
    std::string body(Trim(SplitComment(tokens[i]).body));
    if (body.empty()) continue;
    index.push_back(i);
    bodies.push_back(body);
  }
  if (bodies.empty()) return {ctx.unit.text, {"no-op: no comments"}, {}, {}};
  const std::string ask =
      "Translate each of the following source code comments to {}. Reply with "
      "only a JSON array of strings in the same order.\n";
  auto request = [&](const std::string& lang, const std::vector<std::string>& in) {
    std::string prompt = ask;
    prompt.replace(prompt.find("{}"), 2, lang);
    return StringArray(AskJson(ctx, prompt + nlohmann::json(in).dump(2)),
                       in.size(), ctx.spec.id);
  };
  std::vector<std::string> there = request(Language(ctx), bodies);
  std::vector<std::string> back = request("English", there);
  TokenEditor editor(tokens);
  for (std::size_t k = 0; k < index.size(); ++k) {
    const Token& t = tokens[index[k]];
    CommentParts parts = SplitComment(t);
    bool line = t.kind == TokenKind::kLineComment;
    std::string lead = !parts.body.empty() && std::isspace(static_cast<unsigned char>(parts.body[0])) ? " " : "";
    std::string trail = !line && !parts.body.empty() &&
                                std::isspace(static_cast<unsigned char>(parts.body.back()))
                            ? " "
                            : "";
    editor.Replace(index[k], index[k] + 1,
                   parts.open + lead + Sanitize(back[k], line) + trail + parts.close);
  }
  return {editor.Render(), {}, {}, {}};
}

Outcome CommentInsertion(const Context& ctx) {
  const auto& tokens = ctx.file.tokens;
  if (ctx.file.functions.empty()) {
    return {ctx.unit.text, {"no-op: no functions"}, {}, {}};
  }
  std::string prompt = Param(ctx, "prompt");
  if (prompt.empty()) {
    prompt =
        "Write a short explanatory comment for each function in the following "
        "C code. Reply with only a JSON object that maps each function name to "
        "its comment text.";
  }
  nlohmann::json reply =
      AskJson(ctx, prompt + "\n```c\n" + ctx.unit.text + "\n```");
  if (!reply.is_object()) {
    throw PerturbationError(ErrorCategory::kLlmApi,
                            ctx.spec.id + ": expected a JSON object");
  }
  TokenEditor editor(tokens);
  bool any = false;
  for (const auto& fn : ctx.file.functions) {
    auto it = reply.find(fn.name);
    if (it == reply.end() || !it->is_string()) continue;
    std::string block;
    for (const std::string& line : SplitLines(it->get<std::string>())) {
      std::string_view l = Trim(line);
      if (!l.empty()) block += "// " + Sanitize(std::string(l), true) + "\n";
    }
    if (block.empty()) continue;
    editor.InsertBefore(LineBegin(tokens, fn.header_begin), block);
    any = true;
  }
  Outcome out{editor.Render(), {}, {}, {}};
  if (!any) out.notes.push_back("no-op: model returned no usable comments");
  return out;
}

Outcome IndentationReformat(const Context& ctx) {
  const auto& tokens = ctx.file.tokens;
  std::string unit = Param(ctx, "indent");
  if (unit.empty()) unit = "\t";
  TokenEditor editor(tokens);
  int braces = 0;
  int parens = 0;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    bool line_start = i == 0 || tokens[i - 1].kind == TokenKind::kNewline;
    if (line_start) {
      std::size_t first = i;
      if (tokens[i].kind == TokenKind::kWhitespace) first = i + 1;
      std::string indent;
      if (first < tokens.size() && tokens[first].kind != TokenKind::kNewline &&
          !tokens[first].in_directive) {
        int depth = braces + (parens > 0 ? 1 : 0);
        if (tokens[first].text == "}") --depth;
        for (int d = 0; d < depth; ++d) indent += unit;
      }
      if (first != i) {
        if (tokens[i].text != indent) editor.Replace(i, i + 1, indent);
      } else if (!indent.empty()) {
        editor.InsertBefore(i, indent);
      }
    } else if (tokens[i].kind == TokenKind::kWhitespace && i + 1 < tokens.size() &&
               tokens[i + 1].kind == TokenKind::kNewline) {
      editor.Replace(i, i + 1, "");
    }
    const Token& t = tokens[i];
    if (!t.IsSignificant() || t.in_directive) continue;
    if (t.text == "{") ++braces;
    if (t.text == "}") braces = std::max(0, braces - 1);
    if (t.text == "(" || t.text == "[") ++parens;
    if (t.text == ")" || t.text == "]") parens = std::max(0, parens - 1);
  }
  Outcome out{editor.Render(), {}, {}, {}};
  if (out.text == ctx.unit.text) out.notes.push_back("no-op: already formatted");
  return out;
}

}  // namespace transcheck::perturb
