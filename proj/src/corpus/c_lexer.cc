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

#include "transcheck/corpus/c_lexer.h"

#include <algorithm>
#include <array>
#include <cctype>
#include <unordered_set>

namespace transcheck::corpus {

namespace {

constexpr std::array<std::string_view, 23> kPunctuators = {
    "...", "<<=", ">>=", "->", "++", "--", "<<", ">>", "<=", ">=", "==", "!=",
    "&&",  "||",  "*=",  "/=", "%=", "+=", "-=", "&=", "^=", "|=", "##"};

bool IsIdentStart(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}

bool IsIdentChar(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

bool IsDigit(char c) { return std::isdigit(static_cast<unsigned char>(c)); }

class Lexer {
 public:
  explicit Lexer(std::string_view source) : src_(source) {}

  std::vector<Token> Run() {
    while (pos_ < src_.size()) {
      LexOne();
    }
    return std::move(tokens_);
  }

 private:
  char Peek(std::size_t ahead = 0) const {
    return pos_ + ahead < src_.size() ? src_[pos_ + ahead] : '\0';
  }

  void Emit(TokenKind kind, std::size_t length) {
    Token token;
    token.kind = kind;
    token.text = std::string(src_.substr(pos_, length));
    token.offset = pos_;
    token.line = line_;
    token.in_directive = in_directive_;
    line_ += static_cast<int>(
        std::count(token.text.begin(), token.text.end(), '\n'));
    pos_ += length;
    if (token.IsSignificant()) {
      at_line_start_ = false;
    }
    tokens_.push_back(std::move(token));
  }

  // Length of a quoted literal starting at pos_ + prefix; stops at an
  // unescaped newline so a broken literal cannot swallow the file.
  std::size_t QuotedLength(std::size_t prefix, char quote) const {
    std::size_t i = pos_ + prefix + 1;
    while (i < src_.size()) {
      char c = src_[i];
      if (c == '\\' && i + 1 < src_.size()) {
        i += 2;
        continue;
      }
      if (c == quote) {
        return i + 1 - pos_;
      }
      if (c == '\n') {
        return i - pos_;
      }
      ++i;
    }
    return src_.size() - pos_;
  }

  void LexOne() {
    char c = Peek();
    if (c == '\n') {
      Emit(TokenKind::kNewline, 1);
      in_directive_ = false;
      at_line_start_ = true;
      expect_header_ = false;
      return;
    }
    if (c == '\r' && Peek(1) == '\n') {
      Emit(TokenKind::kNewline, 2);
      in_directive_ = false;
      at_line_start_ = true;
      expect_header_ = false;
      return;
    }
    if (c == '\\' && (Peek(1) == '\n' || (Peek(1) == '\r' && Peek(2) == '\n'))) {
      Emit(TokenKind::kContinuation, Peek(1) == '\n' ? 2 : 3);
      return;
    }
    if (c == ' ' || c == '\t' || c == '\f' || c == '\v' || c == '\r') {
      std::size_t n = 0;
      while (true) {
        char w = Peek(n);
        if (w == ' ' || w == '\t' || w == '\f' || w == '\v' ||
            (w == '\r' && Peek(n + 1) != '\n')) {
          ++n;
        } else {
          break;
        }
      }
      Emit(TokenKind::kWhitespace, n);
      return;
    }
    if (c == '/' && Peek(1) == '/') {
      std::size_t n = 2;
      while (pos_ + n < src_.size() && src_[pos_ + n] != '\n') {
        if (src_[pos_ + n] == '\r' && Peek(n + 1) == '\n') {
          break;
        }
        ++n;
      }
      Emit(TokenKind::kLineComment, n);
      return;
    }
    if (c == '/' && Peek(1) == '*') {
      std::size_t end = src_.find("*/", pos_ + 2);
      std::size_t n = end == std::string_view::npos ? src_.size() - pos_
                                                    : end + 2 - pos_;
      Emit(TokenKind::kBlockComment, n);
      return;
    }
    if (c == '#' && at_line_start_) {
      in_directive_ = true;
      Emit(TokenKind::kPunct, 1);
      directive_name_pending_ = true;
      return;
    }
    if (expect_header_ && c == '<') {
      std::size_t end = src_.find('>', pos_);
      std::size_t newline = src_.find('\n', pos_);
      if (end != std::string_view::npos && end < newline) {
        Emit(TokenKind::kHeaderName, end + 1 - pos_);
        expect_header_ = false;
        return;
      }
    }
    if (IsIdentStart(c)) {
      std::size_t n = 1;
      while (IsIdentChar(Peek(n))) {
        ++n;
      }
      std::string_view word = src_.substr(pos_, n);
      // Encoding prefixes glue onto the following literal.
      if ((word == "L" || word == "u" || word == "U" || word == "u8") &&
          (Peek(n) == '"' || Peek(n) == '\'')) {
        char quote = Peek(n);
        Emit(quote == '"' ? TokenKind::kString : TokenKind::kChar,
             QuotedLength(n, quote));
        return;
      }
      if (directive_name_pending_) {
        directive_name_pending_ = false;
        expect_header_ = word == "include" || word == "include_next";
        Emit(TokenKind::kIdentifier, n);
        return;
      }
      Emit(IsCKeyword(word) ? TokenKind::kKeyword : TokenKind::kIdentifier, n);
      return;
    }
    directive_name_pending_ = false;
    if (IsDigit(c) || (c == '.' && IsDigit(Peek(1)))) {
      std::size_t n = 1;
      while (true) {
        char d = Peek(n);
        if ((d == '+' || d == '-') &&
            (Peek(n - 1) == 'e' || Peek(n - 1) == 'E' || Peek(n - 1) == 'p' ||
             Peek(n - 1) == 'P')) {
          ++n;
        } else if (IsIdentChar(d) || d == '.') {
          ++n;
        } else {
          break;
        }
      }
      Emit(TokenKind::kNumber, n);
      return;
    }
    if (c == '"') {
      expect_header_ = false;
      Emit(TokenKind::kString, QuotedLength(0, '"'));
      return;
    }
    if (c == '\'') {
      Emit(TokenKind::kChar, QuotedLength(0, '\''));
      return;
    }
    for (std::string_view punct : kPunctuators) {
      if (src_.substr(pos_, punct.size()) == punct) {
        Emit(TokenKind::kPunct, punct.size());
        return;
      }
    }
    if (std::string_view("{}[]()<>;:,.?!~+-*/%&|^=#").find(c) !=
        std::string_view::npos) {
      Emit(TokenKind::kPunct, 1);
      return;
    }
    Emit(TokenKind::kUnknown, 1);
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  int line_ = 1;
  bool at_line_start_ = true;
  bool in_directive_ = false;
  bool directive_name_pending_ = false;
  bool expect_header_ = false;
  std::vector<Token> tokens_;
};

}  // namespace

std::vector<Token> Lex(std::string_view source) { return Lexer(source).Run(); }

std::string Render(const std::vector<Token>& tokens) {
  std::string out;
  for (const Token& token : tokens) {
    out += token.text;
  }
  return out;
}

bool IsCKeyword(std::string_view word) {
  static const std::unordered_set<std::string_view> kKeywords = {
      "auto",       "break",     "case",           "char",
      "const",      "continue",  "default",        "do",
      "double",     "else",      "enum",           "extern",
      "float",      "for",       "goto",           "if",
      "inline",     "int",       "long",           "register",
      "restrict",   "return",    "short",          "signed",
      "sizeof",     "static",    "struct",         "switch",
      "typedef",    "union",     "unsigned",       "void",
      "volatile",   "while",     "_Alignas",       "_Alignof",
      "_Atomic",    "_Bool",     "_Complex",       "_Generic",
      "_Imaginary", "_Noreturn", "_Static_assert", "_Thread_local"};
  return kKeywords.count(word) > 0;
}

}  // namespace transcheck::corpus
