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

#include "transcheck/corpus/c_parser.h"

#include <charconv>
#include <unordered_map>
#include <unordered_set>

#include <fmt/core.h>

#include "transcheck/support/text.h"

namespace transcheck::corpus {

namespace {

constexpr std::size_t kNpos = static_cast<std::size_t>(-1);

const std::unordered_map<std::string_view, ScalarKind>& FixedWidthTypedefs() {
  static const std::unordered_map<std::string_view, ScalarKind> kMap = {
      {"int8_t", ScalarKind::kI8},      {"int16_t", ScalarKind::kI16},
      {"int32_t", ScalarKind::kI32},    {"int64_t", ScalarKind::kI64},
      {"uint8_t", ScalarKind::kU8},     {"uint16_t", ScalarKind::kU16},
      {"uint32_t", ScalarKind::kU32},   {"uint64_t", ScalarKind::kU64},
      {"size_t", ScalarKind::kU64},     {"ssize_t", ScalarKind::kI64},
      {"ptrdiff_t", ScalarKind::kI64},  {"intptr_t", ScalarKind::kI64},
      {"uintptr_t", ScalarKind::kU64},  {"bool", ScalarKind::kBool},
      {"int_least8_t", ScalarKind::kI8}, {"uint_least8_t", ScalarKind::kU8},
      {"int_fast8_t", ScalarKind::kI8}, {"uint_fast8_t", ScalarKind::kU8},
  };
  return kMap;
}

bool IsStorageWord(std::string_view w) {
  static const std::unordered_set<std::string_view> kWords = {
      "typedef",  "static",     "extern",       "inline",
      "register", "auto",       "_Noreturn",    "_Thread_local",
      "__inline", "__inline__", "__extension__"};
  return kWords.count(w) > 0;
}

bool IsQualifierWord(std::string_view w) {
  static const std::unordered_set<std::string_view> kWords = {
      "const",      "volatile",     "restrict", "__restrict",
      "__restrict__", "_Atomic",    "__const"};
  return kWords.count(w) > 0;
}

bool IsTypeWord(std::string_view w) {
  static const std::unordered_set<std::string_view> kWords = {
      "void",   "char",     "short",   "int",     "long",    "float",
      "double", "signed",   "unsigned", "_Bool",  "_Complex", "__signed__"};
  return kWords.count(w) > 0;
}

std::optional<std::size_t> ParseExtent(std::string_view text,
                                       const ParsedFile& file) {
  std::string_view t = text;
  while (!t.empty() && (t.back() == 'u' || t.back() == 'U' || t.back() == 'l' ||
                        t.back() == 'L')) {
    t.remove_suffix(1);
  }
  unsigned long long value = 0;
  int base = 10;
  if (StartsWith(t, "0x") || StartsWith(t, "0X")) {
    t.remove_prefix(2);
    base = 16;
  }
  auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value, base);
  if (ec == std::errc() && ptr == t.data() + t.size() && !t.empty()) {
    return static_cast<std::size_t>(value);
  }
  for (const MacroDecl& macro : file.macros) {
    if (!macro.function_like && macro.name == text) {
      std::string body(Trim(macro.body));
      if (body != text && !body.empty()) {
        return ParseExtent(body, file);
      }
    }
  }
  return std::nullopt;
}

struct DeclSpec {
  bool is_typedef = false;
  bool is_static = false;
  bool is_extern = false;
  bool is_const = false;
  CType base = CType::Unsupported("");
};

struct Declarator {
  std::string name;
  std::optional<std::size_t> name_token;
  int pointer_depth = 0;
  bool function_pointer = false;
  std::vector<std::optional<std::size_t>> extents;
  bool is_function = false;
  std::size_t params_open = kNpos;
  std::size_t params_close = kNpos;
  std::size_t begin = kNpos;
  std::size_t end = kNpos;
};

class Parser {
 public:
  explicit Parser(ParsedFile& file) : file_(file), tokens_(file.tokens) {}

  void Run() {
    ScanDirectives();
    ScanTopLevel();
  }

 private:
  std::size_t Next(std::size_t from) const {
    return NextSignificant(tokens_, from);
  }

  void ScanDirectives() {
    for (std::size_t i = 0; i < tokens_.size(); ++i) {
      const Token& t = tokens_[i];
      if (!(t.in_directive && t.Is("#"))) {
        continue;
      }
      std::size_t name = NextSignificant(tokens_, i + 1, true);
      if (name >= tokens_.size() || !tokens_[name].in_directive) {
        continue;
      }
      const std::string& directive = tokens_[name].text;
      std::size_t arg = NextSignificant(tokens_, name + 1, true);
      bool has_arg = arg < tokens_.size() && tokens_[arg].in_directive;
      if ((directive == "include" || directive == "include_next") && has_arg) {
        file_.includes.push_back(tokens_[arg].text);
      } else if (directive == "define" && has_arg) {
        MacroDecl macro;
        macro.name = tokens_[arg].text;
        macro.name_token = arg;
        std::size_t body_start = arg + 1;
        if (arg + 1 < tokens_.size() && tokens_[arg + 1].Is("(") &&
            tokens_[arg + 1].in_directive) {
          macro.function_like = true;
          std::size_t j = arg + 2;
          while (j < tokens_.size() && tokens_[j].in_directive &&
                 tokens_[j].kind != TokenKind::kNewline &&
                 !tokens_[j].Is(")")) {
            if (tokens_[j].kind == TokenKind::kIdentifier ||
                tokens_[j].Is("...")) {
              macro.params.push_back(tokens_[j].text);
            }
            ++j;
          }
          body_start = j + 1;
        }
        std::string body;
        for (std::size_t j = body_start;
             j < tokens_.size() && tokens_[j].in_directive &&
             tokens_[j].kind != TokenKind::kNewline;
             ++j) {
          body += tokens_[j].text;
        }
        macro.body = std::string(Trim(body));
        file_.macros.push_back(std::move(macro));
      }
    }
  }

  void ScanTopLevel() {
    std::size_t i = Next(0);
    while (i < tokens_.size()) {
      std::size_t start = i;
      bool saw_eq = false;
      std::size_t last_paren_close = kNpos;
      bool finished = false;
      while (i < tokens_.size()) {
        const Token& t = tokens_[i];
        if (t.Is("(") || t.Is("[")) {
          std::size_t j = MatchBracket(tokens_, i);
          if (j == kNpos) {
            Error(t, "unbalanced '" + t.text + "'");
            return;
          }
          if (t.Is("(")) {
            last_paren_close = j;
          }
          i = Next(j + 1);
          continue;
        }
        if (t.Is("=")) {
          saw_eq = true;
        }
        if (t.Is("{")) {
          std::size_t j = MatchBracket(tokens_, i);
          if (j == kNpos) {
            Error(t, "unbalanced '{'");
            return;
          }
          std::size_t prev = PrevSignificant(tokens_, i);
          if (!saw_eq && prev != kNpos && prev == last_paren_close &&
              !tokens_[start].Is("typedef")) {
            HandleFunctionDefinition(start, i, j);
            i = Next(j + 1);
            finished = true;
            break;
          }
          i = Next(j + 1);
          continue;
        }
        if (t.Is(";")) {
          HandleDeclaration(start, i);
          i = Next(i + 1);
          finished = true;
          break;
        }
        if (t.Is(")") || t.Is("]") || t.Is("}")) {
          Error(t, "unexpected '" + t.text + "'");
          return;
        }
        i = Next(i + 1);
      }
      if (!finished && start < tokens_.size()) {
        Error(tokens_[start], "unterminated declaration");
        return;
      }
    }
  }

  void Error(const Token& at, const std::string& message) {
    file_.errors.push_back(fmt::format("line {}: {}", at.line, message));
  }

  // Collects significant, non-directive token indices in [begin, end).
  std::vector<std::size_t> Collect(std::size_t begin, std::size_t end) const {
    std::vector<std::size_t> out;
    for (std::size_t i = begin; i < end && i < tokens_.size(); ++i) {
      if (tokens_[i].IsSignificant() && !tokens_[i].in_directive) {
        out.push_back(i);
      }
    }
    return out;
  }

  bool KnownTypedef(std::string_view name) const {
    return file_.typedefs.count(std::string(name)) > 0 ||
           FixedWidthTypedefs().count(name) > 0;
  }

  // Skips a bracket group starting at ids[k]; returns the position after it.
  std::size_t SkipGroup(const std::vector<std::size_t>& ids,
                        std::size_t k) const {
    std::size_t close = MatchBracket(tokens_, ids[k]);
    while (k < ids.size() && ids[k] <= close) {
      ++k;
    }
    return k;
  }

  DeclSpec ParseSpec(const std::vector<std::size_t>& ids, std::size_t& k) {
    DeclSpec spec;
    int longs = 0;
    bool is_signed = false, is_unsigned = false, saw_char = false,
         saw_short = false, saw_int = false, saw_float = false,
         saw_double = false, saw_void = false, saw_bool = false,
         saw_complex = false;
    std::optional<CType> named;
    std::string spelling;
    auto any_type = [&] {
      return longs || is_signed || is_unsigned || saw_char || saw_short ||
             saw_int || saw_float || saw_double || saw_void || saw_bool ||
             named.has_value();
    };
    while (k < ids.size()) {
      const Token& t = tokens_[ids[k]];
      const std::string& w = t.text;
      if (w == "__attribute__" || w == "__declspec" || w == "__asm__") {
        ++k;
        if (k < ids.size() && tokens_[ids[k]].Is("(")) {
          k = SkipGroup(ids, k);
        }
        continue;
      }
      if (IsStorageWord(w)) {
        spec.is_typedef |= w == "typedef";
        spec.is_static |= w == "static";
        spec.is_extern |= w == "extern";
        ++k;
        continue;
      }
      if (IsQualifierWord(w)) {
        spec.is_const |= w == "const" || w == "__const";
        ++k;
        continue;
      }
      if (IsTypeWord(w)) {
        spelling += (spelling.empty() ? "" : " ") + w;
        if (w == "long") ++longs;
        is_signed |= w == "signed" || w == "__signed__";
        is_unsigned |= w == "unsigned";
        saw_char |= w == "char";
        saw_short |= w == "short";
        saw_int |= w == "int";
        saw_float |= w == "float";
        saw_double |= w == "double";
        saw_void |= w == "void";
        saw_bool |= w == "_Bool";
        saw_complex |= w == "_Complex";
        ++k;
        continue;
      }
      if (w == "struct" || w == "union" || w == "enum") {
        std::string tag = w;
        ++k;
        if (k < ids.size() && tokens_[ids[k]].kind == TokenKind::kIdentifier) {
          tag += " " + tokens_[ids[k]].text;
          ++k;
        }
        if (k < ids.size() && tokens_[ids[k]].Is("{")) {
          k = SkipGroup(ids, k);
        }
        named = CType::Unsupported(tag);
        continue;
      }
      if (t.kind == TokenKind::kIdentifier && !any_type()) {
        bool next_is_declarator =
            k + 1 < ids.size() &&
            (tokens_[ids[k + 1]].kind == TokenKind::kIdentifier ||
             tokens_[ids[k + 1]].Is("*") ||
             tokens_[ids[k + 1]].kind == TokenKind::kKeyword);
        if (KnownTypedef(w) || next_is_declarator) {
          auto user = file_.typedefs.find(w);
          if (user != file_.typedefs.end()) {
            named = user->second;
          } else if (auto fixed = FixedWidthTypedefs().find(w);
                     fixed != FixedWidthTypedefs().end()) {
            named = CType::Scalar(fixed->second);
          } else {
            named = CType::Unsupported(w);
          }
          ++k;
          continue;
        }
      }
      break;
    }

    if (named) {
      spec.base = *named;
    } else if (saw_complex || (saw_double && longs > 0)) {
      spec.base = CType::Unsupported(spelling);
    } else if (saw_void) {
      spec.base = CType::Void();
    } else if (saw_bool) {
      spec.base = CType::Scalar(ScalarKind::kBool);
    } else if (saw_char) {
      spec.base = CType::Scalar(is_unsigned ? ScalarKind::kU8
                                : is_signed ? ScalarKind::kI8
                                            : ScalarKind::kChar);
    } else if (saw_float) {
      spec.base = CType::Scalar(ScalarKind::kF32);
    } else if (saw_double) {
      spec.base = CType::Scalar(ScalarKind::kF64);
    } else if (saw_short) {
      spec.base =
          CType::Scalar(is_unsigned ? ScalarKind::kU16 : ScalarKind::kI16);
    } else if (longs > 0) {
      spec.base =
          CType::Scalar(is_unsigned ? ScalarKind::kU64 : ScalarKind::kI64);
    } else if (saw_int || is_signed || is_unsigned) {
      spec.base =
          CType::Scalar(is_unsigned ? ScalarKind::kU32 : ScalarKind::kI32);
    } else {
      spec.base = CType::Unsupported("<implicit>");
    }
    return spec;
  }

  // Parses one declarator from ids[k] up to a top-level ',' or the end.
  Declarator ParseDeclarator(const std::vector<std::size_t>& ids,
                             std::size_t& k) {
    Declarator d;
    d.begin = k < ids.size() ? ids[k] : kNpos;
    while (k < ids.size()) {
      const Token& t = tokens_[ids[k]];
      if (t.Is("*")) {
        ++d.pointer_depth;
        ++k;
      } else if (IsQualifierWord(t.text) || t.text == "__attribute__") {
        if (t.text == "__attribute__" && k + 1 < ids.size()) {
          k = SkipGroup(ids, k + 1);
        } else {
          ++k;
        }
      } else {
        break;
      }
    }
    if (k < ids.size() && tokens_[ids[k]].Is("(")) {
      // Parenthesized declarator: (*fp)(...) or (name).
      std::size_t close = MatchBracket(tokens_, ids[k]);
      for (std::size_t j = k + 1; j < ids.size() && ids[j] < close; ++j) {
        if (tokens_[ids[j]].Is("*")) {
          d.function_pointer = true;
        }
        if (tokens_[ids[j]].kind == TokenKind::kIdentifier && d.name.empty()) {
          d.name = tokens_[ids[j]].text;
          d.name_token = ids[j];
        }
      }
      k = SkipGroup(ids, k);
    } else if (k < ids.size() &&
               tokens_[ids[k]].kind == TokenKind::kIdentifier) {
      d.name = tokens_[ids[k]].text;
      d.name_token = ids[k];
      ++k;
    }
    while (k < ids.size()) {
      const Token& t = tokens_[ids[k]];
      if (t.Is("[")) {
        std::size_t close = MatchBracket(tokens_, ids[k]);
        std::string inner;
        for (std::size_t j = k + 1; j < ids.size() && ids[j] < close; ++j) {
          inner += tokens_[ids[j]].text;
        }
        inner = std::string(Trim(inner));
        if (inner.empty()) {
          d.extents.push_back(std::nullopt);
        } else {
          d.extents.push_back(ParseExtent(inner, file_));
        }
        k = SkipGroup(ids, k);
      } else if (t.Is("(")) {
        if (d.is_function) {
          d.function_pointer = true;  // returns a function: unsupported
        }
        d.is_function = true;
        d.params_open = ids[k];
        d.params_close = MatchBracket(tokens_, ids[k]);
        k = SkipGroup(ids, k);
      } else if (t.text == "__attribute__" || t.text == "__asm__" ||
                 t.text == "asm") {
        k = k + 1 < ids.size() ? SkipGroup(ids, k + 1) : k + 1;
      } else if (t.Is("=")) {
        // Initializer: skip to the top-level comma.
        while (k < ids.size() && !tokens_[ids[k]].Is(",")) {
          const Token& x = tokens_[ids[k]];
          if (x.Is("(") || x.Is("[") || x.Is("{")) {
            k = SkipGroup(ids, k);
          } else {
            ++k;
          }
        }
        break;
      } else {
        break;
      }
    }
    d.end = k < ids.size() ? ids[k] : (ids.empty() ? kNpos : ids.back() + 1);
    return d;
  }

  CType Compose(const DeclSpec& spec, const Declarator& d, bool in_param,
                const std::string& spelling) {
    const CType& base = spec.base;
    if (d.function_pointer) {
      return CType::Unsupported("function pointer " + spelling);
    }
    if (!base.supported()) {
      return CType::Unsupported(base.spelling.empty() ? spelling
                                                      : base.spelling);
    }
    if (base.shape == TypeShape::kVoid) {
      if (d.pointer_depth == 0 && d.extents.empty()) {
        return CType::Void();
      }
      return CType::Unsupported("void pointer " + spelling);
    }
    if (base.shape != TypeShape::kScalar) {
      if (d.pointer_depth == 0 && d.extents.empty()) {
        return base;
      }
      return CType::Unsupported(spelling);
    }
    ScalarKind scalar = base.scalar;
    if (d.pointer_depth == 0 && d.extents.empty()) {
      return CType::Scalar(scalar);
    }
    if (d.pointer_depth == 1 && d.extents.empty()) {
      if (scalar == ScalarKind::kChar) {
        return CType::String(spec.is_const);
      }
      return CType::Pointer(scalar, spec.is_const);
    }
    if (d.pointer_depth == 0 && d.extents.size() == 1) {
      const auto& extent = d.extents.front();
      if (!extent || *extent == 0) {
        if (!in_param) {
          return CType::Unsupported("array of unknown size " + spelling);
        }
        return scalar == ScalarKind::kChar ? CType::String(spec.is_const)
                                           : CType::Pointer(scalar,
                                                            spec.is_const);
      }
      if (scalar == ScalarKind::kChar) {
        return CType::String(spec.is_const, *extent);
      }
      return CType::Array(scalar, *extent);
    }
    return CType::Unsupported(spelling);
  }

  std::string Spell(std::size_t begin, std::size_t end) const {
    std::string out;
    for (std::size_t i = begin; i < end && i < tokens_.size(); ++i) {
      if (tokens_[i].in_directive || tokens_[i].IsComment()) {
        continue;
      }
      out += tokens_[i].kind == TokenKind::kNewline ? " " : tokens_[i].text;
    }
    return std::string(Trim(out));
  }

  std::vector<ParamDecl> ParseParams(std::size_t open, std::size_t close,
                                     bool* variadic) {
    std::vector<ParamDecl> params;
    std::vector<std::size_t> ids = Collect(open + 1, close);
    if (ids.empty()) {
      return params;
    }
    if (ids.size() == 1 && tokens_[ids[0]].Is("void")) {
      return params;
    }
    std::size_t k = 0;
    while (k < ids.size()) {
      std::size_t begin = ids[k];
      if (tokens_[ids[k]].Is("...")) {
        *variadic = true;
        ++k;
      } else {
        DeclSpec spec = ParseSpec(ids, k);
        Declarator d = ParseDeclarator(ids, k);
        // Skip anything unexpected up to the next comma.
        while (k < ids.size() && !tokens_[ids[k]].Is(",")) {
          ++k;
        }
        std::size_t end = k < ids.size() ? ids[k] : close;
        ParamDecl param;
        param.name = d.name.empty() ? fmt::format("arg{}", params.size())
                                    : d.name;
        param.name_token = d.name_token;
        param.type = Compose(spec, d, true, Spell(begin, end));
        param.begin = begin;
        param.end = end;
        params.push_back(std::move(param));
      }
      if (k < ids.size() && tokens_[ids[k]].Is(",")) {
        ++k;
      }
    }
    return params;
  }

  void HandleFunctionDefinition(std::size_t start, std::size_t body_open,
                                std::size_t body_close) {
    std::vector<std::size_t> ids = Collect(start, body_open);
    std::size_t k = 0;
    DeclSpec spec = ParseSpec(ids, k);
    Declarator d = ParseDeclarator(ids, k);
    if (d.name.empty() || !d.is_function || !d.name_token) {
      Error(tokens_[start], "cannot parse function header");
      return;
    }
    FunctionDefinition fn;
    fn.name = d.name;
    fn.is_static = spec.is_static;
    fn.header_begin = start;
    fn.name_token = *d.name_token;
    fn.params_open = d.params_open;
    fn.params_close = d.params_close;
    fn.body_open = body_open;
    fn.body_close = body_close;
    Declarator ret = d;
    ret.is_function = false;
    ret.extents.clear();
    fn.return_type = Compose(spec, ret, false, Spell(start, *d.name_token));
    fn.params = ParseParams(d.params_open, d.params_close, &fn.variadic);
    file_.functions.push_back(std::move(fn));
  }

  void HandleDeclaration(std::size_t start, std::size_t semicolon) {
    std::vector<std::size_t> ids = Collect(start, semicolon);
    if (ids.empty()) {
      return;
    }
    if (tokens_[ids[0]].text == "_Static_assert") {
      return;
    }
    std::size_t k = 0;
    DeclSpec spec = ParseSpec(ids, k);
    while (k < ids.size()) {
      std::size_t decl_begin = ids[k];
      Declarator d = ParseDeclarator(ids, k);
      while (k < ids.size() && !tokens_[ids[k]].Is(",")) {
        ++k;
      }
      std::size_t decl_end = k < ids.size() ? ids[k] : semicolon;
      if (!d.name.empty() && d.name_token) {
        std::string spelling = Spell(start, ids.front()) +
                               Spell(ids.front(), decl_end);
        (void)decl_begin;
        if (spec.is_typedef) {
          file_.typedefs[d.name] = Compose(spec, d, false, d.name);
          if (!file_.typedefs[d.name].supported()) {
            file_.typedefs[d.name].spelling = d.name;
          }
        } else if (d.is_function && !d.function_pointer) {
          FunctionPrototype proto;
          proto.name = d.name;
          proto.name_token = *d.name_token;
          proto.params_open = d.params_open;
          proto.params_close = d.params_close;
          bool variadic = false;
          proto.params = ParseParams(d.params_open, d.params_close, &variadic);
          file_.prototypes.push_back(std::move(proto));
        } else {
          VariableDecl var;
          var.name = d.name;
          var.name_token = *d.name_token;
          var.is_static = spec.is_static;
          var.is_extern = spec.is_extern;
          var.is_const = spec.is_const && d.pointer_depth == 0;
          var.type = Compose(spec, d, false, Spell(start, decl_end));
          file_.variables.push_back(std::move(var));
        }
      }
      if (k < ids.size() && tokens_[ids[k]].Is(",")) {
        ++k;
      }
    }
  }

  ParsedFile& file_;
  const std::vector<Token>& tokens_;
};

}  // namespace

const FunctionDefinition* ParsedFile::FindFunction(
    std::string_view name) const {
  for (const auto& fn : functions) {
    if (fn.name == name) {
      return &fn;
    }
  }
  return nullptr;
}

const VariableDecl* ParsedFile::FindVariable(std::string_view name) const {
  for (const auto& var : variables) {
    if (var.name == name) {
      return &var;
    }
  }
  return nullptr;
}

ParsedFile ParseFile(std::string_view source) {
  ParsedFile file;
  file.tokens = Lex(source);
  Parser(file).Run();
  return file;
}

std::size_t NextSignificant(const std::vector<Token>& tokens, std::size_t from,
                            bool include_directives) {
  for (std::size_t i = from; i < tokens.size(); ++i) {
    if (tokens[i].IsSignificant() &&
        (include_directives || !tokens[i].in_directive)) {
      return i;
    }
  }
  return tokens.size();
}

std::size_t PrevSignificant(const std::vector<Token>& tokens, std::size_t from,
                            bool include_directives) {
  for (std::size_t i = from; i-- > 0;) {
    if (tokens[i].IsSignificant() &&
        (include_directives || !tokens[i].in_directive)) {
      return i;
    }
  }
  return kNpos;
}

std::size_t MatchBracket(const std::vector<Token>& tokens, std::size_t open) {
  if (open >= tokens.size()) {
    return kNpos;
  }
  const std::string& o = tokens[open].text;
  std::string c = o == "(" ? ")" : o == "[" ? "]" : o == "{" ? "}" : "";
  if (c.empty()) {
    return kNpos;
  }
  bool directive = tokens[open].in_directive;
  int depth = 0;
  for (std::size_t i = open; i < tokens.size(); ++i) {
    const Token& t = tokens[i];
    if (!t.IsSignificant() || t.in_directive != directive) {
      continue;
    }
    if (t.text == o) {
      ++depth;
    } else if (t.text == c) {
      if (--depth == 0) {
        return i;
      }
    }
  }
  return kNpos;
}

}  // namespace transcheck::corpus
