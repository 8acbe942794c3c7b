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

#include "transcheck/corpus/c_type.h"

#include <array>
#include <utility>

#include <fmt/core.h>

namespace transcheck::corpus {

namespace {

constexpr std::array<std::pair<ScalarKind, std::string_view>, 12> kNames = {{
    {ScalarKind::kI8, "i8"},
    {ScalarKind::kI16, "i16"},
    {ScalarKind::kI32, "i32"},
    {ScalarKind::kI64, "i64"},
    {ScalarKind::kU8, "u8"},
    {ScalarKind::kU16, "u16"},
    {ScalarKind::kU32, "u32"},
    {ScalarKind::kU64, "u64"},
    {ScalarKind::kF32, "f32"},
    {ScalarKind::kF64, "f64"},
    {ScalarKind::kBool, "bool"},
    {ScalarKind::kChar, "char"},
}};

}  // namespace

CType CType::Void() {
  CType t;
  t.shape = TypeShape::kVoid;
  t.spelling = "void";
  return t;
}

CType CType::Scalar(ScalarKind kind) {
  CType t;
  t.shape = TypeShape::kScalar;
  t.scalar = kind;
  t.spelling = std::string(ScalarName(kind));
  return t;
}

CType CType::Pointer(ScalarKind element, bool is_const) {
  CType t;
  t.shape = TypeShape::kPointer;
  t.scalar = element;
  t.is_const = is_const;
  t.spelling = fmt::format("{}{} *", is_const ? "const " : "",
                           ScalarName(element));
  return t;
}

CType CType::Array(ScalarKind element, std::size_t extent) {
  CType t;
  t.shape = TypeShape::kArray;
  t.scalar = element;
  t.extent = extent;
  t.spelling = fmt::format("{}[{}]", ScalarName(element), extent);
  return t;
}

CType CType::String(bool is_const, std::size_t capacity) {
  CType t;
  t.shape = TypeShape::kString;
  t.scalar = ScalarKind::kChar;
  t.is_const = is_const;
  t.extent = capacity;
  t.spelling = is_const ? "const char *" : "char *";
  return t;
}

CType CType::Unsupported(std::string spelling) {
  CType t;
  t.shape = TypeShape::kUnsupported;
  t.spelling = std::move(spelling);
  return t;
}

bool CType::operator==(const CType& other) const {
  if (shape != other.shape) {
    return false;
  }
  switch (shape) {
    case TypeShape::kVoid:
      return true;
    case TypeShape::kScalar:
      return scalar == other.scalar;
    case TypeShape::kPointer:
      return scalar == other.scalar && is_const == other.is_const;
    case TypeShape::kArray:
      return scalar == other.scalar && extent == other.extent;
    case TypeShape::kString:
      return is_const == other.is_const && extent == other.extent;
    case TypeShape::kUnsupported:
      return spelling == other.spelling;
  }
  return false;
}

std::size_t ScalarSize(ScalarKind kind) {
  switch (kind) {
    case ScalarKind::kI8:
    case ScalarKind::kU8:
    case ScalarKind::kBool:
    case ScalarKind::kChar:
      return 1;
    case ScalarKind::kI16:
    case ScalarKind::kU16:
      return 2;
    case ScalarKind::kI32:
    case ScalarKind::kU32:
    case ScalarKind::kF32:
      return 4;
    case ScalarKind::kI64:
    case ScalarKind::kU64:
    case ScalarKind::kF64:
      return 8;
  }
  return 4;
}

bool IsFloat(ScalarKind kind) {
  return kind == ScalarKind::kF32 || kind == ScalarKind::kF64;
}

bool IsSigned(ScalarKind kind) {
  switch (kind) {
    case ScalarKind::kI8:
    case ScalarKind::kI16:
    case ScalarKind::kI32:
    case ScalarKind::kI64:
    case ScalarKind::kChar:  // plain char is signed on the supported targets
    case ScalarKind::kF32:
    case ScalarKind::kF64:
      return true;
    default:
      return false;
  }
}

std::string_view ScalarName(ScalarKind kind) {
  for (const auto& [k, name] : kNames) {
    if (k == kind) {
      return name;
    }
  }
  return "i32";
}

std::optional<ScalarKind> ParseScalarName(std::string_view name) {
  for (const auto& [k, n] : kNames) {
    if (n == name) {
      return k;
    }
  }
  return std::nullopt;
}

std::string Describe(const CType& type) {
  switch (type.shape) {
    case TypeShape::kVoid:
      return "void";
    case TypeShape::kScalar:
      return std::string(ScalarName(type.scalar));
    case TypeShape::kPointer:
      return fmt::format("ptr<{}{}>", type.is_const ? "const " : "",
                         ScalarName(type.scalar));
    case TypeShape::kArray:
      return fmt::format("array<{},{}>", ScalarName(type.scalar), type.extent);
    case TypeShape::kString:
      return type.is_const ? "const str" : "str";
    case TypeShape::kUnsupported:
      return "unsupported<" + type.spelling + ">";
  }
  return "unsupported";
}

}  // namespace transcheck::corpus
