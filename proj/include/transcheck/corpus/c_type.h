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

#ifndef TRANSCHECK_CORPUS_C_TYPE_H_
#define TRANSCHECK_CORPUS_C_TYPE_H_

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

namespace transcheck::corpus {

enum class ScalarKind {
  kI8,
  kI16,
  kI32,
  kI64,
  kU8,
  kU16,
  kU32,
  kU64,
  kF32,
  kF64,
  kBool,
  kChar,
};

enum class TypeShape {
  kVoid,     // return type only
  kScalar,
  kPointer,  // pointer to a scalar; the harness allocates a small buffer
  kArray,    // fixed-size array of scalar
  kString,   // NUL-terminated char buffer
  kUnsupported,
};

// The closed set of C types the harness knows how to feed. Anything else is
// kUnsupported and carries the original spelling so the warning can name it.
struct CType {
  TypeShape shape = TypeShape::kUnsupported;
  ScalarKind scalar = ScalarKind::kI32;
  std::size_t extent = 0;  // arrays and strings: element capacity
  bool is_const = false;   // pointee constness for pointers/strings
  std::string spelling;

  static CType Void();
  static CType Scalar(ScalarKind kind);
  static CType Pointer(ScalarKind element, bool is_const);
  static CType Array(ScalarKind element, std::size_t extent);
  static CType String(bool is_const, std::size_t capacity = 0);
  static CType Unsupported(std::string spelling);

  bool supported() const { return shape != TypeShape::kUnsupported; }
  bool operator==(const CType& other) const;
};

std::size_t ScalarSize(ScalarKind kind);
bool IsFloat(ScalarKind kind);
bool IsSigned(ScalarKind kind);
std::string_view ScalarName(ScalarKind kind);  // "i32", "f64", "bool", ...
std::optional<ScalarKind> ParseScalarName(std::string_view name);

// Stable textual form, e.g. "i32", "ptr<const u8>", "array<i16,8>", "str".
std::string Describe(const CType& type);

}  // namespace transcheck::corpus

#endif  // TRANSCHECK_CORPUS_C_TYPE_H_
