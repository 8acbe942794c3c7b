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

#ifndef TRANSCHECK_CHECKERS_TYPE_MAPPING_H_
#define TRANSCHECK_CHECKERS_TYPE_MAPPING_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "transcheck/corpus/c_type.h"
#include "transcheck/corpus/source_unit.h"

namespace transcheck::checkers {

using corpus::CType;
using corpus::ScalarKind;

// How one supported C type crosses the foreign function interface.
struct TypeMapping {
  CType c_type;
  std::string c_ffi_type;     // spelling used in the generated C code
  std::string rust_ffi_type;  // spelling in the extern "C" shim
  std::string to_rust;        // conversion applied before the Rust call
  std::string from_rust;      // conversion applied to Rust results
};

// Throws std::invalid_argument for unsupported types.
TypeMapping MapType(const CType& type);
std::vector<TypeMapping> MapSupportedTypes();

std::string CScalarType(ScalarKind kind);     // "int32_t", "double", ...
std::string RustScalarType(ScalarKind kind);  // "i32", "f64", ...

// Scalar values as the harness decodes them from fuzzer bytes: signed
// integers and char as int64, unsigned as uint64, floats by value, bool.
using ScalarValue = std::variant<std::int64_t, std::uint64_t, float, double, bool>;

// Little-endian, ScalarSize(kind) bytes. bool and char take one byte.
// Throws std::invalid_argument when the value does not fit the kind.
std::vector<std::uint8_t> EncodeScalar(ScalarKind kind, const ScalarValue& value);
// Missing bytes read as zero. bool keeps only the low bit.
ScalarValue DecodeScalar(ScalarKind kind, std::span<const std::uint8_t> bytes);
// Same formatting the generated harness uses in its reports.
std::string RenderScalar(ScalarKind kind, const ScalarValue& value);

struct HarnessLimits {
  std::size_t pointer_extent = 4;    // elements behind each scalar pointer
  std::size_t string_capacity = 16;  // bytes for char* (including the NUL)
};

struct LayoutField {
  std::string name;
  CType type;
  bool global = false;
  std::size_t offset = 0;
  std::size_t elements = 1;  // 1 for scalars
  std::size_t element_size = 0;
  std::size_t size() const { return elements * element_size; }
  bool is_buffer() const { return type.shape != corpus::TypeShape::kScalar; }
  bool writable() const;
};

// Parameters in declaration order, then globals. Fields are packed without
// padding.
struct InputLayout {
  std::vector<LayoutField> fields;
  std::size_t size = 0;
};

InputLayout ComputeLayout(const corpus::FunctionInterface& iface,
                          const HarnessLimits& limits);

// Decodes the harness input the way the generated driver does: zero padding
// for short inputs, strings masked to 7 bits with a forced final NUL.
// Each entry renders one field.
std::vector<std::string> RenderInputs(const InputLayout& layout,
                                      std::string_view bytes);

}  // namespace transcheck::checkers

#endif  // TRANSCHECK_CHECKERS_TYPE_MAPPING_H_
