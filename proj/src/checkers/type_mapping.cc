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

#include "transcheck/checkers/type_mapping.h"

#include <cmath>
#include <cstring>
#include <limits>
#include <stdexcept>

#include <fmt/core.h>

namespace transcheck::checkers {

using corpus::TypeShape;

namespace {

std::uint64_t ReadLe(std::span<const std::uint8_t> bytes, std::size_t n) {
  std::uint64_t v = 0;
  for (std::size_t i = 0; i < n; ++i) {
    std::uint64_t b = i < bytes.size() ? bytes[i] : 0;
    v |= b << (8 * i);
  }
  return v;
}

std::int64_t SignExtend(std::uint64_t v, std::size_t bytes) {
  if (bytes >= 8) {
    return static_cast<std::int64_t>(v);
  }
  std::uint64_t sign = std::uint64_t{1} << (bytes * 8 - 1);
  std::uint64_t mask = (sign << 1) - 1;
  v &= mask;
  return static_cast<std::int64_t>((v ^ sign) - sign);
}

template <typename T>
bool FitsSigned(std::int64_t v) {
  return v >= std::numeric_limits<T>::min() && v <= std::numeric_limits<T>::max();
}

std::string RenderFloat(double v, int digits) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return fmt::format("{:.{}g}", v, digits);
}

}  // namespace

std::string CScalarType(ScalarKind kind) {
  switch (kind) {
    case ScalarKind::kI8: return "int8_t";
    case ScalarKind::kI16: return "int16_t";
    case ScalarKind::kI32: return "int32_t";
    case ScalarKind::kI64: return "int64_t";
    case ScalarKind::kU8: return "uint8_t";
    case ScalarKind::kU16: return "uint16_t";
    case ScalarKind::kU32: return "uint32_t";
    case ScalarKind::kU64: return "uint64_t";
    case ScalarKind::kF32: return "float";
    case ScalarKind::kF64: return "double";
    case ScalarKind::kBool: return "bool";
    case ScalarKind::kChar: return "char";
  }
  return "int32_t";
}

std::string RustScalarType(ScalarKind kind) {
  switch (kind) {
    case ScalarKind::kBool: return "bool";
    case ScalarKind::kChar: return "std::os::raw::c_char";
    default: return std::string(corpus::ScalarName(kind));
  }
}

TypeMapping MapType(const CType& type) {
  TypeMapping m;
  m.c_type = type;
  switch (type.shape) {
    case TypeShape::kVoid:
      m.c_ffi_type = "void";
      m.rust_ffi_type = "()";
      m.to_rust = "none";
      m.from_rust = "none";
      return m;
    case TypeShape::kScalar:
      m.c_ffi_type = CScalarType(type.scalar);
      m.rust_ffi_type = RustScalarType(type.scalar);
      m.to_rust = fmt::format(
          "numeric `as` cast from {} to the Rust parameter type; bool and "
          "char convert through their integer values",
          m.rust_ffi_type);
      m.from_rust = fmt::format("numeric `as` cast back to {}", m.rust_ffi_type);
      return m;
    case TypeShape::kPointer:
    case TypeShape::kArray:
      m.c_ffi_type = CScalarType(type.scalar) + " *";
      m.rust_ffi_type = "*mut " + RustScalarType(type.scalar);
      m.to_rust =
          "buffer (pointer, length) viewed as a slice, reference, raw pointer "
          "or Option of those";
      m.from_rust = "pointee contents compared element-wise after the call";
      return m;
    case TypeShape::kString:
      m.c_ffi_type = "char *";
      m.rust_ffi_type = "*mut std::os::raw::c_char";
      m.to_rust =
          "NUL-terminated 7-bit buffer viewed as &str, &CStr, String, byte "
          "slice or raw pointer";
      m.from_rust = "NUL-terminated contents compared after the call";
      return m;
    case TypeShape::kUnsupported:
      break;
  }
  throw std::invalid_argument("no mapping for unsupported type " +
                              corpus::Describe(type));
}

std::vector<TypeMapping> MapSupportedTypes() {
  std::vector<TypeMapping> out;
  out.push_back(MapType(CType::Void()));
  for (int k = 0; k <= static_cast<int>(ScalarKind::kChar); ++k) {
    auto kind = static_cast<ScalarKind>(k);
    out.push_back(MapType(CType::Scalar(kind)));
    out.push_back(MapType(CType::Pointer(kind, false)));
    out.push_back(MapType(CType::Array(kind, 4)));
  }
  out.push_back(MapType(CType::String(false)));
  out.push_back(MapType(CType::String(true)));
  return out;
}

std::vector<std::uint8_t> EncodeScalar(ScalarKind kind,
                                       const ScalarValue& value) {
  std::size_t n = corpus::ScalarSize(kind);
  std::uint64_t bits = 0;
  auto need = [&](bool ok) {
    if (!ok) {
      throw std::invalid_argument("value does not fit " +
                                  std::string(corpus::ScalarName(kind)));
    }
  };
  switch (kind) {
    case ScalarKind::kI8:
    case ScalarKind::kI16:
    case ScalarKind::kI32:
    case ScalarKind::kI64:
    case ScalarKind::kChar: {
      need(std::holds_alternative<std::int64_t>(value));
      std::int64_t v = std::get<std::int64_t>(value);
      bool fits = kind == ScalarKind::kI8 || kind == ScalarKind::kChar
                      ? FitsSigned<std::int8_t>(v)
                  : kind == ScalarKind::kI16 ? FitsSigned<std::int16_t>(v)
                  : kind == ScalarKind::kI32 ? FitsSigned<std::int32_t>(v)
                                             : true;
      need(fits);
      bits = static_cast<std::uint64_t>(v);
      break;
    }
    case ScalarKind::kU8:
    case ScalarKind::kU16:
    case ScalarKind::kU32:
    case ScalarKind::kU64: {
      need(std::holds_alternative<std::uint64_t>(value));
      bits = std::get<std::uint64_t>(value);
      need(n == 8 || bits < (std::uint64_t{1} << (8 * n)));
      break;
    }
    case ScalarKind::kF32: {
      need(std::holds_alternative<float>(value));
      std::uint32_t b;
      float f = std::get<float>(value);
      std::memcpy(&b, &f, 4);
      bits = b;
      break;
    }
    case ScalarKind::kF64: {
      need(std::holds_alternative<double>(value));
      double d = std::get<double>(value);
      std::memcpy(&bits, &d, 8);
      break;
    }
    case ScalarKind::kBool:
      need(std::holds_alternative<bool>(value));
      bits = std::get<bool>(value) ? 1 : 0;
      break;
  }
  std::vector<std::uint8_t> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = static_cast<std::uint8_t>(bits >> (8 * i));
  }
  return out;
}

ScalarValue DecodeScalar(ScalarKind kind, std::span<const std::uint8_t> bytes) {
  std::size_t n = corpus::ScalarSize(kind);
  std::uint64_t raw = ReadLe(bytes, n);
  switch (kind) {
    case ScalarKind::kI8:
    case ScalarKind::kI16:
    case ScalarKind::kI32:
    case ScalarKind::kI64:
    case ScalarKind::kChar:
      return SignExtend(raw, n);
    case ScalarKind::kU8:
    case ScalarKind::kU16:
    case ScalarKind::kU32:
    case ScalarKind::kU64:
      return raw;
    case ScalarKind::kF32: {
      std::uint32_t b = static_cast<std::uint32_t>(raw);
      float f;
      std::memcpy(&f, &b, 4);
      return f;
    }
    case ScalarKind::kF64: {
      double d;
      std::memcpy(&d, &raw, 8);
      return d;
    }
    case ScalarKind::kBool:
      return (raw & 1) != 0;
  }
  return std::int64_t{0};
}

std::string RenderScalar(ScalarKind kind, const ScalarValue& value) {
  return std::visit(
      [&](auto v) -> std::string {
        using T = decltype(v);
        if constexpr (std::is_same_v<T, bool>) {
          return v ? "true" : "false";
        } else if constexpr (std::is_same_v<T, float>) {
          return RenderFloat(v, 9);
        } else if constexpr (std::is_same_v<T, double>) {
          return RenderFloat(v, 17);
        } else {
          (void)kind;
          return std::to_string(v);
        }
      },
      value);
}

bool LayoutField::writable() const {
  switch (type.shape) {
    case TypeShape::kPointer:
    case TypeShape::kString:
      return global || !type.is_const;
    case TypeShape::kArray:
      return true;
    default:
      return global;
  }
}

InputLayout ComputeLayout(const corpus::FunctionInterface& iface,
                          const HarnessLimits& limits) {
  InputLayout layout;
  auto add = [&](const corpus::NamedType& nt, bool global) {
    LayoutField f;
    f.name = nt.name;
    f.type = nt.type;
    f.global = global;
    f.offset = layout.size;
    switch (nt.type.shape) {
      case TypeShape::kScalar:
        f.element_size = corpus::ScalarSize(nt.type.scalar);
        break;
      case TypeShape::kPointer:
        f.elements = limits.pointer_extent;
        f.element_size = corpus::ScalarSize(nt.type.scalar);
        break;
      case TypeShape::kArray:
        f.elements = nt.type.extent;
        f.element_size = corpus::ScalarSize(nt.type.scalar);
        break;
      case TypeShape::kString:
        f.elements =
            nt.type.extent > 0 ? nt.type.extent : limits.string_capacity;
        f.element_size = 1;
        break;
      default:
        throw std::invalid_argument("'" + nt.name + "' has no harness layout (" +
                                    corpus::Describe(nt.type) + ")");
    }
    layout.size += f.size();
    layout.fields.push_back(std::move(f));
  };
  for (const auto& p : iface.params) add(p, false);
  for (const auto& g : iface.globals) add(g, true);
  return layout;
}

std::vector<std::string> RenderInputs(const InputLayout& layout,
                                      std::string_view bytes) {
  std::vector<std::uint8_t> in(layout.size, 0);
  std::memcpy(in.data(), bytes.data(), std::min(bytes.size(), in.size()));
  std::vector<std::string> out;
  for (const LayoutField& f : layout.fields) {
    std::span<const std::uint8_t> field(in.data() + f.offset, f.size());
    if (f.type.shape == TypeShape::kScalar) {
      out.push_back(RenderScalar(f.type.scalar, DecodeScalar(f.type.scalar, field)));
    } else if (f.type.shape == TypeShape::kString) {
      std::string s = "\"";
      for (std::size_t i = 0; i + 1 < field.size(); ++i) {
        char c = static_cast<char>(field[i] & 0x7f);
        if (c == 0) break;
        if (c == '"' || c == '\\') {
          s += '\\';
          s += c;
        } else if (c < 0x20 || c == 0x7f) {
          s += fmt::format("\\x{:02x}", static_cast<unsigned>(c));
        } else {
          s += c;
        }
      }
      out.push_back(s + "\"");
    } else {
      std::string s = "[";
      for (std::size_t i = 0; i < f.elements; ++i) {
        if (i > 0) s += ", ";
        s += RenderScalar(f.type.scalar,
                          DecodeScalar(f.type.scalar,
                                       field.subspan(i * f.element_size,
                                                     f.element_size)));
      }
      out.push_back(s + "]");
    }
  }
  return out;
}

}  // namespace transcheck::checkers
