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

#include "transcheck/checkers/harness_generator.h"

#include <cctype>
#include <regex>
#include <set>

#include <fmt/core.h>

#include "harness_runtime.h"
#include "transcheck/corpus/c_parser.h"
#include "transcheck/support/text.h"

namespace transcheck::checkers {

using corpus::FunctionInterface;
using corpus::NamedType;
using corpus::TypeShape;

namespace {

constexpr const char* kStdHeaders[] = {
    "assert.h", "ctype.h",  "errno.h",  "float.h",  "inttypes.h", "limits.h",
    "math.h",   "setjmp.h", "signal.h", "stdarg.h", "stdbool.h",  "stddef.h",
    "stdint.h", "stdio.h",  "stdlib.h", "string.h", "time.h"};

bool IsBuffer(const CType& t) {
  return t.shape == TypeShape::kPointer || t.shape == TypeShape::kArray ||
         t.shape == TypeShape::kString;
}

std::string CValueType(const CType& t) {
  return t.shape == TypeShape::kVoid ? "void" : CScalarType(t.scalar);
}

// "int32_t p0, void *p1, size_t p1_n"
std::string CParamList(const FunctionInterface& f, bool status) {
  std::vector<std::string> parts;
  for (std::size_t i = 0; i < f.params.size(); ++i) {
    const CType& t = f.params[i].type;
    if (IsBuffer(t)) {
      parts.push_back(fmt::format("void *p{}", i));
      parts.push_back(fmt::format("size_t p{}_n", i));
    } else {
      parts.push_back(fmt::format("{} p{}", CScalarType(t.scalar), i));
    }
  }
  if (status) parts.push_back("int32_t *tc_st");
  return parts.empty() ? "void" : Join(parts, ", ");
}

std::vector<NamedType> UnionGlobals(
    const std::vector<const FunctionInterface*>& targets) {
  std::vector<NamedType> out;
  std::set<std::string> seen;
  for (const FunctionInterface* f : targets) {
    for (const NamedType& g : f->globals) {
      if (seen.insert(g.name).second) out.push_back(g);
    }
  }
  return out;
}

std::size_t FieldBytes(const CType& t) {
  HarnessLimits limits;
  FunctionInterface probe;
  probe.globals.push_back({"g", t});
  return ComputeLayout(probe, limits).size;
}

int KindCode(const CType& t) {
  return t.shape == TypeShape::kString ? static_cast<int>(ScalarKind::kChar)
                                       : static_cast<int>(t.scalar);
}

const char* ShapeCode(const CType& t) {
  switch (t.shape) {
    case TypeShape::kString: return "TC_STRING";
    case TypeShape::kPointer:
    case TypeShape::kArray: return "TC_ARRAY";
    default: return "TC_SCALAR";
  }
}

std::string RustElemType(const CType& t) {
  if (t.shape == TypeShape::kString) return "i8";
  if (t.scalar == ScalarKind::kChar) return "i8";
  return std::string(corpus::ScalarName(t.scalar));
}

std::string RustValueType(const CType& t) {
  return t.shape == TypeShape::kVoid ? "()" : RustElemType(t);
}

bool HasRustFn(std::string_view src, const std::string& name) {
  std::regex re("\\bfn\\s+" + name + "\\s*[<(]");
  return std::regex_search(src.begin(), src.end(), re);
}

std::string ResolveRustFn(std::string_view src, const std::string& name) {
  if (HasRustFn(src, name)) return name;
  std::string snake = ToSnakeCase(name);
  if (snake != name && HasRustFn(src, snake)) return snake;
  return name;
}

enum class GlobalForm { kStaticMut, kAtomic, kMutex, kRwLock, kCell, kRefCell };

struct RustGlobal {
  std::string name;
  GlobalForm form = GlobalForm::kStaticMut;
};

std::string StripPath(std::string type) {
  // "std::sync::Mutex<..>" -> "Mutex<..>"
  std::size_t lt = type.find('<');
  std::size_t cut = type.rfind("::", lt);
  if (cut != std::string::npos) type = type.substr(cut + 2);
  return type;
}

std::optional<RustGlobal> FindRustGlobal(std::string_view src,
                                         const std::string& c_name) {
  std::vector<std::string> candidates = {c_name};
  std::string upper;
  for (char c : c_name) upper += static_cast<char>(std::toupper(c));
  std::string upper_snake;
  for (char c : ToSnakeCase(c_name)) {
    upper_snake += static_cast<char>(std::toupper(c));
  }
  for (const std::string& c : {upper, upper_snake}) {
    if (std::find(candidates.begin(), candidates.end(), c) == candidates.end()) {
      candidates.push_back(c);
    }
  }
  for (const std::string& name : candidates) {
    std::regex re("\\bstatic\\s+(mut\\s+)?" + name + "\\s*:\\s*([^=;]+)");
    std::match_results<std::string_view::const_iterator> m;
    if (!std::regex_search(src.begin(), src.end(), m, re)) continue;
    RustGlobal g;
    g.name = name;
    std::string type = StripPath(std::string(m[2].first, m[2].second));
    bool is_mut = m[1].matched;
    if (is_mut) {
      g.form = GlobalForm::kStaticMut;
    } else if (type.rfind("Atomic", 0) == 0) {
      g.form = GlobalForm::kAtomic;
    } else if (type.rfind("Mutex<", 0) == 0) {
      g.form = GlobalForm::kMutex;
    } else if (type.rfind("RwLock<", 0) == 0) {
      g.form = GlobalForm::kRwLock;
    } else if (type.rfind("Cell<", 0) == 0) {
      g.form = GlobalForm::kCell;
    } else if (type.rfind("RefCell<", 0) == 0) {
      g.form = GlobalForm::kRefCell;
    } else {
      throw HarnessError("global '" + c_name +
                         "' is immutable in the Rust translation (static " +
                         name + ")");
    }
    return g;
  }
  return std::nullopt;
}

std::string RustGlobalAccess(const NamedType& c_global, const RustGlobal& g) {
  const bool array = c_global.type.shape != TypeShape::kScalar;
  const std::string et = RustElemType(c_global.type);
  const std::size_t n = FieldBytes(c_global.type) /
                        (c_global.type.shape == TypeShape::kString
                             ? 1
                             : corpus::ScalarSize(c_global.type.scalar));
  const std::string path = "super::" + g.name;
  std::string set, get;
  auto set_loop = [&](const std::string& place) {
    return fmt::format(
        "    for (i, slot) in {}.iter_mut().enumerate().take({}) {{\n"
        "        let v: {} = std::ptr::read_unaligned((src as *const {}).add(i));\n"
        "        *slot = v.tc();\n"
        "    }}\n",
        place, n, et, et);
  };
  auto get_loop = [&](const std::string& place) {
    return fmt::format(
        "    for (i, slot) in {}.iter().enumerate().take({}) {{\n"
        "        let v: {} = (*slot).tc();\n"
        "        std::ptr::write_unaligned((dst as *mut {}).add(i), v);\n"
        "    }}\n",
        place, n, et, et);
  };
  const std::string read1 = fmt::format(
      "    let v: {} = std::ptr::read_unaligned(src as *const {});\n", et, et);
  const std::string write1 = fmt::format(
      "    std::ptr::write_unaligned(dst as *mut {}, v);\n", et);
  switch (g.form) {
    case GlobalForm::kStaticMut:
      if (array) {
        set = "    let g = &mut *std::ptr::addr_of_mut!(" + path + ");\n" +
              set_loop("g");
        get = "    let g = &*std::ptr::addr_of!(" + path + ");\n" + get_loop("g");
      } else {
        set = read1 + "    *std::ptr::addr_of_mut!(" + path + ") = v.tc();\n";
        get = fmt::format("    let v: {} = (*std::ptr::addr_of!({})).tc();\n",
                          et, path) +
              write1;
      }
      break;
    case GlobalForm::kAtomic:
      if (array) throw HarnessError("atomic array global '" + g.name + "'");
      set = read1 + "    " + path +
            ".store(v.tc(), std::sync::atomic::Ordering::SeqCst);\n";
      get = fmt::format(
                "    let v: {} = {}.load(std::sync::atomic::Ordering::SeqCst)"
                ".tc();\n",
                et, path) +
            write1;
      break;
    case GlobalForm::kMutex:
    case GlobalForm::kRwLock: {
      std::string wr = g.form == GlobalForm::kMutex ? "lock" : "write";
      std::string rd = g.form == GlobalForm::kMutex ? "lock" : "read";
      std::string wg = fmt::format(
          "    let mut g = {}.{}().unwrap_or_else(|e| e.into_inner());\n", path,
          wr);
      std::string rg = fmt::format(
          "    let g = {}.{}().unwrap_or_else(|e| e.into_inner());\n", path, rd);
      if (array) {
        set = wg + set_loop("g");
        get = rg + get_loop("g");
      } else {
        set = read1 + wg + "    *g = v.tc();\n";
        get = rg + fmt::format("    let v: {} = (*g).tc();\n", et) + write1;
      }
      break;
    }
    case GlobalForm::kCell:
      if (array) throw HarnessError("Cell array global '" + g.name + "'");
      set = read1 + "    " + path + ".with(|c| c.set(v.tc()));\n";
      get = fmt::format("    let v: {} = {}.with(|c| c.get()).tc();\n", et,
                        path) +
            write1;
      break;
    case GlobalForm::kRefCell:
      if (array) {
        set = "    " + path + ".with(|c| {\n    let mut g = c.borrow_mut();\n" +
              set_loop("g") + "    });\n";
        get = "    " + path + ".with(|c| {\n    let g = c.borrow();\n" +
              get_loop("g") + "    });\n";
      } else {
        set = read1 + "    " + path + ".with(|c| *c.borrow_mut() = v.tc());\n";
        get = fmt::format("    let v: {} = {}.with(|c| *c.borrow()).tc();\n",
                          et, path) +
              write1;
      }
      break;
  }
  return fmt::format(
      "#[no_mangle]\n"
      "pub unsafe extern \"C\" fn tc_b_set_{0}(src: *const u8) {{\n{1}}}\n\n"
      "#[no_mangle]\n"
      "pub unsafe extern \"C\" fn tc_b_get_{0}(dst: *mut u8) {{\n{2}}}\n\n",
      c_global.name, set, get);
}

}  // namespace

std::string ToSnakeCase(std::string_view name) {
  std::string out;
  for (std::size_t i = 0; i < name.size(); ++i) {
    char c = name[i];
    bool upper = std::isupper(static_cast<unsigned char>(c));
    if (upper && i > 0 && name[i - 1] != '_') {
      bool prev_lower = std::islower(static_cast<unsigned char>(name[i - 1])) ||
                        std::isdigit(static_cast<unsigned char>(name[i - 1]));
      bool next_lower = i + 1 < name.size() &&
                        std::islower(static_cast<unsigned char>(name[i + 1]));
      bool prev_upper = std::isupper(static_cast<unsigned char>(name[i - 1]));
      if (prev_lower || (prev_upper && next_lower)) out += '_';
    }
    out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  return out;
}

SideBinding IdentityBinding(const FunctionInterface& iface) {
  SideBinding b;
  b.function = iface.name;
  for (std::size_t i = 0; i < iface.params.size(); ++i) {
    b.param_order.push_back(i);
  }
  return b;
}

std::string GenerateCSide(std::string_view text, const std::string& source_path,
                          std::string_view prefix,
                          const std::vector<const FunctionInterface*>& targets,
                          const std::map<std::string, SideBinding>& bindings,
                          bool as_side_b) {
  corpus::ParsedFile parsed = corpus::ParseFile(text);
  std::set<std::string> renamed = {"main"};
  for (const auto& fn : parsed.functions) renamed.insert(fn.name);
  for (const auto& var : parsed.variables) {
    if (!var.is_extern) renamed.insert(var.name);
  }

  std::string out = "/* generated harness side */\n";
  for (const char* h : kStdHeaders) out += fmt::format("#include <{}>\n", h);
  out += "\nvoid tc_trap_exit(int) __attribute__((noreturn));\n";
  out += "#define exit tc_trap_exit\n#define _Exit tc_trap_exit\n";
  for (const std::string& name : renamed) {
    out += fmt::format("#define {0} {1}{0}\n", name, prefix);
  }
  out += fmt::format("#include \"{}\"\n", source_path);
  out += "#undef exit\n#undef _Exit\n";
  for (const std::string& name : renamed) out += "#undef " + name + "\n";
  out += "\n";

  auto binding_for = [&](const FunctionInterface& f) {
    auto it = bindings.find(f.name);
    return it != bindings.end() ? it->second : IdentityBinding(f);
  };

  for (const FunctionInterface* f : targets) {
    SideBinding b = binding_for(*f);
    if (b.param_order.size() != f->params.size()) {
      throw HarnessError("binding for " + f->name +
                         " does not cover every parameter");
    }
    std::vector<std::string> args;
    for (std::size_t ref : b.param_order) {
      if (ref >= f->params.size()) {
        throw HarnessError("binding for " + f->name + " is out of range");
      }
      args.push_back(fmt::format("p{}", ref));
    }
    std::string call =
        fmt::format("{}{}({})", prefix, b.function, Join(args, ", "));
    std::string ret = CValueType(f->return_type);
    out += fmt::format("{} {}call_{}({}) {{\n", ret, prefix, f->name,
                       CParamList(*f, as_side_b));
    if (as_side_b) out += "  *tc_st = 0;\n";
    if (f->return_type.shape == TypeShape::kVoid) {
      out += "  " + call + ";\n}\n\n";
    } else {
      out += "  return " + call + ";\n}\n\n";
    }
  }

  std::map<std::string, std::string> global_names;
  for (const FunctionInterface* f : targets) {
    SideBinding b = binding_for(*f);
    for (const NamedType& g : f->globals) {
      auto it = b.globals.find(g.name);
      global_names[g.name] = it != b.globals.end() ? it->second : g.name;
    }
  }
  for (const NamedType& g : UnionGlobals(targets)) {
    std::string sym = std::string(prefix) + global_names[g.name];
    std::size_t n = FieldBytes(g.type);
    out += fmt::format(
        "_Static_assert(sizeof({1}) == {2}, \"global {0} has an unexpected "
        "size\");\n"
        "void {3}set_{0}(const void *src) {{ memcpy((void *)&{1}, src, {2}); }}\n"
        "void {3}get_{0}(void *dst) {{ memcpy(dst, (const void *)&{1}, {2}); }}\n\n",
        g.name, sym, n, prefix);
  }
  if (as_side_b) {
    out +=
        "void tc_b_init(void) {}\n"
        "size_t tc_b_last_panic(char *buf, size_t cap) {\n"
        "  if (cap > 0) buf[0] = 0;\n"
        "  return 0;\n"
        "}\n";
  }
  return out;
}

std::string GenerateRustShim(const std::vector<const FunctionInterface*>& targets,
                             std::string_view rust_source) {
  std::string out = internal::kRustPrelude;
  out += "\n";
  for (const FunctionInterface* f : targets) {
    std::vector<std::string> params, args;
    for (std::size_t i = 0; i < f->params.size(); ++i) {
      const CType& t = f->params[i].type;
      if (t.shape == TypeShape::kString) {
        params.push_back(fmt::format("p{0}: *mut c_char, p{0}_n: usize", i));
        args.push_back(fmt::format("TcStr {{ p: p{0}, n: p{0}_n }}.tc()", i));
      } else if (IsBuffer(t)) {
        params.push_back(
            fmt::format("p{0}: *mut {1}, p{0}_n: usize", i, RustElemType(t)));
        args.push_back(fmt::format("TcBuf {{ p: p{0}, n: p{0}_n }}.tc()", i));
      } else {
        params.push_back(fmt::format("p{}: {}", i, RustValueType(t)));
        args.push_back(fmt::format("p{}.tc()", i));
      }
    }
    params.push_back("st: *mut i32");
    std::string rt = RustValueType(f->return_type);
    std::string call = fmt::format("super::{}({})",
                                   ResolveRustFn(rust_source, f->name),
                                   Join(args, ", "));
    bool is_void = f->return_type.shape == TypeShape::kVoid;
    out += fmt::format(
        "#[no_mangle]\n"
        "pub unsafe extern \"C\" fn tc_b_call_{}({}){} {{\n"
        "    let r = std::panic::catch_unwind(std::panic::AssertUnwindSafe(|| unsafe {{\n",
        f->name, Join(params, ", "), is_void ? "" : " -> " + rt);
    if (is_void) {
      out += "        let _ = " + call + ";\n    }));\n";
      out +=
          "    match r {\n"
          "        Ok(()) => *st = 0,\n"
          "        Err(_) => *st = 1,\n"
          "    }\n}\n\n";
    } else {
      out += fmt::format("        let r: {} = {}.tc();\n        r\n    }}));\n",
                         rt, call);
      out +=
          "    match r {\n"
          "        Ok(v) => {\n            *st = 0;\n            v\n        }\n"
          "        Err(_) => {\n            *st = 1;\n"
          "            std::mem::zeroed()\n        }\n"
          "    }\n}\n\n";
    }
  }
  for (const NamedType& g : UnionGlobals(targets)) {
    auto rg = FindRustGlobal(rust_source, g.name);
    if (!rg) {
      throw HarnessError("global '" + g.name +
                         "' has no static counterpart in the Rust translation");
    }
    out += RustGlobalAccess(g, *rg);
  }
  out += "}\n";
  return out;
}

std::string GenerateDriver(const FunctionInterface& iface,
                           const InputLayout& layout, const FuzzConfig& config) {
  const std::string& fn = iface.name;
  std::string out = "/* generated differential fuzzing driver */\n";
  out += fmt::format("#define TC_ULP {}ull\n", config.float_ulp_tolerance);
  out += internal::kDriverRuntime;
  out += fmt::format("\n#define TC_SIZE {}\n", layout.size);
  out += fmt::format("static const char tc_function[] = \"{}\";\n\n", fn);

  std::string ret = CValueType(iface.return_type);
  bool is_void = iface.return_type.shape == TypeShape::kVoid;
  out += fmt::format("{} tc_a_call_{}({});\n", ret, fn, CParamList(iface, false));
  out += fmt::format("{} tc_b_call_{}({});\n", ret, fn, CParamList(iface, true));
  for (const NamedType& g : iface.globals) {
    for (const char* side : {"a", "b"}) {
      out += fmt::format("void tc_{0}_set_{1}(const void *);\n", side, g.name);
      out += fmt::format("void tc_{0}_get_{1}(void *);\n", side, g.name);
    }
  }
  out += "void tc_b_init(void);\nsize_t tc_b_last_panic(char *, size_t);\n\n";

  std::size_t nfields = layout.fields.size();
  out += "static uint8_t tc_img[TC_SIZE + 1];\n";
  out += "static uint8_t tc_outa[TC_SIZE + 1], tc_outb[TC_SIZE + 1];\n";
  out += fmt::format("static uint8_t *tc_pa[{0}], *tc_pb[{0}];\n", nfields + 1);
  if (!is_void) out += fmt::format("static {} tc_ra, tc_rb;\n", ret);
  out += "static int32_t tc_st;\n\n";

  out +=
      "static void tc_begin_report(const char *kind) {\n"
      "  tc_rep.len = 0;\n"
      "  tc_sb_puts(&tc_rep, \"{\\\"failure_kind\\\":\");\n"
      "  tc_sb_jstr(&tc_rep, kind, strlen(kind));\n"
      "  tc_sb_puts(&tc_rep, \",\\\"function\\\":\");\n"
      "  tc_sb_jstr(&tc_rep, tc_function, strlen(tc_function));\n"
      "  tc_sb_puts(&tc_rep, \",\\\"inputs\\\":[\");\n"
      "  tc_first_item = 1;\n";
  for (const LayoutField& f : layout.fields) {
    out += fmt::format("  tc_item(\"{}{}\", {}, {}, tc_img + {}, {});\n",
                       f.global ? "global " : "", f.name, ShapeCode(f.type),
                       KindCode(f.type), f.offset,
                       f.type.shape == TypeShape::kScalar ? 1 : f.elements);
  }
  out += "  tc_sb_putc(&tc_rep, ']');\n}\n\n";

  out += "static void tc_outputs(int side) {\n"
         "  uint8_t **bufs = side ? tc_pb : tc_pa;\n"
         "  const uint8_t *outs = side ? tc_outb : tc_outa;\n"
         "  (void)bufs;\n  (void)outs;\n"
         "  tc_sb_putc(&tc_rep, '[');\n  tc_first_item = 1;\n";
  if (!is_void) {
    out += fmt::format(
        "  tc_item(\"return\", TC_SCALAR, {}, side ? (const uint8_t *)&tc_rb : "
        "(const uint8_t *)&tc_ra, 1);\n",
        KindCode(iface.return_type));
  }
  for (std::size_t i = 0; i < nfields; ++i) {
    const LayoutField& f = layout.fields[i];
    if (!f.writable()) continue;
    std::size_t n = f.type.shape == TypeShape::kScalar ? 1 : f.elements;
    if (f.global) {
      out += fmt::format("  tc_item(\"global {}\", {}, {}, outs + {}, {});\n",
                         f.name, ShapeCode(f.type), KindCode(f.type), f.offset, n);
    } else {
      out += fmt::format("  tc_item(\"{}\", {}, {}, bufs[{}], {});\n", f.name,
                         ShapeCode(f.type), KindCode(f.type), i, n);
    }
  }
  out += "  tc_sb_putc(&tc_rep, ']');\n}\n\n";

  out +=
      "static void tc_finish_report(int with_b, const char *detail) {\n"
      "  tc_sb_puts(&tc_rep, \",\\\"c_output\\\":\");\n"
      "  tc_outputs(0);\n"
      "  tc_sb_puts(&tc_rep, \",\\\"rust_output\\\":\");\n"
      "  if (with_b) tc_outputs(1); else tc_sb_puts(&tc_rep, \"null\");\n"
      "  tc_sb_puts(&tc_rep, \",\\\"detail\\\":\");\n"
      "  tc_sb_jstr(&tc_rep, detail, strlen(detail));\n"
      "  tc_sb_puts(&tc_rep, \"}\\n\");\n"
      "  tc_write_report();\n"
      "}\n\n"
      "/* std::process::exit on side B lands here. */\n"
      "static void tc_at_exit(void) {\n"
      "  if (!tc_in_b) return;\n"
      "  tc_in_b = 0;\n"
      "  tc_active = 0;\n"
      "  tc_begin_report(\"rust-only-runtime-error\");\n"
      "  tc_finish_report(0, \"process exit called\");\n"
      "  abort();\n"
      "}\n\n";

  // Setup: guarded buffers for pointer parameters.
  out += "static void tc_setup(void) {\n  static int done;\n  if (done) return;\n"
         "  done = 1;\n";
  for (std::size_t i = 0; i < nfields; ++i) {
    const LayoutField& f = layout.fields[i];
    if (f.global || !f.is_buffer()) continue;
    out += fmt::format("  tc_pa[{0}] = tc_alloc({1});\n  tc_pb[{0}] = tc_alloc({1});\n",
                       i, f.size());
  }
  out += "  tc_b_init();\n  tc_install();\n  atexit(tc_at_exit);\n}\n\n";

  // Invocations.
  for (const char* side : {"a", "b"}) {
    bool b = side[0] == 'b';
    out += fmt::format("static void tc_invoke_{}(void) {{\n", side);
    for (const LayoutField& f : layout.fields) {
      if (f.global) {
        out += fmt::format("  tc_{}_set_{}(tc_img + {});\n", side, f.name,
                           f.offset);
      }
    }
    std::vector<std::string> args;
    for (std::size_t i = 0; i < iface.params.size(); ++i) {
      const LayoutField& f = layout.fields[i];
      if (f.is_buffer()) {
        args.push_back(fmt::format("tc_p{}[{}]", side, i));
        args.push_back(std::to_string(f.elements));
      } else {
        out += fmt::format("  {0} v{1};\n  memcpy(&v{1}, tc_img + {2}, sizeof v{1});\n",
                           CScalarType(f.type.scalar), i, f.offset);
        args.push_back(fmt::format("v{}", i));
      }
    }
    if (b) args.push_back("&tc_st");
    std::string call = fmt::format("tc_{}_call_{}({})", side, fn, Join(args, ", "));
    if (is_void) {
      out += "  " + call + ";\n";
    } else {
      out += fmt::format("  tc_r{} = {};\n", side, call);
    }
    for (const LayoutField& f : layout.fields) {
      if (f.global) {
        out += fmt::format("  tc_{0}_get_{1}(tc_out{0} + {2});\n", side, f.name,
                           f.offset);
      }
    }
    out += "}\n\n";
  }

  // Entry point.
  out += "int LLVMFuzzerTestOneInput(const uint8_t *data, size_t size) {\n"
         "  tc_setup();\n"
         "  memset(tc_img, 0, sizeof tc_img);\n"
         "  memcpy(tc_img, data, size < TC_SIZE ? size : TC_SIZE);\n";
  for (const LayoutField& f : layout.fields) {
    if (f.type.shape == TypeShape::kString ||
        f.type.scalar == ScalarKind::kBool) {
      out += fmt::format("  tc_normalize({}, {}, tc_img + {}, {});\n",
                         ShapeCode(f.type), KindCode(f.type), f.offset, f.size());
    }
  }
  auto copy_buffers = [&](const char* side) {
    std::string s;
    for (std::size_t i = 0; i < nfields; ++i) {
      const LayoutField& f = layout.fields[i];
      if (f.global || !f.is_buffer()) continue;
      s += fmt::format("  memcpy(tc_p{}[{}], tc_img + {}, {});\n", side, i,
                       f.offset, f.size());
    }
    return s;
  };
  out += copy_buffers("a");
  out += fmt::format(
      "  if (tc_guarded(tc_invoke_a, {}, 0) != 0) return 0;\n",
      config.c_call_budget.count());
  out += copy_buffers("b");
  out += fmt::format(
      "  tc_st = 0;\n"
      "  int rb = tc_guarded(tc_invoke_b, {}, 1);\n",
      config.rust_call_budget.count());
  out +=
      "  if (rb != 0 || tc_st != 0) {\n"
      "    char detail[1200];\n"
      "    if (rb == SIGPROF) {\n"
      "      snprintf(detail, sizeof detail, \"timeout: more than %ld ms of CPU "
      "time\", (long)" +
      std::to_string(config.rust_call_budget.count()) +
      ");\n"
      "    } else if (rb == -1) {\n"
      "      snprintf(detail, sizeof detail, \"exit(%d) called\", tc_exit_code);\n"
      "    } else if (rb != 0) {\n"
      "      snprintf(detail, sizeof detail, \"%s\", tc_signal_name(rb));\n"
      "    } else {\n"
      "      char msg[1024];\n"
      "      tc_b_last_panic(msg, sizeof msg);\n"
      "      snprintf(detail, sizeof detail, \"panic: %s\", msg);\n"
      "    }\n"
      "    tc_begin_report(\"rust-only-runtime-error\");\n"
      "    tc_finish_report(0, detail);\n"
      "    abort();\n"
      "  }\n"
      "  char diff[4096];\n"
      "  tc_sb d = {diff, sizeof diff, 0};\n"
      "  diff[0] = 0;\n";
  if (!is_void) {
    out += fmt::format(
        "  if (!tc_eq_field(TC_SCALAR, {}, (const uint8_t *)&tc_ra, (const "
        "uint8_t *)&tc_rb, 1)) tc_sb_puts(&d, \", return\");\n",
        KindCode(iface.return_type));
  }
  for (std::size_t i = 0; i < nfields; ++i) {
    const LayoutField& f = layout.fields[i];
    if (!f.writable()) continue;
    std::size_t n = f.type.shape == TypeShape::kScalar ? 1 : f.elements;
    if (f.global) {
      out += fmt::format(
          "  if (!tc_eq_field({0}, {1}, tc_outa + {2}, tc_outb + {2}, {3})) "
          "tc_sb_puts(&d, \", global {4}\");\n",
          ShapeCode(f.type), KindCode(f.type), f.offset, n, f.name);
    } else {
      out += fmt::format(
          "  if (!tc_eq_field({0}, {1}, tc_pa[{2}], tc_pb[{2}], {3})) "
          "tc_sb_puts(&d, \", {4}\");\n",
          ShapeCode(f.type), KindCode(f.type), i, n, f.name);
    }
  }
  out +=
      "  if (d.len > 0) {\n"
      "    char detail[4200];\n"
      "    snprintf(detail, sizeof detail, \"outputs differ: %s\", diff + 2);\n"
      "    tc_begin_report(\"value-mismatch\");\n"
      "    tc_finish_report(1, detail);\n"
      "    abort();\n"
      "  }\n"
      "  return 0;\n"
      "}\n";
  return out;
}

GeneratedHarness GenerateHarness(const FunctionInterface& iface,
                                 const FuzzConfig& config,
                                 std::string_view rust_source) {
  if (!iface.fuzzable()) {
    throw HarnessError("function '" + iface.name + "' is not fuzzable: " +
                       (iface.macro_like ? std::string("function-like macro")
                                         : iface.unsupported_reason));
  }
  GeneratedHarness h;
  try {
    h.layout = ComputeLayout(iface, config.limits);
  } catch (const std::invalid_argument& e) {
    throw HarnessError(e.what());
  }
  h.c_harness = GenerateDriver(iface, h.layout, config);
  h.rust_shim = GenerateRustShim({&iface}, rust_source);
  return h;
}

}  // namespace transcheck::checkers
