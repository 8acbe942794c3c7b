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

#include "transcheck/checkers/toolchain_checker.h"

#include <chrono>
#include <regex>
#include <stdexcept>

#include <fmt/core.h>
#include <json.hpp>

#include "transcheck/support/subprocess.h"
#include "transcheck/support/text.h"

namespace transcheck::checkers {

namespace fs = std::filesystem;
using corpus::FunctionInterface;
using corpus::SourceUnit;

namespace {

constexpr const char* kUbsanChecks =
    "-fsanitize=signed-integer-overflow,shift,integer-divide-by-zero,"
    "float-cast-overflow,bounds,null,return,unreachable,vla-bound,bool,enum,"
    "builtin,pointer-overflow,alignment,nonnull-attribute,"
    "returns-nonnull-attribute";

constexpr std::chrono::minutes kToolTimeout{5};

std::string Tail(std::string_view text, std::size_t max = 4000) {
  text = TrimRight(text);
  if (text.size() <= max) return std::string(text);
  return "[...]\n" + std::string(text.substr(text.size() - max));
}

ProcessResult Run(std::vector<std::string> argv, const fs::path& cwd = {},
                  std::chrono::milliseconds timeout = kToolTimeout,
                  std::map<std::string, std::string> env = {}) {
  ProcessRequest req;
  req.argv = std::move(argv);
  req.cwd = cwd;
  req.timeout = timeout;
  req.env = std::move(env);
  req.stdin_data = "";
  return RunProcess(req);
}

std::string FirstLine(std::string_view text) {
  auto lines = SplitLines(Trim(text));
  return lines.empty() ? std::string() : std::string(Trim(lines.front()));
}

std::vector<std::string> RustcBaseArgs(const ToolchainConfig& tc,
                                       const std::string& program) {
  std::vector<std::string> argv = {program, "--edition", tc.edition,
                                   "--crate-type", "staticlib",
                                   "--error-format=json", "-A", "dead_code"};
  argv.push_back("-C");
  argv.push_back(std::string("overflow-checks=") +
                 (tc.overflow_checks ? "on" : "off"));
  return argv;
}

std::string SafeName(std::string_view name) {
  std::string out;
  for (char c : name) {
    out += std::isalnum(static_cast<unsigned char>(c)) || c == '_' ? c : '_';
  }
  return out.empty() ? "unit" : out;
}

// Builds a C side object. Returns the failure output on error.
std::optional<std::string> CompileCSide(const ToolchainConfig& tc,
                                        const fs::path& src,
                                        const fs::path& obj,
                                        const fs::path& origin_dir,
                                        bool* missing_tool) {
  std::vector<std::string> argv = {tc.clang,  "-c", "-g", "-O1", "-w",
                                   "-fsanitize=fuzzer-no-link", kUbsanChecks,
                                   "-fsanitize-trap=all"};
  if (!origin_dir.empty()) {
    argv.push_back("-I");
    argv.push_back(origin_dir.string());
  }
  for (const auto& f : tc.clang_flags) argv.push_back(f);
  argv.push_back(src.string());
  argv.push_back("-o");
  argv.push_back(obj.string());
  ProcessResult r = Run(argv, src.parent_path());
  if (!r.launched) {
    *missing_tool = true;
    return "cannot run " + tc.clang + ": " + r.launch_error;
  }
  if (!r.ok()) {
    return fmt::format("compiling {} failed:\n{}", src.filename().string(),
                       Tail(r.err + r.out));
  }
  return std::nullopt;
}

CheckReport SetupError(std::string message, bool missing_tool) {
  return MakeInfraError(CheckStage::kFuzzed,
                        missing_tool ? ErrorCategory::kTranslationSystem
                                     : ErrorCategory::kFuzzingSetup,
                        {std::move(message)});
}

std::optional<Counterexample> ReadReport(const fs::path& path) {
  auto text = ReadFile(path);
  if (!text || Trim(*text).empty()) return std::nullopt;
  try {
    return CounterexampleFromJson(nlohmann::json::parse(*text));
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

}  // namespace

std::vector<RustDiagnostic> ParseRustDiagnostics(std::string_view output) {
  std::vector<RustDiagnostic> out;
  for (const std::string& line : SplitLines(output)) {
    std::string_view t = Trim(line);
    if (t.empty() || t.front() != '{') continue;
    nlohmann::json j = nlohmann::json::parse(t, nullptr, false);
    if (j.is_discarded() || !j.is_object() || !j.contains("message")) continue;
    std::string message = j.value("message", "");
    bool no_spans = !j.contains("spans") || j["spans"].empty();
    if (no_spans && (StartsWith(message, "aborting due to") ||
                     EndsWith(message, "emitted") ||
                     StartsWith(message, "For more information"))) {
      continue;
    }
    RustDiagnostic d;
    d.level = j.value("level", "");
    if (j.contains("code") && j["code"].is_object()) {
      d.code = j["code"].value("code", "");
    }
    d.rendered = std::string(TrimRight(j.value("rendered", message)));
    out.push_back(std::move(d));
  }
  return out;
}

SideB SideB::Rust(std::string source) {
  SideB b;
  b.kind = Kind::kRust;
  b.rust_source = std::move(source);
  return b;
}

SideB SideB::C(std::string text, std::string file_name, fs::path origin_dir,
               std::map<std::string, SideBinding> bindings) {
  SideB b;
  b.kind = Kind::kC;
  b.c_text = std::move(text);
  b.c_file_name = std::move(file_name);
  b.c_origin_dir = std::move(origin_dir);
  b.bindings = std::move(bindings);
  return b;
}

DifferentialHarness::DifferentialHarness(ToolchainConfig toolchain,
                                         FuzzConfig fuzz, fs::path dir)
    : toolchain_(std::move(toolchain)),
      fuzz_(std::move(fuzz)),
      dir_(std::move(dir)) {
  fuzz_.Validate();
}

std::optional<CheckReport> DifferentialHarness::Build(const SourceUnit& reference,
                                                      const SideB& side_b) {
  std::vector<const FunctionInterface*> targets = reference.FuzzTargets();
  if (targets.empty()) {
    return SetupError(reference.id + ": no fuzzable functions", false);
  }
  std::error_code ec;
  fs::create_directories(dir_, ec);
  bool missing = false;

  // Side A: the C reference.
  fs::path a_dir = dir_ / "a_src";
  fs::create_directories(a_dir, ec);
  fs::path a_file = a_dir / fs::path(reference.id).filename();
  if (a_file.extension() != ".c") a_file += ".c";
  WriteFileAtomic(a_file, reference.text);
  std::string side_a;
  try {
    side_a = GenerateCSide(reference.text, fs::absolute(a_file).string(),
                           "tc_a_", targets, {}, false);
  } catch (const HarnessError& e) {
    return SetupError(e.what(), false);
  }
  WriteFileAtomic(dir_ / "side_a.c", side_a);
  if (auto err = CompileCSide(toolchain_, dir_ / "side_a.c", dir_ / "side_a.o",
                              reference.origin_dir, &missing)) {
    return SetupError(*err, missing);
  }

  // Side B.
  fs::path b_artifact;
  if (side_b.kind == SideB::Kind::kRust) {
    std::string shim;
    try {
      shim = GenerateRustShim(targets, side_b.rust_source);
    } catch (const HarnessError& e) {
      return SetupError(e.what(), false);
    }
    WriteFileAtomic(dir_ / "lib.rs", side_b.rust_source + "\n" + shim);
    std::vector<std::string> argv = {
        toolchain_.rustc, "--edition", toolchain_.edition, "--crate-type",
        "staticlib", "-C", "opt-level=1", "-C",
        std::string("overflow-checks=") +
            (toolchain_.overflow_checks ? "on" : "off"),
        "-A", "warnings"};
    if (fuzz_.instrument_rust) {
      for (const char* f :
           {"passes=sancov-module", "llvm-args=-sanitizer-coverage-level=3",
            "llvm-args=-sanitizer-coverage-inline-8bit-counters",
            "llvm-args=-sanitizer-coverage-pc-table",
            "llvm-args=-sanitizer-coverage-trace-compares"}) {
        argv.push_back("-C");
        argv.push_back(f);
      }
    }
    for (const auto& f : toolchain_.rustc_flags) argv.push_back(f);
    argv.push_back("-o");
    argv.push_back((dir_ / "librs.a").string());
    argv.push_back((dir_ / "lib.rs").string());
    ProcessResult r = Run(argv, dir_);
    if (!r.launched) {
      return SetupError("cannot run " + toolchain_.rustc + ": " + r.launch_error,
                        true);
    }
    if (!r.ok()) {
      return SetupError("building the Rust side of the harness failed:\n" +
                            Tail(r.err + r.out),
                        false);
    }
    b_artifact = dir_ / "librs.a";
  } else {
    fs::path b_dir = dir_ / "b_src";
    fs::create_directories(b_dir, ec);
    fs::path b_file = b_dir / fs::path(side_b.c_file_name).filename();
    if (b_file.extension() != ".c") b_file += ".c";
    WriteFileAtomic(b_file, side_b.c_text);
    std::string side;
    try {
      side = GenerateCSide(side_b.c_text, fs::absolute(b_file).string(), "tc_b_",
                           targets, side_b.bindings, true);
    } catch (const HarnessError& e) {
      return SetupError(e.what(), false);
    }
    WriteFileAtomic(dir_ / "side_b.c", side);
    if (auto err = CompileCSide(toolchain_, dir_ / "side_b.c",
                                dir_ / "side_b.o", side_b.c_origin_dir,
                                &missing)) {
      return SetupError(*err, missing);
    }
    b_artifact = dir_ / "side_b.o";
  }

  // One driver per function.
  functions_.clear();
  targets_.clear();
  for (const FunctionInterface* f : targets) {
    Target t;
    t.iface = *f;
    try {
      t.layout = ComputeLayout(*f, fuzz_.limits);
    } catch (const std::invalid_argument& e) {
      return SetupError(e.what(), false);
    }
    std::string name = SafeName(f->name);
    fs::path driver = dir_ / ("driver_" + name + ".c");
    WriteFileAtomic(driver, GenerateDriver(*f, t.layout, fuzz_));
    t.binary = dir_ / ("harness_" + name);
    std::vector<std::string> argv = {toolchain_.clang, "-g", "-O1", "-w",
                                     "-fsanitize=fuzzer", driver.string(),
                                     (dir_ / "side_a.o").string(),
                                     b_artifact.string(), "-lpthread", "-ldl",
                                     "-lm", "-o", t.binary.string()};
    ProcessResult r = Run(argv, dir_);
    if (!r.launched) {
      return SetupError("cannot run " + toolchain_.clang + ": " + r.launch_error,
                        true);
    }
    if (!r.ok()) {
      return SetupError("linking the harness for " + f->name + " failed:\n" +
                            Tail(r.err + r.out),
                        false);
    }
    functions_.push_back(f->name);
    targets_.emplace(f->name, std::move(t));
  }
  return std::nullopt;
}

const DifferentialHarness::Target& DifferentialHarness::Find(
    const std::string& function) const {
  auto it = targets_.find(function);
  if (it == targets_.end()) {
    throw std::invalid_argument("no harness built for " + function);
  }
  return it->second;
}

const InputLayout& DifferentialHarness::layout(const std::string& function) const {
  return Find(function).layout;
}

CheckReport DifferentialHarness::FuzzOne(const std::string& function,
                                         std::chrono::seconds budget) {
  const Target& t = Find(function);
  std::string name = SafeName(function);
  fs::path run_dir = dir_ / ("fuzz_" + name);
  fs::path corpus_dir = run_dir / "corpus";
  fs::path artifacts = run_dir / "artifacts";
  fs::path report = run_dir / "report.json";
  std::error_code ec;
  fs::remove_all(run_dir, ec);
  fs::create_directories(corpus_dir, ec);
  fs::create_directories(artifacts, ec);

  std::size_t max_len =
      std::max<std::size_t>(1, std::min(fuzz_.max_input_len, t.layout.size));
  std::vector<std::string> argv = {
      t.binary.string(),
      fmt::format("-max_total_time={}", budget.count()),
      "-timeout=30",
      "-artifact_prefix=" + artifacts.string() + "/",
      fmt::format("-max_len={}", max_len),
      fmt::format("-seed={}", fuzz_.seed == 0 ? 1 : fuzz_.seed),
      "-use_value_profile=1",
      "-close_fd_mask=1",
      "-print_final_stats=1"};
  if (t.layout.size == 0) argv.push_back("-runs=100");
  argv.push_back(corpus_dir.string());

  auto start = std::chrono::steady_clock::now();
  ProcessResult r = Run(argv, run_dir, budget + std::chrono::seconds(120),
                        {{"TC_REPORT", report.string()}});
  double seconds = std::chrono::duration<double>(
                       std::chrono::steady_clock::now() - start)
                       .count();
  std::uint64_t executions = 0;
  std::smatch m;
  static const std::regex kExec(R"(stat::number_of_executed_units:\s*(\d+))");
  if (std::regex_search(r.err, m, kExec)) executions = std::stoull(m[1]);

  CheckReport rep;
  if (!r.launched) {
    rep = MakeInfraError(CheckStage::kFuzzed, ErrorCategory::kFuzzingException,
                         {"cannot start the fuzzer: " + r.launch_error});
  } else if (auto cx = ReadReport(report)) {
    static const std::regex kArtifact(R"(Test unit written to (\S+))");
    fs::path artifact;
    if (std::regex_search(r.err, m, kArtifact)) {
      artifact = m[1].str();
    } else {
      for (const auto& e : fs::directory_iterator(artifacts, ec)) {
        if (StartsWith(e.path().filename().string(), "crash-")) artifact = e.path();
      }
    }
    if (!artifact.empty()) {
      if (auto bytes = ReadFile(artifact)) cx->raw_input = *bytes;
      cx->artifact = artifact.string();
    }
    cx->function = function;
    rep = MakeFailure(CheckStage::kFuzzed, {});
    rep.counterexample = std::move(*cx);
  } else if (r.timed_out) {
    rep = MakeInfraError(CheckStage::kFuzzed, ErrorCategory::kFuzzingException,
                         {"fuzzer for " + function + " did not stop in time"});
  } else if (r.exit_code != 0) {
    rep = MakeInfraError(
        CheckStage::kFuzzed, ErrorCategory::kFuzzingException,
        {fmt::format("fuzzer for {} exited with status {} without a "
                     "counterexample:\n{}",
                     function, r.exit_code, Tail(r.err, 3000))});
  } else {
    rep = MakeSuccess(CheckStage::kFuzzed);
  }
  rep.executions = executions;
  rep.seconds = seconds;
  return rep;
}

CheckReport DifferentialHarness::FuzzAll(std::chrono::seconds per_function) {
  CheckReport total = MakeSuccess(CheckStage::kFuzzed);
  for (const std::string& f : functions_) {
    CheckReport r = FuzzOne(f, per_function);
    r.executions += total.executions;
    r.seconds += total.seconds;
    if (!r.success) return r;
    total = r;
  }
  return total;
}

std::optional<Counterexample> DifferentialHarness::Replay(
    const std::string& function, std::string_view input) {
  const Target& t = Find(function);
  fs::path replay_dir = dir_ / ("replay_" + SafeName(function));
  std::error_code ec;
  fs::create_directories(replay_dir, ec);
  fs::path in = replay_dir / "input";
  fs::path report = replay_dir / "report.json";
  fs::remove(report, ec);
  WriteFileAtomic(in, input);
  Run({t.binary.string(), "-close_fd_mask=1", in.string()}, replay_dir,
      std::chrono::seconds(120), {{"TC_REPORT", report.string()}});
  auto cx = ReadReport(report);
  if (cx) {
    cx->function = function;
    cx->raw_input = std::string(input);
  }
  return cx;
}

ToolchainChecker::ToolchainChecker(ToolchainConfig toolchain, FuzzConfig fuzz)
    : toolchain_(std::move(toolchain)), fuzz_(std::move(fuzz)) {
  fuzz_.Validate();
}

std::map<std::string, std::string> ToolchainChecker::Versions() {
  if (!versions_) {
    std::map<std::string, std::string> v;
    auto probe = [&](const std::string& key, const std::string& program) {
      ProcessResult r = Run({program, "--version"}, {}, std::chrono::seconds(60));
      v[key] = r.ok() ? FirstLine(r.out) : "missing";
    };
    probe("rustc", toolchain_.rustc);
    probe("clippy", toolchain_.clippy);
    probe("clang", toolchain_.clang);
    versions_ = v;
  }
  return *versions_;
}

std::optional<std::string> ToolchainChecker::PinError() {
  auto v = Versions();
  auto check = [&](const std::string& key,
                   const std::optional<std::string>& pin) -> std::optional<std::string> {
    if (pin && !StartsWith(v[key], *pin)) {
      return fmt::format("{} version '{}' does not match the pinned '{}'", key,
                         v[key], *pin);
    }
    return std::nullopt;
  };
  if (auto e = check("rustc", toolchain_.rustc_version)) return e;
  if (auto e = check("clippy", toolchain_.clippy_version)) return e;
  if (auto e = check("clang", toolchain_.clang_version)) return e;
  return std::nullopt;
}

CheckReport ToolchainChecker::Compile(std::string_view rust_source,
                                      const fs::path& workdir) {
  if (Trim(rust_source).empty()) {
    return MakeFailure(CheckStage::kCompiled,
                       {"error: the translation contains no Rust code"});
  }
  if (auto pin = PinError()) {
    return MakeInfraError(CheckStage::kCompiled,
                          ErrorCategory::kTranslationSystem, {*pin});
  }
  fs::path dir = workdir / "compile";
  std::error_code ec;
  fs::create_directories(dir, ec);
  WriteFileAtomic(dir / "lib.rs", rust_source);
  std::vector<std::string> argv = RustcBaseArgs(toolchain_, toolchain_.rustc);
  for (const auto& f : toolchain_.rustc_flags) argv.push_back(f);
  argv.insert(argv.end(), {"-o", (dir / "liblib.a").string(), "lib.rs"});
  ProcessResult r = Run(argv, dir);
  if (!r.launched) {
    return MakeInfraError(CheckStage::kCompiled,
                          ErrorCategory::kTranslationSystem,
                          {"cannot run " + toolchain_.rustc + ": " +
                           r.launch_error});
  }
  if (r.timed_out) {
    return MakeInfraError(CheckStage::kCompiled,
                          ErrorCategory::kTranslationSystem,
                          {"rustc did not finish in time"});
  }
  if (r.exit_code == 0) return MakeSuccess(CheckStage::kCompiled);
  std::vector<std::string> diags;
  for (const RustDiagnostic& d : ParseRustDiagnostics(r.err)) {
    if (d.level == "error" || d.level == "error: internal compiler error") {
      diags.push_back(d.rendered);
    }
  }
  if (diags.empty()) diags.push_back(Tail(r.err + r.out));
  return MakeFailure(CheckStage::kCompiled, std::move(diags));
}

CheckReport ToolchainChecker::Lint(std::string_view rust_source,
                                   const fs::path& workdir) {
  fs::path dir = workdir / "lint";
  std::error_code ec;
  fs::create_directories(dir, ec);
  WriteFileAtomic(dir / "lib.rs", rust_source);
  std::vector<std::string> argv = RustcBaseArgs(toolchain_, toolchain_.clippy);
  argv.push_back("--emit=metadata");
  for (const auto& f : toolchain_.clippy_flags) argv.push_back(f);
  argv.insert(argv.end(), {"-o", (dir / "liblib.rmeta").string(), "lib.rs"});
  ProcessResult r = Run(argv, dir);
  if (!r.launched) {
    return MakeInfraError(CheckStage::kLinted, ErrorCategory::kTranslationSystem,
                          {"cannot run " + toolchain_.clippy + ": " +
                           r.launch_error});
  }
  if (r.timed_out) {
    return MakeInfraError(CheckStage::kLinted, ErrorCategory::kTranslationSystem,
                          {"clippy did not finish in time"});
  }
  std::vector<std::string> findings;
  for (const RustDiagnostic& d : ParseRustDiagnostics(r.err)) {
    bool is_error = StartsWith(d.level, "error");
    bool counts = is_error || (toolchain_.lint_level == LintLevel::kWarnings &&
                               d.level == "warning");
    if (counts) findings.push_back(d.rendered);
  }
  if (r.exit_code != 0 && findings.empty()) findings.push_back(Tail(r.err + r.out));
  if (findings.empty()) return MakeSuccess(CheckStage::kLinted);
  return MakeFailure(CheckStage::kLinted, std::move(findings));
}

CheckReport ToolchainChecker::Fuzz(const SourceUnit& unit,
                                   std::string_view rust_source,
                                   const fs::path& workdir) {
  DifferentialHarness harness(toolchain_, fuzz_, workdir / "fuzz");
  if (auto err = harness.Build(unit, SideB::Rust(std::string(rust_source)))) {
    return *err;
  }
  return harness.FuzzAll(fuzz_.timeout);
}

bool ToolchainAvailable(const ToolchainConfig& tc) {
  for (const std::string& p : {tc.rustc, tc.clippy, tc.clang}) {
    ProcessResult r = Run({p, "--version"}, {}, std::chrono::seconds(60));
    if (!r.ok()) return false;
  }
  return true;
}

}  // namespace transcheck::checkers
