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

#include "transcheck/support/subprocess.h"

#include <unistd.h>

#include <atomic>
#include <system_error>

#include <boost/process.hpp>
#include <fmt/core.h>

#include "transcheck/support/text.h"

namespace transcheck {

namespace bp = boost::process;

namespace {

std::filesystem::path SpoolPath(std::string_view tag) {
  static std::atomic<unsigned> counter{0};
  return std::filesystem::temp_directory_path() /
         fmt::format("transcheck-{}-{}-{}", ::getpid(), counter++, tag);
}

}  // namespace

ProcessResult RunProcess(const ProcessRequest& request) {
  ProcessResult result;
  if (request.argv.empty()) {
    result.launch_error = "empty command";
    return result;
  }
  std::filesystem::path exe = request.argv.front();
  if (exe.filename() == exe) {
    auto found = FindProgram(exe.string());
    if (!found) {
      result.launch_error = "program not found: " + exe.string();
      return result;
    }
    exe = *found;
  }
  std::vector<std::string> args(request.argv.begin() + 1, request.argv.end());

  const std::filesystem::path out_path = SpoolPath("out");
  const std::filesystem::path err_path = SpoolPath("err");
  const std::filesystem::path in_path = SpoolPath("in");
  WriteFileAtomic(in_path, request.stdin_data.value_or(""));

  bp::environment env = boost::this_process::environment();
  for (const auto& [key, value] : request.env) {
    env[key] = value;
  }
  std::filesystem::path cwd =
      request.cwd.empty() ? std::filesystem::current_path() : request.cwd;

  try {
    std::error_code ec;
    bp::child child(exe.string(), bp::args(args), bp::start_dir(cwd.string()),
                    env, bp::std_out > out_path.string(),
                    bp::std_err > err_path.string(),
                    bp::std_in < in_path.string());
    result.launched = true;
    if (!child.wait_for(request.timeout, ec)) {
      result.timed_out = true;
      child.terminate(ec);
    }
    result.exit_code = child.exit_code();
  } catch (const std::exception& e) {
    result.launch_error = e.what();
  }
  result.out = ReadFile(out_path).value_or("");
  result.err = ReadFile(err_path).value_or("");
  std::error_code ignored;
  std::filesystem::remove(out_path, ignored);
  std::filesystem::remove(err_path, ignored);
  std::filesystem::remove(in_path, ignored);
  return result;
}

std::optional<std::filesystem::path> FindProgram(const std::string& name) {
  auto found = bp::search_path(name);
  if (found.empty()) {
    return std::nullopt;
  }
  return std::filesystem::path(found.string());
}

}  // namespace transcheck
