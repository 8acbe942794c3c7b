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

#ifndef TRANSCHECK_SUPPORT_SUBPROCESS_H_
#define TRANSCHECK_SUPPORT_SUBPROCESS_H_

#include <chrono>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace transcheck {

struct ProcessRequest {
  std::vector<std::string> argv;
  std::filesystem::path cwd;
  std::map<std::string, std::string> env;  // added to the inherited env
  std::chrono::milliseconds timeout{std::chrono::minutes(5)};
  std::optional<std::string> stdin_data;
};

struct ProcessResult {
  bool launched = false;
  bool timed_out = false;
  int exit_code = -1;
  std::string out;
  std::string err;
  std::string launch_error;

  bool ok() const { return launched && !timed_out && exit_code == 0; }
};

// Runs a child process to completion (or kills it at the timeout). Output is
// spooled through files so large outputs cannot deadlock the pipes.
ProcessResult RunProcess(const ProcessRequest& request);

// Looks a program up on PATH.
std::optional<std::filesystem::path> FindProgram(const std::string& name);

}  // namespace transcheck

#endif  // TRANSCHECK_SUPPORT_SUBPROCESS_H_
