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

#include "transcheck/cli/config.h"

#include <algorithm>
#include <charconv>
#include <set>

#include "transcheck/perturb/perturbation.h"
#include "transcheck/support/text.h"

namespace transcheck::cli {

namespace fs = std::filesystem;

const llm::BackendConfig* CliConfig::FindModel(const std::string& label) const {
  for (const llm::BackendConfig& m : models) {
    if (m.label() == label) return &m;
  }
  return nullptr;
}

namespace {

std::vector<std::string> List(std::string_view value) {
  std::vector<std::string> out;
  for (std::string_view part : Split(value, ',')) {
    std::string_view item = Trim(part);
    if (!item.empty()) out.emplace_back(item);
  }
  return out;
}

long Integer(const std::string& key, const std::string& value, long lo, long hi) {
  long v = 0;
  std::string_view s = Trim(value);
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || v < lo || v > hi) {
    throw ConfigError(key + ": expected an integer in [" + std::to_string(lo) + ", " +
                      std::to_string(hi) + "], got '" + value + "'");
  }
  return v;
}

double Real(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    double v = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument("trailing text");
    return v;
  } catch (const std::exception&) {
    throw ConfigError(key + ": expected a number, got '" + value + "'");
  }
}

bool Bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "yes" || value == "1") return true;
  if (value == "false" || value == "no" || value == "0") return false;
  throw ConfigError(key + ": expected true or false, got '" + value + "'");
}

// Keys that do not change results.
bool Operational(const std::string& key) {
  static const std::set<std::string> keys = {"workspace", "ledger",     "reports",
                                             "workdir",   "parallelism", "record_timing",
                                             "keep_failed_workdirs"};
  return keys.count(key) > 0;
}

}  // namespace

std::vector<std::string> ExpandPerturbations(const std::string& spec) {
  std::vector<std::string> out;
  auto add = [&out](const std::string& id) {
    if (std::find(out.begin(), out.end(), id) == out.end()) out.push_back(id);
  };
  for (const std::string& item : List(spec)) {
    if (item == "all" || item == "deterministic" || item == "offline") {
      for (const perturb::PerturbationSpec& s : perturb::Registry()) {
        if (item == "deterministic" && s.mode != perturb::Mode::kDeterministic) continue;
        if (item == "offline" && s.needs_model) continue;
        add(s.id);
      }
    } else if (perturb::FindPerturbation(item) != nullptr) {
      add(item);
    } else {
      throw ConfigError("unknown perturbation '" + item + "'");
    }
  }
  if (out.empty()) throw ConfigError("no perturbations selected");
  return out;
}

CliConfig LoadCliConfig(const std::optional<fs::path>& path,
                        const std::map<std::string, std::string>& overrides) {
  std::map<std::string, std::string> kv;
  fs::path base = fs::current_path();
  if (path) {
    auto text = ReadFile(*path);
    if (!text) throw ConfigError("cannot read config " + path->string());
    kv = ParseKeyValueText(*text);
    base = fs::absolute(*path).parent_path();
  }
  for (const auto& [key, value] : overrides) kv[key] = value;

  CliConfig c;
  c.workspace = base;
  if (auto it = kv.find("workspace"); it != kv.end()) {
    fs::path w = it->second;
    c.workspace = w.is_absolute() ? w : base / w;
  }
  auto resolve = [&c](const std::string& p) {
    fs::path v = p;
    return (v.is_absolute() ? v : c.workspace / v).lexically_normal();
  };

  std::map<std::string, std::map<std::string, std::string>> model_keys;
  std::map<std::string, std::string> checker_keys;
  std::string models_list;
  for (const auto& [key, value] : kv) {
    if (key == "workspace") {
      continue;
    } else if (key == "corpus") {
      c.corpus = resolve(value);
    } else if (key == "groups") {
      c.groups = resolve(value);
    } else if (key == "ledger") {
      c.ledger = resolve(value);
    } else if (key == "reports") {
      c.reports = resolve(value);
    } else if (key == "workdir") {
      c.workdir = resolve(value);
    } else if (key == "perturbations") {
      c.perturbations = ExpandPerturbations(value);
    } else if (key == "runs") {
      c.runs = static_cast<int>(Integer(key, value, 1, 100000));
    } else if (key == "k") {
      c.k = static_cast<int>(Integer(key, value, 1, 100000));
    } else if (key == "max_iterations") {
      c.max_iterations = static_cast<int>(Integer(key, value, 1, 1000));
    } else if (key == "parallelism") {
      c.parallelism = static_cast<int>(Integer(key, value, 1, 1024));
    } else if (key == "wall_clock_minutes") {
      c.wall_clock_cap = std::chrono::minutes(Integer(key, value, 1, 100000));
    } else if (key == "feedback_cap") {
      c.feedback_cap = static_cast<std::size_t>(Integer(key, value, 1, 1 << 30));
    } else if (key == "record_timing") {
      c.record_timing = Bool(key, value);
    } else if (key == "keep_failed_workdirs") {
      c.keep_failed_workdirs = Bool(key, value);
    } else if (key == "self_check_budget") {
      c.self_check_budget = std::chrono::seconds(Integer(key, value, 1, 86400));
    } else if (key == "checker") {
      if (value == "toolchain") {
        c.checker = CheckerKind::kToolchain;
      } else if (value == "simulated") {
        c.checker = CheckerKind::kSimulated;
      } else {
        throw ConfigError("checker: expected toolchain or simulated, got '" + value + "'");
      }
    } else if (key == "simulated_rules") {
      c.simulated_rules = resolve(value);
    } else if (key == "models") {
      models_list = value;
    } else if (key == "perturbation_model") {
      c.perturbation_model = value;
    } else if (key == "tokenizer") {
      c.tokenizer = value;
    } else if (StartsWith(key, "checkers.")) {
      checker_keys[key] = value;
    } else if (StartsWith(key, "model.")) {
      std::string rest = key.substr(6);
      std::size_t dot = rest.rfind('.');
      if (dot == std::string::npos || dot == 0) throw ConfigError("malformed key " + key);
      model_keys[rest.substr(0, dot)][rest.substr(dot + 1)] = value;
    } else {
      throw ConfigError("unknown setting '" + key + "'");
    }
  }

  if (c.ledger.is_relative()) c.ledger = resolve(c.ledger.string());
  if (c.reports.is_relative()) c.reports = resolve(c.reports.string());

  try {
    checkers::ApplyCheckerSettings(checker_keys, &c.fuzz, &c.toolchain);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }

  for (const std::string& label : List(models_list)) {
    llm::BackendConfig m;
    m.name = label;
    m.model_id = label;
    for (const auto& [field, value] : model_keys[label]) {
      std::string key = "model." + label + "." + field;
      if (field == "kind") {
        if (value == "http") {
          m.kind = llm::BackendKind::kHttpChat;
        } else if (value == "scripted") {
          m.kind = llm::BackendKind::kScripted;
        } else {
          throw ConfigError(key + ": expected http or scripted");
        }
      } else if (field == "model_id") {
        m.model_id = value;
      } else if (field == "temperature") {
        m.temperature = Real(key, value);
      } else if (field == "endpoint") {
        m.endpoint = value;
      } else if (field == "credential_env") {
        m.credential_env = value;
      } else if (field == "script") {
        m.script_path = resolve(value).string();
      } else if (field == "requests_per_minute") {
        m.requests_per_minute = Real(key, value);
      } else if (field == "timeout_seconds") {
        m.request_timeout = std::chrono::seconds(Integer(key, value, 1, 86400));
      } else if (field == "max_retries") {
        m.retry.max_retries = static_cast<int>(Integer(key, value, 0, 100));
      } else {
        throw ConfigError("unknown setting '" + key + "'");
      }
    }
    try {
      m.Validate();
    } catch (const std::invalid_argument& e) {
      throw ConfigError("model " + label + ": " + e.what());
    }
    c.models.push_back(std::move(m));
  }
  for (const auto& [label, fields] : model_keys) {
    if (c.FindModel(label) == nullptr) {
      throw ConfigError("model '" + label + "' is configured but not listed in models");
    }
  }
  if (c.perturbation_model && c.FindModel(*c.perturbation_model) == nullptr) {
    throw ConfigError("perturbation_model '" + *c.perturbation_model + "' is not a model");
  }
  std::string canonical;
  for (const auto& [key, value] : kv) {
    if (!Operational(key)) canonical += key + "=" + value + "\n";
  }
  c.hash = ToHex(Fnv1a64(canonical));
  return c;
}

}  // namespace transcheck::cli
