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

#include "transcheck/corpus/corpus.h"

#include <algorithm>
#include <cmath>
#include <set>

#include <fmt/core.h>

#include "transcheck/support/text.h"

namespace transcheck::corpus {

namespace fs = std::filesystem;

const SourceUnit* CorpusIndex::Find(const std::string& id) const {
  for (const SourceUnit& unit : units) {
    if (unit.id == id) {
      return &unit;
    }
  }
  return nullptr;
}

GroupMap LoadGroupManifest(const fs::path& path) {
  auto text = ReadFile(path);
  if (!text) {
    throw CorpusError("cannot read group manifest " + path.string());
  }
  return ParseKeyValueText(*text);
}

CorpusIndex LoadCorpus(const fs::path& dir,
                       const std::optional<GroupMap>& groups) {
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) {
    throw CorpusError("corpus directory not found: " + dir.string());
  }
  CorpusIndex index;
  index.root = dir;
  std::vector<fs::path> sources;
  fs::recursive_directory_iterator it(
      dir, fs::directory_options::skip_permission_denied, ec);
  if (ec) {
    throw CorpusError("cannot read corpus directory " + dir.string() + ": " +
                      ec.message());
  }
  for (; it != fs::recursive_directory_iterator(); it.increment(ec)) {
    if (ec) {
      index.warnings.push_back("skipped entry: " + ec.message());
      ec.clear();
      continue;
    }
    if (!it->is_regular_file(ec)) {
      continue;
    }
    std::string ext = it->path().extension().string();
    std::string id = fs::relative(it->path(), dir).generic_string();
    if (ext == ".c") {
      sources.push_back(it->path());
    } else if (ext == ".h") {
      index.headers.push_back(id);
    }
  }
  std::sort(index.headers.begin(), index.headers.end());
  for (const fs::path& path : sources) {
    std::string id = fs::relative(path, dir).generic_string();
    auto text = ReadFile(path);
    if (!text) {
      index.warnings.push_back("unreadable file skipped: " + id);
      continue;
    }
    if (Trim(*text).empty()) {
      index.warnings.push_back("empty file skipped: " + id);
      continue;
    }
    std::string group = "default";
    if (groups) {
      if (auto g = groups->find(id); g != groups->end()) {
        group = g->second;
      }
    }
    SourceUnit unit = MakeSourceUnit(id, std::move(*text), group);
    unit.origin_dir = fs::absolute(path).parent_path();
    for (const std::string& warning : unit.warnings) {
      index.warnings.push_back(id + ": " + warning);
    }
    index.units.push_back(std::move(unit));
  }
  std::sort(index.units.begin(), index.units.end(),
            [](const SourceUnit& a, const SourceUnit& b) { return a.id < b.id; });
  return index;
}

MetricSummary Summarize(const std::vector<double>& values) {
  MetricSummary s;
  s.count = values.size();
  if (values.empty()) {
    return s;
  }
  s.min = *std::min_element(values.begin(), values.end());
  s.max = *std::max_element(values.begin(), values.end());
  double sum = 0;
  for (double v : values) {
    sum += v;
  }
  s.avg = sum / static_cast<double>(values.size());
  if (values.size() > 1) {
    double sq = 0;
    for (double v : values) {
      sq += (v - s.avg) * (v - s.avg);
    }
    s.stddev = std::sqrt(sq / static_cast<double>(values.size() - 1));
  }
  return s;
}

namespace {

ScopeSummary SummarizeScope(const std::string& name,
                            const std::vector<const FileMetricsRow*>& rows) {
  ScopeSummary scope;
  scope.scope = name;
  scope.files = rows.size();
  std::vector<double> loc, nloc, tokens, cc;
  for (const FileMetricsRow* row : rows) {
    loc.push_back(static_cast<double>(row->metrics.loc));
    nloc.push_back(static_cast<double>(row->metrics.nloc));
    tokens.push_back(static_cast<double>(row->metrics.tokens));
    if (row->metrics.cc_avg) {
      cc.push_back(*row->metrics.cc_avg);
    }
  }
  scope.loc = Summarize(loc);
  scope.nloc = Summarize(nloc);
  scope.tokens = Summarize(tokens);
  scope.cc = Summarize(cc);
  return scope;
}

std::string Num(double v) { return fmt::format("{:.4f}", v); }

}  // namespace

CorpusReport BuildCorpusReport(const CorpusIndex& index,
                               const Tokenizer& tokenizer,
                               const std::optional<std::string>& group) {
  CorpusReport report;
  report.tokenizer = tokenizer.Name();
  for (const SourceUnit& unit : index.units) {
    if (group && unit.group != *group) {
      continue;
    }
    FileMetricsRow row;
    row.id = unit.id;
    row.group = unit.group;
    row.metrics = ComputeMetrics(unit, tokenizer, &report.warnings);
    report.files.push_back(std::move(row));
  }
  std::vector<const FileMetricsRow*> all;
  std::set<std::string> groups;
  for (const FileMetricsRow& row : report.files) {
    all.push_back(&row);
    groups.insert(row.group);
  }
  if (group) {
    report.scopes.push_back(SummarizeScope(*group, all));
    return report;
  }
  report.scopes.push_back(SummarizeScope("all", all));
  for (const std::string& g : groups) {
    std::vector<const FileMetricsRow*> rows;
    for (const FileMetricsRow* row : all) {
      if (row->group == g) {
        rows.push_back(row);
      }
    }
    report.scopes.push_back(SummarizeScope(g, rows));
  }
  return report;
}

std::string CorpusReportCsv(const CorpusReport& report) {
  std::string out = "scope,metric,count,min,avg,stddev,max\n";
  for (const ScopeSummary& scope : report.scopes) {
    const std::pair<const char*, const MetricSummary*> metrics[] = {
        {"LOC", &scope.loc},
        {"NLOC", &scope.nloc},
        {"Tokens", &scope.tokens},
        {"CC", &scope.cc}};
    for (const auto& [name, m] : metrics) {
      out += fmt::format("{},{},{},{},{},{},{}\n", scope.scope, name, m->count,
                         Num(m->min), Num(m->avg), Num(m->stddev),
                         Num(m->max));
    }
  }
  return out;
}

std::string CorpusFilesCsv(const CorpusReport& report) {
  std::string out = "id,group,loc,nloc,tokens,functions,cc_avg,cc_max\n";
  for (const FileMetricsRow& row : report.files) {
    const CodeMetrics& m = row.metrics;
    out += fmt::format("{},{},{},{},{},{},{},{}\n", row.id, row.group, m.loc,
                       m.nloc, m.tokens, m.functions,
                       m.cc_avg ? Num(*m.cc_avg) : "",
                       m.cc_max ? std::to_string(*m.cc_max) : "");
  }
  return out;
}

nlohmann::ordered_json CorpusReportJson(const CorpusReport& report) {
  nlohmann::ordered_json j;
  j["tokenizer"] = report.tokenizer;
  auto summary = [](const MetricSummary& m) {
    nlohmann::ordered_json s;
    s["count"] = m.count;
    s["min"] = m.min;
    s["avg"] = m.avg;
    s["stddev"] = m.stddev;
    s["max"] = m.max;
    return s;
  };
  j["scopes"] = nlohmann::ordered_json::array();
  for (const ScopeSummary& scope : report.scopes) {
    nlohmann::ordered_json s;
    s["scope"] = scope.scope;
    s["files"] = scope.files;
    s["LOC"] = summary(scope.loc);
    s["NLOC"] = summary(scope.nloc);
    s["Tokens"] = summary(scope.tokens);
    s["CC"] = summary(scope.cc);
    j["scopes"].push_back(std::move(s));
  }
  j["files"] = nlohmann::ordered_json::array();
  for (const FileMetricsRow& row : report.files) {
    nlohmann::ordered_json f;
    f["id"] = row.id;
    f["group"] = row.group;
    f["loc"] = row.metrics.loc;
    f["nloc"] = row.metrics.nloc;
    f["tokens"] = row.metrics.tokens;
    f["functions"] = row.metrics.functions;
    f["cc_avg"] = row.metrics.cc_avg ? nlohmann::ordered_json(*row.metrics.cc_avg)
                                     : nlohmann::ordered_json(nullptr);
    f["cc_max"] = row.metrics.cc_max ? nlohmann::ordered_json(*row.metrics.cc_max)
                                     : nlohmann::ordered_json(nullptr);
    j["files"].push_back(std::move(f));
  }
  j["warnings"] = report.warnings;
  return j;
}

}  // namespace transcheck::corpus
