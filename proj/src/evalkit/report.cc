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

#include "transcheck/evalkit/report.h"

#include <stdexcept>
#include <system_error>

#include <fmt/core.h>

#include "transcheck/support/text.h"

namespace transcheck::evalkit {

namespace {

std::string Num(double v) { return fmt::format("{:.4f}", v); }

std::string Csv(std::string_view field) {
  if (field.find_first_of(",\"\n") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string PassTableCsv(const PassTable& table) {
  std::string out = "Check";
  for (int cap : table.caps) out += ",<=" + std::to_string(cap);
  out += "\n";
  for (std::size_t s = 0; s < table.stages.size(); ++s) {
    out += StageLabel(table.stages[s]);
    for (const PassCell& cell : table.cells[s]) {
      out += "," + (cell.files == 0 ? std::string("NA") : Num(cell.estimate));
    }
    out += "\n";
  }
  return out;
}

nlohmann::ordered_json PassTableJson(const PassTable& table) {
  nlohmann::ordered_json j;
  j["k"] = table.k;
  j["caps"] = table.caps;
  j["rows"] = nlohmann::ordered_json::array();
  for (std::size_t s = 0; s < table.stages.size(); ++s) {
    nlohmann::ordered_json row;
    row["stage"] = checkers::ToString(table.stages[s]);
    row["label"] = StageLabel(table.stages[s]);
    row["cells"] = nlohmann::ordered_json::array();
    for (const PassCell& cell : table.cells[s]) {
      nlohmann::ordered_json c;
      c["estimate"] = cell.files == 0 ? nlohmann::ordered_json(nullptr)
                                      : nlohmann::ordered_json(cell.estimate);
      c["files"] = cell.files;
      c["excluded"] = cell.excluded;
      c["incomplete"] = cell.incomplete;
      c["gaps"] = cell.gaps;
      row["cells"].push_back(std::move(c));
    }
    j["rows"].push_back(std::move(row));
  }
  return j;
}

std::string AggregatesCsv(const std::vector<AggregateRow>& rows) {
  std::string out = "model,set,robust,mean,augmented\n";
  for (const AggregateRow& r : rows) {
    out += fmt::format("{},{},{},{},{}\n", Csv(r.model), Csv(r.set_label), Num(r.robust),
                       Num(r.mean), Num(r.augmented));
  }
  return out;
}

std::string SolvedSetsCsv(const SolvedSets& sets) {
  std::string out = "region,files\n";
  for (const auto& [models, count] : sets.regions) {
    out += Csv(Join(models, "+")) + "," + std::to_string(count) + "\n";
  }
  out += "union," + std::to_string(sets.union_size) + "\n";
  out += "unsolved," + std::to_string(sets.unsolved) + "\n";
  return out;
}

nlohmann::ordered_json SolvedSetsJson(const SolvedSets& sets) {
  nlohmann::ordered_json j;
  j["models"] = sets.models;
  j["corpus_size"] = sets.corpus.size();
  j["solved"] = nlohmann::ordered_json::object();
  for (const auto& [model, files] : sets.solved) j["solved"][model] = files;
  j["union"] = sets.union_size;
  j["unsolved"] = sets.unsolved;
  j["intersections"] = nlohmann::ordered_json::array();
  for (const auto& [models, files] : sets.intersections) {
    j["intersections"].push_back({{"models", models}, {"files", files}});
  }
  j["regions"] = nlohmann::ordered_json::array();
  for (const auto& [models, count] : sets.regions) {
    j["regions"].push_back({{"models", models}, {"count", count}});
  }
  return j;
}

std::string FailureHistogramCsv(const FailureHistogram& h) {
  std::string out = "iteration";
  if (h.per_iteration.empty()) return out + "\n";
  for (const auto& [label, n] : h.per_iteration.front()) out += "," + label;
  out += "\n";
  for (std::size_t i = 0; i < h.per_iteration.size(); ++i) {
    out += std::to_string(i + 1);
    for (const auto& [label, n] : h.per_iteration[i]) out += "," + std::to_string(n);
    out += "\n";
  }
  return out;
}

std::string ErrorDistributionCsv(const std::vector<ErrorRates>& rates) {
  std::string out = "kind,runs";
  for (ErrorCategory c : kAllErrorCategories) out += "," + std::string(ToString(c));
  out += "\n";
  for (const ErrorRates& r : rates) {
    out += r.kind + "," + std::to_string(r.runs);
    for (ErrorCategory c : kAllErrorCategories) out += "," + Num(r.Rate(c));
    out += "\n";
  }
  return out;
}

std::string TokenCurveCsv(const TokenCurve& curve) {
  std::string out = "k,cap,tokens,pass,incomplete\n";
  for (const CurvePoint& p : curve.points) {
    out += fmt::format("{},{},{},{},{}\n", p.k, p.cap, static_cast<long long>(p.tokens),
                       Num(p.pass), p.incomplete ? 1 : 0);
  }
  return out;
}

nlohmann::ordered_json PlotJson(const std::vector<PlotSeries>& series) {
  nlohmann::ordered_json j;
  j["series"] = nlohmann::ordered_json::array();
  for (const PlotSeries& s : series) {
    nlohmann::ordered_json e;
    e["label"] = s.label;
    if (s.histogram) {
      e["bins"] = nlohmann::ordered_json::array();
      const Histogram& h = *s.histogram;
      double width = (h.hi - h.lo) / static_cast<double>(h.bins.size());
      for (std::size_t i = 0; i < h.bins.size(); ++i) {
        e["bins"].push_back({{"lo", h.lo + width * static_cast<double>(i)},
                             {"hi", h.lo + width * static_cast<double>(i + 1)},
                             {"count", h.bins[i]}});
      }
    } else {
      e["points"] = nlohmann::ordered_json::array();
      for (const auto& [x, y] : s.points) e["points"].push_back({{"x", x}, {"y", y}});
    }
    j["series"].push_back(std::move(e));
  }
  return j;
}

std::vector<PlotSeries> TokenCurveSeries(const TokenCurve& curve) {
  std::map<int, PlotSeries> by_k;
  for (const CurvePoint& p : curve.points) {
    PlotSeries& s = by_k[p.k];
    s.label = "pass@" + std::to_string(p.k);
    s.points.emplace_back(p.tokens, p.pass);
  }
  std::vector<PlotSeries> out;
  for (auto& [k, s] : by_k) out.push_back(std::move(s));
  return out;
}

std::vector<PlotSeries> FailureHistogramSeries(const FailureHistogram& h) {
  std::map<std::string, PlotSeries> by_label;
  for (std::size_t i = 0; i < h.per_iteration.size(); ++i) {
    for (const auto& [label, n] : h.per_iteration[i]) {
      by_label[label].label = label;
      by_label[label].points.emplace_back(static_cast<double>(i + 1), static_cast<double>(n));
    }
  }
  std::vector<PlotSeries> out;
  for (auto& [label, s] : by_label) out.push_back(std::move(s));
  return out;
}

std::vector<PlotSeries> SampledAggregateSeries(const std::vector<SampledAggregate>& samples,
                                               std::size_t bins) {
  std::vector<double> lo, mid, hi;
  for (const SampledAggregate& s : samples) {
    lo.push_back(s.robust);
    mid.push_back(s.mean);
    hi.push_back(s.augmented);
  }
  std::vector<PlotSeries> out(3);
  out[0].label = "robust";
  out[0].histogram = MakeHistogram(lo, bins);
  out[1].label = "mean";
  out[1].histogram = MakeHistogram(mid, bins);
  out[2].label = "augmented";
  out[2].histogram = MakeHistogram(hi, bins);
  return out;
}

void WriteReport(const std::filesystem::path& dir, const std::string& name,
                 const std::string& content) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create " + dir.string() + ": " + ec.message());
  try {
    WriteFileAtomic(dir / name, content);
  } catch (const std::exception& e) {
    throw std::runtime_error("cannot write " + (dir / name).string() + ": " + e.what());
  }
}

}  // namespace transcheck::evalkit
