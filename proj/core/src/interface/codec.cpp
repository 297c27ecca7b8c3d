// Copyright 2026 The ngramscope Authors.
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

#include "ngramscope/interface/codec.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>

namespace ngramscope::interface {
namespace {

std::string csv_field(const std::string& text) {
  if (text.find_first_of(",\"\r\n") == std::string::npos) return text;
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

constexpr std::string_view kGlyphs = "*+ox#@%&";

}  // namespace

json series_response(const std::string& corpus_id, const PhraseQuery& query,
                     const std::vector<FrequencySeries>& series) {
  json items = json::array();
  for (const auto& s : series) {
    items.push_back({{"phrase", s.phrase}, {"values", s.values}, {"missing_years", s.missing_years}});
  }
  return {
      {"corpus", corpus_id},
      {"start_year", query.start_year},
      {"end_year", query.end_year},
      {"smoothing", query.smoothing},
      {"normalization", std::string(to_string(query.normalization))},
      {"case_insensitive", query.case_insensitive},
      {"series", std::move(items)},
  };
}

json to_json(const CompletionDistribution& dist) {
  json entries = json::array();
  for (const auto& e : dist.entries) {
    entries.push_back({{"symbol", e.symbol}, {"probability", e.probability}});
  }
  return {
      {"history", dist.history},
      {"unit", std::string(to_string(dist.unit))},
      {"entries", std::move(entries)},
      {"support_count", dist.support_count},
  };
}

json to_json(const AnomalyReport& report) {
  return {
      {"phrase", report.phrase},
      {"year", report.year},
      {"volume_count", report.volume_count},
      {"doc_ids", report.doc_ids},
      {"nearest_other_year", report.nearest_other_year ? json(*report.nearest_other_year) : json(nullptr)},
      {"gap", report.gap},
      {"note", report.note},
  };
}

json to_json(const DocumentMeta& doc) {
  return {
      {"doc_id", doc.doc_id},
      {"title", doc.title},
      {"year", doc.year},
      {"language", doc.language ? json(*doc.language) : json(nullptr)},
  };
}

json to_json(const IndexSummary& summary) {
  json span = nullptr;
  if (summary.year_span) span = json::array({summary.year_span->min_year, summary.year_span->max_year});
  return {
      {"corpus_id", summary.corpus_id},
      {"year_span", std::move(span)},
      {"max_order", summary.max_order},
      {"document_count", summary.document_count},
      {"has_postings", summary.has_postings},
  };
}

json to_json(const Spike& spike) { return {{"year", spike.year}, {"score", spike.score}}; }

std::string format_double(double value) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

std::string render_csv(const std::vector<FrequencySeries>& series) {
  std::string out = "year";
  for (const auto& s : series) {
    out.push_back(',');
    out += csv_field(s.phrase);
  }
  out.push_back('\n');
  if (series.empty()) return out;
  const auto& first = series.front();
  for (std::size_t i = 0; i < first.values.size(); ++i) {
    out += std::to_string(first.year_at(i));
    for (const auto& s : series) {
      out.push_back(',');
      out += format_double(s.values[i]);
    }
    out.push_back('\n');
  }
  return out;
}

std::string render_chart(const std::vector<FrequencySeries>& series, ChartOptions options) {
  if (series.empty() || series.front().values.empty()) return "(no data)\n";
  const int height = std::max(options.height, 2);
  const auto span = static_cast<int>(series.front().values.size());
  const int columns = std::min(std::max(options.width, 1), span);

  double peak = 0.0;
  for (const auto& s : series) {
    for (double v : s.values) peak = std::max(peak, v);
  }

  std::vector<std::string> grid(static_cast<std::size_t>(height), std::string(static_cast<std::size_t>(columns), ' '));
  for (std::size_t k = 0; k < series.size(); ++k) {
    const char glyph = kGlyphs[k % kGlyphs.size()];
    for (int col = 0; col < columns; ++col) {
      // Each column shows the largest value among the years it covers.
      const int lo = static_cast<int>(static_cast<long long>(col) * span / columns);
      const int hi = static_cast<int>(static_cast<long long>(col + 1) * span / columns);
      double v = 0.0;
      for (int i = lo; i < hi; ++i) v = std::max(v, series[k].values[static_cast<std::size_t>(i)]);
      const int row = peak > 0.0 ? static_cast<int>(std::lround(v / peak * (height - 1))) : 0;
      grid[static_cast<std::size_t>(height - 1 - row)][static_cast<std::size_t>(col)] = glyph;
    }
  }

  const std::string top_label = format_double(peak);
  const std::size_t label_width = std::max<std::size_t>(top_label.size(), 1);
  std::string out;
  for (int r = 0; r < height; ++r) {
    std::string label = r == 0 ? top_label : (r == height - 1 ? "0" : "");
    out += std::string(label_width - label.size(), ' ') + label + " |" + grid[static_cast<std::size_t>(r)] + "\n";
  }
  out += std::string(label_width, ' ') + " +" + std::string(static_cast<std::size_t>(columns), '-') + "\n";
  const std::string first_year = std::to_string(series.front().start_year);
  const std::string last_year = std::to_string(series.front().end_year);
  std::string axis(static_cast<std::size_t>(columns) + 2, ' ');
  axis.replace(0, first_year.size(), first_year);
  if (columns + 2 >= static_cast<int>(first_year.size() + last_year.size() + 1)) {
    axis.replace(axis.size() - last_year.size(), last_year.size(), last_year);
  }
  out += std::string(label_width, ' ') + axis + "\n";
  for (std::size_t k = 0; k < series.size(); ++k) {
    out += "  ";
    out.push_back(kGlyphs[k % kGlyphs.size()]);
    out += " " + series[k].phrase + "\n";
  }
  return out;
}

}  // namespace ngramscope::interface
