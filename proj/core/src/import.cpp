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

#include <iterator>
#include <sstream>

#include "index_assembler.hpp"
#include "ngramscope/error.hpp"
#include "tsv.hpp"

namespace ngramscope {
namespace {

[[noreturn]] void import_error(std::string_view source, std::size_t line, const std::string& what) {
  throw Error(ErrorKind::kImport,
              std::string(source) + " line " + std::to_string(line) + ": " + what);
}

std::string slurp(std::istream& in) {
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

int parse_year(std::string_view field, std::string_view source, std::size_t line) {
  auto year = tsv::parse_int<int>(field);
  if (!year) import_error(source, line, "year \"" + std::string(field) + "\" is not an integer");
  if (*year < kMinYear || *year > kMaxYear) {
    import_error(source, line, "year " + std::to_string(*year) + " outside " +
                                   std::to_string(kMinYear) + ".." + std::to_string(kMaxYear));
  }
  return *year;
}

std::uint64_t parse_count(std::string_view field, std::string_view what, std::string_view source,
                          std::size_t line) {
  auto value = tsv::parse_int<std::uint64_t>(field);
  if (!value) {
    import_error(source, line, std::string(what) + " \"" + std::string(field) +
                                   "\" is not a non-negative integer");
  }
  return *value;
}

std::map<int, YearTotals> read_totals(std::string_view data) {
  constexpr std::string_view kSource = "totals";
  std::map<int, YearTotals> totals;
  tsv::LineReader reader(data);
  std::string_view line;
  while (reader.next(line)) {
    if (line.empty()) continue;
    const auto fields = tsv::split(line, '\t');
    if (fields.size() != 3) {
      import_error(kSource, reader.line_no(),
                   "expected 3 tab-separated fields, got " + std::to_string(fields.size()));
    }
    YearTotals row;
    row.year = parse_year(fields[0], kSource, reader.line_no());
    const auto per_order = tsv::split(fields[1], ',');
    if (per_order.size() > static_cast<std::size_t>(kMaxOrder)) {
      import_error(kSource, reader.line_no(),
                   "expected at most " + std::to_string(kMaxOrder) + " per-order totals");
    }
    for (std::size_t n = 0; n < per_order.size(); ++n) {
      row.total_matches[n] = parse_count(per_order[n], "total", kSource, reader.line_no());
    }
    row.volumes = parse_count(fields[2], "volumes", kSource, reader.line_no());
    if (!totals.emplace(row.year, row).second) {
      import_error(kSource, reader.line_no(), "duplicate totals for year " + std::to_string(row.year));
    }
  }
  return totals;
}

}  // namespace

CorpusIndex import_gb_tsv(std::istream& rows, std::istream& totals_in, std::string corpus_id) {
  constexpr std::string_view kSource = "counts";
  auto totals = read_totals(slurp(totals_in));

  GramAccumulator acc(kMaxOrder, false);
  int max_order = 1;
  const std::string data = slurp(rows);
  tsv::LineReader reader(data);
  std::string_view line;
  while (reader.next(line)) {
    if (line.empty()) continue;
    const auto fields = tsv::split(line, '\t');
    if (fields.size() != 4) {
      import_error(kSource, reader.line_no(),
                   "expected 4 tab-separated fields, got " + std::to_string(fields.size()));
    }
    Ngram gram;
    try {
      gram = Ngram::from_text(fields[0]);
    } catch (const Error& e) {
      import_error(kSource, reader.line_no(), e.what());
    }
    const int year = parse_year(fields[1], kSource, reader.line_no());
    if (!totals.contains(year)) {
      import_error(kSource, reader.line_no(), "no totals row for year " + std::to_string(year));
    }
    YearlyCount count{parse_count(fields[2], "match_count", kSource, reader.line_no()),
                      parse_count(fields[3], "volume_count", kSource, reader.line_no())};
    acc.add_count(gram.text(), gram.order(), year, count);
    max_order = std::max(max_order, gram.order());
  }
  for (const auto& [year, row] : totals) acc.add_totals(row);
  return IndexAssembler::assemble(std::move(corpus_id), max_order, false, {}, std::move(acc));
}

}  // namespace ngramscope
