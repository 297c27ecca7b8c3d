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

#include <cstdio>
#include <fstream>
#include <iterator>
#include <tuple>

#include <nlohmann/json.hpp>
#include <zlib.h>

#include "index_assembler.hpp"
#include "ngramscope/error.hpp"
#include "tsv.hpp"

namespace ngramscope {
namespace {

using json = nlohmann::json;
namespace fs = std::filesystem;

constexpr std::string_view kFormatName = "ngramscope-index";
constexpr int kFormatVersion = 1;

std::string crc_label(std::uint32_t crc) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%08x", crc);
  return std::string("crc32:") + buf;
}

// Streams a file while accumulating its CRC-32.
class ChecksumWriter {
 public:
  explicit ChecksumWriter(const fs::path& path) : path_(path), out_(path, std::ios::binary) {
    if (!out_) throw Error(ErrorKind::kIo, "cannot create " + path.string());
    buffer_.reserve(kChunk + 4096);
  }

  std::string& buffer() { return buffer_; }

  void maybe_flush() {
    if (buffer_.size() >= kChunk) flush();
  }

  std::string finish() {
    flush();
    out_.close();
    if (!out_) throw Error(ErrorKind::kIo, "write failed for " + path_.string());
    return crc_label(crc_);
  }

 private:
  static constexpr std::size_t kChunk = 1 << 22;

  void flush() {
    crc_ = static_cast<std::uint32_t>(
        crc32_z(crc_, reinterpret_cast<const Bytef*>(buffer_.data()), buffer_.size()));
    out_.write(buffer_.data(), static_cast<std::streamsize>(buffer_.size()));
    buffer_.clear();
  }

  fs::path path_;
  std::ofstream out_;
  std::string buffer_;
  std::uint32_t crc_ = static_cast<std::uint32_t>(crc32_z(0, nullptr, 0));
};

[[noreturn]] void load_error(std::string_view file, std::size_t line, const std::string& what) {
  throw Error(ErrorKind::kLoad, std::string(file) + " line " + std::to_string(line) + ": " + what);
}

std::string read_file(const fs::path& path, std::string_view name) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kLoad, "missing or unreadable " + std::string(name));
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void verify_checksum(const json& manifest, std::string_view name, const std::string& data) {
  const auto& sums = manifest.at("checksums");
  auto it = sums.find(std::string(name));
  if (it == sums.end() || !it->is_string()) {
    throw Error(ErrorKind::kLoad, "manifest.json has no checksum for " + std::string(name));
  }
  const auto actual = crc_label(static_cast<std::uint32_t>(
      crc32_z(0, reinterpret_cast<const Bytef*>(data.data()), data.size())));
  if (it->get<std::string>() != actual) {
    throw Error(ErrorKind::kIntegrity, std::string(name) + " checksum mismatch: recorded " +
                                           it->get<std::string>() + ", computed " + actual);
  }
}

json document_json(const DocumentMeta& doc) {
  json j = {{"doc_id", doc.doc_id}, {"title", doc.title}, {"year", doc.year}};
  if (doc.language) j["language"] = *doc.language;
  if (!doc.path.empty()) j["path"] = doc.path;
  return j;
}

json read_manifest(const fs::path& directory) {
  const auto text = read_file(directory / kManifestFile, kManifestFile);
  json manifest;
  try {
    manifest = json::parse(text);
    if (manifest.at("format") != kFormatName) {
      throw Error(ErrorKind::kLoad, "manifest.json: not an ngramscope index");
    }
    if (manifest.at("version") != kFormatVersion) {
      throw Error(ErrorKind::kLoad, "manifest.json: unsupported format version");
    }
    (void)manifest.at("corpus_id").get<std::string>();
    (void)manifest.at("max_order").get<int>();
    (void)manifest.at("has_postings").get<bool>();
    (void)manifest.at("documents").get<json::array_t>();
    (void)manifest.at("checksums").get<json::object_t>();
  } catch (const json::exception& e) {
    throw Error(ErrorKind::kLoad, std::string("manifest.json is corrupt: ") + e.what());
  }
  const int max_order = manifest["max_order"].get<int>();
  if (max_order < 1 || max_order > kMaxOrder) {
    throw Error(ErrorKind::kLoad, "manifest.json: max_order out of range");
  }
  return manifest;
}

std::vector<DocumentMeta> parse_documents(const json& manifest) {
  std::vector<DocumentMeta> docs;
  try {
    for (const auto& j : manifest.at("documents")) {
      DocumentMeta doc;
      doc.doc_id = j.at("doc_id").get<std::string>();
      doc.title = j.at("title").get<std::string>();
      doc.year = j.at("year").get<int>();
      if (auto it = j.find("language"); it != j.end()) doc.language = it->get<std::string>();
      if (auto it = j.find("path"); it != j.end()) doc.path = it->get<std::string>();
      docs.push_back(std::move(doc));
    }
  } catch (const json::exception& e) {
    throw Error(ErrorKind::kLoad, std::string("manifest.json: bad document entry: ") + e.what());
  }
  for (std::size_t i = 1; i < docs.size(); ++i) {
    if (!(docs[i - 1].doc_id < docs[i].doc_id)) {
      throw Error(ErrorKind::kLoad, "manifest.json: documents not sorted by unique doc_id");
    }
  }
  return docs;
}

std::map<int, YearTotals> parse_totals(const std::string& data) {
  constexpr std::string_view kName = kTotalsFile;
  std::map<int, YearTotals> totals;
  tsv::LineReader reader(data);
  std::string_view line;
  while (reader.next(line)) {
    const auto fields = tsv::split(line, '\t');
    if (fields.size() != 3) load_error(kName, reader.line_no(), "expected 3 fields");
    const auto per_order = tsv::split(fields[1], ',');
    if (per_order.size() != static_cast<std::size_t>(kMaxOrder)) {
      load_error(kName, reader.line_no(), "expected " + std::to_string(kMaxOrder) + " totals");
    }
    YearTotals row;
    auto year = tsv::parse_int<int>(fields[0]);
    auto volumes = tsv::parse_int<std::uint64_t>(fields[2]);
    if (!year || !volumes) load_error(kName, reader.line_no(), "bad integer field");
    row.year = *year;
    row.volumes = *volumes;
    for (int n = 0; n < kMaxOrder; ++n) {
      auto v = tsv::parse_int<std::uint64_t>(per_order[n]);
      if (!v) load_error(kName, reader.line_no(), "bad total");
      row.total_matches[n] = *v;
    }
    if (!totals.empty() && totals.rbegin()->first >= row.year) {
      load_error(kName, reader.line_no(), "years not strictly ascending");
    }
    totals.emplace(row.year, row);
  }
  return totals;
}

std::vector<GramRecord> parse_counts(const std::string& data, int max_order,
                                     const std::map<int, YearTotals>& totals) {
  constexpr std::string_view kName = kCountsFile;
  std::vector<GramRecord> grams;
  tsv::LineReader reader(data);
  std::string_view line;
  while (reader.next(line)) {
    const auto fields = tsv::split(line, '\t');
    if (fields.size() != 5) load_error(kName, reader.line_no(), "expected 5 fields");
    auto order = tsv::parse_int<int>(fields[1]);
    auto year = tsv::parse_int<int>(fields[2]);
    auto match = tsv::parse_int<std::uint64_t>(fields[3]);
    auto volume = tsv::parse_int<std::uint64_t>(fields[4]);
    if (!order || !year || !match || !volume) load_error(kName, reader.line_no(), "bad integer field");
    const std::string_view text = fields[0];
    const auto tokens = static_cast<int>(std::count(text.begin(), text.end(), ' ')) + 1;
    if (text.empty() || *order != tokens || *order > max_order) {
      load_error(kName, reader.line_no(), "order does not match n-gram \"" + std::string(text) + "\"");
    }
    if (!totals.contains(*year)) {
      load_error(kName, reader.line_no(), "year " + std::to_string(*year) + " has no totals");
    }

    const bool same_gram = !grams.empty() && grams.back().order == *order && grams.back().text == text;
    if (same_gram) {
      if (grams.back().cells.back().year >= *year) {
        load_error(kName, reader.line_no(), "years not strictly ascending");
      }
    } else {
      if (!grams.empty() && std::tie(*order, text) <
                                std::make_tuple(grams.back().order, std::string_view(grams.back().text))) {
        load_error(kName, reader.line_no(), "rows not sorted by (order, ngram)");
      }
      grams.push_back(GramRecord{std::string(text), *order, {}});
    }
    grams.back().cells.push_back(YearCell{*year, {*match, *volume}, {}});
  }
  return grams;
}

void parse_postings(const std::string& data, std::vector<GramRecord>& grams,
                    const std::vector<DocumentMeta>& docs) {
  constexpr std::string_view kName = kPostingsFile;
  std::unordered_map<std::string_view, std::uint32_t> doc_ordinal;
  for (std::size_t i = 0; i < docs.size(); ++i) {
    doc_ordinal.emplace(docs[i].doc_id, static_cast<std::uint32_t>(i));
  }
  std::unordered_map<std::string_view, std::size_t> gram_at;
  for (std::size_t i = 0; i < grams.size(); ++i) gram_at.emplace(grams[i].text, i);

  tsv::LineReader reader(data);
  std::string_view line;
  while (reader.next(line)) {
    const auto fields = tsv::split(line, '\t');
    if (fields.size() < 4) load_error(kName, reader.line_no(), "expected at least 4 fields");
    auto it = gram_at.find(fields[0]);
    auto year = tsv::parse_int<int>(fields[2]);
    if (it == gram_at.end() || !year) load_error(kName, reader.line_no(), "unknown n-gram or year");
    auto& record = grams[it->second];
    auto cell = std::lower_bound(record.cells.begin(), record.cells.end(), *year,
                                 [](const YearCell& c, int y) { return c.year < y; });
    if (cell == record.cells.end() || cell->year != *year || !cell->docs.empty()) {
      load_error(kName, reader.line_no(), "posting does not match a count row");
    }
    for (std::size_t f = 3; f < fields.size(); ++f) {
      auto doc = doc_ordinal.find(fields[f]);
      if (doc == doc_ordinal.end()) {
        load_error(kName, reader.line_no(), "unknown doc_id \"" + std::string(fields[f]) + "\"");
      }
      cell->docs.push_back(doc->second);
    }
    std::sort(cell->docs.begin(), cell->docs.end());
  }
  for (const auto& g : grams) {
    for (const auto& c : g.cells) {
      if (c.docs.size() != c.count.volume_count) {
        throw Error(ErrorKind::kLoad, "postings.tsv: \"" + g.text + "\" in " +
                                          std::to_string(c.year) +
                                          " lists a different number of documents than its volume_count");
      }
    }
  }
}

}  // namespace

void save_index(const CorpusIndex& index, const fs::path& directory) {
  std::error_code ec;
  fs::create_directories(directory, ec);
  if (ec) throw Error(ErrorKind::kIo, "cannot create " + directory.string() + ": " + ec.message());

  json checksums = json::object();
  {
    ChecksumWriter out(directory / kCountsFile);
    for (const auto& g : index.grams()) {
      for (const auto& c : g.cells) {
        auto& buf = out.buffer();
        buf += g.text;
        buf.push_back('\t');
        tsv::append_int(buf, g.order);
        buf.push_back('\t');
        tsv::append_int(buf, c.year);
        buf.push_back('\t');
        tsv::append_int(buf, c.count.match_count);
        buf.push_back('\t');
        tsv::append_int(buf, c.count.volume_count);
        buf.push_back('\n');
        out.maybe_flush();
      }
    }
    checksums[std::string(kCountsFile)] = out.finish();
  }
  {
    ChecksumWriter out(directory / kTotalsFile);
    for (const auto& [year, t] : index.totals()) {
      auto& buf = out.buffer();
      tsv::append_int(buf, year);
      buf.push_back('\t');
      for (int n = 0; n < kMaxOrder; ++n) {
        if (n > 0) buf.push_back(',');
        tsv::append_int(buf, t.total_matches[n]);
      }
      buf.push_back('\t');
      tsv::append_int(buf, t.volumes);
      buf.push_back('\n');
    }
    checksums[std::string(kTotalsFile)] = out.finish();
  }
  if (index.has_postings()) {
    ChecksumWriter out(directory / kPostingsFile);
    const auto docs = index.documents();
    for (const auto& g : index.grams()) {
      for (const auto& c : g.cells) {
        auto& buf = out.buffer();
        buf += g.text;
        buf.push_back('\t');
        tsv::append_int(buf, g.order);
        buf.push_back('\t');
        tsv::append_int(buf, c.year);
        for (auto d : c.docs) {
          buf.push_back('\t');
          buf += docs[d].doc_id;
        }
        buf.push_back('\n');
        out.maybe_flush();
      }
    }
    checksums[std::string(kPostingsFile)] = out.finish();
  } else {
    fs::remove(directory / kPostingsFile, ec);
  }

  json manifest = {
      {"format", kFormatName},
      {"version", kFormatVersion},
      {"corpus_id", index.corpus_id()},
      {"max_order", index.max_order()},
      {"has_postings", index.has_postings()},
      {"checksums", checksums},
  };
  if (auto span = index.year_span()) {
    manifest["year_span"] = json::array({span->min_year, span->max_year});
  } else {
    manifest["year_span"] = nullptr;
  }
  json documents = json::array();
  for (const auto& doc : index.documents()) documents.push_back(document_json(doc));
  manifest["documents"] = std::move(documents);

  std::ofstream out(directory / kManifestFile, std::ios::binary);
  out << manifest.dump(2) << '\n';
  if (!out) throw Error(ErrorKind::kIo, "write failed for manifest.json");
}

CorpusIndex load_index(const fs::path& directory) {
  const json manifest = read_manifest(directory);
  auto docs = parse_documents(manifest);
  const int max_order = manifest["max_order"].get<int>();
  const bool has_postings = manifest["has_postings"].get<bool>();

  const auto totals_data = read_file(directory / kTotalsFile, kTotalsFile);
  verify_checksum(manifest, kTotalsFile, totals_data);
  auto totals = parse_totals(totals_data);

  std::vector<GramRecord> grams;
  {
    const auto counts_data = read_file(directory / kCountsFile, kCountsFile);
    verify_checksum(manifest, kCountsFile, counts_data);
    grams = parse_counts(counts_data, max_order, totals);
  }
  if (has_postings) {
    const auto postings_data = read_file(directory / kPostingsFile, kPostingsFile);
    verify_checksum(manifest, kPostingsFile, postings_data);
    parse_postings(postings_data, grams, docs);
  }
  return IndexAssembler::from_sorted(manifest["corpus_id"].get<std::string>(), max_order,
                                     has_postings, std::move(docs), std::move(grams),
                                     std::move(totals));
}

IndexSummary read_index_summary(const fs::path& directory) {
  const json manifest = read_manifest(directory);
  IndexSummary summary;
  summary.corpus_id = manifest["corpus_id"].get<std::string>();
  summary.max_order = manifest["max_order"].get<int>();
  summary.has_postings = manifest["has_postings"].get<bool>();
  summary.document_count = manifest["documents"].size();
  if (auto it = manifest.find("year_span"); it != manifest.end() && it->is_array() && it->size() == 2) {
    summary.year_span = YearSpan{(*it)[0].get<int>(), (*it)[1].get<int>()};
  }
  return summary;
}

}  // namespace ngramscope
