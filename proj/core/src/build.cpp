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

#include <algorithm>
#include <exception>
#include <fstream>
#include <set>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "index_assembler.hpp"
#include "ngramscope/error.hpp"

namespace ngramscope {
namespace {

using json = nlohmann::json;

bool valid_doc_id(std::string_view id) {
  return !id.empty() && id.find_first_of("\t\n\r") == std::string_view::npos;
}

[[noreturn]] void manifest_error(std::size_t line, const std::string& what) {
  throw Error(ErrorKind::kManifest, "manifest line " + std::to_string(line) + ": " + what);
}

std::string read_text_file(const DocumentMeta& doc) {
  std::ifstream in(doc.path, std::ios::binary);
  if (!in) {
    throw Error(ErrorKind::kIngest,
                "cannot read document " + doc.doc_id + " at " + doc.path);
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw Error(ErrorKind::kIngest, "read failed for document " + doc.doc_id);
  return std::move(buffer).str();
}

void check_documents(std::vector<DocumentMeta>& docs) {
  std::sort(docs.begin(), docs.end(),
            [](const DocumentMeta& a, const DocumentMeta& b) { return a.doc_id < b.doc_id; });
  for (std::size_t i = 0; i < docs.size(); ++i) {
    const auto& doc = docs[i];
    if (!valid_doc_id(doc.doc_id)) {
      throw Error(ErrorKind::kManifest, "invalid doc_id \"" + doc.doc_id + "\"");
    }
    if (i > 0 && docs[i - 1].doc_id == doc.doc_id) {
      throw Error(ErrorKind::kManifest, "duplicate doc_id \"" + doc.doc_id + "\"");
    }
    if (doc.year < kMinYear || doc.year > kMaxYear) {
      throw Error(ErrorKind::kManifest, "document " + doc.doc_id + " has year " +
                                            std::to_string(doc.year) + " outside " +
                                            std::to_string(kMinYear) + ".." +
                                            std::to_string(kMaxYear));
    }
  }
}

void check_options(const BuildOptions& options) {
  if (options.max_order < 1 || options.max_order > kMaxOrder) {
    throw Error(ErrorKind::kParameter,
                "max_order must be in 1.." + std::to_string(kMaxOrder));
  }
}

// `docs` must already be sorted by doc_id; `text_of(i, doc)` supplies bodies.
// Workers take contiguous slices and their partial counts merge afterwards.
template <typename TextSource>
CorpusIndex build(std::vector<DocumentMeta> docs, const BuildOptions& options,
                  TextSource&& text_of) {
  check_options(options);
  unsigned workers = options.threads != 0 ? options.threads : std::thread::hardware_concurrency();
  workers = std::clamp<unsigned>(workers, 1, std::max<std::size_t>(1, docs.size()));

  std::vector<GramAccumulator> partials;
  partials.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) partials.emplace_back(options.max_order, options.with_postings);
  std::vector<std::exception_ptr> failures(workers);

  auto run = [&](unsigned w) {
    const std::size_t begin = docs.size() * w / workers;
    const std::size_t end = docs.size() * (w + 1) / workers;
    try {
      for (std::size_t i = begin; i < end; ++i) {
        const std::string text = text_of(i, docs[i]);
        partials[w].add_document(static_cast<std::uint32_t>(i), docs[i].year, tokenize(text));
      }
    } catch (...) {
      failures[w] = std::current_exception();
    }
  };

  if (workers == 1) {
    run(0);
  } else {
    std::vector<std::jthread> threads;
    for (unsigned w = 0; w < workers; ++w) threads.emplace_back(run, w);
  }
  for (auto& failure : failures) {
    if (failure) std::rethrow_exception(failure);
  }

  GramAccumulator merged = std::move(partials.front());
  for (unsigned w = 1; w < workers; ++w) merged.merge(std::move(partials[w]));
  return IndexAssembler::assemble(options.corpus_id, options.max_order, options.with_postings,
                                  std::move(docs), std::move(merged));
}

}  // namespace

CorpusManifest CorpusManifest::read(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw Error(ErrorKind::kManifest, "cannot open manifest " + file.string());
  return parse(in, file.parent_path());
}

CorpusManifest CorpusManifest::parse(std::istream& in, const std::filesystem::path& base_dir) {
  CorpusManifest manifest;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;

    json obj;
    try {
      obj = json::parse(line);
    } catch (const json::parse_error& e) {
      manifest_error(line_no, std::string("invalid JSON: ") + e.what());
    }
    if (!obj.is_object()) manifest_error(line_no, "expected a JSON object");

    auto required_string = [&](const char* key) -> std::string {
      auto it = obj.find(key);
      if (it == obj.end() || !it->is_string()) {
        manifest_error(line_no, std::string("field \"") + key + "\" must be a string");
      }
      return it->get<std::string>();
    };

    ManifestEntry entry;
    entry.doc_id = required_string("doc_id");
    if (!valid_doc_id(entry.doc_id)) manifest_error(line_no, "doc_id is empty or has control characters");
    if (auto it = obj.find("title"); it != obj.end() && !it->is_null()) {
      if (!it->is_string()) manifest_error(line_no, "field \"title\" must be a string");
      entry.title = it->get<std::string>();
    }
    auto year = obj.find("year");
    if (year == obj.end() || !year->is_number_integer()) {
      manifest_error(line_no, "field \"year\" must be an integer");
    }
    const auto y = year->get<std::int64_t>();
    if (y < kMinYear || y > kMaxYear) {
      manifest_error(line_no, "year " + std::to_string(y) + " outside " +
                                  std::to_string(kMinYear) + ".." + std::to_string(kMaxYear));
    }
    entry.year = static_cast<int>(y);
    if (auto it = obj.find("language"); it != obj.end() && !it->is_null()) {
      if (!it->is_string()) manifest_error(line_no, "field \"language\" must be a string");
      entry.language = it->get<std::string>();
    }
    std::filesystem::path path = required_string("path");
    if (path.is_relative()) path = base_dir / path;
    entry.path = std::filesystem::absolute(path).lexically_normal();
    manifest.entries.push_back(std::move(entry));
  }

  std::set<std::string_view> seen;
  for (const auto& e : manifest.entries) {
    if (!seen.insert(e.doc_id).second) {
      throw Error(ErrorKind::kManifest, "duplicate doc_id \"" + e.doc_id + "\"");
    }
  }
  return manifest;
}

CorpusIndex build_index(const CorpusManifest& manifest, const BuildOptions& options) {
  std::vector<DocumentMeta> docs;
  docs.reserve(manifest.entries.size());
  for (const auto& e : manifest.entries) {
    docs.push_back(DocumentMeta{e.doc_id, e.title, e.year, e.language, e.path.string()});
  }
  check_documents(docs);
  return build(std::move(docs), options,
               [](std::size_t, const DocumentMeta& doc) { return read_text_file(doc); });
}

CorpusIndex build_index_from_texts(std::vector<DocumentMeta> docs,
                                   const std::vector<std::string>& texts,
                                   const BuildOptions& options) {
  if (docs.size() != texts.size()) {
    throw Error(ErrorKind::kParameter, "documents and texts differ in length");
  }
  // Sorting must carry the texts along.
  std::vector<std::size_t> order(docs.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return docs[a].doc_id < docs[b].doc_id; });
  std::vector<DocumentMeta> sorted;
  std::vector<const std::string*> sorted_texts;
  for (auto i : order) {
    sorted.push_back(std::move(docs[i]));
    sorted_texts.push_back(&texts[i]);
  }
  check_documents(sorted);
  return build(std::move(sorted), options,
               [&](std::size_t i, const DocumentMeta&) { return *sorted_texts[i]; });
}

}  // namespace ngramscope
