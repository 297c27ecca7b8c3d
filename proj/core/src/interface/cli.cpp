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

#include "ngramscope/interface/cli.hpp"

#include <atomic>
#include <csignal>
#include <fstream>
#include <optional>

#include <CLI11.hpp>

#include "ngramscope/analysis.hpp"
#include "ngramscope/error.hpp"
#include "ngramscope/interface/codec.hpp"
#include "ngramscope/interface/http.hpp"
#include "ngramscope/interface/service.hpp"
#include "ngramscope/query.hpp"
#include "ngramscope/store.hpp"

namespace ngramscope::interface {
namespace {

std::atomic<HttpServer*> g_server{nullptr};

extern "C" void handle_stop_signal(int) {
  if (auto* server = g_server.load()) server->stop();
}

struct IngestArgs {
  std::string corpus;
  std::string manifest;
  int max_order = kMaxOrder;
  bool postings = false;
  std::string out;
  unsigned threads = 0;
};

struct ImportArgs {
  std::string corpus;
  std::string counts;
  std::string totals;
  std::string out;
};

struct QueryArgs {
  std::string phrases;
  std::string corpus;
  std::optional<int> start;
  std::optional<int> end;
  int smoothing = kDefaultSmoothing;
  std::string normalize = "tokens";
  std::string format = "csv";
  bool case_insensitive = false;
};

struct CompleteArgs {
  std::string history;
  std::string corpus;
  std::string unit = "word";
  std::size_t top = 10;
  std::string format = "text";
};

struct AnomalyArgs {
  std::string phrase;
  std::string corpus;
  int window = kDefaultIsolationWindow;
  int gap = kDefaultMinGap;
  bool spikes = false;
  int spike_window = kDefaultSpikeWindow;
  double threshold = kDefaultSpikeThreshold;
  std::string format = "text";
};

struct DocsArgs {
  std::string phrase;
  std::string corpus;
  std::optional<int> start;
  std::optional<int> end;
  std::string format = "text";
};

struct ServeArgs {
  int port = 8080;
  std::string host = "127.0.0.1";
  std::string corpus_dir;
  bool preload = false;
};

std::pair<int, int> resolve_years(const CorpusIndex& index, std::optional<int> start,
                                  std::optional<int> end) {
  const auto span = index.year_span();
  if ((!start || !end) && !span) {
    throw Error(ErrorKind::kParameter, "corpus has no dated data; pass --start and --end");
  }
  return {start.value_or(span ? span->min_year : 0), end.value_or(span ? span->max_year : 0)};
}

int run_ingest(const IngestArgs& args, std::ostream& out) {
  const auto manifest = CorpusManifest::read(args.manifest);
  BuildOptions options;
  options.corpus_id = args.corpus;
  options.max_order = args.max_order;
  options.with_postings = args.postings;
  options.threads = args.threads;
  const auto index = build_index(manifest, options);
  save_index(index, args.out);
  out << "ingested " << index.documents().size() << " documents, " << index.grams().size()
      << " distinct n-grams into " << args.out << "\n";
  return kExitOk;
}

int run_import(const ImportArgs& args, std::ostream& out) {
  std::ifstream counts(args.counts, std::ios::binary);
  if (!counts) throw Error(ErrorKind::kImport, "cannot open " + args.counts);
  std::ifstream totals(args.totals, std::ios::binary);
  if (!totals) throw Error(ErrorKind::kImport, "cannot open " + args.totals);
  const auto index = import_gb_tsv(counts, totals, args.corpus);
  save_index(index, args.out);
  out << "imported " << index.grams().size() << " distinct n-grams into " << args.out << "\n";
  return kExitOk;
}

int run_query(const QueryArgs& args, std::ostream& out) {
  if (args.format != "csv" && args.format != "json" && args.format != "chart") {
    throw Error(ErrorKind::kParameter, "--format must be csv, json or chart");
  }
  // Grammar errors surface before the corpus is touched.
  (void)parse_query(args.phrases, kMaxOrder);
  const auto index = load_index(args.corpus);
  PhraseQuery query = parse_query(args.phrases, index.max_order());
  std::tie(query.start_year, query.end_year) = resolve_years(index, args.start, args.end);
  query.smoothing = args.smoothing;
  query.case_insensitive = args.case_insensitive;
  query.normalization = parse_normalization(args.normalize);
  const auto result = series(index, query);

  if (args.format == "json") {
    out << series_response(index.corpus_id(), query, result).dump() << "\n";
  } else if (args.format == "chart") {
    out << render_chart(result);
  } else {
    out << render_csv(result);
  }
  return kExitOk;
}

int run_complete(const CompleteArgs& args, std::ostream& out) {
  const auto unit = parse_completion_unit(args.unit);
  const auto index = load_index(args.corpus);
  const auto dist = complete(index, args.history, unit, args.top);
  if (args.format == "json") {
    out << to_json(dist).dump() << "\n";
    return kExitOk;
  }
  out << "support\t" << dist.support_count << "\n";
  for (const auto& e : dist.entries) {
    out << (e.symbol == " " ? std::string("<space>") : e.symbol) << "\t" << format_double(e.probability)
        << "\n";
  }
  return kExitOk;
}

int run_anomalies(const AnomalyArgs& args, std::ostream& out) {
  const auto index = load_index(args.corpus);
  const auto reports = find_misdated(index, args.phrase, args.window, args.gap);
  std::vector<Spike> spike_list;
  if (args.spikes) {
    const auto span = index.year_span();
    if (span) {
      PhraseSpec phrase{Ngram(tokenize(args.phrase)), false};
      if (phrase.ngram.order() == 0) throw Error(ErrorKind::kParameter, "phrase is empty");
      const auto raw = raw_series(index, phrase, span->min_year, span->max_year, Normalization::kTokens);
      spike_list = spikes(raw, args.spike_window, args.threshold);
    }
  }

  if (args.format == "json") {
    json body = json::array();
    for (const auto& r : reports) body.push_back(to_json(r));
    if (args.spikes) {
      json s = json::array();
      for (const auto& spike : spike_list) s.push_back(to_json(spike));
      body = {{"anomalies", std::move(body)}, {"spikes", std::move(s)}};
    }
    out << body.dump() << "\n";
    return kExitOk;
  }
  if (reports.empty()) out << "no isolated occurrences\n";
  for (const auto& r : reports) {
    out << r.year << "\t" << r.phrase << "\tvolumes=" << r.volume_count << "\tgap=" << r.gap;
    if (!r.doc_ids.empty()) {
      out << "\tdocs=";
      for (std::size_t i = 0; i < r.doc_ids.size(); ++i) out << (i ? "," : "") << r.doc_ids[i];
    }
    out << "\n  " << r.note << "\n";
  }
  if (args.spikes) {
    out << "spikes:\n";
    for (const auto& s : spike_list) out << "  " << s.year << "\t" << format_double(s.score) << "\n";
  }
  return kExitOk;
}

int run_docs(const DocsArgs& args, std::ostream& out) {
  const auto index = load_index(args.corpus);
  const auto [start, end] = resolve_years(index, args.start, args.end);
  const auto docs = documents(index, args.phrase, start, end);
  if (args.format == "json") {
    json body = json::array();
    for (const auto& d : docs) body.push_back(to_json(d));
    out << body.dump() << "\n";
    return kExitOk;
  }
  for (const auto& d : docs) out << d.year << "\t" << d.doc_id << "\t" << d.title << "\n";
  return kExitOk;
}

int run_serve(const ServeArgs& args, std::ostream& out, std::ostream& err) {
  const auto registry = CorpusRegistry::discover(args.corpus_dir);
  if (args.preload) {
    for (const auto& summary : registry.list()) registry.get(summary.corpus_id);
  }
  const ApiService service(registry);
  HttpServer server(service);
  const int port = server.bind(args.host, args.port);
  if (port < 0) {
    err << "error: cannot bind " << args.host << ":" << args.port << "\n";
    return kExitData;
  }
  out << "serving " << registry.size() << " corpora on http://" << args.host << ":" << port
      << "/api/v1/\n"
      << std::flush;
  g_server.store(&server);
  std::signal(SIGINT, handle_stop_signal);
  std::signal(SIGTERM, handle_stop_signal);
  server.listen();
  g_server.store(nullptr);
  return kExitOk;
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"n-gram frequency time series over dated corpora", "ngramscope"};
  app.require_subcommand(1);

  IngestArgs ingest;
  auto* ingest_cmd = app.add_subcommand("ingest", "Build an index from a JSON Lines corpus manifest");
  ingest_cmd->add_option("--corpus", ingest.corpus, "Corpus id")->required();
  ingest_cmd->add_option("--manifest", ingest.manifest, "JSON Lines manifest")->required();
  ingest_cmd->add_option("--max-order", ingest.max_order, "Highest n-gram order")
      ->check(CLI::Range(1, kMaxOrder));
  ingest_cmd->add_flag("--postings", ingest.postings, "Record per-year document postings");
  ingest_cmd->add_option("--out", ingest.out, "Output index directory")->required();
  ingest_cmd->add_option("--threads", ingest.threads, "Worker threads (0 = all cores)");

  ImportArgs import;
  auto* import_cmd = app.add_subcommand("import", "Import Google Books n-gram TSV exports");
  import_cmd->add_option("--corpus", import.corpus, "Corpus id")->required();
  import_cmd->add_option("--counts", import.counts, "ngram TAB year TAB match TAB volume rows")->required();
  import_cmd->add_option("--totals", import.totals, "year TAB m1,..,m5 TAB volumes rows")->required();
  import_cmd->add_option("--out", import.out, "Output index directory")->required();

  QueryArgs query;
  auto* query_cmd = app.add_subcommand("query", "Frequency series for comma-separated phrases");
  query_cmd->add_option("phrases", query.phrases, "Phrases, e.g. \"Albert Einstein, Frankenstein:ci\"")
      ->required();
  query_cmd->add_option("--corpus", query.corpus, "Index directory")->required();
  query_cmd->add_option("--start", query.start, "First year");
  query_cmd->add_option("--end", query.end, "Last year");
  query_cmd->add_option("--smoothing", query.smoothing, "Moving-average half width")
      ->check(CLI::NonNegativeNumber);
  query_cmd->add_option("--normalize", query.normalize, "tokens|volumes")
      ->check(CLI::IsMember({"tokens", "volumes"}));
  query_cmd->add_option("--format", query.format, "csv|json|chart")
      ->check(CLI::IsMember({"csv", "json", "chart"}));
  query_cmd->add_flag("--case-insensitive", query.case_insensitive, "Fold case for every phrase");

  CompleteArgs comp;
  auto* complete_cmd = app.add_subcommand("complete", "Next-symbol distribution after a history");
  complete_cmd->add_option("history", comp.history, "History words or characters")->required();
  complete_cmd->add_option("--corpus", comp.corpus, "Index directory")->required();
  complete_cmd->add_option("--unit", comp.unit, "word|char")->check(CLI::IsMember({"word", "char"}));
  complete_cmd->add_option("--top", comp.top, "Entries to show (0 = all)");
  complete_cmd->add_option("--format", comp.format, "text|json")->check(CLI::IsMember({"text", "json"}));

  AnomalyArgs anomaly;
  auto* anomalies_cmd = app.add_subcommand("anomalies", "Isolated early occurrences of a phrase");
  anomalies_cmd->add_option("phrase", anomaly.phrase, "Phrase")->required();
  anomalies_cmd->add_option("--corpus", anomaly.corpus, "Index directory")->required();
  anomalies_cmd->add_option("--window", anomaly.window, "Isolation window in years")
      ->check(CLI::PositiveNumber);
  anomalies_cmd->add_option("--gap", anomaly.gap, "Minimum years to the nearest other use")
      ->check(CLI::PositiveNumber);
  anomalies_cmd->add_flag("--spikes", anomaly.spikes, "Also list median-relative spikes");
  anomalies_cmd->add_option("--spike-window", anomaly.spike_window, "Spike neighborhood half width")
      ->check(CLI::PositiveNumber);
  anomalies_cmd->add_option("--threshold", anomaly.threshold, "Spike ratio threshold");
  anomalies_cmd->add_option("--format", anomaly.format, "text|json")
      ->check(CLI::IsMember({"text", "json"}));

  DocsArgs docs;
  auto* docs_cmd = app.add_subcommand("docs", "Documents containing a phrase in a year range");
  docs_cmd->add_option("phrase", docs.phrase, "Phrase")->required();
  docs_cmd->add_option("--corpus", docs.corpus, "Index directory")->required();
  docs_cmd->add_option("--start", docs.start, "First year");
  docs_cmd->add_option("--end", docs.end, "Last year");
  docs_cmd->add_option("--format", docs.format, "text|json")->check(CLI::IsMember({"text", "json"}));

  ServeArgs serve;
  auto* serve_cmd = app.add_subcommand("serve", "HTTP JSON API over a directory of indexes");
  serve_cmd->add_option("--port", serve.port, "TCP port (0 = any free port)")->required();
  serve_cmd->add_option("--corpus-dir", serve.corpus_dir, "Index directory or parent of several")
      ->required();
  serve_cmd->add_option("--host", serve.host, "Listen address");
  serve_cmd->add_flag("--preload", serve.preload, "Load every index before accepting requests");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*ingest_cmd) return run_ingest(ingest, out);
    if (*import_cmd) return run_import(import, out);
    if (*query_cmd) return run_query(query, out);
    if (*complete_cmd) return run_complete(comp, out);
    if (*anomalies_cmd) return run_anomalies(anomaly, out);
    if (*docs_cmd) return run_docs(docs, out);
    if (*serve_cmd) return run_serve(serve, out, err);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    const bool usage = e.kind() == ErrorKind::kParse || e.kind() == ErrorKind::kParameter;
    return usage ? kExitUsage : kExitData;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitData;
  }
  err << app.help();
  return kExitUsage;
}

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  return cli_main(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace ngramscope::interface
