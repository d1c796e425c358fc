#pragma once

// Corpus-level drivers behind the command-line tool: each command walks a
// corpus directory, processes documents on a small worker pool and writes one
// output file per document. Summaries are assembled in doc_id order.

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "selkey/cooc_network.hpp"
#include "selkey/eval_harness.hpp"
#include "selkey/network_measures.hpp"
#include "selkey/selectivity_extraction.hpp"
#include "selkey/text_ingest.hpp"

namespace selkey {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitData = 3;

/// Bad invocation: missing or invalid options, unreadable side inputs.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class SetSelection { Set1, Set2, Both };

struct RunConfig {
  std::filesystem::path corpus_dir;
  std::optional<std::filesystem::path> stopwords_path;
  std::optional<std::filesystem::path> lemma_table_path;
  std::optional<std::filesystem::path> gold_path;
  std::filesystem::path output_dir = ".";
  ExtractionConfig extraction;
  SetSelection sets = SetSelection::Both;
  bool restrict_gold_by_length = false;
  bool title_sentence = true;
  unsigned workers = 1;

  bool wants_set1() const { return sets != SetSelection::Set2; }
  bool wants_set2() const { return sets != SetSelection::Set1; }
};

struct RunSummary {
  std::vector<std::string> lines;     // one per processed document, doc_id order
  std::vector<std::string> warnings;
  std::vector<std::string> errors;    // per-document data errors
  std::vector<std::filesystem::path> written;

  int exit_code() const { return errors.empty() ? kExitOk : kExitData; }
};

/// Checks every path and numeric option before any document is touched.
inline void validate(const RunConfig& config, bool needs_gold = false) {
  namespace fs = std::filesystem;
  std::error_code ec;
  if (config.corpus_dir.empty()) throw UsageError("--corpus is required");
  if (!fs::is_directory(config.corpus_dir, ec))
    throw UsageError("corpus directory not found: " + config.corpus_dir.string());
  for (const auto* p : {&config.stopwords_path, &config.lemma_table_path, &config.gold_path})
    if (*p && !fs::is_regular_file(**p, ec))
      throw UsageError("file not found: " + (*p)->string());
  if (needs_gold && !config.gold_path) throw UsageError("--gold is required for eval");
  if (!(config.extraction.threshold > 0)) throw UsageError("--threshold must be > 0");
  if (config.workers == 0) throw UsageError("--workers must be >= 1");
}

namespace detail {

struct Resources {
  LemmaTable lemmas;
  StopwordList stopwords;
};

inline Resources load_resources(const RunConfig& config) {
  Resources r;
  try {
    if (config.lemma_table_path) r.lemmas = load_lemma_table(*config.lemma_table_path);
    if (config.stopwords_path) r.stopwords = load_stopwords(*config.stopwords_path);
  } catch (const LoadError& e) {
    throw UsageError(e.what());
  }
  return r;
}

/// Runs fn(i) for i in [0, n) on up to `workers` threads.
inline void parallel_for(std::size_t n, unsigned workers, const std::function<void(std::size_t)>& fn) {
  const auto threads = std::min<std::size_t>(workers, n);
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  pool.reserve(threads);
  for (std::size_t t = 0; t < threads; ++t)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) fn(i);
    });
}

inline void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw LoadError(path, "cannot open for writing");
  out << content;
  if (!out.flush()) throw LoadError(path, "write failed");
}

struct DocOutcome {
  std::string doc_id;
  std::string line;
  std::optional<std::string> error;
  std::vector<std::filesystem::path> written;
  std::vector<KeywordCandidate> set1;
  std::vector<KeywordCandidate> set2;
};

enum class Stage { Build, Metrics, Extract, Eval };

inline DocOutcome process_document(const std::filesystem::path& file, const RunConfig& config,
                                   const Resources& res, Stage stage) {
  DocOutcome o;
  o.doc_id = file.stem().string();
  try {
    const Document doc = load_document(file, {.title_sentence = config.title_sentence});
    const auto base = config.output_dir / o.doc_id;
    std::ostringstream line;
    line << o.doc_id;

    if (stage == Stage::Build) {
      const auto net = build_network(apply_lemmas(doc, res.lemmas));
      std::ostringstream tsv;
      write_edge_tsv(net, tsv);
      const auto path = base.string() + ".edges.tsv";
      write_file(path, tsv.str());
      o.written.emplace_back(path);
      line << "\tN=" << net.node_count() << "\tK=" << net.edge_count();
    } else if (stage == Stage::Metrics) {
      const auto net = build_network(apply_lemmas(doc, res.lemmas));
      std::ostringstream tsv;
      write_metrics_tsv(compute_all(net), tsv);
      const auto path = base.string() + ".metrics.tsv";
      write_file(path, tsv.str());
      o.written.emplace_back(path);
      line << "\tN=" << net.node_count() << "\tK=" << net.edge_count();
    } else {
      auto r = extract_document(doc, res.lemmas, res.stopwords, config.extraction);
      line << "\tN=" << r.network.node_count() << "\tK=" << r.network.edge_count();
      if (config.wants_set1()) line << "\tset1=" << r.set1.size();
      if (config.wants_set2()) line << "\tset2=" << r.set2.size();
      if (stage == Stage::Extract) {
        if (config.wants_set1()) {
          std::ostringstream js;
          write_candidates_jsonl(o.doc_id, r.set1, 1, js);
          const auto path = base.string() + ".set1.jsonl";
          write_file(path, js.str());
          o.written.emplace_back(path);
        }
        if (config.wants_set2()) {
          std::ostringstream js;
          write_candidates_jsonl(o.doc_id, r.set2, 2, js);
          const auto path = base.string() + ".set2.jsonl";
          write_file(path, js.str());
          o.written.emplace_back(path);
        }
      }
      o.set1 = std::move(r.set1);
      o.set2 = std::move(r.set2);
    }
    o.line = line.str();
  } catch (const std::exception& e) {
    o.error = e.what();
  }
  return o;
}

inline std::vector<DocOutcome> run_stage(const RunConfig& config, Stage stage, RunSummary& summary) {
  const auto res = load_resources(config);
  std::vector<std::filesystem::path> files;
  try {
    files = list_corpus(config.corpus_dir);
  } catch (const LoadError& e) {
    throw UsageError(e.what());
  }
  if (files.empty()) summary.warnings.push_back("corpus is empty: " + config.corpus_dir.string());
  if (stage != Stage::Eval) {
    std::error_code ec;
    std::filesystem::create_directories(config.output_dir, ec);
    if (ec) throw UsageError("cannot create output directory: " + config.output_dir.string());
  }

  std::vector<DocOutcome> outcomes(files.size());
  parallel_for(files.size(), config.workers,
               [&](std::size_t i) { outcomes[i] = process_document(files[i], config, res, stage); });

  std::map<std::string, std::size_t> seen;
  for (const auto& o : outcomes) {
    if (++seen[o.doc_id] == 2) summary.warnings.push_back("duplicate doc_id: " + o.doc_id);
    if (o.error) {
      summary.errors.push_back(*o.error);
      continue;
    }
    summary.lines.push_back(o.line);
    summary.written.insert(summary.written.end(), o.written.begin(), o.written.end());
  }
  return outcomes;
}

}  // namespace detail

/// Writes `<doc_id>.edges.tsv` per document.
inline RunSummary run_build(const RunConfig& config) {
  validate(config);
  RunSummary summary;
  detail::run_stage(config, detail::Stage::Build, summary);
  return summary;
}

/// Writes `<doc_id>.metrics.tsv` per document.
inline RunSummary run_metrics(const RunConfig& config) {
  validate(config);
  RunSummary summary;
  detail::run_stage(config, detail::Stage::Metrics, summary);
  return summary;
}

/// Writes `<doc_id>.set1.jsonl` and/or `<doc_id>.set2.jsonl` per document.
inline RunSummary run_extract(const RunConfig& config) {
  validate(config);
  RunSummary summary;
  detail::run_stage(config, detail::Stage::Extract, summary);
  return summary;
}

struct EvalRun {
  RunSummary summary;
  std::optional<EvalReport> set1;
  std::optional<EvalReport> set2;
};

/// Extracts every document, scores it against the gold file and writes
/// `eval.tsv` and `eval.json` into the output directory. Documents missing on
/// either side are skipped with a warning.
inline EvalRun run_eval(const RunConfig& config) {
  validate(config, true);
  EvalRun run;
  std::vector<GoldSet> gold;
  try {
    const LemmaTable lemmas =
        config.lemma_table_path ? load_lemma_table(*config.lemma_table_path) : LemmaTable{};
    gold = load_gold(*config.gold_path, lemmas);
  } catch (const LoadError& e) {
    throw UsageError(e.what());
  }
  auto outcomes = detail::run_stage(config, detail::Stage::Eval, run.summary);

  std::map<std::string, const detail::DocOutcome*> by_id;
  for (const auto& o : outcomes)
    if (!o.error) by_id.emplace(o.doc_id, &o);
  std::map<std::string, const GoldSet*> gold_by_id;
  for (const auto& g : gold) {
    gold_by_id.emplace(g.doc_id, &g);
    if (!by_id.count(g.doc_id))
      run.summary.warnings.push_back("gold doc not in corpus, skipped: " + g.doc_id);
  }

  std::vector<DocScore> s1;
  std::vector<DocScore> s2;
  for (const auto& [id, o] : by_id) {
    const auto it = gold_by_id.find(id);
    if (it == gold_by_id.end()) {
      run.summary.warnings.push_back("no gold keywords for doc, skipped: " + id);
      continue;
    }
    EvalOptions o1;
    EvalOptions o2;
    if (config.restrict_gold_by_length) {
      o1.gold_length = 1;
      o2.gold_length = 2;
    }
    if (config.wants_set1()) s1.push_back(evaluate(o->set1, *it->second, o1));
    if (config.wants_set2()) s2.push_back(evaluate(o->set2, *it->second, o2));
  }

  const bool any = !(config.wants_set1() ? s1 : s2).empty();
  if (!any) {
    run.summary.errors.push_back("no document has both text and gold keywords");
    return run;
  }
  if (config.wants_set1()) run.set1 = macro_average(std::move(s1));
  if (config.wants_set2()) run.set2 = macro_average(std::move(s2));

  std::error_code ec;
  std::filesystem::create_directories(config.output_dir, ec);
  if (ec) throw UsageError("cannot create output directory: " + config.output_dir.string());

  std::ostringstream tsv;
  write_eval_tsv_header(tsv);
  nlohmann::ordered_json json;
  if (run.set1) {
    write_eval_tsv("SET1", *run.set1, tsv);
    json["SET1"] = to_json(*run.set1);
  }
  if (run.set2) {
    write_eval_tsv("SET2", *run.set2, tsv);
    json["SET2"] = to_json(*run.set2);
  }
  const auto tsv_path = config.output_dir / "eval.tsv";
  const auto json_path = config.output_dir / "eval.json";
  detail::write_file(tsv_path, tsv.str());
  detail::write_file(json_path, json.dump(2) + "\n");
  run.summary.written.push_back(tsv_path);
  run.summary.written.push_back(json_path);
  return run;
}

}  // namespace selkey
