#pragma once

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "selkey/selectivity_extraction.hpp"
#include "selkey/text_ingest.hpp"

namespace selkey {

using Keyphrase = std::vector<std::string>;

/// Union of all annotators' keyphrases for one document.
struct GoldSet {
  std::string doc_id;
  std::set<Keyphrase> keywords;
};

/// Tokenises and lemmatises a gold keyphrase exactly like document text.
inline Keyphrase normalize_phrase(std::string_view phrase, const LemmaTable& lemmas = {}) {
  Keyphrase words;
  for (const auto& tok : tokenize(phrase)) words.push_back(lemmas.lookup(tok.normalized));
  return words;
}

inline GoldSet make_gold(std::string doc_id,
                         const std::vector<std::vector<std::string>>& annotators,
                         const LemmaTable& lemmas = {}) {
  GoldSet g{std::move(doc_id), {}};
  for (const auto& list : annotators)
    for (const auto& phrase : list) {
      auto words = normalize_phrase(phrase, lemmas);
      if (!words.empty()) g.keywords.insert(std::move(words));
    }
  return g;
}

namespace detail {

inline std::size_t line_of_offset(std::string_view text, std::size_t offset) {
  offset = std::min(offset, text.size());
  return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + offset, '\n'));
}

inline std::size_t line_of_key(std::string_view text, std::string_view key) {
  const auto quoted = "\"" + std::string(key) + "\"";
  const auto at = text.find(quoted);
  return at == std::string_view::npos ? 0 : line_of_offset(text, at);
}

}  // namespace detail

/// Reads `{doc_id: {annotator_id: ["key phrase", ...]}}`. Result is ordered by
/// doc_id.
inline std::vector<GoldSet> load_gold(const std::filesystem::path& path,
                                      const LemmaTable& lemmas = {}) {
  const std::string text = detail::read_file(path);
  nlohmann::json root;
  try {
    root = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw LoadError(path, "line " + std::to_string(detail::line_of_offset(text, e.byte)) +
                              ": malformed JSON");
  }
  const auto fail = [&](std::string_view key, const std::string& what) {
    throw LoadError(path, "line " + std::to_string(detail::line_of_key(text, key)) + ": " + what);
  };
  if (!root.is_object()) fail("", "top level must be an object keyed by doc_id");

  std::vector<GoldSet> out;
  for (const auto& [doc_id, annotators] : root.items()) {
    if (!annotators.is_object()) fail(doc_id, "doc '" + doc_id + "' must map annotator ids to lists");
    std::vector<std::vector<std::string>> lists;
    for (const auto& [annotator, phrases] : annotators.items()) {
      if (!phrases.is_array()) fail(annotator, "annotator '" + annotator + "' must hold a list");
      auto& list = lists.emplace_back();
      for (const auto& p : phrases) {
        if (!p.is_string()) fail(annotator, "keyphrases of '" + annotator + "' must be strings");
        list.push_back(p.get<std::string>());
      }
    }
    out.push_back(make_gold(doc_id, lists, lemmas));
  }
  std::sort(out.begin(), out.end(),
            [](const GoldSet& a, const GoldSet& b) { return a.doc_id < b.doc_id; });
  return out;
}

inline double f1_score(double p, double r) { return p + r > 0 ? 2 * p * r / (p + r) : 0.0; }

/// Recall counts twice as much as precision.
inline double f2_score(double p, double r) { return 4 * p + r > 0 ? 5 * p * r / (4 * p + r) : 0.0; }

enum class MatchMode { Exact };

struct EvalOptions {
  MatchMode mode = MatchMode::Exact;
  // When set, only gold keyphrases of this many words are scored against.
  std::optional<std::size_t> gold_length;
};

struct DocScore {
  std::string doc_id;
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;
  double precision = 0;
  double recall = 0;
  double f1 = 0;
  double f2 = 0;
  std::vector<Keyphrase> matched;
};

struct MacroScores {
  std::size_t documents = 0;
  double precision = 0;
  double recall = 0;
  double f1 = 0;
  double f2 = 0;
};

struct EvalReport {
  std::vector<DocScore> per_doc;
  MacroScores macro;
};

inline DocScore score_counts(std::string doc_id, std::size_t tp, std::size_t fp, std::size_t fn) {
  DocScore s;
  s.doc_id = std::move(doc_id);
  s.tp = tp;
  s.fp = fp;
  s.fn = fn;
  s.precision = tp + fp == 0 ? 0.0 : static_cast<double>(tp) / static_cast<double>(tp + fp);
  s.recall = tp + fn == 0 ? 0.0 : static_cast<double>(tp) / static_cast<double>(tp + fn);
  s.f1 = f1_score(s.precision, s.recall);
  s.f2 = f2_score(s.precision, s.recall);
  return s;
}

/// Exact matching on normalised word sequences. Candidates are deduplicated
/// first, so order and repetition do not matter.
inline DocScore evaluate(const std::vector<KeywordCandidate>& candidates, const GoldSet& gold,
                         const EvalOptions& options = {}) {
  std::set<Keyphrase> predicted;
  for (const auto& c : candidates) predicted.insert(c.words);

  std::set<Keyphrase> reference;
  for (const auto& k : gold.keywords)
    if (!options.gold_length || k.size() == *options.gold_length) reference.insert(k);

  std::vector<Keyphrase> matched;
  std::set_intersection(predicted.begin(), predicted.end(), reference.begin(), reference.end(),
                        std::back_inserter(matched));
  const auto tp = matched.size();
  DocScore s = score_counts(gold.doc_id, tp, predicted.size() - tp, reference.size() - tp);
  s.matched = std::move(matched);
  return s;
}

/// Unweighted mean of each per-document metric.
inline EvalReport macro_average(std::vector<DocScore> per_doc) {
  if (per_doc.empty()) throw std::invalid_argument("macro average over zero documents");
  EvalReport report;
  auto& m = report.macro;
  for (const auto& d : per_doc) {
    m.precision += d.precision;
    m.recall += d.recall;
    m.f1 += d.f1;
    m.f2 += d.f2;
  }
  const auto n = static_cast<double>(per_doc.size());
  m.documents = per_doc.size();
  m.precision /= n;
  m.recall /= n;
  m.f1 /= n;
  m.f2 /= n;
  report.per_doc = std::move(per_doc);
  return report;
}

namespace detail {

inline std::string fixed6(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

inline std::string join_words(const Keyphrase& k) {
  std::string s;
  for (const auto& w : k) {
    if (!s.empty()) s += ' ';
    s += w;
  }
  return s;
}

}  // namespace detail

inline void write_eval_tsv_header(std::ostream& out) {
  out << "set\tdoc_id\ttp\tfp\tfn\tprecision\trecall\tf1\tf2\n";
}

/// Per-document rows followed by a `# macro` summary line for the set.
inline void write_eval_tsv(std::string_view label, const EvalReport& report, std::ostream& out) {
  using detail::fixed6;
  for (const auto& d : report.per_doc)
    out << label << '\t' << d.doc_id << '\t' << d.tp << '\t' << d.fp << '\t' << d.fn << '\t'
        << fixed6(d.precision) << '\t' << fixed6(d.recall) << '\t' << fixed6(d.f1) << '\t'
        << fixed6(d.f2) << '\n';
  const auto& m = report.macro;
  out << "# macro\t" << label << "\tdocs=" << m.documents << "\tprecision=" << fixed6(m.precision)
      << "\trecall=" << fixed6(m.recall) << "\tf1=" << fixed6(m.f1) << "\tf2=" << fixed6(m.f2)
      << '\n';
}

inline nlohmann::ordered_json to_json(const EvalReport& report) {
  nlohmann::ordered_json j;
  auto& docs = j["per_doc"] = nlohmann::ordered_json::array();
  for (const auto& d : report.per_doc) {
    nlohmann::ordered_json row;
    row["doc_id"] = d.doc_id;
    row["tp"] = d.tp;
    row["fp"] = d.fp;
    row["fn"] = d.fn;
    row["precision"] = d.precision;
    row["recall"] = d.recall;
    row["f1"] = d.f1;
    row["f2"] = d.f2;
    auto& matched = row["matched"] = nlohmann::ordered_json::array();
    for (const auto& k : d.matched) matched.push_back(detail::join_words(k));
    docs.push_back(std::move(row));
  }
  const auto& m = report.macro;
  j["macro"] = {{"documents", m.documents}, {"precision", m.precision}, {"recall", m.recall},
                {"f1", m.f1}, {"f2", m.f2}};
  return j;
}

}  // namespace selkey
