#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "selkey/cooc_network.hpp"
#include "selkey/network_measures.hpp"
#include "selkey/text_ingest.hpp"

namespace selkey {

enum class Origin { In, Out };

inline std::string_view to_string(Origin o) { return o == Origin::In ? "IN" : "OUT"; }

struct Trigger {
  Origin origin;
  double score;
};

/// A single word (SET1) or an ordered word pair (SET2).
struct KeywordCandidate {
  std::vector<std::string> words;
  double score = 0;
  Origin origin = Origin::In;
  std::size_t rank = 0;
  // SET1 only: every direction whose selectivity met the threshold, strongest
  // first. `origin`/`score` mirror the front entry.
  std::vector<Trigger> triggers;
};

struct ExtractionConfig {
  double threshold = 1.0;
  std::optional<std::size_t> max_candidates;
  bool include_in = true;
  bool include_out = true;
  // Drop stopword nodes from SET1 too, not only from SET2 tuples.
  bool filter_set1_stopwords = true;
};

inline void validate(const ExtractionConfig& config) {
  if (!(config.threshold > 0) || !std::isfinite(config.threshold))
    throw std::invalid_argument("threshold must be a positive finite number");
}

/// Sorts by descending score, then lexicographically by words, and assigns
/// 1-based ranks. Applies the optional cap afterwards.
inline void rank_candidates(std::vector<KeywordCandidate>& cands,
                            std::optional<std::size_t> cap = std::nullopt) {
  std::sort(cands.begin(), cands.end(), [](const KeywordCandidate& a, const KeywordCandidate& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.words < b.words;
  });
  if (cap && cands.size() > *cap) cands.resize(*cap);
  for (std::size_t i = 0; i < cands.size(); ++i) cands[i].rank = i + 1;
}

/// SET1: nodes whose in- or out-selectivity reaches the threshold (inclusive),
/// scored by the larger qualifying value.
inline std::vector<KeywordCandidate> extract_set1(const CoocNetwork& net,
                                                  const std::vector<NodeMetrics>& metrics,
                                                  const ExtractionConfig& config = {},
                                                  const StopwordList& stopwords = {}) {
  validate(config);
  if (metrics.size() != net.node_count())
    throw std::invalid_argument("metrics do not belong to this network");
  std::vector<KeywordCandidate> out;
  for (const auto& m : metrics) {
    if (config.filter_set1_stopwords && stopwords.contains(m.word)) continue;
    std::vector<Trigger> triggers;
    if (config.include_in && m.k_in > 0 && m.e_in >= config.threshold)
      triggers.push_back({Origin::In, m.e_in});
    if (config.include_out && m.k_out > 0 && m.e_out >= config.threshold)
      triggers.push_back({Origin::Out, m.e_out});
    if (triggers.empty()) continue;
    // Stable: on equal scores IN stays in front.
    std::stable_sort(triggers.begin(), triggers.end(),
                     [](const Trigger& a, const Trigger& b) { return a.score > b.score; });
    KeywordCandidate c;
    c.words = {m.word};
    c.score = triggers.front().score;
    c.origin = triggers.front().origin;
    c.triggers = std::move(triggers);
    out.push_back(std::move(c));
  }
  rank_candidates(out, config.max_candidates);
  return out;
}

namespace detail {

// Heaviest non-self neighbour; ties go to the lexicographically smaller word.
inline std::optional<NodeId> heaviest(const CoocNetwork& net, NodeId node,
                                      std::span<const Neighbor> list) {
  std::optional<NodeId> best;
  Weight best_w = 0;
  for (const auto& nb : list) {
    if (nb.node == node) continue;
    if (!best || nb.weight > best_w ||
        (nb.weight == best_w && net.word(nb.node) < net.word(*best))) {
      best = nb.node;
      best_w = nb.weight;
    }
  }
  return best;
}

}  // namespace detail

/// SET2: each SET1 word paired with the neighbour that produced its
/// selectivity. In-selectivity yields (heaviest predecessor, word);
/// out-selectivity yields (word, heaviest successor). Tuples touching a
/// stopword are dropped and duplicates keep their best score.
inline std::vector<KeywordCandidate> expand_set2(const CoocNetwork& net,
                                                 const std::vector<KeywordCandidate>& set1,
                                                 const StopwordList& stopwords = {},
                                                 std::optional<std::size_t> cap = std::nullopt) {
  std::map<std::vector<std::string>, KeywordCandidate> merged;
  for (const auto& cand : set1) {
    if (cand.words.size() != 1) throw std::invalid_argument("SET1 candidate must be one word");
    const auto node = net.find(cand.words.front());
    if (!node) throw std::invalid_argument("SET1 word not in network: " + cand.words.front());
    std::vector<Trigger> triggers = cand.triggers;
    if (triggers.empty()) triggers.push_back({cand.origin, cand.score});

    for (const auto& t : triggers) {
      const bool in = t.origin == Origin::In;
      const auto partner =
          detail::heaviest(net, *node, in ? net.in_neighbors(*node) : net.out_neighbors(*node));
      // A positive selectivity implies at least one edge in that direction.
      if (!partner) throw std::logic_error("selective node without neighbours: " + cand.words.front());
      const auto& w = net.word(*node);
      const auto& p = net.word(*partner);
      if (stopwords.contains(w) || stopwords.contains(p)) continue;

      KeywordCandidate tuple;
      tuple.words = in ? std::vector<std::string>{p, w} : std::vector<std::string>{w, p};
      tuple.score = t.score;
      tuple.origin = t.origin;
      auto [it, inserted] = merged.try_emplace(tuple.words, tuple);
      if (!inserted && tuple.score > it->second.score) it->second = std::move(tuple);
    }
  }
  std::vector<KeywordCandidate> out;
  out.reserve(merged.size());
  for (auto& [_, c] : merged) out.push_back(std::move(c));
  rank_candidates(out, cap);
  return out;
}

struct ExtractionResult {
  CoocNetwork network;
  std::vector<NodeMetrics> metrics;
  std::vector<KeywordCandidate> set1;
  std::vector<KeywordCandidate> set2;
};

/// Lemmatise, build the network, measure it and extract both candidate sets.
inline ExtractionResult extract_document(const Document& doc, const LemmaTable& lemmas,
                                         const StopwordList& stopwords,
                                         const ExtractionConfig& config = {}) {
  validate(config);
  const StopwordList stops = stopwords.with_lemmas(lemmas);
  ExtractionResult r;
  r.network = build_network(apply_lemmas(doc, lemmas));
  r.metrics = compute_all(r.network);
  r.set1 = extract_set1(r.network, r.metrics, config, stops);
  r.set2 = expand_set2(r.network, r.set1, stops, config.max_candidates);
  return r;
}

/// One JSON object per line: doc_id, rank, words, score, origin, set.
inline void write_candidates_jsonl(std::string_view doc_id,
                                   const std::vector<KeywordCandidate>& cands, int set_number,
                                   std::ostream& out) {
  for (const auto& c : cands) {
    nlohmann::ordered_json j;
    j["doc_id"] = doc_id;
    j["rank"] = c.rank;
    j["words"] = c.words;
    j["score"] = c.score;
    j["origin"] = to_string(c.origin);
    j["set"] = set_number;
    out << j.dump() << '\n';
  }
}

}  // namespace selkey
