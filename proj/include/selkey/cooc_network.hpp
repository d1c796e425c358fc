#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "selkey/text_ingest.hpp"

namespace selkey {

using NodeId = std::uint32_t;
using Weight = std::uint64_t;

class DomainError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

struct Neighbor {
  NodeId node;
  Weight weight;

  friend bool operator==(const Neighbor&, const Neighbor&) = default;
};

struct Edge {
  NodeId source;
  NodeId target;
  Weight weight;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Directed word co-occurrence network. Node ids are dense in [0, N) and are
/// handed out in order of first insertion; adjacency lists are kept sorted by
/// neighbor id, so iteration order is deterministic.
class CoocNetwork {
 public:
  NodeId add_node(std::string_view word) {
    const auto [it, inserted] =
        index_.try_emplace(std::string(word), static_cast<NodeId>(words_.size()));
    if (inserted) {
      words_.emplace_back(word);
      out_.emplace_back();
      in_.emplace_back();
    }
    return it->second;
  }

  /// Adds `weight` to the edge source -> target, creating it if needed.
  void add_edge(NodeId source, NodeId target, Weight weight = 1) {
    check(source);
    check(target);
    if (weight == 0) throw DomainError("edge weight must be positive");
    if (bump(out_[source], target, weight)) ++edge_count_;
    bump(in_[target], source, weight);
    total_weight_ += weight;
  }

  std::size_t node_count() const noexcept { return words_.size(); }
  std::size_t edge_count() const noexcept { return edge_count_; }
  Weight total_weight() const noexcept { return total_weight_; }

  const std::string& word(NodeId node) const {
    check(node);
    return words_[node];
  }
  const std::vector<std::string>& words() const noexcept { return words_; }

  std::optional<NodeId> find(std::string_view word) const {
    const auto it = index_.find(std::string(word));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  std::span<const Neighbor> out_neighbors(NodeId node) const {
    check(node);
    return out_[node];
  }

  std::span<const Neighbor> in_neighbors(NodeId node) const {
    check(node);
    return in_[node];
  }

  /// Weight of source -> target, 0 when the edge is absent.
  Weight weight(NodeId source, NodeId target) const {
    const auto& list = out_neighbors(source);
    check(target);
    const auto it = std::lower_bound(list.begin(), list.end(), target,
                                     [](const Neighbor& n, NodeId id) { return n.node < id; });
    return (it != list.end() && it->node == target) ? it->weight : 0;
  }

  /// All edges ordered by (source id, target id).
  std::vector<Edge> edges() const {
    std::vector<Edge> result;
    result.reserve(edge_count_);
    for (NodeId s = 0; s < out_.size(); ++s)
      for (const auto& n : out_[s]) result.push_back({s, n.node, n.weight});
    return result;
  }

 private:
  void check(NodeId node) const {
    if (node >= words_.size())
      throw DomainError("node id " + std::to_string(node) + " outside [0, " +
                        std::to_string(words_.size()) + ")");
  }

  // Returns true when a new entry was created.
  static bool bump(std::vector<Neighbor>& list, NodeId other, Weight weight) {
    auto it = std::lower_bound(list.begin(), list.end(), other,
                               [](const Neighbor& n, NodeId id) { return n.node < id; });
    if (it != list.end() && it->node == other) {
      it->weight += weight;
      return false;
    }
    list.insert(it, Neighbor{other, weight});
    return true;
  }

  std::vector<std::string> words_;
  std::unordered_map<std::string, NodeId> index_;
  std::vector<std::vector<Neighbor>> out_;
  std::vector<std::vector<Neighbor>> in_;
  std::size_t edge_count_ = 0;
  Weight total_weight_ = 0;
};

/// One node per distinct normalized word; an edge for every pair of
/// consecutive tokens in the same sentence, oriented in reading order and
/// weighted by how often the pair occurs. Self-loops are recorded.
inline CoocNetwork build_network(const Document& doc) {
  CoocNetwork net;
  std::optional<NodeId> prev;
  std::size_t prev_sentence = 0;
  for (const auto& tok : doc.tokens) {
    const NodeId id = net.add_node(tok.normalized);
    if (prev && prev_sentence == tok.sentence_index) net.add_edge(*prev, id);
    prev = id;
    prev_sentence = tok.sentence_index;
  }
  return net;
}

/// Edge-list dump: a `# nodes=N edges=K` header line, then one
/// `source<TAB>target<TAB>weight` row per edge sorted by source word, then
/// target word (byte order).
inline void write_edge_tsv(const CoocNetwork& net, std::ostream& out) {
  auto edges = net.edges();
  std::sort(edges.begin(), edges.end(), [&](const Edge& a, const Edge& b) {
    const auto& as = net.word(a.source);
    const auto& bs = net.word(b.source);
    if (as != bs) return as < bs;
    return net.word(a.target) < net.word(b.target);
  });
  out << "# nodes=" << net.node_count() << " edges=" << net.edge_count() << '\n';
  for (const auto& e : edges)
    out << net.word(e.source) << '\t' << net.word(e.target) << '\t' << e.weight << '\n';
}

}  // namespace selkey
