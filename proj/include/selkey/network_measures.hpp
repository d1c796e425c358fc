#pragma once

#include <cstdio>
#include <limits>
#include <ostream>
#include <string>
#include <vector>

#include "selkey/cooc_network.hpp"

namespace selkey {

// Conventions shared by every measure below:
//  * self-loops never count towards degree, strength or selectivity;
//  * k is the number of distinct neighbours regardless of direction;
//  * distances are hop counts along directed edges, weights are ignored;
//  * ratios whose denominator is zero are defined as 0.

struct NodeMetrics {
  NodeId node = 0;
  std::string word;
  std::size_t k = 0;
  std::size_t k_in = 0;
  std::size_t k_out = 0;
  double dc = 0;
  double dc_in = 0;
  double dc_out = 0;
  double cc = 0;
  double bc = 0;
  Weight s = 0;
  Weight s_in = 0;
  Weight s_out = 0;
  double e = 0;
  double e_in = 0;
  double e_out = 0;
};

struct DegreeCounts {
  std::size_t k = 0;
  std::size_t k_in = 0;
  std::size_t k_out = 0;
};

struct InOutCentrality {
  double in = 0;
  double out = 0;
};

struct Strength {
  Weight s = 0;
  Weight s_in = 0;
  Weight s_out = 0;
};

struct Selectivity {
  double e = 0;
  double e_in = 0;
  double e_out = 0;
};

/// All-pairs hop distances and shortest-path counts, row = source.
struct ShortestPathCounts {
  static constexpr std::size_t kUnreachable = std::numeric_limits<std::size_t>::max();

  std::size_t n = 0;
  std::vector<std::size_t> dist;
  std::vector<double> sigma;

  std::size_t distance(NodeId from, NodeId to) const { return dist[from * n + to]; }
  double paths(NodeId from, NodeId to) const { return sigma[from * n + to]; }

  /// Number of shortest from -> to paths that pass through `via` as an
  /// interior node.
  double paths_through(NodeId from, NodeId to, NodeId via) const {
    if (via == from || via == to) return 0;
    const auto d1 = distance(from, via);
    const auto d2 = distance(via, to);
    const auto d = distance(from, to);
    if (d1 == kUnreachable || d2 == kUnreachable || d == kUnreachable || d1 + d2 != d) return 0;
    return paths(from, via) * paths(via, to);
  }
};

inline DegreeCounts degree_counts(const CoocNetwork& net, NodeId node) {
  const auto in = net.in_neighbors(node);
  const auto out = net.out_neighbors(node);
  DegreeCounts c;
  // Both lists are sorted by id: merge to count the union.
  auto i = in.begin();
  auto o = out.begin();
  while (i != in.end() || o != out.end()) {
    NodeId next;
    if (o == out.end() || (i != in.end() && i->node < o->node)) {
      next = (i++)->node;
      if (next != node) ++c.k_in;
    } else if (i == in.end() || o->node < i->node) {
      next = (o++)->node;
      if (next != node) ++c.k_out;
    } else {
      next = i->node;
      ++i;
      ++o;
      if (next != node) {
        ++c.k_in;
        ++c.k_out;
      }
    }
    if (next != node) ++c.k;
  }
  return c;
}

inline double degree_centrality(const CoocNetwork& net, NodeId node) {
  const auto k = degree_counts(net, node).k;
  const auto n = net.node_count();
  return n < 2 ? 0.0 : static_cast<double>(k) / static_cast<double>(n - 1);
}

inline InOutCentrality in_out_degree_centrality(const CoocNetwork& net, NodeId node) {
  const auto c = degree_counts(net, node);
  const auto n = net.node_count();
  if (n < 2) return {};
  const auto denom = static_cast<double>(n - 1);
  return {static_cast<double>(c.k_in) / denom, static_cast<double>(c.k_out) / denom};
}

inline Strength strength(const CoocNetwork& net, NodeId node) {
  Strength st;
  for (const auto& nb : net.in_neighbors(node))
    if (nb.node != node) st.s_in += nb.weight;
  for (const auto& nb : net.out_neighbors(node))
    if (nb.node != node) st.s_out += nb.weight;
  st.s = st.s_in + st.s_out;
  return st;
}

namespace detail {

inline double ratio(Weight num, std::size_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

struct BfsResult {
  std::vector<std::size_t> dist;
  std::vector<double> sigma;
  std::vector<NodeId> order;  // nodes in non-decreasing distance
};

inline void bfs(const CoocNetwork& net, NodeId source, BfsResult& r) {
  const auto n = net.node_count();
  r.dist.assign(n, ShortestPathCounts::kUnreachable);
  r.sigma.assign(n, 0.0);
  r.order.clear();
  r.dist[source] = 0;
  r.sigma[source] = 1;
  r.order.push_back(source);
  for (std::size_t head = 0; head < r.order.size(); ++head) {
    const NodeId v = r.order[head];
    for (const auto& nb : net.out_neighbors(v)) {
      const NodeId w = nb.node;
      if (r.dist[w] == ShortestPathCounts::kUnreachable) {
        r.dist[w] = r.dist[v] + 1;
        r.order.push_back(w);
      }
      if (r.dist[w] == r.dist[v] + 1) r.sigma[w] += r.sigma[v];
    }
  }
}

// Reachability-scaled closeness from a finished BFS.
inline double closeness_from(const BfsResult& r, std::size_t n) {
  if (n < 2 || r.order.size() < 2) return 0.0;
  std::size_t total = 0;
  for (const NodeId v : r.order) total += r.dist[v];
  const auto reached = static_cast<double>(r.order.size() - 1);
  return (reached / static_cast<double>(total)) * (reached / static_cast<double>(n - 1));
}

// Dependency accumulation over ordered (source, target) pairs; adds the raw,
// unnormalised contribution of `source` into `bc`.
inline void accumulate_dependencies(const CoocNetwork& net, NodeId source, const BfsResult& r,
                                    std::vector<double>& delta, std::vector<double>& bc) {
  delta.assign(net.node_count(), 0.0);
  for (auto it = r.order.rbegin(); it != r.order.rend(); ++it) {
    const NodeId w = *it;
    for (const auto& nb : net.in_neighbors(w)) {
      const NodeId v = nb.node;
      if (r.dist[v] != ShortestPathCounts::kUnreachable && r.dist[v] + 1 == r.dist[w])
        delta[v] += (r.sigma[v] / r.sigma[w]) * (1.0 + delta[w]);
    }
    if (w != source) bc[w] += delta[w];
  }
}

inline double betweenness_scale(std::size_t n) {
  return n < 3 ? 0.0 : 1.0 / (static_cast<double>(n - 1) * static_cast<double>(n - 2));
}

}  // namespace detail

inline Selectivity selectivity(const CoocNetwork& net, NodeId node) {
  const auto c = degree_counts(net, node);
  const auto st = strength(net, node);
  return {detail::ratio(st.s, c.k), detail::ratio(st.s_in, c.k_in),
          detail::ratio(st.s_out, c.k_out)};
}

/// Closeness over the nodes reachable from `node`, scaled by the reachable
/// fraction R/(N-1) so that nodes reaching few others are not favoured.
inline double closeness(const CoocNetwork& net, NodeId node) {
  detail::BfsResult r;
  detail::bfs(net, node, r);
  return detail::closeness_from(r, net.node_count());
}

/// Betweenness of every node, summed over ordered pairs and divided by
/// (N-1)(N-2). One BFS per source.
inline std::vector<double> betweenness_all(const CoocNetwork& net) {
  const auto n = net.node_count();
  std::vector<double> bc(n, 0.0);
  std::vector<double> delta;
  detail::BfsResult r;
  for (NodeId s = 0; s < n; ++s) {
    detail::bfs(net, s, r);
    detail::accumulate_dependencies(net, s, r, delta, bc);
  }
  const double scale = detail::betweenness_scale(n);
  for (auto& v : bc) v *= scale;
  return bc;
}

inline double betweenness(const CoocNetwork& net, NodeId node) {
  net.word(node);  // range check
  return betweenness_all(net)[node];
}

inline ShortestPathCounts shortest_paths(const CoocNetwork& net) {
  const auto n = net.node_count();
  ShortestPathCounts sp;
  sp.n = n;
  sp.dist.assign(n * n, ShortestPathCounts::kUnreachable);
  sp.sigma.assign(n * n, 0.0);
  detail::BfsResult r;
  for (NodeId s = 0; s < n; ++s) {
    detail::bfs(net, s, r);
    std::copy(r.dist.begin(), r.dist.end(), sp.dist.begin() + s * n);
    std::copy(r.sigma.begin(), r.sigma.end(), sp.sigma.begin() + s * n);
  }
  return sp;
}

/// Every measure for every node, ordered by node id. Closeness and
/// betweenness share a single BFS per source.
inline std::vector<NodeMetrics> compute_all(const CoocNetwork& net) {
  const auto n = net.node_count();
  std::vector<NodeMetrics> rows(n);
  std::vector<double> bc(n, 0.0);
  std::vector<double> delta;
  detail::BfsResult r;
  const double dc_denom = n < 2 ? 0.0 : static_cast<double>(n - 1);

  for (NodeId v = 0; v < n; ++v) {
    auto& m = rows[v];
    m.node = v;
    m.word = net.word(v);
    const auto c = degree_counts(net, v);
    m.k = c.k;
    m.k_in = c.k_in;
    m.k_out = c.k_out;
    if (dc_denom > 0) {
      m.dc = static_cast<double>(c.k) / dc_denom;
      m.dc_in = static_cast<double>(c.k_in) / dc_denom;
      m.dc_out = static_cast<double>(c.k_out) / dc_denom;
    }
    const auto st = strength(net, v);
    m.s = st.s;
    m.s_in = st.s_in;
    m.s_out = st.s_out;
    m.e = detail::ratio(st.s, c.k);
    m.e_in = detail::ratio(st.s_in, c.k_in);
    m.e_out = detail::ratio(st.s_out, c.k_out);

    detail::bfs(net, v, r);
    m.cc = detail::closeness_from(r, n);
    detail::accumulate_dependencies(net, v, r, delta, bc);
  }
  const double scale = detail::betweenness_scale(n);
  for (NodeId v = 0; v < n; ++v) rows[v].bc = bc[v] * scale;
  return rows;
}

/// Metrics table: header row, then one row per node in node-id order.
/// Reals carry six decimals.
inline void write_metrics_tsv(const std::vector<NodeMetrics>& rows, std::ostream& out) {
  out << "word\tk\tk_in\tk_out\tdc\tdc_in\tdc_out\tcc\tbc\ts\ts_in\ts_out\te\te_in\te_out\n";
  char buf[32];
  const auto real = [&](double v) {
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return std::string(buf);
  };
  for (const auto& m : rows) {
    out << m.word << '\t' << m.k << '\t' << m.k_in << '\t' << m.k_out << '\t' << real(m.dc)
        << '\t' << real(m.dc_in) << '\t' << real(m.dc_out) << '\t' << real(m.cc) << '\t'
        << real(m.bc) << '\t' << m.s << '\t' << m.s_in << '\t' << m.s_out << '\t'
        << real(m.e) << '\t' << real(m.e_in) << '\t' << real(m.e_out) << '\n';
  }
}

}  // namespace selkey
