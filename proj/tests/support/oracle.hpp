#pragma once

// Brute-force reference computations. Nothing here calls into the library's
// measure, network or extraction code: distances come from Floyd-Warshall,
// betweenness from explicit enumeration of every shortest path, and the
// extraction oracle works on the text of an edge-list dump.

#include <algorithm>
#include <functional>
#include <limits>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "support/random_graph.hpp"

namespace selkey::testing::oracle {

struct Measures {
  std::vector<int> k, k_in, k_out;
  std::vector<double> dc, dc_in, dc_out, cc, bc;
  std::vector<long> s, s_in, s_out;
  std::vector<double> e, e_in, e_out;
};

inline constexpr int kInf = std::numeric_limits<int>::max() / 4;

inline std::vector<std::vector<int>> weight_matrix(const RawGraph& g) {
  std::vector<std::vector<int>> w(g.n, std::vector<int>(g.n, 0));
  for (const auto& e : g.edges) w[e.source][e.target] += e.weight;
  return w;
}

inline std::vector<std::vector<int>> floyd_warshall(const RawGraph& g) {
  std::vector<std::vector<int>> d(g.n, std::vector<int>(g.n, kInf));
  for (int i = 0; i < g.n; ++i) d[i][i] = 0;
  for (const auto& e : g.edges)
    if (e.source != e.target) d[e.source][e.target] = 1;
  for (int m = 0; m < g.n; ++m)
    for (int i = 0; i < g.n; ++i)
      for (int j = 0; j < g.n; ++j)
        if (d[i][m] + d[m][j] < d[i][j]) d[i][j] = d[i][m] + d[m][j];
  return d;
}

/// Every shortest path from `from` to `to`, as node sequences.
inline std::vector<std::vector<int>> all_shortest_paths(const std::vector<std::vector<int>>& w,
                                                        const std::vector<std::vector<int>>& d,
                                                        int from, int to) {
  std::vector<std::vector<int>> paths;
  if (d[from][to] >= kInf) return paths;
  const int n = static_cast<int>(w.size());
  std::vector<int> path{from};
  std::function<void(int)> walk = [&](int v) {
    if (v == to) {
      paths.push_back(path);
      return;
    }
    const int len = static_cast<int>(path.size()) - 1;
    for (int next = 0; next < n; ++next) {
      if (next == v || w[v][next] == 0) continue;
      if (d[from][next] != len + 1 || d[next][to] >= kInf) continue;
      if (len + 1 + d[next][to] != d[from][to]) continue;
      path.push_back(next);
      walk(next);
      path.pop_back();
    }
  };
  walk(from);
  return paths;
}

inline Measures measures(const RawGraph& g) {
  const int n = g.n;
  const auto w = weight_matrix(g);
  const auto d = floyd_warshall(g);
  Measures m;
  for (auto* v : {&m.k, &m.k_in, &m.k_out}) v->assign(n, 0);
  for (auto* v : {&m.s, &m.s_in, &m.s_out}) v->assign(n, 0);
  for (auto* v : {&m.dc, &m.dc_in, &m.dc_out, &m.cc, &m.bc, &m.e, &m.e_in, &m.e_out})
    v->assign(n, 0.0);

  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      const bool in = w[j][i] > 0;
      const bool out = w[i][j] > 0;
      m.k_in[i] += in;
      m.k_out[i] += out;
      m.k[i] += (in || out);
      m.s_in[i] += w[j][i];
      m.s_out[i] += w[i][j];
    }
    m.s[i] = m.s_in[i] + m.s_out[i];
    if (n >= 2) {
      m.dc[i] = m.k[i] / double(n - 1);
      m.dc_in[i] = m.k_in[i] / double(n - 1);
      m.dc_out[i] = m.k_out[i] / double(n - 1);
    }
    m.e[i] = m.k[i] ? double(m.s[i]) / m.k[i] : 0.0;
    m.e_in[i] = m.k_in[i] ? double(m.s_in[i]) / m.k_in[i] : 0.0;
    m.e_out[i] = m.k_out[i] ? double(m.s_out[i]) / m.k_out[i] : 0.0;

    int reached = 0;
    long total = 0;
    for (int j = 0; j < n; ++j)
      if (j != i && d[i][j] < kInf) {
        ++reached;
        total += d[i][j];
      }
    if (reached > 0 && n >= 2) m.cc[i] = (double(reached) / total) * (double(reached) / (n - 1));
  }

  if (n >= 3) {
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        if (j == k) continue;
        const auto paths = all_shortest_paths(w, d, j, k);
        if (paths.empty()) continue;
        std::vector<int> through(n, 0);
        for (const auto& p : paths)
          for (std::size_t x = 1; x + 1 < p.size(); ++x) ++through[p[x]];
        for (int i = 0; i < n; ++i)
          if (i != j && i != k) m.bc[i] += double(through[i]) / double(paths.size());
      }
    for (auto& v : m.bc) v /= double(n - 1) * double(n - 2);
  }
  return m;
}

/// Adjacent-pair counts over a token sequence; `sentences[i]` is the
/// sentence number of `words[i]`.
inline std::map<std::pair<std::string, std::string>, long> count_pairs(
    const std::vector<std::string>& words, const std::vector<std::size_t>& sentences) {
  std::map<std::pair<std::string, std::string>, long> counts;
  for (std::size_t i = 0; i + 1 < words.size(); ++i)
    if (sentences[i] == sentences[i + 1]) ++counts[{words[i], words[i + 1]}];
  return counts;
}

struct ScoredWords {
  std::vector<std::string> words;
  double score;
  bool operator==(const ScoredWords&) const = default;
};

struct Sets {
  std::vector<ScoredWords> set1;
  std::vector<ScoredWords> set2;
};

/// SET1/SET2 recomputed from the text of an edge-list dump
/// (`source<TAB>target<TAB>weight` rows, `#` header).
inline Sets extract_from_dump(const std::string& dump, double threshold,
                              const std::set<std::string>& stopwords,
                              bool filter_set1_stopwords = true) {
  std::map<std::string, std::map<std::string, long>> succ, pred;
  std::istringstream in(dump);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream row(line);
    std::string a, b;
    long w;
    std::getline(row, a, '\t');
    std::getline(row, b, '\t');
    row >> w;
    if (a == b) continue;  // self-loops carry no selectivity
    succ[a][b] += w;
    pred[b][a] += w;
    succ[b];
    pred[a];
  }

  const auto mean = [](const std::map<std::string, long>& nbrs) {
    long total = 0;
    for (const auto& [_, w] : nbrs) total += w;
    return nbrs.empty() ? 0.0 : double(total) / double(nbrs.size());
  };
  const auto heaviest = [](const std::map<std::string, long>& nbrs) {
    // map iterates in word order, so strict > keeps the smaller word on ties
    std::string best;
    long best_w = -1;
    for (const auto& [word, w] : nbrs)
      if (w > best_w) {
        best = word;
        best_w = w;
      }
    return best;
  };
  const auto order = [](std::vector<ScoredWords>& v) {
    std::sort(v.begin(), v.end(), [](const ScoredWords& a, const ScoredWords& b) {
      return a.score != b.score ? a.score > b.score : a.words < b.words;
    });
  };

  Sets out;
  std::map<std::vector<std::string>, double> tuples;
  for (const auto& [word, outs] : succ) {
    if (filter_set1_stopwords && stopwords.count(word)) continue;
    const auto& ins = pred[word];
    const double e_in = mean(ins);
    const double e_out = mean(outs);
    const bool in_ok = !ins.empty() && e_in >= threshold;
    const bool out_ok = !outs.empty() && e_out >= threshold;
    if (!in_ok && !out_ok) continue;
    out.set1.push_back({{word}, std::max(in_ok ? e_in : 0.0, out_ok ? e_out : 0.0)});

    const auto add = [&](std::vector<std::string> t, double score) {
      if (stopwords.count(t[0]) || stopwords.count(t[1])) return;
      auto [it, fresh] = tuples.emplace(t, score);
      if (!fresh) it->second = std::max(it->second, score);
    };
    if (in_ok) add({heaviest(ins), word}, e_in);
    if (out_ok) add({word, heaviest(outs)}, e_out);
  }
  for (const auto& [t, score] : tuples) out.set2.push_back({t, score});
  order(out.set1);
  order(out.set2);
  return out;
}

}  // namespace selkey::testing::oracle
