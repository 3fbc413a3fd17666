#pragma once
// brute force reference implementations; deliberately naive and independent
// of the library algorithms they check

#include <cstdint>
#include <random>
#include <set>
#include <vector>

#include "cantor/graph.hpp"

namespace oracle {

using cantor::DirectedGraph;

inline std::vector<std::vector<int>> adj_lists(DirectedGraph const& g) {
  std::vector<std::vector<int>> a(g.size());
  for (std::size_t u = 0; u < g.size(); ++u)
    for (std::size_t v = 0; v < g.size(); ++v)
      if (g.has_edge(u, v)) a[u].push_back(int(v));
  return a;
}

// reach[n][u][v]: is there a path with exactly n edges
inline std::vector<std::vector<std::vector<bool>>> path_lengths(DirectedGraph const& g, int limit) {
  auto a = adj_lists(g);
  std::size_t n = g.size();
  std::vector<std::vector<std::vector<bool>>> r(limit + 1,
                                                std::vector<std::vector<bool>>(n, std::vector<bool>(n)));
  for (std::size_t u = 0; u < n; ++u) r[0][u][u] = true;
  for (int len = 1; len <= limit; ++len)
    for (std::size_t u = 0; u < n; ++u)
      for (std::size_t w = 0; w < n; ++w)
        if (r[len - 1][u][w])
          for (int v : a[w]) r[len][u][v] = true;
  return r;
}

// least N with every pair joined at every length in [N, limit]; 0 if none
// in the first half of the window (not mixing)
inline int mixing_index(DirectedGraph const& g) {
  int n = int(g.size());
  int limit = 2 * (n - 1) * (n - 1) + 2;
  auto r = path_lengths(g, limit);
  auto full = [&](int len) {
    for (int u = 0; u < n; ++u)
      for (int v = 0; v < n; ++v)
        if (!r[len][u][v]) return false;
    return true;
  };
  int N = limit + 1;
  while (N - 1 >= 1 && full(N - 1)) --N;
  return N <= limit / 2 ? N : 0;
}

// number of closed walks of length len (saturating)
inline std::uint64_t closed_walks(DirectedGraph const& g, int len) {
  auto a = adj_lists(g);
  std::size_t n = g.size();
  std::uint64_t total = 0;
  for (std::size_t s = 0; s < n; ++s) {
    std::vector<std::uint64_t> c(n, 0);
    c[s] = 1;
    for (int i = 0; i < len; ++i) {
      std::vector<std::uint64_t> d(n, 0);
      for (std::size_t u = 0; u < n; ++u)
        for (int v : a[u]) d[v] = std::min<std::uint64_t>(d[v] + c[u], UINT64_MAX / 8);
      c = d;
    }
    total += c[s];
  }
  return total;
}

inline bool essential(DirectedGraph const& g) {
  for (std::size_t v = 0; v < g.size(); ++v) {
    bool o = false, i = false;
    for (std::size_t u = 0; u < g.size(); ++u) o |= g.has_edge(v, u), i |= g.has_edge(u, v);
    if (!o || !i) return false;
  }
  return g.size() > 0;
}

inline DirectedGraph graph_from_mask(int n, std::uint64_t mask) {
  std::vector<std::string> names;
  for (int i = 0; i < n; ++i) names.push_back(std::string(1, char('a' + i)));
  DirectedGraph g(names);
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v)
      if (mask >> (u * n + v) & 1) g.add_edge(u, v);
  return g;
}

// all essential digraphs on 1..maxn labelled vertices
inline std::vector<DirectedGraph> all_essential(int maxn) {
  std::vector<DirectedGraph> out;
  for (int n = 1; n <= maxn; ++n)
    for (std::uint64_t m = 0; m < (std::uint64_t(1) << (n * n)); ++m) {
      auto g = graph_from_mask(n, m);
      if (essential(g)) out.push_back(g);
    }
  return out;
}

inline std::vector<DirectedGraph> random_essential(int count, int maxn, unsigned seed) {
  std::mt19937 rng(seed);
  std::vector<DirectedGraph> out;
  while (int(out.size()) < count) {
    int n = std::uniform_int_distribution<int>(1, maxn)(rng);
    double p = std::uniform_real_distribution<double>(0.15, 0.7)(rng);
    std::bernoulli_distribution coin(p);
    std::uint64_t m = 0;
    for (int i = 0; i < n * n; ++i)
      if (coin(rng)) m |= std::uint64_t(1) << i;
    auto g = graph_from_mask(n, m);
    if (essential(g)) out.push_back(g);
  }
  return out;
}

// two-sided isolated point search by counting: some block w (length <= n)
// whose extensions by n symbols on both sides are unique. n forced steps
// revisit a vertex, so forced that far means forced forever.
inline bool has_isolated_point(DirectedGraph const& g) {
  auto a = adj_lists(g);
  int n = int(g.size());
  std::vector<int> w;
  // count admissible words of length len+2n containing w at offset n
  auto count_ext = [&](std::vector<int> const& blk) {
    long total = 0;
    std::vector<int> x(blk.size() + 2 * n);
    auto rec = [&](auto& self, std::size_t i) -> void {
      if (total > 1) return;
      if (i == x.size()) {
        ++total;
        return;
      }
      for (int v = 0; v < n; ++v) {
        if (i >= std::size_t(n) && i < std::size_t(n) + blk.size() && v != blk[i - n]) continue;
        if (i > 0 && !g.has_edge(x[i - 1], v)) continue;
        x[i] = v;
        self(self, i + 1);
      }
    };
    rec(rec, 0);
    return total;
  };
  auto rec = [&](auto& self) -> bool {
    if (!w.empty() && count_ext(w) == 1) return true;
    if (int(w.size()) == n) return false;
    for (int v = 0; v < n; ++v) {
      if (!w.empty() && !g.has_edge(w.back(), v)) continue;
      w.push_back(v);
      if (self(self)) return true;
      w.pop_back();
    }
    return false;
  };
  (void)a;
  return rec(rec);
}

}  // namespace oracle
