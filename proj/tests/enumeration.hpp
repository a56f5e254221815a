#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <vector>

#include "ramchord/graph.hpp"

namespace enumeration {

/// Adjacency rows as bitmasks, at most 16 vertices.
using Rows = std::vector<std::uint32_t>;

/// Canonical code: the lexicographically largest sequence of lower-triangle rows
/// over all labellings that list vertices in refined-colour order.
inline std::vector<std::uint32_t> canonical_code(const Rows& adj) {
  const int n = static_cast<int>(adj.size());
  std::vector<int> color(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) color[v] = __builtin_popcount(adj[v]);
  for (int round = 0; round < n; ++round) {
    std::map<std::vector<int>, int> ids;
    std::vector<std::vector<int>> sig(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) {
      sig[v].push_back(color[v]);
      std::vector<int> nb;
      for (int u = 0; u < n; ++u) {
        if (adj[v] >> u & 1) nb.push_back(color[u]);
      }
      std::sort(nb.begin(), nb.end());
      sig[v].insert(sig[v].end(), nb.begin(), nb.end());
      ids.emplace(sig[v], 0);
    }
    int next = 0;
    for (auto& [k, id] : ids) id = next++;
    std::vector<int> refined(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) refined[v] = ids[sig[v]];
    if (refined == color) break;
    color = refined;
  }
  std::vector<int> slot_color(static_cast<std::size_t>(n));
  {
    auto sorted = color;
    std::sort(sorted.begin(), sorted.end());
    slot_color = sorted;
  }
  std::vector<std::uint32_t> best, cur(static_cast<std::size_t>(n));
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::uint32_t used = 0;
  // Sign of cur[0..i] compared with best[0..i]; a missing best counts as smaller.
  auto compare = [&](int i) {
    if (best.empty()) return 1;
    for (int j = 0; j <= i; ++j) {
      if (cur[j] != best[j]) return cur[j] > best[j] ? 1 : -1;
    }
    return 0;
  };
  auto dfs = [&](auto&& self, int i) -> void {
    if (i == n) {
      if (compare(n - 1) > 0) best = cur;
      return;
    }
    for (int v = 0; v < n; ++v) {
      if ((used >> v & 1) || color[v] != slot_color[i]) continue;
      std::uint32_t row = 0;
      for (int j = 0; j < i; ++j) {
        if (adj[v] >> perm[j] & 1) row |= 1u << (i - 1 - j);
      }
      cur[i] = row;
      if (compare(i) < 0) continue;
      perm[i] = v;
      used |= 1u << v;
      self(self, i + 1);
      used &= ~(1u << v);
    }
  };
  dfs(dfs, 0);
  return best;
}

inline bool connected(const Rows& adj) {
  const int n = static_cast<int>(adj.size());
  if (n == 0) return false;
  std::uint32_t seen = 1, frontier = 1;
  while (frontier) {
    std::uint32_t next = 0;
    for (int v = 0; v < n; ++v) {
      if (frontier >> v & 1) next |= adj[v];
    }
    frontier = next & ~seen;
    seen |= next;
  }
  return seen == (n == 32 ? ~0u : (1u << n) - 1);
}

/// One representative per isomorphism class of graphs on n vertices, for n = 1..max_n.
/// result[n] holds all classes on n vertices (connected or not).
inline std::vector<std::vector<Rows>> all_graphs(int max_n) {
  std::vector<std::vector<Rows>> out(static_cast<std::size_t>(max_n + 1));
  out[1].push_back(Rows{0});
  for (int n = 2; n <= max_n; ++n) {
    std::set<std::vector<std::uint32_t>> seen;
    for (const auto& g : out[n - 1]) {
      for (std::uint32_t mask = 0; mask < (1u << (n - 1)); ++mask) {
        Rows h = g;
        h.push_back(mask);
        for (int u = 0; u < n - 1; ++u) {
          if (mask >> u & 1) h[u] |= 1u << (n - 1);
        }
        if (seen.insert(canonical_code(h)).second) out[n].push_back(h);
      }
    }
  }
  return out;
}

inline ramchord::SimpleGraph to_graph(const Rows& adj) {
  const int n = static_cast<int>(adj.size());
  ramchord::SimpleGraph g(n);
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (adj[u] >> v & 1) g.add_edge(u, v);
    }
  }
  return g;
}

}  // namespace enumeration
