#include "ramchord/graph.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <limits>
#include <numeric>
#include <string>

namespace ramchord {

SimpleGraph::SimpleGraph(int n) {
  if (n < 0) throw InvalidInput("negative vertex count");
  adj_.resize(static_cast<std::size_t>(n));
}

SimpleGraph::SimpleGraph(int n, std::span<const Edge> edges) : SimpleGraph(n) {
  for (const Edge& e : edges) {
    if (!add_edge(e.u, e.v)) {
      throw InvalidInput("duplicate edge {" + std::to_string(e.u) + "," + std::to_string(e.v) + "}");
    }
  }
}

bool SimpleGraph::add_edge(int u, int v) {
  const int n = order();
  if (u < 0 || v < 0 || u >= n || v >= n) {
    throw InvalidInput("edge endpoint out of range: {" + std::to_string(u) + "," + std::to_string(v) + "}");
  }
  if (u == v) throw InvalidInput("self-loop at vertex " + std::to_string(u));
  auto& au = adj_[u];
  auto it = std::lower_bound(au.begin(), au.end(), v);
  if (it != au.end() && *it == v) return false;
  au.insert(it, v);
  auto& av = adj_[v];
  av.insert(std::lower_bound(av.begin(), av.end(), u), u);
  ++edge_count_;
  return true;
}

bool SimpleGraph::has_edge(int u, int v) const {
  if (u < 0 || v < 0 || u >= order() || v >= order()) return false;
  const auto& a = adj_[u].size() <= adj_[v].size() ? adj_[u] : adj_[v];
  const int other = adj_[u].size() <= adj_[v].size() ? v : u;
  return std::binary_search(a.begin(), a.end(), other);
}

int SimpleGraph::max_degree() const {
  int best = 0;
  for (const auto& a : adj_) best = std::max(best, static_cast<int>(a.size()));
  return best;
}

std::vector<Edge> SimpleGraph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count_);
  for (int u = 0; u < order(); ++u) {
    for (int v : adj_[u]) {
      if (u < v) out.emplace_back(u, v);
    }
  }
  return out;
}

SimpleGraph SimpleGraph::complement() const {
  SimpleGraph g(order());
  for (int u = 0; u < order(); ++u) {
    for (int v = u + 1; v < order(); ++v) {
      if (!has_edge(u, v)) g.add_edge(u, v);
    }
  }
  return g;
}

SimpleGraph SimpleGraph::without_vertices(std::span<const int> removed) const {
  std::vector<char> gone(adj_.size(), 0);
  for (int v : removed) gone.at(static_cast<std::size_t>(v)) = 1;
  SimpleGraph g(order());
  for (const Edge& e : edges()) {
    if (!gone[e.u] && !gone[e.v]) g.add_edge(e.u, e.v);
  }
  return g;
}

SimpleGraph cycle_graph(int n) {
  if (n < 3) throw InvalidInput("cycle needs at least 3 vertices");
  SimpleGraph g(n);
  for (int i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n);
  return g;
}

SimpleGraph path_graph(int n) {
  SimpleGraph g(n);
  for (int i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
  return g;
}

SimpleGraph complete_graph(int n) {
  SimpleGraph g(n);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) g.add_edge(u, v);
  return g;
}

SimpleGraph complete_bipartite(int a, int b) {
  SimpleGraph g(a + b);
  for (int u = 0; u < a; ++u)
    for (int v = a; v < a + b; ++v) g.add_edge(u, v);
  return g;
}

ChordSet::ChordSet(int n, std::vector<Edge> chords) : n_(n), chords_(std::move(chords)) {
  if (n < 3) throw InvalidInput("cycle length must be at least 3");
  std::sort(chords_.begin(), chords_.end());
  for (std::size_t i = 0; i < chords_.size(); ++i) {
    const Edge& c = chords_[i];
    if (c.u < 0 || c.v >= n) throw InvalidInput("chord endpoint outside the cycle");
    const int gap = c.v - c.u;
    if (gap == 0 || gap == 1 || gap == n - 1) {
      throw InvalidInput("chord {" + std::to_string(c.u) + "," + std::to_string(c.v) +
                         "} is not a chord of C_" + std::to_string(n));
    }
    if (i > 0 && chords_[i - 1] == c) {
      throw InvalidInput("repeated chord {" + std::to_string(c.u) + "," + std::to_string(c.v) + "}");
    }
  }
}

std::vector<int> ChordSet::endpoints() const {
  std::vector<int> out;
  for (const Edge& c : chords_) {
    out.push_back(c.u);
    out.push_back(c.v);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<int> VertexPartition::labels(int n) const {
  std::vector<int> lab(static_cast<std::size_t>(n), -1);
  for (std::size_t p = 0; p < parts.size(); ++p) {
    for (int v : parts[p]) {
      if (v < 0 || v >= n) throw InvalidInput("partition vertex out of range");
      if (lab[v] != -1) throw InvalidInput("partition parts overlap at vertex " + std::to_string(v));
      lab[v] = static_cast<int>(p);
    }
  }
  return lab;
}

std::vector<int> VertexPartition::domain() const {
  std::vector<int> out;
  for (const auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  std::sort(out.begin(), out.end());
  return out;
}

bool VertexPartition::is_proper_for(const SimpleGraph& g) const {
  const auto lab = labels(g.order());
  for (const Edge& e : g.edges()) {
    if (lab[e.u] != -1 && lab[e.u] == lab[e.v]) return false;
  }
  return true;
}

bool is_valid_embedding(const SimpleGraph& pattern, const SimpleGraph& host, const Embedding& emb) {
  if (static_cast<int>(emb.map.size()) != pattern.order()) return false;
  std::vector<char> used(static_cast<std::size_t>(host.order()), 0);
  for (int image : emb.map) {
    if (image < 0 || image >= host.order() || used[image]) return false;
    used[image] = 1;
  }
  for (const Edge& e : pattern.edges()) {
    if (!host.has_edge(emb.map[e.u], emb.map[e.v])) return false;
  }
  return true;
}

SimpleGraph build_chorded_cycle(int n, const ChordSet& chords) {
  if (chords.cycle_length() != n && !(chords.empty() && chords.cycle_length() == 0)) {
    throw InvalidInput("chord set belongs to a different cycle length");
  }
  SimpleGraph g = cycle_graph(n);
  for (const Edge& c : chords.chords()) {
    if (!g.add_edge(c.u, c.v)) throw InvalidInput("chord coincides with a cycle edge");
  }
  return g;
}

namespace {

std::vector<int> tree_path_to_root(int v, const std::vector<int>& parent) {
  std::vector<int> path{v};
  while (parent[v] != -1) {
    v = parent[v];
    path.push_back(v);
  }
  return path;
}

}  // namespace

BipartitionResult bipartition(const SimpleGraph& g) {
  const int n = g.order();
  std::vector<int> side(static_cast<std::size_t>(n), -1);
  std::vector<int> parent(static_cast<std::size_t>(n), -1);
  std::vector<int> depth(static_cast<std::size_t>(n), 0);
  BipartitionResult result;
  for (int s = 0; s < n; ++s) {
    if (side[s] != -1) continue;
    side[s] = 0;
    std::deque<int> queue{s};
    while (!queue.empty()) {
      const int x = queue.front();
      queue.pop_front();
      for (int y : g.neighbors(x)) {
        if (side[y] == -1) {
          side[y] = 1 - side[x];
          parent[y] = x;
          depth[y] = depth[x] + 1;
          queue.push_back(y);
        } else if (side[y] == side[x]) {
          // Tree paths to the common ancestor close an odd cycle.
          auto px = tree_path_to_root(x, parent);
          auto py = tree_path_to_root(y, parent);
          while (px.size() > 1 && py.size() > 1 && px[px.size() - 2] == py[py.size() - 2]) {
            px.pop_back();
            py.pop_back();
          }
          std::vector<int> cycle(px.begin(), px.end());
          for (auto it = py.rbegin() + 1; it != py.rend(); ++it) cycle.push_back(*it);
          // cycle = x .. lca .. y, closed by edge y-x
          result.odd_cycle = std::move(cycle);
          return result;
        }
      }
    }
  }
  VertexPartition part;
  part.parts.resize(2);
  for (int v = 0; v < n; ++v) part.parts[side[v]].push_back(v);
  result.partition = std::move(part);
  return result;
}

bool is_bipartite_without(const SimpleGraph& g, const std::vector<char>& removed) {
  const int n = g.order();
  std::vector<int> side(static_cast<std::size_t>(n), -1);
  std::vector<int> queue;
  queue.reserve(static_cast<std::size_t>(n));
  for (int s = 0; s < n; ++s) {
    if (removed[s] || side[s] != -1) continue;
    side[s] = 0;
    queue.clear();
    queue.push_back(s);
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const int x = queue[head];
      for (int y : g.neighbors(x)) {
        if (removed[y]) continue;
        if (side[y] == -1) {
          side[y] = 1 - side[x];
          queue.push_back(y);
        } else if (side[y] == side[x]) {
          return false;
        }
      }
    }
  }
  return true;
}

std::vector<int> shortest_odd_cycle(const SimpleGraph& g, const std::vector<char>& removed) {
  const int n = g.order();
  // Triangles first: they are the common case and cost O(m * maxdeg).
  for (int u = 0; u < n; ++u) {
    if (removed[u]) continue;
    for (int v : g.neighbors(u)) {
      if (v <= u || removed[v]) continue;
      auto nu = g.neighbors(u);
      auto nv = g.neighbors(v);
      auto i = nu.begin();
      auto j = nv.begin();
      while (i != nu.end() && j != nv.end()) {
        if (*i < *j) {
          ++i;
        } else if (*j < *i) {
          ++j;
        } else {
          if (!removed[*i]) return {u, v, *i};
          ++i;
          ++j;
        }
      }
    }
  }

  // BFS from every source, never looking deeper than the best cycle so far.
  // A minimum-length odd closed walk is a cycle, so the recorded walk is simple.
  int best = std::numeric_limits<int>::max();
  int best_source = -1, best_x = -1, best_y = -1;
  std::vector<int> dist(static_cast<std::size_t>(n), -1);
  std::vector<int> parent(static_cast<std::size_t>(n), -1);
  std::vector<int> queue;
  std::vector<int> touched;
  for (int s = 0; s < n; ++s) {
    if (removed[s] || g.degree(s) < 2) continue;
    for (int t : touched) dist[t] = -1;
    touched.clear();
    queue.clear();
    dist[s] = 0;
    parent[s] = -1;
    touched.push_back(s);
    queue.push_back(s);
    bool found = false;
    for (std::size_t head = 0; head < queue.size() && !found; ++head) {
      const int x = queue[head];
      if (2 * dist[x] + 1 >= best) break;
      for (int y : g.neighbors(x)) {
        if (removed[y]) continue;
        if (dist[y] == -1) {
          dist[y] = dist[x] + 1;
          parent[y] = x;
          touched.push_back(y);
          queue.push_back(y);
        } else if (dist[y] == dist[x]) {
          best = 2 * dist[x] + 1;
          best_source = s;
          best_x = x;
          best_y = y;
          found = true;
          break;
        }
      }
    }
  }
  if (best_source == -1) return {};

  // Re-run the BFS from the winning source to rebuild parent pointers.
  std::fill(dist.begin(), dist.end(), -1);
  std::fill(parent.begin(), parent.end(), -1);
  queue.assign(1, best_source);
  dist[best_source] = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const int x = queue[head];
    for (int y : g.neighbors(x)) {
      if (removed[y] || dist[y] != -1) continue;
      dist[y] = dist[x] + 1;
      parent[y] = x;
      queue.push_back(y);
    }
  }
  auto px = tree_path_to_root(best_x, parent);
  auto py = tree_path_to_root(best_y, parent);
  std::vector<int> cycle(px.rbegin(), px.rend());  // source .. x
  for (int v : py) {
    if (v != best_source) cycle.push_back(v);  // y .. child of source
  }
  return cycle;
}

namespace {

class HittingSetSearch {
 public:
  HittingSetSearch(const SimpleGraph& g, int k)
      : g_(g), k_(k), removed_(static_cast<std::size_t>(g.order()), 0),
        blocked_(static_cast<std::size_t>(g.order()), 0) {}

  bool run() { return extend(); }
  const std::vector<int>& chosen() const { return chosen_; }

 private:
  bool extend() {
    if (is_bipartite_without(g_, removed_)) return true;
    if (static_cast<int>(chosen_.size()) == k_) return false;
    // Any valid S meets every odd cycle, in particular this one.
    const auto cycle = shortest_odd_cycle(g_, removed_);
    for (int v : cycle) {
      if (blocked_[v]) continue;
      take(v);
      if (extend()) return true;
      release(v);
    }
    return false;
  }

  void take(int v) {
    chosen_.push_back(v);
    removed_[v] = 1;
    ++blocked_[v];
    for (int w : g_.neighbors(v)) ++blocked_[w];
  }

  void release(int v) {
    chosen_.pop_back();
    removed_[v] = 0;
    --blocked_[v];
    for (int w : g_.neighbors(v)) --blocked_[w];
  }

  const SimpleGraph& g_;
  int k_;
  std::vector<char> removed_;
  std::vector<int> blocked_;
  std::vector<int> chosen_;
};

}  // namespace

namespace {

/// g with every long thread of degree-2 vertices shortened to three or four
/// vertices of the same parity, and a map back to original vertices.
///
/// A minimum witness holds at most one vertex per thread: dropping a second one
/// only re-attaches a pendant path. Interior vertices away from the thread ends
/// are interchangeable, so the shortened graph has the same index and its
/// witnesses map to witnesses of g.
struct ThreadCompression {
  SimpleGraph graph;
  std::vector<int> original;
};

ThreadCompression compress_threads(const SimpleGraph& g) {
  const int n = g.order();
  std::vector<int> id(static_cast<std::size_t>(n), -1);
  ThreadCompression out;
  for (int v = 0; v < n; ++v) {
    if (g.degree(v) != 2) {
      id[v] = static_cast<int>(out.original.size());
      out.original.push_back(v);
    }
  }
  std::vector<Edge> edges;
  std::vector<char> visited(static_cast<std::size_t>(n), 0);

  // Appends a thread with the given interior, keeping both ends when short.
  auto add_thread = [&](const std::vector<int>& interior) -> std::vector<int> {
    const std::size_t len = interior.size();
    std::vector<int> keep;
    if (len <= 4) {
      keep = interior;
    } else {
      keep = {interior[0], interior[1]};
      if (len % 2 == 0) keep.push_back(interior[2]);
      keep.push_back(interior[len - 1]);
    }
    std::vector<int> ids;
    for (int v : keep) {
      ids.push_back(static_cast<int>(out.original.size()));
      out.original.push_back(v);
    }
    for (std::size_t i = 0; i + 1 < ids.size(); ++i) edges.emplace_back(ids[i], ids[i + 1]);
    return ids;
  };

  for (int u = 0; u < n; ++u) {
    if (g.degree(u) == 2) continue;
    for (int w : g.neighbors(u)) {
      if (g.degree(w) != 2) {
        if (u < w) edges.emplace_back(id[u], id[w]);
        continue;
      }
      if (visited[w]) continue;
      std::vector<int> interior;
      int prev = u, cur = w;
      while (g.degree(cur) == 2) {
        visited[cur] = 1;
        interior.push_back(cur);
        const auto nb = g.neighbors(cur);
        const int next = nb[0] == prev ? nb[1] : nb[0];
        prev = cur;
        cur = next;
      }
      const auto ids = add_thread(interior);
      edges.emplace_back(id[u], ids.front());
      edges.emplace_back(ids.back(), id[cur]);
    }
  }
  // What is left are components that are plain cycles.
  for (int s = 0; s < n; ++s) {
    if (visited[s] || g.degree(s) != 2) continue;
    std::vector<int> cyc;
    int prev = g.neighbors(s)[0], cur = s;
    while (!visited[cur]) {
      visited[cur] = 1;
      cyc.push_back(cur);
      const auto nb = g.neighbors(cur);
      const int next = nb[0] == prev ? nb[1] : nb[0];
      prev = cur;
      cur = next;
    }
    const std::size_t len = cyc.size() <= 4 ? cyc.size() : (cyc.size() % 2 == 1 ? 3 : 4);
    const int base = static_cast<int>(out.original.size());
    for (std::size_t i = 0; i < len; ++i) out.original.push_back(cyc[i]);
    for (std::size_t i = 0; i < len; ++i)
      edges.emplace_back(base + static_cast<int>(i), base + static_cast<int>((i + 1) % len));
  }
  out.graph = SimpleGraph(static_cast<int>(out.original.size()), edges);
  return out;
}

}  // namespace

std::optional<AlmostBipartiteWitness> almost_bipartite_index(const SimpleGraph& g, int k_max) {
  if (k_max < 0) throw InvalidInput("k_max must be non-negative");
  const auto compressed = compress_threads(g);
  for (int k = 0; k <= k_max; ++k) {
    HittingSetSearch search(compressed.graph, k);
    if (search.run()) {
      AlmostBipartiteWitness w;
      for (int v : search.chosen()) w.removed.push_back(compressed.original[v]);
      std::sort(w.removed.begin(), w.removed.end());
      w.k = static_cast<int>(w.removed.size());
      return w;
    }
  }
  return std::nullopt;
}

std::vector<std::vector<int>> connected_components(const SimpleGraph& g) {
  const int n = g.order();
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  std::vector<std::vector<int>> out;
  for (int s = 0; s < n; ++s) {
    if (seen[s]) continue;
    std::vector<int> comp{s};
    seen[s] = 1;
    for (std::size_t head = 0; head < comp.size(); ++head) {
      for (int y : g.neighbors(comp[head])) {
        if (!seen[y]) {
          seen[y] = 1;
          comp.push_back(y);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    out.push_back(std::move(comp));
  }
  return out;
}

namespace {

std::vector<int> component_size_per_vertex(const SimpleGraph& g) {
  std::vector<int> size(static_cast<std::size_t>(g.order()), 0);
  for (const auto& comp : connected_components(g)) {
    for (int v : comp) size[v] = static_cast<int>(comp.size());
  }
  return size;
}

/// Connectivity-respecting order: most already-ordered neighbours, then degree, then index.
std::vector<int> matching_order(const SimpleGraph& pattern) {
  const int n = pattern.order();
  std::vector<int> order;
  std::vector<int> placed_nbrs(static_cast<std::size_t>(n), 0);
  std::vector<char> done(static_cast<std::size_t>(n), 0);
  for (int step = 0; step < n; ++step) {
    int pick = -1;
    for (int v = 0; v < n; ++v) {
      if (done[v]) continue;
      if (pick == -1 || placed_nbrs[v] > placed_nbrs[pick] ||
          (placed_nbrs[v] == placed_nbrs[pick] && pattern.degree(v) > pattern.degree(pick))) {
        pick = v;
      }
    }
    done[pick] = 1;
    order.push_back(pick);
    for (int w : pattern.neighbors(pick)) ++placed_nbrs[w];
  }
  return order;
}

}  // namespace

std::optional<Embedding> find_subgraph(const SimpleGraph& pattern, const SimpleGraph& host) {
  const int np = pattern.order();
  const int nh = host.order();
  if (np > nh) return std::nullopt;
  if (np == 0) return Embedding{};

  const auto order = matching_order(pattern);
  const auto pattern_comp = component_size_per_vertex(pattern);
  const auto host_comp = component_size_per_vertex(host);

  // Dense adjacency matrix when affordable; otherwise fall back to binary search.
  std::vector<char> matrix;
  const bool use_matrix = static_cast<long long>(nh) * nh <= (1LL << 24);
  if (use_matrix) {
    matrix.assign(static_cast<std::size_t>(nh) * nh, 0);
    for (const Edge& e : host.edges()) {
      matrix[static_cast<std::size_t>(e.u) * nh + e.v] = 1;
      matrix[static_cast<std::size_t>(e.v) * nh + e.u] = 1;
    }
  }
  auto adjacent = [&](int a, int b) {
    return use_matrix ? matrix[static_cast<std::size_t>(a) * nh + b] != 0 : host.has_edge(a, b);
  };

  // For each position, the pattern neighbours that were mapped earlier.
  std::vector<int> position(static_cast<std::size_t>(np), 0);
  for (int i = 0; i < np; ++i) position[order[i]] = i;
  std::vector<std::vector<int>> earlier(static_cast<std::size_t>(np));
  for (int i = 0; i < np; ++i) {
    for (int w : pattern.neighbors(order[i])) {
      if (position[w] < i) earlier[i].push_back(w);
    }
  }

  std::vector<int> map(static_cast<std::size_t>(np), -1);
  std::vector<char> used(static_cast<std::size_t>(nh), 0);

  std::function<bool(int)> place = [&](int i) -> bool {
    if (i == np) return true;
    const int p = order[i];
    auto feasible = [&](int h) {
      if (used[h] || host.degree(h) < pattern.degree(p) || host_comp[h] < pattern_comp[p]) return false;
      for (int w : earlier[i]) {
        if (!adjacent(map[w], h)) return false;
      }
      return true;
    };
    auto attempt = [&](int h) {
      map[p] = h;
      used[h] = 1;
      if (place(i + 1)) return true;
      used[h] = 0;
      map[p] = -1;
      return false;
    };
    if (!earlier[i].empty()) {
      int anchor = map[earlier[i][0]];
      for (int w : earlier[i]) {
        if (host.degree(map[w]) < host.degree(anchor)) anchor = map[w];
      }
      for (int h : host.neighbors(anchor)) {
        if (feasible(h) && attempt(h)) return true;
      }
    } else {
      for (int h = 0; h < nh; ++h) {
        if (feasible(h) && attempt(h)) return true;
      }
    }
    return false;
  };

  if (!place(0)) return std::nullopt;
  return Embedding{std::move(map)};
}

}  // namespace ramchord
