#include "ramchord/preparation.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <stdexcept>

#include "ramchord/graph_io.hpp"

namespace ramchord {

using nlohmann::json;

bool Subgraph::contains(int v) const { return std::binary_search(vertices.begin(), vertices.end(), v); }

void Subgraph::add_edge(int u, int v) {
  graph.add_edge(u, v);
  for (int x : {u, v}) {
    auto it = std::lower_bound(vertices.begin(), vertices.end(), x);
    if (it == vertices.end() || *it != x) vertices.insert(it, x);
  }
}

Subgraph subgraph_from_edges(int n, const std::vector<Edge>& edges) {
  Subgraph s;
  s.graph = SimpleGraph(n);
  for (const Edge& e : edges) s.add_edge(e.u, e.v);
  return s;
}

ChordSet chords_of(const SimpleGraph& g) {
  const int n = g.order();
  if (n < 3) throw InvalidInput("a chorded cycle needs at least 3 vertices");
  for (int i = 0; i < n; ++i) {
    if (!g.has_edge(i, (i + 1) % n)) throw InvalidInput("graph does not contain the cycle 0-1-...-(n-1)-0");
  }
  std::vector<Edge> chords;
  for (const Edge& e : g.edges()) {
    if (e.v - e.u != 1 && !(e.u == 0 && e.v == n - 1)) chords.push_back(e);
  }
  return ChordSet(n, std::move(chords));
}

std::vector<std::vector<int>> vh_paths(const SimpleGraph& g, const Subgraph& h) {
  std::set<Edge> used;
  std::vector<std::vector<int>> paths;
  for (int u : h.vertices) {
    for (int w : g.neighbors(u)) {
      if (h.graph.has_edge(u, w) || used.count(Edge(u, w))) continue;
      std::vector<int> path{u, w};
      used.insert(Edge(u, w));
      int prev = u;
      int cur = w;
      while (!h.contains(cur)) {
        if (g.degree(cur) != 2) {
          throw InvalidInput("vertex " + std::to_string(cur) + " outside H has degree " +
                             std::to_string(g.degree(cur)) + ", not 2");
        }
        const auto nb = g.neighbors(cur);
        const int next = nb[0] == prev ? nb[1] : nb[0];
        used.insert(Edge(cur, next));
        path.push_back(next);
        prev = cur;
        cur = next;
      }
      if (cur == u) throw InvalidInput("closed V(H)-path at vertex " + std::to_string(u));
      paths.push_back(std::move(path));
    }
  }
  std::sort(paths.begin(), paths.end(), [](const auto& a, const auto& b) {
    const int ma = *std::min_element(a.begin(), a.end());
    const int mb = *std::min_element(b.begin(), b.end());
    return ma != mb ? ma < mb : a < b;
  });
  return paths;
}

Subgraph extract_core(const SimpleGraph& g, double z) {
  const ChordSet d = chords_of(g);
  const int n = g.order();
  Subgraph core;
  core.graph = SimpleGraph(n);
  if (d.empty()) return core;
  for (const Edge& e : d.chords()) core.add_edge(e.u, e.v);
  const auto ends = d.endpoints();
  for (std::size_t i = 0; i < ends.size(); ++i) {
    const int from = ends[i];
    const int to = ends[(i + 1) % ends.size()];
    const int len = ((to - from) % n + n) % n;
    if (len > z) continue;
    for (int step = 0; step < len; ++step) core.add_edge((from + step) % n, (from + step + 1) % n);
  }
  return core;
}

Subgraph parity_fix(const Subgraph& core, const SimpleGraph& g) {
  Subgraph out = core;
  for (auto path : vh_paths(g, core)) {
    if ((path.size() - 1) % 2 != 0) continue;
    if (path.front() > path.back()) std::reverse(path.begin(), path.end());
    out.add_edge(path[0], path[1]);
  }
  return out;
}

VertexPartition bipartite_path_alignment(const SimpleGraph& g, const Subgraph& h) {
  const auto bp = bipartition(g);
  if (!bp.partition) throw InvalidInput("host graph is not bipartite");
  for (const auto& path : vh_paths(g, h)) {
    if ((path.size() - 1) % 2 == 0) {
      throw InvalidInput("even V(H)-path between " + std::to_string(path.front()) + " and " +
                         std::to_string(path.back()));
    }
  }
  const auto labels = bp.partition->labels(g.order());
  VertexPartition out;
  out.parts.resize(2);
  for (int v : h.vertices) out.parts[labels[v]].push_back(v);
  return out;
}

namespace {

TripartiteResult augment(const SimpleGraph& g, const Subgraph& h_prime, const VertexPartition& partition,
                         bool absorb_single_edges) {
  TripartiteResult out{h_prime, partition};
  auto labels = partition.labels(g.order());
  auto put = [&](int v, int part) { labels[v] = part; };
  for (const auto& p : vh_paths(g, h_prime)) {
    const std::size_t len = p.size() - 1;
    const int a = p.front();
    const int z = p.back();
    const int la = labels[a];
    const int lz = labels[z];
    if ((la == 0 && lz == 1) || (la == 1 && lz == 0)) continue;
    if (len % 2 == 0) throw InvalidInput("even V(H')-path between " + std::to_string(a) + " and " + std::to_string(z));
    if (len == 1) {
      if (!absorb_single_edges) throw InvalidInput("V(H')-path of length 1 cannot be shortened");
      if (la == lz) throw std::logic_error("3-colouring is not proper on a host edge");
      out.h.add_edge(a, z);
      continue;
    }
    const int b = p[1];
    const int y = p[len - 1];
    if (la == 2 && lz == 2) {
      put(b, 0);
      put(y, 1);
      out.h.add_edge(a, b);
      out.h.add_edge(y, z);
    } else if (la == 2) {
      put(b, lz);
      put(y, 1 - lz);
      out.h.add_edge(a, b);
      out.h.add_edge(y, z);
    } else if (lz == 2) {
      put(y, la);
      put(b, 1 - la);
      out.h.add_edge(a, b);
      out.h.add_edge(y, z);
    } else {
      // Both ends in the same class Ui.
      const int c = p[2];
      put(b, 2);
      put(c, 1 - la);
      out.h.add_edge(a, b);
      out.h.add_edge(b, c);
    }
  }
  out.partition.parts.assign(3, {});
  for (int v : out.h.vertices) {
    if (labels[v] < 0) throw std::logic_error("absorbed vertex left without a class");
    out.partition.parts[labels[v]].push_back(v);
  }
  return out;
}

}  // namespace

TripartiteResult tripartite_augment(const SimpleGraph& g, const Subgraph& h_prime, const VertexPartition& partition,
                                    int m) {
  if (m < 3) throw InvalidInput("minimum path length m must be at least 3");
  if (partition.parts.size() != 3) throw InvalidInput("need a partition into three classes");
  auto domain = partition.domain();
  std::sort(domain.begin(), domain.end());
  if (domain != h_prime.vertices) throw InvalidInput("partition must cover exactly V(H')");
  if (!partition.is_proper_for(h_prime.graph)) throw InvalidInput("partition is not proper on H'");
  const auto paths = vh_paths(g, h_prime);
  if (paths.size() > h_prime.vertices.size()) throw InvalidInput("more V(H')-paths than vertices of H'");
  for (const auto& p : paths) {
    const std::size_t len = p.size() - 1;
    if (len % 2 == 0) throw InvalidInput("V(H')-path of even length " + std::to_string(len));
    if (static_cast<int>(len) < m) throw InvalidInput("V(H')-path shorter than m");
  }
  return augment(g, h_prime, partition, false);
}

const char* to_string(PreparationStatus s) {
  switch (s) {
    case PreparationStatus::ok: return "ok";
    case PreparationStatus::degenerate: return "degenerate";
    case PreparationStatus::all_absorbed: return "all_absorbed";
  }
  return "?";
}

PreparedDecomposition prepare_host(const SimpleGraph& g, double z, int k_max) {
  if (!(z >= 1.0)) throw InvalidInput("z must be at least 1");
  const ChordSet d = chords_of(g);
  const int n = g.order();
  PreparedDecomposition dec;
  dec.n = n;
  dec.chord_count = d.size();
  dec.z = z;
  dec.core.graph = SimpleGraph(n);
  if (d.empty()) {
    dec.status = PreparationStatus::degenerate;
    return dec;
  }

  const Subgraph core = extract_core(g, z);
  dec.stage_sizes.core = core.order();
  const Subgraph h_prime = parity_fix(core, g);
  dec.stage_sizes.parity = h_prime.order();

  if (n % 2 == 0) {
    if (!bipartition(g).partition) throw InvalidInput("even n needs a bipartite C_n with chords");
    dec.core = h_prime;
    dec.partition = bipartite_path_alignment(g, h_prime);
  } else {
    const auto witness = almost_bipartite_index(g, k_max);
    if (!witness) throw InvalidInput("almost-bipartite index exceeds k_max = " + std::to_string(k_max));
    dec.odd_witness = witness->removed;
    const auto rest = bipartition(g.without_vertices(witness->removed));
    const auto two = rest.partition->labels(n);
    VertexPartition three;
    three.parts.assign(3, {});
    std::vector<char> in_s(static_cast<std::size_t>(n), 0);
    for (int v : witness->removed) in_s[v] = 1;
    for (int v : h_prime.vertices) three.parts[in_s[v] ? 2 : two[v]].push_back(v);
    auto result = augment(g, h_prime, three, true);
    dec.core = std::move(result.h);
    dec.partition = std::move(result.partition);
  }
  dec.stage_sizes.final = dec.core.order();

  const auto labels = dec.partition.labels(n);
  for (auto path : vh_paths(g, dec.core)) {
    if (labels[path.front()] != 0) std::reverse(path.begin(), path.end());
    dec.connectors.push_back(std::move(path));
  }
  dec.status = dec.connectors.empty() ? PreparationStatus::all_absorbed : PreparationStatus::ok;
  return dec;
}

std::vector<std::string> verify_decomposition(const SimpleGraph& g, const PreparedDecomposition& dec) {
  std::vector<std::string> errors;
  auto fail = [&](std::string msg) { errors.push_back(std::move(msg)); };
  const int n = g.order();
  if (dec.status == PreparationStatus::degenerate) {
    if (dec.chord_count != 0) fail("degenerate status with chords present");
    return errors;
  }

  const std::size_t expected_parts = n % 2 == 0 ? 2 : 3;
  if (dec.partition.parts.size() != expected_parts) fail("partition has the wrong number of classes");
  auto domain = dec.partition.domain();
  std::sort(domain.begin(), domain.end());
  if (domain != dec.core.vertices) fail("partition does not cover exactly V(H)");
  if (!dec.partition.is_proper_for(dec.core.graph)) fail("partition is not proper on H");
  for (const Edge& e : dec.core.graph.edges()) {
    if (!g.has_edge(e.u, e.v)) fail("H edge {" + std::to_string(e.u) + "," + std::to_string(e.v) + "} not in host");
  }

  std::vector<int> labels;
  try {
    labels = dec.partition.labels(n);
  } catch (const InvalidInput& ex) {
    fail(ex.what());
    return errors;
  }
  std::set<Edge> seen;
  std::size_t edge_total = dec.core.graph.size();
  std::vector<char> interior(static_cast<std::size_t>(n), 0);
  for (std::size_t i = 0; i < dec.connectors.size(); ++i) {
    const auto& p = dec.connectors[i];
    const std::string tag = "connector " + std::to_string(i);
    if (p.size() < 2) {
      fail(tag + " is empty");
      continue;
    }
    const std::size_t len = p.size() - 1;
    edge_total += len;
    if (len % 2 == 0) fail(tag + " has even length " + std::to_string(len));
    if (static_cast<double>(len) < dec.z - 3) fail(tag + " is shorter than z - 3");
    if (labels[p.front()] != 0) fail(tag + " does not start in U1");
    if (labels[p.back()] != 1) fail(tag + " does not end in U2");
    for (std::size_t j = 0; j + 1 < p.size(); ++j) {
      const Edge e(p[j], p[j + 1]);
      if (!g.has_edge(e.u, e.v)) fail(tag + " uses a non-edge");
      if (dec.core.graph.has_edge(e.u, e.v)) fail(tag + " reuses an edge of H");
      if (!seen.insert(e).second) fail(tag + " reuses an edge of another connector");
    }
    for (std::size_t j = 1; j + 1 < p.size(); ++j) {
      if (dec.core.contains(p[j])) fail(tag + " passes through V(H)");
      if (interior[p[j]]++) fail(tag + " shares an interior vertex");
    }
  }
  if (edge_total != g.size()) fail("H and the connectors do not cover E(C_n with chords) exactly");

  const auto& s = dec.stage_sizes;
  if (s.core > 2 * dec.z * static_cast<double>(dec.chord_count) + 1e-9) fail("|H''| exceeds 2 z |D|");
  if (s.parity > 2 * s.core) fail("|H'| exceeds 2 |H''|");
  if (s.final > 3 * s.parity) fail("|H| exceeds 3 |H'|");
  if (s.final != dec.core.order()) fail("final stage size differs from |V(H)|");
  return errors;
}

json decomposition_to_json(const PreparedDecomposition& dec) {
  json out = {{"status", to_string(dec.status)},
              {"n", dec.n},
              {"chords", dec.chord_count},
              {"z", dec.z},
              {"core",
               {{"graph", graph_to_json(dec.core.graph)},
                {"vertices", dec.core.vertices},
                {"partition", dec.partition.parts}}},
              {"connectors", dec.connectors},
              {"stage_sizes",
               {{"core", dec.stage_sizes.core}, {"after_parity", dec.stage_sizes.parity}, {"final", dec.stage_sizes.final}}}};
  if (!dec.odd_witness.empty()) out["odd_witness"] = dec.odd_witness;
  return out;
}

SimpleGraph random_host_instance(std::uint64_t seed, const HostInstanceOptions& opts) {
  if (opts.n_min < 5 || opts.n_max < opts.n_min) throw InvalidInput("bad cycle length range");
  if (opts.max_degree < 3) throw InvalidInput("max degree must be at least 3");
  if (opts.max_index < 1) throw InvalidInput("max index must be at least 1");
  std::mt19937_64 rng(seed);
  for (;;) {
    const int n = std::uniform_int_distribution<int>(opts.n_min, opts.n_max)(rng);
    const int max_chords = std::max(1, n / opts.chord_divisor);
    const int m = std::uniform_int_distribution<int>(1, max_chords)(rng);
    const bool odd = n % 2 == 1;
    const int conflicts = odd ? std::uniform_int_distribution<int>(0, std::min(opts.max_index - 1, m))(rng) : 0;

    SimpleGraph g = cycle_graph(n);
    std::vector<Edge> bad{Edge(0, n - 1)};  // the one edge the parity colouring gets wrong when n is odd
    auto try_chord = [&](bool same_parity) {
      for (int attempt = 0; attempt < 1000; ++attempt) {
        const int u = std::uniform_int_distribution<int>(0, n - 1)(rng);
        int dist;
        if (rng() % 2 == 0) dist = std::uniform_int_distribution<int>(2, 12)(rng);
        else dist = std::uniform_int_distribution<int>(2, n - 2)(rng);
        int v = (u + dist) % n;
        // Same or opposite parity with respect to the labels 0..n-1.
        if (((u + v) % 2 == 0) != same_parity) v = (v + 1) % n;
        const int gap = std::min((u - v + n) % n, (v - u + n) % n);
        if (u == v || gap < 2 || g.has_edge(u, v)) continue;
        if (g.degree(u) >= opts.max_degree || g.degree(v) >= opts.max_degree) continue;
        if (((u + v) % 2 == 0) != same_parity) continue;
        g.add_edge(u, v);
        if (same_parity) bad.emplace_back(u, v);
        return true;
      }
      return false;
    };
    bool ok = true;
    for (int i = 0; i < conflicts && ok; ++i) ok = try_chord(true);
    for (int i = conflicts; i < m && ok; ++i) ok = try_chord(false);
    if (!ok) continue;
    if (!odd) return g;

    // Some independent choice of one end per badly coloured edge certifies the index bound.
    const std::size_t b = bad.size();
    for (std::uint32_t mask = 0; mask < (1u << b); ++mask) {
      std::vector<int> s;
      for (std::size_t i = 0; i < b; ++i) s.push_back(mask >> i & 1 ? bad[i].v : bad[i].u);
      std::sort(s.begin(), s.end());
      s.erase(std::unique(s.begin(), s.end()), s.end());
      bool independent = true;
      for (std::size_t i = 0; i < s.size() && independent; ++i)
        for (std::size_t j = i + 1; j < s.size() && independent; ++j) independent = !g.has_edge(s[i], s[j]);
      if (independent && static_cast<int>(s.size()) <= opts.max_index) return g;
    }
  }
}

}  // namespace ramchord
