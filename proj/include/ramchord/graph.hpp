#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace ramchord {

/// Raised for malformed graphs, chord sets, partitions and similar input errors.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Unordered vertex pair, stored with u < v.
struct Edge {
  int u = 0;
  int v = 0;

  Edge() = default;
  Edge(int a, int b) : u(a < b ? a : b), v(a < b ? b : a) {}

  auto operator<=>(const Edge&) const = default;
};

/// Undirected simple graph on vertices 0..n-1 with sorted adjacency lists.
class SimpleGraph {
 public:
  SimpleGraph() = default;
  explicit SimpleGraph(int n);
  SimpleGraph(int n, std::span<const Edge> edges);

  int order() const { return static_cast<int>(adj_.size()); }
  std::size_t size() const { return edge_count_; }

  /// Inserts {u,v}. Throws on loops or out-of-range endpoints; returns false if present.
  bool add_edge(int u, int v);
  bool has_edge(int u, int v) const;

  std::span<const int> neighbors(int v) const { return adj_[v]; }
  int degree(int v) const { return static_cast<int>(adj_[v].size()); }
  int max_degree() const;

  /// All edges in lexicographic order.
  std::vector<Edge> edges() const;

  SimpleGraph complement() const;

  /// Copy with every edge incident to a vertex in `removed` deleted (vertex ids kept).
  SimpleGraph without_vertices(std::span<const int> removed) const;

  bool operator==(const SimpleGraph&) const = default;

 private:
  std::vector<std::vector<int>> adj_;
  std::size_t edge_count_ = 0;
};

SimpleGraph cycle_graph(int n);
SimpleGraph path_graph(int n);
SimpleGraph complete_graph(int n);
SimpleGraph complete_bipartite(int a, int b);

/// Chords of the canonical cycle 0-1-...-(n-1)-0.
class ChordSet {
 public:
  ChordSet() = default;
  /// Validates every chord; throws InvalidInput on cycle edges, repeats or bad endpoints.
  ChordSet(int n, std::vector<Edge> chords);

  int cycle_length() const { return n_; }
  const std::vector<Edge>& chords() const { return chords_; }
  std::size_t size() const { return chords_.size(); }
  bool empty() const { return chords_.empty(); }

  /// Sorted distinct chord endpoints, V(D).
  std::vector<int> endpoints() const;

 private:
  int n_ = 0;
  std::vector<Edge> chords_;
};

/// Ordered list of 2 or 3 pairwise disjoint vertex sets.
struct VertexPartition {
  std::vector<std::vector<int>> parts;

  /// Label per vertex of 0..n-1: part index, or -1 when the vertex is outside the domain.
  std::vector<int> labels(int n) const;
  std::vector<int> domain() const;
  /// No edge of `g` joins two vertices of the same part.
  bool is_proper_for(const SimpleGraph& g) const;
};

/// Injective map from pattern vertices to host vertices.
struct Embedding {
  std::vector<int> map;
};

bool is_valid_embedding(const SimpleGraph& pattern, const SimpleGraph& host,
                        const Embedding& emb);

SimpleGraph build_chorded_cycle(int n, const ChordSet& chords);

struct BipartitionResult {
  std::optional<VertexPartition> partition;
  /// Vertex sequence of an odd cycle when the graph is not bipartite.
  std::vector<int> odd_cycle;
};

/// Two-colours every component by BFS; covers all vertices of `g`.
BipartitionResult bipartition(const SimpleGraph& g);

/// Bipartiteness of g minus the vertices flagged in `removed` (size g.order()).
bool is_bipartite_without(const SimpleGraph& g, const std::vector<char>& removed);

/// A shortest odd cycle of g minus `removed`, or empty when none exists.
std::vector<int> shortest_odd_cycle(const SimpleGraph& g, const std::vector<char>& removed);

struct AlmostBipartiteWitness {
  int k = 0;
  std::vector<int> removed;  // independent set S with G - S bipartite
};

inline constexpr int kDefaultAlmostBipartiteCap = 8;

/// Least k <= k_max such that an independent k-set S leaves G - S bipartite.
std::optional<AlmostBipartiteWitness> almost_bipartite_index(
    const SimpleGraph& g, int k_max = kDefaultAlmostBipartiteCap);

/// Backtracking subgraph (monomorphism) search.
///
/// Pattern vertices are matched in a connectivity-respecting order of decreasing
/// degree; host candidates are restricted to common neighbourhoods of already
/// mapped neighbours, filtered by degree and by the size of the host component.
std::optional<Embedding> find_subgraph(const SimpleGraph& pattern, const SimpleGraph& host);

/// Connected components as sorted vertex lists.
std::vector<std::vector<int>> connected_components(const SimpleGraph& g);

}  // namespace ramchord
