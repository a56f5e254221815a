#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "ramchord/graph.hpp"

namespace ramchord {

/// Subgraph of a host on the host's vertex labels: an edge set and the vertices it touches.
struct Subgraph {
  SimpleGraph graph;
  std::vector<int> vertices;  // sorted

  int order() const { return static_cast<int>(vertices.size()); }
  bool contains(int v) const;
  void add_edge(int u, int v);
};

Subgraph subgraph_from_edges(int n, const std::vector<Edge>& edges);

/// Chords of a graph that contains the canonical cycle 0-1-...-(n-1)-0.
ChordSet chords_of(const SimpleGraph& g);

/// Maximal paths of G - E(H) with both ends in V(H) and interior outside it.
/// Interior vertices must have degree 2 in G. Each path is listed once, in
/// increasing order of its smallest vertex, starting from its smaller end.
std::vector<std::vector<int>> vh_paths(const SimpleGraph& g, const Subgraph& h);

/// H'': the chords plus every arc of the cycle between consecutive chord
/// endpoints whose length is at most z. Empty when g has no chords.
Subgraph extract_core(const SimpleGraph& g, double z);

/// H': for each even V(H)-path, in order of smallest vertex, moves the edge at
/// its lower-numbered end (and the vertex behind it) into the core.
Subgraph parity_fix(const Subgraph& core, const SimpleGraph& g);

/// Restricts a bipartition of g to V(H). Throws InvalidInput if g is not
/// bipartite or some V(H)-path of G - E(H) is even.
VertexPartition bipartite_path_alignment(const SimpleGraph& g, const Subgraph& h);

struct TripartiteResult {
  Subgraph h;
  VertexPartition partition;  // U1, U2, U3
};

/// Absorbs the second and second-to-last vertex of every V(H')-path that does
/// not already run from U1 to U2. An end in U3 follows the classic rules
/// (both ends in U3: b to U1 and y to U2; a in U3 and z in Ui: b to Ui and y to
/// U(3-i)). A path with both ends in the same Ui sends b to U3 and the vertex
/// after it to U(3-i). Needs odd paths of length at least m >= 3, at most |H'| of them.
TripartiteResult tripartite_augment(const SimpleGraph& g, const Subgraph& h_prime,
                                    const VertexPartition& partition, int m);

enum class PreparationStatus { ok, degenerate, all_absorbed };

const char* to_string(PreparationStatus s);

struct StageSizes {
  int core = 0;    // |H''|
  int parity = 0;  // |H'|
  int final = 0;   // |H|
};

struct PreparedDecomposition {
  PreparationStatus status = PreparationStatus::ok;
  int n = 0;
  std::size_t chord_count = 0;
  double z = 0.0;
  Subgraph core;
  VertexPartition partition;
  /// Odd U1-U2 paths, first vertex in U1, last in U2.
  std::vector<std::vector<int>> connectors;
  StageSizes stage_sizes;
  /// Independent set used for the third class (odd n only).
  std::vector<int> odd_witness;
};

/// Runs extract_core, parity_fix and then either bipartite_path_alignment (n
/// even) or a 3-colouring from an almost-bipartite witness followed by
/// tripartite_augment (n odd). Connectors of length 1 that would need
/// rerouting are absorbed into H as single edges. A chordless cycle comes
/// back as degenerate.
PreparedDecomposition prepare_host(const SimpleGraph& g, double z, int k_max = kDefaultAlmostBipartiteCap);

/// Every violated invariant, as readable messages; empty when all hold.
std::vector<std::string> verify_decomposition(const SimpleGraph& g, const PreparedDecomposition& dec);

nlohmann::json decomposition_to_json(const PreparedDecomposition& dec);

struct HostInstanceOptions {
  int n_min = 50;
  int n_max = 2000;
  int chord_divisor = 50;  // |D| <= n / chord_divisor
  int max_degree = 6;
  int max_index = 3;       // odd n: number of extra odd-cycle chords is at most max_index - 1
};

/// Seeded random chorded cycle: bipartite when n is even, index at most
/// max_index when n is odd, with maximum degree at most max_degree.
SimpleGraph random_host_instance(std::uint64_t seed, const HostInstanceOptions& opts = {});

}  // namespace ramchord
