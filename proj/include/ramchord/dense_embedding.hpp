#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include <json.hpp>

#include "ramchord/graph.hpp"
#include "ramchord/ramsey.hpp"

namespace ramchord {

struct DenseEmbedOptions {
  /// Host vertices of degree at least (1 - 2 eps)|F| count as high-degree.
  double eps = 0.1;
  /// Candidate trials before the search gives up.
  std::size_t max_steps = 200000;
};

/// Greedy embedding of a bounded-degree pattern into a dense host.
///
/// For a spanning pattern, low-degree host vertices are first paired, in
/// increasing degree, with low-degree pattern vertices lying pairwise at
/// distance at least 3; if that anchored attempt fails, the search reruns
/// without anchors on the remaining step budget. Pattern vertices are placed
/// in most-constrained-first order, each on the candidate with the most unused
/// high-degree neighbours, with bounded backtracking. None means the heuristic
/// gave up, not that no copy exists.
std::optional<Embedding> greedy_dense_embed(const SimpleGraph& pattern, const SimpleGraph& host,
                                            const DenseEmbedOptions& opts = {});

struct TwoSidedResult {
  std::optional<Embedding> embedding;
  /// Largest number of colour non-neighbours in A' of any vertex of B' or S.
  int measured_defect = 0;
  /// The counting bound |A'| - Delta * deg_defect > |Y| - 1 (and the matching
  /// bound on B' when a third class is present) holds and the host respects deg_defect.
  bool guaranteed = false;
};

/// Embeds a bipartite pattern with parts X, Y (and optionally an independent
/// third part Z) into a host: Z onto S in order, X onto B' in order (each
/// on the first vertex joined to its placed Z-neighbours), then each y in Y on
/// the first unused vertex of A' joined to the images of all its neighbours.
/// Throws InvalidInput when a part does not fit or the partition is improper.
TwoSidedResult two_sided_greedy_embed(const SimpleGraph& pattern, const VertexPartition& parts,
                                      const SimpleGraph& host, const std::vector<int>& a_prime,
                                      const std::vector<int>& b_prime, int deg_defect,
                                      const std::vector<int>& special = {});

TwoSidedResult two_sided_greedy_embed(const SimpleGraph& pattern, const VertexPartition& parts,
                                      const ColoredCompleteGraph& host, Color color,
                                      const std::vector<int>& a_prime, const std::vector<int>& b_prime,
                                      int deg_defect, const std::vector<int>& special = {});

/// Graph whose edges each carry a nonempty subset of {red, blue}.
struct MultiColoredGraph {
  SimpleGraph red;
  SimpleGraph blue;

  explicit MultiColoredGraph(int n = 0) : red(n), blue(n) {}
  static MultiColoredGraph from_coloring(const ColoredCompleteGraph& c);

  int order() const { return red.order(); }
  const SimpleGraph& of(Color c) const { return c == Color::red ? red : blue; }
  SimpleGraph& of(Color c) { return c == Color::red ? red : blue; }
  void add_edge(int u, int v, Color c) { of(c).add_edge(u, v); }
};

struct CleanupResult {
  std::vector<int> a;
  std::vector<int> b;
  /// Vertices of V1 with many minority-colour edges inside V1.
  std::vector<int> removed_inside;
  /// Vertices of V1 sending many majority-colour edges to V2.
  std::vector<int> removed_cross;
  /// Vertices of V2 sending many majority-colour edges to V1.
  std::vector<int> removed_v2;
  double threshold = 0.0;  // beta^(1/10)
  std::size_t wrong_inside = 0;  // edges of G[V1] carrying the minority colour
  std::size_t wrong_cross = 0;   // edges of G[V1,V2] carrying the majority colour
  /// At most beta^(1/5)|V1|^2 wrong edges inside and beta^(1/5)|V1||V2| across.
  bool hypotheses_hold = false;
  /// |A| >= (1 - 3 beta^(1/10))|V1| and |B| >= (1 - beta^(1/10))|V2|.
  bool size_bound_holds = false;
};

/// Removes the bad vertices of V1 and V2 with respect to majority colour i.
/// Every degree test is measured against the original V1 and V2 and uses >=.
CleanupResult stability_cleanup(const MultiColoredGraph& g, const std::vector<int>& v1,
                                const std::vector<int>& v2, double beta, Color majority);

nlohmann::json two_sided_to_json(const TwoSidedResult& r);
nlohmann::json cleanup_to_json(const CleanupResult& r);

}  // namespace ramchord
