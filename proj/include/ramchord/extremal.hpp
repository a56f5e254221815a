#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ramchord/graph.hpp"
#include "ramchord/ramsey.hpp"

namespace ramchord {

enum class ExtremalKind { even_maxcut, odd_maxcut_plus_vertex, k_part };

const char* to_string(ExtremalKind kind);
ExtremalKind extremal_kind_from_string(const std::string& name);

struct ExtremalSpec {
  ExtremalKind kind = ExtremalKind::even_maxcut;
  int n = 0;
  int k = 0;  // k_part only
};

/// Red inside consecutive blocks of the given sizes, blue between blocks.
ColoredCompleteGraph clique_block_coloring(const std::vector<int>& block_sizes);

/// K_{2(n-1)}: red on X = {0..n-2} and on Y = {n-1..2n-3}, blue across.
ColoredCompleteGraph even_extremal_coloring(int n);
/// The even construction plus a last vertex joined to everything in blue.
ColoredCompleteGraph odd_extremal_coloring(int n);
/// K_{2(n-1)+k}: red inside X, Y and Z = {2n-2..2n-3+k}, blue across.
ColoredCompleteGraph k_almost_extremal_coloring(int n, int k);

ColoredCompleteGraph build_extremal(const ExtremalSpec& spec);

enum class CertifyMode { search, structural };

const char* to_string(CertifyMode mode);

/// Result of looking for one colour class of H.
struct ColorReport {
  bool contains = false;
  std::string reason;
  std::optional<Embedding> copy;
};

struct LowerBoundCertificate {
  bool verdict = false;  // true: no monochromatic copy of H
  CertifyMode mode = CertifyMode::search;
  int n = 0;                  // order of the coloured complete graph
  std::vector<int> blocks;    // red clique sizes (structural mode)
  ColorReport red;
  ColorReport blue;
};

/// Decides whether `c` avoids a monochromatic H.
///
/// Search mode runs the subgraph search in both colours. Structural mode needs
/// a red graph that is a disjoint union of two or three cliques, so that blue is
/// complete multipartite. Red holds H iff the components of H pack into the
/// cliques. Blue holds H iff H has a proper colouring whose classes fit the
/// parts; that is decided by backtracking. Throws InvalidInput when structural
/// mode meets any other colouring.
LowerBoundCertificate certify_lower_bound(const ColoredCompleteGraph& c, const SimpleGraph& h,
                                          CertifyMode mode);

/// Proper colouring of `h` with class i of size at most capacities[i], or none.
std::optional<std::vector<int>> bounded_class_coloring(const SimpleGraph& h,
                                                       const std::vector<int>& capacities);

nlohmann::json certificate_to_json(const LowerBoundCertificate& cert);

/// A block colouring that certifies r(H) > N, chosen from H's structure.
struct ConstructionBound {
  std::string name;
  std::vector<int> blocks;
  ColoredCompleteGraph coloring;
  LowerBoundCertificate certificate;
  int lower_bound = 0;  // N + 1
};

/// With h = |H| and k its almost-bipartite index, tries red cliques {h-1, h-1, k-1}
/// (the last block dropped when k = 1; k_max + 1 stands in for an index above the
/// cap). Bipartite patterns get none, since blue then holds them.
std::optional<ConstructionBound> construction_lower_bound(const SimpleGraph& h,
                                                          int k_max = kDefaultAlmostBipartiteCap);

nlohmann::json construction_bound_to_json(const ConstructionBound& b);

}  // namespace ramchord
