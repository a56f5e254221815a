#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "ramchord/graph.hpp"

namespace ramchord {

enum class Color : std::uint8_t { red = 0, blue = 1 };

inline Color other(Color c) { return c == Color::red ? Color::blue : Color::red; }
const char* to_string(Color c);

/// Red/blue colouring of every edge of K_N.
class ColoredCompleteGraph {
 public:
  ColoredCompleteGraph() = default;
  explicit ColoredCompleteGraph(int n, Color fill = Color::blue);

  /// Red edges are the edges of `red`; every other pair is blue.
  static ColoredCompleteGraph from_red_graph(const SimpleGraph& red);

  int order() const { return n_; }
  Color color(int u, int v) const;
  void set_color(int u, int v, Color c);

  /// Spanning subgraph of one colour.
  SimpleGraph subgraph(Color c) const;
  std::vector<Edge> edges_of(Color c) const;

  bool operator==(const ColoredCompleteGraph&) const = default;

 private:
  std::size_t index(int u, int v) const;

  int n_ = 0;
  std::vector<std::uint8_t> colors_;  // lexicographic pair order
};

/// {"N": int, "red_edges": [[u,v],...]}; blue is the complement.
nlohmann::json coloring_to_json(const ColoredCompleteGraph& c);
ColoredCompleteGraph coloring_from_json(const nlohmann::json& j);

/// One bit per pair in lexicographic order (1 = red), MSB first, zero-padded to whole hex digits.
std::string coloring_to_hex(const ColoredCompleteGraph& c);
ColoredCompleteGraph coloring_from_hex(int n, const std::string& hex);

struct MonoCopy {
  Color color = Color::red;
  Embedding embedding;
};

/// A monochromatic copy of `pattern` (red searched first), or none.
std::optional<MonoCopy> mono_copy(const ColoredCompleteGraph& c, const SimpleGraph& pattern);

struct SearchLimits {
  std::uint64_t max_nodes = 0;  // 0 = unlimited
  double max_seconds = 0.0;     // 0 = unlimited
  int workers = 1;
  int split_edges = -1;         // prefix depth for work splitting; -1 = automatic
  std::string checkpoint_path;  // empty = no checkpointing
};

struct SearchStats {
  std::uint64_t nodes = 0;
  std::uint64_t prunes = 0;
  double seconds = 0.0;
  int split_edges = 0;
  std::size_t branches = 0;
  std::size_t branches_resumed = 0;  // skipped because a checkpoint marked them exhausted
  std::size_t branches_completed = 0;
};

struct ArrowingVerdict {
  int n = 0;
  bool arrows = false;
  std::optional<ColoredCompleteGraph> witness;  // present iff !arrows
  SearchStats stats;
};

/// Node or wall-clock budget ran out before a verdict was reached.
class ResourceLimitExceeded : public std::runtime_error {
 public:
  ResourceLimitExceeded(const std::string& what, SearchStats stats)
      : std::runtime_error(what), stats_(stats) {}
  const SearchStats& stats() const { return stats_; }

 private:
  SearchStats stats_;
};

/// ramsey_number found no arrowing N up to the cap.
class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Decides K_N -> (H, H) by exhaustive search over colourings of K_N.
///
/// Edges are coloured in colex order ({0,1},{0,2},{1,2},{0,3},...) so that every
/// prefix is the complete colouring of an initial vertex segment. A branch is cut
/// as soon as the last coloured edge closes a monochromatic copy of H. Edge {0,1}
/// is red and vertex 0's red neighbourhood is an initial segment 1..r. Prefixes at
/// a fixed depth are distributed over workers; the reported witness is the one in
/// the earliest prefix, so the verdict does not depend on scheduling.
ArrowingVerdict arrows(int n, const SimpleGraph& pattern, const SearchLimits& limits = {});

struct RamseyResult {
  int value = 0;
  /// arrows(value - 1) == false, with its witness colouring.
  ArrowingVerdict lower;
  ArrowingVerdict upper;
};

RamseyResult ramsey_number(const SimpleGraph& pattern, int n_max, const SearchLimits& limits = {});

nlohmann::json stats_to_json(const SearchStats& s);
/// Verdict without stats; deterministic for a given (N, H).
nlohmann::json verdict_to_json(const ArrowingVerdict& v, const SimpleGraph& pattern);

}  // namespace ramchord
