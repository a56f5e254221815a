#pragma once

#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "ramchord/graph.hpp"

namespace ramchord {

using json = nlohmann::json;

/// graph6 encoding (standard 6-bit packing of the upper triangle, column by column).
std::string to_graph6(const SimpleGraph& g);
/// Accepts an optional ">>graph6<<" header and trailing newline.
SimpleGraph from_graph6(std::string_view text);

json graph_to_json(const SimpleGraph& g);
SimpleGraph graph_from_json(const json& j);

json chords_to_json(const ChordSet& d);
ChordSet chords_from_json(const json& j);

json partition_to_json(const VertexPartition& p);
VertexPartition partition_from_json(const json& j);

/// A parsed graph argument. `chords` is set when the input used the cycle shorthand.
struct GraphSpec {
  SimpleGraph graph;
  std::optional<ChordSet> chords;
  std::string label;
};

/// Parses the chord shorthand "C<n>(+<u>-<v>)*", e.g. "C13+0-2+3-5".
std::optional<GraphSpec> parse_chord_shorthand(std::string_view text);

/// Shorthand first, then inline JSON ("{...}"), then "g6:<graph6>" or bare graph6.
/// A path to an existing *.json or *.g6 file is read from disk.
GraphSpec parse_graph_spec(const std::string& text);

/// Shorthand label when `g` is a chorded cycle on the canonical labelling, else graph6.
std::string describe(const SimpleGraph& g, const std::optional<ChordSet>& chords);

}  // namespace ramchord
