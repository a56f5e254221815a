#include "ramchord/graph_io.hpp"

#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>

namespace ramchord {

namespace {

constexpr int kBias = 63;

void encode_size(std::string& out, long long n) {
  if (n <= 62) {
    out.push_back(static_cast<char>(n + kBias));
  } else if (n <= 258047) {
    out.push_back(126);
    for (int shift = 12; shift >= 0; shift -= 6) out.push_back(static_cast<char>(((n >> shift) & 0x3f) + kBias));
  } else {
    out.push_back(126);
    out.push_back(126);
    for (int shift = 30; shift >= 0; shift -= 6) out.push_back(static_cast<char>(((n >> shift) & 0x3f) + kBias));
  }
}

}  // namespace

std::string to_graph6(const SimpleGraph& g) {
  std::string out;
  const int n = g.order();
  encode_size(out, n);
  int bits = 0;
  int acc = 0;
  for (int j = 1; j < n; ++j) {
    for (int i = 0; i < j; ++i) {
      acc = (acc << 1) | (g.has_edge(i, j) ? 1 : 0);
      if (++bits == 6) {
        out.push_back(static_cast<char>(acc + kBias));
        bits = 0;
        acc = 0;
      }
    }
  }
  if (bits > 0) out.push_back(static_cast<char>((acc << (6 - bits)) + kBias));
  return out;
}

SimpleGraph from_graph6(std::string_view text) {
  if (text.starts_with(">>graph6<<")) text.remove_prefix(10);
  while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) text.remove_suffix(1);
  if (text.empty()) throw InvalidInput("empty graph6 string");
  for (char c : text) {
    if (c < kBias || c > 126) throw InvalidInput("invalid graph6 character");
  }
  std::size_t pos = 0;
  auto take6 = [&]() -> long long {
    if (pos >= text.size()) throw InvalidInput("truncated graph6 size field");
    return text[pos++] - kBias;
  };
  long long n = 0;
  if (text[0] != 126) {
    n = take6();
  } else if (text.size() > 1 && text[1] != 126) {
    ++pos;
    for (int i = 0; i < 3; ++i) n = (n << 6) | take6();
  } else {
    pos += 2;
    for (int i = 0; i < 6; ++i) n = (n << 6) | take6();
  }
  if (n > (1LL << 20)) throw InvalidInput("graph6 graph too large");
  const long long pairs = n * (n - 1) / 2;
  const std::size_t expected = pos + static_cast<std::size_t>((pairs + 5) / 6);
  if (text.size() != expected) throw InvalidInput("graph6 length does not match vertex count");
  SimpleGraph g(static_cast<int>(n));
  long long k = 0;
  for (int j = 1; j < n; ++j) {
    for (int i = 0; i < j; ++i, ++k) {
      const int byte = text[pos + static_cast<std::size_t>(k / 6)] - kBias;
      if (byte & (1 << (5 - k % 6))) g.add_edge(i, j);
    }
  }
  const int tail_bits = static_cast<int>((6 - pairs % 6) % 6);
  if (tail_bits > 0) {
    const int last = text.back() - kBias;
    if (last & ((1 << tail_bits) - 1)) throw InvalidInput("graph6 padding bits must be zero");
  }
  return g;
}

json graph_to_json(const SimpleGraph& g) {
  json edges = json::array();
  for (const Edge& e : g.edges()) edges.push_back({e.u, e.v});
  return {{"n", g.order()}, {"edges", edges}};
}

SimpleGraph graph_from_json(const json& j) {
  try {
    SimpleGraph g(j.at("n").get<int>());
    for (const auto& e : j.at("edges")) {
      if (!e.is_array() || e.size() != 2) throw InvalidInput("edge must be a pair");
      if (!g.add_edge(e[0].get<int>(), e[1].get<int>())) throw InvalidInput("duplicate edge in JSON graph");
    }
    return g;
  } catch (const json::exception& ex) {
    throw InvalidInput(std::string("malformed graph JSON: ") + ex.what());
  }
}

json chords_to_json(const ChordSet& d) {
  json chords = json::array();
  for (const Edge& e : d.chords()) chords.push_back({e.u, e.v});
  return {{"n", d.cycle_length()}, {"chords", chords}};
}

ChordSet chords_from_json(const json& j) {
  try {
    std::vector<Edge> chords;
    for (const auto& e : j.at("chords")) {
      if (!e.is_array() || e.size() != 2) throw InvalidInput("chord must be a pair");
      chords.emplace_back(e[0].get<int>(), e[1].get<int>());
    }
    return ChordSet(j.at("n").get<int>(), std::move(chords));
  } catch (const json::exception& ex) {
    throw InvalidInput(std::string("malformed chord JSON: ") + ex.what());
  }
}

json partition_to_json(const VertexPartition& p) { return p.parts; }

VertexPartition partition_from_json(const json& j) {
  VertexPartition p;
  p.parts = j.get<std::vector<std::vector<int>>>();
  return p;
}

std::optional<GraphSpec> parse_chord_shorthand(std::string_view text) {
  static const std::regex whole(R"(^C([0-9]+)((\+[0-9]+-[0-9]+)*)$)");
  static const std::regex chord(R"(\+([0-9]+)-([0-9]+))");
  const std::string s(text);
  std::smatch m;
  if (!std::regex_match(s, m, whole)) return std::nullopt;
  const int n = std::stoi(m[1].str());
  std::vector<Edge> chords;
  const std::string tail = m[2].str();
  for (auto it = std::sregex_iterator(tail.begin(), tail.end(), chord); it != std::sregex_iterator(); ++it) {
    chords.emplace_back(std::stoi((*it)[1].str()), std::stoi((*it)[2].str()));
  }
  ChordSet d(n, std::move(chords));
  GraphSpec spec{build_chorded_cycle(n, d), d, s};
  return spec;
}

GraphSpec parse_graph_spec(const std::string& text) {
  if (auto shorthand = parse_chord_shorthand(text)) return *shorthand;
  namespace fs = std::filesystem;
  std::error_code ec;
  if ((text.ends_with(".json") || text.ends_with(".g6")) && fs::exists(text, ec)) {
    std::ifstream in(text);
    std::stringstream buf;
    buf << in.rdbuf();
    if (text.ends_with(".g6")) {
      auto g = from_graph6(buf.str());
      return {g, std::nullopt, to_graph6(g)};
    }
    return parse_graph_spec(buf.str());
  }
  if (!text.empty() && text.front() == '{') {
    json j;
    try {
      j = json::parse(text);
    } catch (const json::exception& ex) {
      throw InvalidInput(std::string("malformed JSON graph: ") + ex.what());
    }
    if (j.contains("chords")) {
      ChordSet d = chords_from_json(j);
      return {build_chorded_cycle(d.cycle_length(), d), d, describe(SimpleGraph{}, d)};
    }
    auto g = graph_from_json(j);
    return {g, std::nullopt, to_graph6(g)};
  }
  std::string_view g6 = text;
  if (g6.starts_with("g6:")) g6.remove_prefix(3);
  auto g = from_graph6(g6);
  return {g, std::nullopt, to_graph6(g)};
}

std::string describe(const SimpleGraph& g, const std::optional<ChordSet>& chords) {
  if (!chords) return to_graph6(g);
  std::string out = "C" + std::to_string(chords->cycle_length());
  for (const Edge& e : chords->chords()) out += "+" + std::to_string(e.u) + "-" + std::to_string(e.v);
  return out;
}

}  // namespace ramchord
