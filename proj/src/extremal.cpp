#include "ramchord/extremal.hpp"

#include <algorithm>
#include <numeric>

namespace ramchord {

using nlohmann::json;

const char* to_string(ExtremalKind kind) {
  switch (kind) {
    case ExtremalKind::even_maxcut: return "even_maxcut";
    case ExtremalKind::odd_maxcut_plus_vertex: return "odd_maxcut_plus_vertex";
    case ExtremalKind::k_part: return "k_part";
  }
  return "?";
}

ExtremalKind extremal_kind_from_string(const std::string& name) {
  if (name == "even_maxcut" || name == "even") return ExtremalKind::even_maxcut;
  if (name == "odd_maxcut_plus_vertex" || name == "odd") return ExtremalKind::odd_maxcut_plus_vertex;
  if (name == "k_part" || name == "kpart") return ExtremalKind::k_part;
  throw InvalidInput("unknown construction kind '" + name + "'");
}

const char* to_string(CertifyMode mode) { return mode == CertifyMode::search ? "search" : "structural"; }

ColoredCompleteGraph clique_block_coloring(const std::vector<int>& block_sizes) {
  int n = 0;
  for (int s : block_sizes) {
    if (s < 0) throw InvalidInput("negative block size");
    n += s;
  }
  ColoredCompleteGraph c(n, Color::blue);
  int start = 0;
  for (int s : block_sizes) {
    for (int u = start; u < start + s; ++u)
      for (int v = u + 1; v < start + s; ++v) c.set_color(u, v, Color::red);
    start += s;
  }
  return c;
}

ColoredCompleteGraph even_extremal_coloring(int n) {
  if (n <= 4 || n % 2 != 0) throw InvalidInput("even construction needs an even n > 4");
  return clique_block_coloring({n - 1, n - 1});
}

ColoredCompleteGraph odd_extremal_coloring(int n) {
  if (n <= 4 || n % 2 == 0) throw InvalidInput("odd construction needs an odd n > 4");
  return clique_block_coloring({n - 1, n - 1, 1});
}

ColoredCompleteGraph k_almost_extremal_coloring(int n, int k) {
  if (n % 2 == 0 || n <= 4) throw InvalidInput("k-part construction needs an odd n > 4");
  if (k < 1) throw InvalidInput("k-part construction needs k >= 1");
  if (n <= k) throw InvalidInput("k-part construction needs n > k");
  return clique_block_coloring({n - 1, n - 1, k});
}

ColoredCompleteGraph build_extremal(const ExtremalSpec& spec) {
  switch (spec.kind) {
    case ExtremalKind::even_maxcut: return even_extremal_coloring(spec.n);
    case ExtremalKind::odd_maxcut_plus_vertex: return odd_extremal_coloring(spec.n);
    case ExtremalKind::k_part: return k_almost_extremal_coloring(spec.n, spec.k);
  }
  throw InvalidInput("unknown construction kind");
}

std::optional<std::vector<int>> bounded_class_coloring(const SimpleGraph& h,
                                                       const std::vector<int>& capacities) {
  const int n = h.order();
  const int classes = static_cast<int>(capacities.size());
  if (std::accumulate(capacities.begin(), capacities.end(), 0) < n) return std::nullopt;

  // Breadth-first from the highest-degree vertex of each component, so that
  // most vertices meet an already coloured neighbour.
  std::vector<int> order;
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  std::vector<int> by_degree(static_cast<std::size_t>(n));
  std::iota(by_degree.begin(), by_degree.end(), 0);
  std::stable_sort(by_degree.begin(), by_degree.end(),
                   [&](int a, int b) { return h.degree(a) > h.degree(b); });
  for (int root : by_degree) {
    if (seen[root]) continue;
    seen[root] = 1;
    std::size_t head = order.size();
    order.push_back(root);
    while (head < order.size()) {
      const int x = order[head++];
      for (int y : h.neighbors(x)) {
        if (!seen[y]) {
          seen[y] = 1;
          order.push_back(y);
        }
      }
    }
  }

  std::vector<int> color(static_cast<std::size_t>(n), -1);
  std::vector<int> used(static_cast<std::size_t>(classes), 0);

  auto allowed = [&](int v, int c) {
    if (used[c] >= capacities[c]) return false;
    for (int w : h.neighbors(v))
      if (color[w] == c) return false;
    return true;
  };
  auto has_option = [&](int v) {
    for (int c = 0; c < classes; ++c)
      if (allowed(v, c)) return true;
    return false;
  };

  auto rec = [&](auto&& self, std::size_t i) -> bool {
    if (i == order.size()) return true;
    const int v = order[i];
    for (int c = 0; c < classes; ++c) {
      // Empty classes of equal capacity are interchangeable.
      bool duplicate = false;
      for (int e = 0; e < c && !duplicate; ++e)
        duplicate = used[e] == 0 && used[c] == 0 && capacities[e] == capacities[c];
      if (duplicate || !allowed(v, c)) continue;
      color[v] = c;
      ++used[c];
      bool ok = true;
      for (int w : h.neighbors(v)) {
        if (color[w] == -1 && !has_option(w)) {
          ok = false;
          break;
        }
      }
      if (ok && self(self, i + 1)) return true;
      --used[c];
      color[v] = -1;
    }
    return false;
  };
  if (!rec(rec, 0)) return std::nullopt;
  return color;
}

namespace {

std::string sizes_text(const std::vector<int>& sizes) {
  std::string s = "[";
  for (std::size_t i = 0; i < sizes.size(); ++i) s += (i ? "," : "") + std::to_string(sizes[i]);
  return s + "]";
}

/// Assigns each component to a block index with room for it, or none.
std::optional<std::vector<int>> pack_components(const std::vector<int>& comp_sizes,
                                                const std::vector<int>& capacities) {
  std::vector<int> order(comp_sizes.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return comp_sizes[a] > comp_sizes[b]; });
  std::vector<int> room = capacities;
  std::vector<int> where(comp_sizes.size(), -1);
  auto rec = [&](auto&& self, std::size_t i) -> bool {
    if (i == order.size()) return true;
    const int c = order[i];
    for (std::size_t b = 0; b < room.size(); ++b) {
      bool tried = false;
      for (std::size_t e = 0; e < b && !tried; ++e) tried = room[e] == room[b];
      if (tried || room[b] < comp_sizes[c]) continue;
      room[b] -= comp_sizes[c];
      where[c] = static_cast<int>(b);
      if (self(self, i + 1)) return true;
      room[b] += comp_sizes[c];
    }
    return false;
  };
  if (!rec(rec, 0)) return std::nullopt;
  return where;
}

ColorReport search_color(const ColoredCompleteGraph& c, const SimpleGraph& h, Color col) {
  ColorReport r;
  if (auto emb = find_subgraph(h, c.subgraph(col))) {
    r.contains = true;
    r.reason = std::string("subgraph search found a ") + to_string(col) + " copy";
    r.copy = std::move(*emb);
  } else {
    r.reason = std::string("exhaustive subgraph search: no ") + to_string(col) + " copy";
  }
  return r;
}

}  // namespace

LowerBoundCertificate certify_lower_bound(const ColoredCompleteGraph& c, const SimpleGraph& h,
                                          CertifyMode mode) {
  LowerBoundCertificate cert;
  cert.mode = mode;
  cert.n = c.order();

  if (mode == CertifyMode::search) {
    cert.red = search_color(c, h, Color::red);
    cert.blue = search_color(c, h, Color::blue);
    cert.verdict = !cert.red.contains && !cert.blue.contains;
    return cert;
  }

  const SimpleGraph red = c.subgraph(Color::red);
  const auto blocks = connected_components(red);
  if (blocks.size() < 2 || blocks.size() > 3)
    throw InvalidInput("structural mode needs a red graph made of two or three cliques");
  for (const auto& b : blocks) {
    std::size_t edges = 0;
    for (int v : b) edges += static_cast<std::size_t>(red.degree(v));
    if (edges != b.size() * (b.size() - 1)) throw InvalidInput("structural mode needs every red component to be a clique");
  }
  for (const auto& b : blocks) cert.blocks.push_back(static_cast<int>(b.size()));

  // Red: a disjoint union of cliques holds H iff H's components pack into them.
  const auto comps = connected_components(h);
  std::vector<int> comp_sizes;
  for (const auto& comp : comps) comp_sizes.push_back(static_cast<int>(comp.size()));
  if (auto where = pack_components(comp_sizes, cert.blocks)) {
    Embedding emb;
    emb.map.assign(static_cast<std::size_t>(h.order()), -1);
    std::vector<std::size_t> next(blocks.size(), 0);
    for (std::size_t i = 0; i < comps.size(); ++i) {
      const int b = (*where)[i];
      for (int v : comps[i]) emb.map[v] = blocks[b][next[b]++];
    }
    cert.red.contains = true;
    cert.red.reason = "components of H pack into red cliques of sizes " + sizes_text(cert.blocks);
    cert.red.copy = std::move(emb);
  } else {
    const int largest_comp = comp_sizes.empty() ? 0 : *std::max_element(comp_sizes.begin(), comp_sizes.end());
    const int largest_block = *std::max_element(cert.blocks.begin(), cert.blocks.end());
    if (largest_comp > largest_block) {
      cert.red.reason = "largest red component has " + std::to_string(largest_block) +
                        " vertices, H has a component of " + std::to_string(largest_comp);
    } else {
      cert.red.reason = "components of H do not pack into red cliques of sizes " + sizes_text(cert.blocks);
    }
  }

  // Blue: complete multipartite with the red cliques as parts.
  if (auto colouring = bounded_class_coloring(h, cert.blocks)) {
    Embedding emb;
    emb.map.assign(static_cast<std::size_t>(h.order()), -1);
    std::vector<std::size_t> next(blocks.size(), 0);
    for (int v = 0; v < h.order(); ++v) {
      const int b = (*colouring)[v];
      emb.map[v] = blocks[b][next[b]++];
    }
    cert.blue.contains = true;
    cert.blue.reason = "H has a proper colouring with class sizes within " + sizes_text(cert.blocks);
    cert.blue.copy = std::move(emb);
  } else {
    cert.blue.reason = "H has no proper colouring with class sizes within " + sizes_text(cert.blocks) +
                       ", so blue K_" + sizes_text(cert.blocks) + " holds no copy";
  }
  cert.verdict = !cert.red.contains && !cert.blue.contains;
  return cert;
}

namespace {

json report_to_json(const ColorReport& r) {
  json out = {{"contains", r.contains}, {"reason", r.reason}};
  if (r.copy) out["copy"] = r.copy->map;
  return out;
}

}  // namespace

json certificate_to_json(const LowerBoundCertificate& cert) {
  json out = {{"verdict", cert.verdict},
              {"mode", to_string(cert.mode)},
              {"N", cert.n},
              {"red_reason", cert.red.reason},
              {"blue_reason", cert.blue.reason},
              {"red", report_to_json(cert.red)},
              {"blue", report_to_json(cert.blue)}};
  if (!cert.blocks.empty()) out["blocks"] = cert.blocks;
  return out;
}

std::optional<ConstructionBound> construction_lower_bound(const SimpleGraph& h, int k_max) {
  const int n = h.order();
  if (n < 3 || bipartition(h).partition) return std::nullopt;
  const auto index = almost_bipartite_index(h, k_max);
  const int k = index ? index->k : k_max + 1;

  ConstructionBound b;
  b.blocks = {n - 1, n - 1};
  if (k > 1) b.blocks.push_back(k - 1);
  if (b.blocks.size() == 2) b.name = n % 2 == 0 ? "even_maxcut" : "maxcut";
  else b.name = (k == 2 && n % 2 == 1) ? "odd_maxcut_plus_vertex" : "k_part";
  b.coloring = clique_block_coloring(b.blocks);
  b.certificate = certify_lower_bound(b.coloring, h, CertifyMode::structural);
  if (!b.certificate.verdict) return std::nullopt;
  b.lower_bound = b.coloring.order() + 1;
  return b;
}

json construction_bound_to_json(const ConstructionBound& b) {
  return {{"construction", b.name},
          {"blocks", b.blocks},
          {"N", b.coloring.order()},
          {"lower_bound", b.lower_bound},
          {"certificate", certificate_to_json(b.certificate)}};
}

}  // namespace ramchord
