#include "ramchord/chain_embedding.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "ramchord/graph_io.hpp"

namespace ramchord {

using nlohmann::json;

void ClusterChain::validate() const {
  const int l = ell();
  if (l < 2) throw InvalidInput("a cluster chain needs at least two clusters");
  const int n = host.order();
  std::vector<int> owner(n, -1);
  for (int j = 0; j < l; ++j) {
    if (clusters[j].size() != clusters[0].size()) throw InvalidInput("clusters must have equal sizes");
    if (clusters[j].empty()) throw InvalidInput("clusters must be nonempty");
    std::vector<int> sorted = clusters[j];
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw InvalidInput("cluster V_" + std::to_string(j + 1) + " repeats a vertex");
    }
    for (int v : clusters[j]) {
      if (v < 0 || v >= n) throw InvalidInput("cluster vertex " + std::to_string(v) + " is outside the host");
      if (owner[v] >= 0 && !(owner[v] == 0 && j == l - 1)) {
        throw InvalidInput("clusters V_" + std::to_string(owner[v] + 1) + " and V_" + std::to_string(j + 1) +
                           " share vertex " + std::to_string(v));
      }
      if (owner[v] < 0) owner[v] = j;
    }
  }
}

namespace {

std::vector<char> mask_of(int n, const std::vector<int>& set) {
  std::vector<char> m(n, 0);
  for (int v : set) m[v] = 1;
  return m;
}

int degree_into(const SimpleGraph& g, int v, const std::vector<char>& mask) {
  int c = 0;
  for (int w : g.neighbors(v)) c += mask[w];
  return c;
}

double set_density(const SimpleGraph& g, const std::vector<int>& a, const std::vector<int>& b) {
  if (a.empty() || b.empty()) return 0.0;
  const auto mb = mask_of(g.order(), b);
  long long e = 0;
  for (int v : a) e += degree_into(g, v, mb);
  return static_cast<double>(e) / (static_cast<double>(a.size()) * static_cast<double>(b.size()));
}

void validate_specs(const ClusterChain& chain, const std::vector<AnchoredPathSpec>& specs) {
  const auto in_first = mask_of(chain.host.order(), chain.clusters.front());
  const auto in_last = mask_of(chain.host.order(), chain.clusters.back());
  for (std::size_t i = 0; i < specs.size(); ++i) {
    const auto& s = specs[i];
    const std::string tag = "path " + std::to_string(i) + ": ";
    if (s.length < 1 || s.length % 2 == 0) throw InvalidInput(tag + "length must be odd");
    if (s.start < 0 || s.start >= chain.host.order() || !in_first[s.start]) throw InvalidInput(tag + "start anchor is not in V_1");
    if (s.end < 0 || s.end >= chain.host.order() || !in_last[s.end]) throw InvalidInput(tag + "end anchor is not in V_ell");
    if (s.start == s.end) throw InvalidInput(tag + "anchors must be distinct");
  }
}

/// Working sets and waypoint choice for one path.
class PathEmbedder {
 public:
  PathEmbedder(const ClusterChain& chain, const std::vector<char>& used, double eps, int index)
      : chain_(chain), used_(used), root_eps_(std::sqrt(eps)), index_(index) {
    const int l = chain.ell();
    work_.assign(l + 1, {});
    work_mask_.assign(l + 1, {});
    for (int j = 2; j <= l - 1; ++j) {
      for (int v : chain.clusters[j - 1])
        if (!used_[v]) work_[j].push_back(v);
      std::sort(work_[j].begin(), work_[j].end());
      work_mask_[j] = mask_of(chain.host.order(), work_[j]);
    }
    density_.assign(l + 1, 0.0);
    for (int j = 2; j + 1 <= l - 1; ++j) density_[j] = set_density(chain.host, work_[j], work_[j + 1]);
  }

  const std::vector<int>& working_set(int j) const { return work_[j]; }

  /// w_j is eps^(1/2)-typical toward the working sets on both sides that exist.
  bool typical(int v, int j) const {
    const int l = chain_.ell();
    if (j - 1 >= 2) {
      const double need = (density_[j - 1] - root_eps_) * static_cast<double>(work_[j - 1].size());
      if (degree_into(chain_.host, v, work_mask_[j - 1]) < need) return false;
    }
    if (j + 1 <= l - 1) {
      const double need = (density_[j] - root_eps_) * static_cast<double>(work_[j + 1].size());
      if (degree_into(chain_.host, v, work_mask_[j + 1]) < need) return false;
    }
    return true;
  }

  int first_typical(int j, int neighbour_of) const {
    for (int v : work_[j]) {
      if (neighbour_of >= 0 && !chain_.host.has_edge(neighbour_of, v)) continue;
      if (typical(v, j)) return v;
    }
    return -1;
  }

  std::vector<int> waypoints(const AnchoredPathSpec& spec) const {
    const int l = chain_.ell();
    std::vector<int> w(l + 1, -1);
    w[1] = spec.start;
    w[l] = spec.end;
    w[2] = first_typical(2, spec.start);
    if (w[2] < 0) throw ChainEmbedError(index_, 2, "no typical neighbour of the start anchor left");
    w[l - 1] = first_typical(l - 1, spec.end);
    if (w[l - 1] < 0) throw ChainEmbedError(index_, l - 1, "no typical neighbour of the end anchor left");
    for (int j = 3; j + 1 <= l - 2; j += 2) {
      for (int v : work_[j]) {
        if (!typical(v, j)) continue;
        const int partner = first_typical(j + 1, v);
        if (partner >= 0) {
          w[j] = v;
          w[j + 1] = partner;
          break;
        }
      }
      if (w[j] < 0) throw ChainEmbedError(index_, j, "no typical vertex with a typical partner in the next cluster");
    }
    return w;
  }

 private:
  const ClusterChain& chain_;
  const std::vector<char>& used_;
  double root_eps_;
  int index_;
  std::vector<std::vector<int>> work_;
  std::vector<std::vector<char>> work_mask_;
  std::vector<double> density_;
};

}  // namespace

ChainEmbedding chain_path_embed(const ClusterChain& chain, const std::vector<AnchoredPathSpec>& specs,
                                const ChunkAllocation& alloc, double eps, const ChainEmbedOptions& opts) {
  if (!(eps > 0.0 && eps < 1.0)) throw InvalidInput("eps must lie in (0,1)");
  chain.validate();
  validate_specs(chain, specs);
  const int l = chain.ell();
  if (alloc.ell != l) throw InvalidInput("allocation is for ell = " + std::to_string(alloc.ell) + ", chain has " + std::to_string(l));
  std::vector<int> lengths;
  for (const auto& s : specs) lengths.push_back(s.length);
  const int size = chain.cluster_size();
  if (auto bad = allocation_violations(alloc, lengths, size, eps); !bad.empty()) {
    throw InvalidInput("invalid allocation: " + bad.front());
  }

  ChainEmbedding out;
  const double q4 = std::pow(eps, 0.25);
  out.hypotheses.pairs_dense = true;
  for (int j = 1; j < l; ++j) {
    out.pair_reports.push_back(regularity_check(chain.host, chain.clusters[j - 1], chain.clusters[j], eps,
                                                RegularityMode::sampled, opts.regularity_samples, opts.seed + j));
    out.hypotheses.pairs_dense = out.hypotheses.pairs_dense && out.pair_reports.back().density.value() >= 2 * q4;
  }
  out.hypotheses.few_paths = specs.size() <= std::sqrt(eps) * size;
  long long total = 0;
  out.hypotheses.long_paths = true;
  for (int p : lengths) {
    total += p;
    out.hypotheses.long_paths = out.hypotheses.long_paths && p >= 3 * l;
  }
  out.hypotheses.total_fits = total <= (1.0 - 2.0 * q4) * (l - 2) * size;
  const auto first_typical = typical_vertices(chain.host, chain.clusters[0], chain.clusters[1], eps,
                                              out.pair_reports.front().density.value());
  const auto last_typical = typical_vertices(chain.host, chain.clusters[l - 1], chain.clusters[l - 2], eps,
                                             out.pair_reports.back().density.value());
  const auto first_mask = mask_of(chain.host.order(), first_typical);
  const auto last_mask = mask_of(chain.host.order(), last_typical);
  out.hypotheses.anchors_typical = true;
  for (const auto& s : specs) {
    out.hypotheses.anchors_typical = out.hypotheses.anchors_typical && first_mask[s.start] && last_mask[s.end];
  }

  std::vector<char> used(chain.host.order(), 0);
  for (int i = 0; i < static_cast<int>(specs.size()); ++i) {
    const auto& spec = specs[i];
    const auto& q = alloc.q[i];
    PathEmbedder pe(chain, used, eps, i);
    for (int j = 2; j <= l - 1; ++j) {
      const int w = static_cast<int>(pe.working_set(j).size());
      const int even_j = 2 * (j / 2);
      WorkingSetReport r;
      r.path = i;
      r.j = j;
      r.size = w;
      r.room = (1.0 - 2.0 * q4) * w > (q[even_j - 1] + 1) / 2.0;
      r.large = w > 4.0 * std::sqrt(eps) * size;
      r.balanced = j % 2 == 1 || w == static_cast<int>(pe.working_set(j + 1).size());
      out.working_sets.push_back(r);
    }
    const auto w = pe.waypoints(spec);
    std::vector<int> path{spec.start};
    for (int j = 1; j <= l - 1; ++j) {
      if (j % 2 == 1) {
        path.push_back(w[j + 1]);
        continue;
      }
      PairPathOptions po;
      po.max_steps = 200 * static_cast<std::size_t>(size);
      auto seg = pair_path_embed(chain.host, pe.working_set(j), pe.working_set(j + 1), w[j], w[j + 1], q[j - 1], po);
      if (!seg) {
        throw ChainEmbedError(i, j, "no path of length " + std::to_string(q[j - 1]) + " found across (V_" +
                                        std::to_string(j) + ", V_" + std::to_string(j + 1) + ")");
      }
      path.insert(path.end(), seg->begin() + 1, seg->end());
    }
    for (int v : path) used[v] = 1;
    out.paths.push_back(std::move(path));
    out.waypoints.emplace_back(w.begin() + 1, w.end());
  }
  return out;
}

std::vector<std::string> verify_chain_embedding(const ClusterChain& chain, const std::vector<AnchoredPathSpec>& specs,
                                                const ChunkAllocation& alloc, const ChainEmbedding& emb) {
  std::vector<std::string> out;
  if (emb.paths.size() != specs.size()) {
    out.push_back("expected " + std::to_string(specs.size()) + " paths, got " + std::to_string(emb.paths.size()));
    return out;
  }
  const int n = chain.host.order();
  const int l = chain.ell();
  std::vector<char> outer(n, 0);
  for (int v : chain.clusters.front()) outer[v] = 1;
  for (int v : chain.clusters.back()) outer[v] = 1;
  std::vector<int> interior_owner(n, -1);
  std::vector<char> anchor(n, 0);
  for (const auto& s : specs) anchor[s.start] = anchor[s.end] = 1;
  for (std::size_t i = 0; i < specs.size(); ++i) {
    const auto& p = emb.paths[i];
    const std::string tag = "path " + std::to_string(i) + ": ";
    if (static_cast<int>(p.size()) != specs[i].length + 1) {
      out.push_back(tag + "has " + std::to_string(static_cast<long long>(p.size()) - 1) + " edges, expected " +
                    std::to_string(specs[i].length));
      continue;
    }
    if (p.front() != specs[i].start || p.back() != specs[i].end) out.push_back(tag + "does not join its anchors");
    for (std::size_t t = 0; t + 1 < p.size(); ++t) {
      if (p[t] < 0 || p[t] >= n || p[t + 1] < 0 || p[t + 1] >= n || !chain.host.has_edge(p[t], p[t + 1])) {
        out.push_back(tag + "step " + std::to_string(t) + " is not a host edge");
      }
    }
    for (std::size_t t = 1; t + 1 < p.size(); ++t) {
      const int v = p[t];
      if (v < 0 || v >= n) continue;
      if (outer[v] || anchor[v]) out.push_back(tag + "interior vertex " + std::to_string(v) + " lies in V_1, V_ell or is an anchor");
      if (interior_owner[v] >= 0) {
        out.push_back(tag + "interior vertex " + std::to_string(v) + " already used by path " +
                      std::to_string(interior_owner[v]));
      }
      interior_owner[v] = static_cast<int>(i);
    }
    if (i < alloc.q.size() && static_cast<int>(alloc.q[i].size()) == l - 1) {
      std::size_t pos = 0;
      for (int j = 1; j <= l; ++j) {
        const auto mask = mask_of(n, chain.clusters[j - 1]);
        if (pos >= p.size() || !mask[p[pos]]) {
          out.push_back(tag + "waypoint " + std::to_string(j) + " is not in V_" + std::to_string(j));
        }
        if (j < l) pos += alloc.q[i][j - 1];
      }
    }
  }
  return out;
}

ClusterChain random_cluster_chain(std::uint64_t seed, int ell, int cluster_size, double density) {
  if (ell < 2 || cluster_size < 1) throw InvalidInput("need at least two nonempty clusters");
  if (!(density >= 0.0 && density <= 1.0)) throw InvalidInput("density must lie in [0,1]");
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(density);
  ClusterChain c;
  c.host = SimpleGraph(ell * cluster_size);
  for (int j = 0; j < ell; ++j) {
    std::vector<int> v(cluster_size);
    for (int t = 0; t < cluster_size; ++t) v[t] = j * cluster_size + t;
    c.clusters.push_back(std::move(v));
  }
  for (int j = 0; j + 1 < ell; ++j) {
    for (int u : c.clusters[j])
      for (int v : c.clusters[j + 1])
        if (coin(rng)) c.host.add_edge(u, v);
  }
  return c;
}

std::vector<AnchoredPathSpec> typical_anchor_specs(const ClusterChain& chain, const std::vector<int>& lengths,
                                                   double eps) {
  chain.validate();
  const int l = chain.ell();
  const auto& first = chain.clusters[0];
  const auto& last = chain.clusters[l - 1];
  auto starts = typical_vertices(chain.host, first, chain.clusters[1], eps, density(chain.host, first, chain.clusters[1]).value());
  auto ends = typical_vertices(chain.host, last, chain.clusters[l - 2], eps, density(chain.host, last, chain.clusters[l - 2]).value());
  std::sort(starts.begin(), starts.end());
  std::sort(ends.begin(), ends.end());
  std::vector<AnchoredPathSpec> specs;
  std::size_t si = 0;
  std::size_t ei = 0;
  for (int p : lengths) {
    if (si == starts.size()) throw InvalidInput("not enough typical vertices in V_1");
    const int a = starts[si++];
    while (ei < ends.size() && ends[ei] == a) ++ei;
    if (ei == ends.size()) throw InvalidInput("not enough typical vertices in V_ell");
    specs.push_back({p, a, ends[ei++]});
  }
  return specs;
}

json chain_to_json(const ClusterChain& chain) { return json{{"host", graph_to_json(chain.host)}, {"clusters", chain.clusters}}; }

ClusterChain chain_from_json(const json& j) {
  ClusterChain c;
  try {
    c.host = graph_from_json(j.at("host"));
    c.clusters = j.at("clusters").get<std::vector<std::vector<int>>>();
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("malformed cluster chain JSON: ") + e.what());
  }
  c.validate();
  return c;
}

json chain_embedding_to_json(const ChainEmbedding& emb) {
  json reports = json::array();
  for (const auto& r : emb.pair_reports) reports.push_back(regularity_to_json(r));
  json sets = json::array();
  for (const auto& w : emb.working_sets) {
    sets.push_back({{"path", w.path}, {"j", w.j}, {"size", w.size}, {"room", w.room}, {"large", w.large}, {"balanced", w.balanced}});
  }
  const auto& h = emb.hypotheses;
  return json{{"paths", emb.paths},
              {"waypoints", emb.waypoints},
              {"pair_reports", reports},
              {"hypotheses",
               {{"pairs_dense", h.pairs_dense},
                {"few_paths", h.few_paths},
                {"long_paths", h.long_paths},
                {"total_fits", h.total_fits},
                {"anchors_typical", h.anchors_typical}}},
              {"working_sets", sets}};
}

}  // namespace ramchord
