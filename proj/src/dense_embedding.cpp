#include "ramchord/dense_embedding.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <deque>
#include <numeric>

namespace ramchord {

using nlohmann::json;

namespace {

class Bitset {
 public:
  explicit Bitset(int n = 0) : words_((n + 63) / 64, 0) {}

  void set(int i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void reset(int i) { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
  bool test(int i) const { return (words_[i >> 6] >> (i & 63)) & 1; }

  Bitset& operator&=(const Bitset& o) {
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] &= o.words_[w];
    return *this;
  }
  void and_not(const Bitset& o) {
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] &= ~o.words_[w];
  }
  int count() const {
    int c = 0;
    for (auto w : words_) c += std::popcount(w);
    return c;
  }
  template <class F>
  void for_each(F&& f) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      for (std::uint64_t bits = words_[w]; bits; bits &= bits - 1) f(static_cast<int>(w * 64 + std::countr_zero(bits)));
    }
  }

 private:
  std::vector<std::uint64_t> words_;
};

std::vector<int> distances_from(const SimpleGraph& g, int s) {
  std::vector<int> dist(g.order(), -1);
  std::deque<int> q{s};
  dist[s] = 0;
  while (!q.empty()) {
    const int v = q.front();
    q.pop_front();
    for (int w : g.neighbors(v)) {
      if (dist[w] < 0) {
        dist[w] = dist[v] + 1;
        q.push_back(w);
      }
    }
  }
  return dist;
}

class DenseSearch {
 public:
  DenseSearch(const SimpleGraph& pattern, const SimpleGraph& host, const DenseEmbedOptions& opts)
      : j_(pattern), f_(host), opts_(opts), rows_(host.order(), Bitset(host.order())), used_(host.order()),
        map_(pattern.order(), -1), high_(host.order(), 0), unused_high_(host.order(), 0) {
    const int n = f_.order();
    for (int v = 0; v < n; ++v) {
      for (int w : f_.neighbors(v)) rows_[v].set(w);
      high_[v] = f_.degree(v) >= (1.0 - 2.0 * opts_.eps) * n;
    }
    for (int v = 0; v < n; ++v) {
      for (int w : f_.neighbors(v)) unused_high_[v] += high_[w];
    }
  }

  std::optional<Embedding> run() {
    if (j_.order() > f_.order()) return std::nullopt;
    if (j_.order() == f_.order()) {
      place_anchors();
      if (extend()) return Embedding{map_};
      for (int x = 0; x < j_.order(); ++x) {
        if (map_[x] >= 0) unplace(x);
      }
    }
    if (!extend()) return std::nullopt;
    return Embedding{map_};
  }

 private:
  void place(int x, int v) {
    map_[x] = v;
    used_.set(v);
    ++placed_;
    if (high_[v]) {
      for (int w : f_.neighbors(v)) --unused_high_[w];
    }
  }

  void unplace(int x) {
    const int v = map_[x];
    map_[x] = -1;
    used_.reset(v);
    --placed_;
    if (high_[v]) {
      for (int w : f_.neighbors(v)) ++unused_high_[w];
    }
  }

  /// Unused host vertices joined to the images of every placed neighbour of x.
  Bitset candidates(int x) const {
    Bitset c(f_.order());
    bool constrained = false;
    for (int y : j_.neighbors(x)) {
      if (map_[y] < 0) continue;
      if (!constrained) {
        c = rows_[map_[y]];
        constrained = true;
      } else {
        c &= rows_[map_[y]];
      }
    }
    if (!constrained) {
      for (int v = 0; v < f_.order(); ++v) c.set(v);
    }
    c.and_not(used_);
    return c;
  }

  void place_anchors() {
    std::vector<int> low;
    for (int v = 0; v < f_.order(); ++v) {
      if (!high_[v]) low.push_back(v);
    }
    std::stable_sort(low.begin(), low.end(), [&](int a, int b) { return f_.degree(a) < f_.degree(b); });
    std::vector<int> order(j_.order());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return j_.degree(a) < j_.degree(b); });
    std::vector<char> blocked(j_.order(), 0);
    std::size_t next = 0;
    for (int x : order) {
      if (next == low.size()) break;
      if (blocked[x] || j_.degree(x) > f_.degree(low[next])) continue;
      place(x, low[next++]);
      const auto dist = distances_from(j_, x);
      for (int y = 0; y < j_.order(); ++y) {
        if (dist[y] >= 0 && dist[y] <= 2) blocked[y] = 1;
      }
    }
  }

  int choose() const {
    int best = -1;
    int best_count = 0;
    int best_placed = 0;
    for (int x = 0; x < j_.order(); ++x) {
      if (map_[x] >= 0) continue;
      int placed_nb = 0;
      for (int y : j_.neighbors(x)) placed_nb += map_[y] >= 0;
      if (placed_nb == 0) continue;
      const int c = candidates(x).count();
      if (best < 0 || c < best_count || (c == best_count && placed_nb > best_placed)) {
        best = x;
        best_count = c;
        best_placed = placed_nb;
      }
    }
    if (best >= 0) return best;
    for (int x = 0; x < j_.order(); ++x) {
      if (map_[x] < 0 && (best < 0 || j_.degree(x) > j_.degree(best))) best = x;
    }
    return best;
  }

  bool neighbours_still_placeable(int x) const {
    for (int y : j_.neighbors(x)) {
      if (map_[y] < 0 && candidates(y).count() == 0) return false;
    }
    return true;
  }

  bool extend() {
    if (placed_ == j_.order()) return true;
    if (steps_ > opts_.max_steps) return false;
    const int x = choose();
    std::vector<int> cand;
    candidates(x).for_each([&](int v) { cand.push_back(v); });
    std::stable_sort(cand.begin(), cand.end(), [&](int a, int b) { return unused_high_[a] > unused_high_[b]; });
    for (int v : cand) {
      if (++steps_ > opts_.max_steps) return false;
      place(x, v);
      if (neighbours_still_placeable(x) && extend()) return true;
      unplace(x);
    }
    return false;
  }

  const SimpleGraph& j_;
  const SimpleGraph& f_;
  DenseEmbedOptions opts_;
  std::vector<Bitset> rows_;
  Bitset used_;
  std::vector<int> map_;
  std::vector<char> high_;
  std::vector<int> unused_high_;
  int placed_ = 0;
  std::size_t steps_ = 0;
};

void require_vertices(const std::vector<int>& set, int n, const char* name) {
  for (int v : set) {
    if (v < 0 || v >= n) throw InvalidInput(std::string(name) + " contains vertex " + std::to_string(v) + " outside the host");
  }
}

std::vector<int> sorted_copy(std::vector<int> v) {
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

std::optional<Embedding> greedy_dense_embed(const SimpleGraph& pattern, const SimpleGraph& host,
                                            const DenseEmbedOptions& opts) {
  return DenseSearch(pattern, host, opts).run();
}

TwoSidedResult two_sided_greedy_embed(const SimpleGraph& pattern, const VertexPartition& parts,
                                      const SimpleGraph& host, const std::vector<int>& a_prime,
                                      const std::vector<int>& b_prime, int deg_defect,
                                      const std::vector<int>& special) {
  const int n = host.order();
  if (parts.parts.size() != 2 && parts.parts.size() != 3) throw InvalidInput("pattern partition needs parts X, Y and optionally Z");
  if (deg_defect < 0) throw InvalidInput("deg_defect must be non-negative");
  const auto labels = parts.labels(pattern.order());
  for (int x = 0; x < pattern.order(); ++x) {
    if (labels[x] < 0) throw InvalidInput("pattern vertex " + std::to_string(x) + " is in no part");
  }
  if (!parts.is_proper_for(pattern)) throw InvalidInput("pattern partition is not proper");
  const auto& xs = parts.parts[0];
  const auto& ys = parts.parts[1];
  static const std::vector<int> kNone;
  const auto& zs = parts.parts.size() == 3 ? parts.parts[2] : kNone;
  require_vertices(a_prime, n, "A'");
  require_vertices(b_prime, n, "B'");
  require_vertices(special, n, "S");
  std::vector<char> owner(n, 0);
  for (const auto* set : {&a_prime, &b_prime, &special}) {
    for (int v : *set) {
      if (owner[v]++) throw InvalidInput("A', B' and S must be pairwise disjoint sets");
    }
  }
  if (xs.size() > b_prime.size()) throw InvalidInput("|X| exceeds |B'|");
  if (ys.size() > a_prime.size()) throw InvalidInput("|Y| exceeds |A'|");
  if (zs.size() > special.size()) throw InvalidInput("|Z| exceeds |S|");

  TwoSidedResult result;
  std::vector<char> in_a(n, 0);
  for (int v : a_prime) in_a[v] = 1;
  std::vector<char> in_b(n, 0);
  for (int v : b_prime) in_b[v] = 1;
  int defect_to_b = 0;
  for (const auto* set : {&b_prime, &special}) {
    for (int v : *set) {
      int hits = 0;
      for (int w : host.neighbors(v)) hits += in_a[w];
      result.measured_defect = std::max(result.measured_defect, static_cast<int>(a_prime.size()) - hits);
    }
  }
  for (int v : special) {
    int hits = 0;
    for (int w : host.neighbors(v)) hits += in_b[w];
    defect_to_b = std::max(defect_to_b, static_cast<int>(b_prime.size()) - hits);
  }
  const long long delta = pattern.max_degree();
  const long long ys_size = static_cast<long long>(ys.size());
  const long long xs_size = static_cast<long long>(xs.size());
  bool guaranteed = result.measured_defect <= deg_defect &&
                    static_cast<long long>(a_prime.size()) - delta * deg_defect > ys_size - 1;
  if (!zs.empty()) {
    guaranteed = guaranteed && defect_to_b <= deg_defect &&
                 static_cast<long long>(b_prime.size()) - delta * deg_defect > xs_size - 1;
  }
  result.guaranteed = guaranteed;

  std::vector<int> map(pattern.order(), -1);
  std::vector<char> used(n, 0);
  auto fits = [&](int x, int v) {
    if (used[v]) return false;
    for (int y : pattern.neighbors(x)) {
      if (map[y] >= 0 && !host.has_edge(map[y], v)) return false;
    }
    return true;
  };
  auto embed_into = [&](const std::vector<int>& sources, const std::vector<int>& targets) {
    const auto pool = sorted_copy(targets);
    for (int x : sources) {
      auto it = std::find_if(pool.begin(), pool.end(), [&](int v) { return fits(x, v); });
      if (it == pool.end()) return false;
      map[x] = *it;
      used[*it] = 1;
    }
    return true;
  };
  if (embed_into(zs, special) && embed_into(xs, b_prime) && embed_into(ys, a_prime)) {
    result.embedding = Embedding{map};
  }
  return result;
}

TwoSidedResult two_sided_greedy_embed(const SimpleGraph& pattern, const VertexPartition& parts,
                                      const ColoredCompleteGraph& host, Color color,
                                      const std::vector<int>& a_prime, const std::vector<int>& b_prime,
                                      int deg_defect, const std::vector<int>& special) {
  return two_sided_greedy_embed(pattern, parts, host.subgraph(color), a_prime, b_prime, deg_defect, special);
}

MultiColoredGraph MultiColoredGraph::from_coloring(const ColoredCompleteGraph& c) {
  MultiColoredGraph g;
  g.red = c.subgraph(Color::red);
  g.blue = c.subgraph(Color::blue);
  return g;
}

CleanupResult stability_cleanup(const MultiColoredGraph& g, const std::vector<int>& v1,
                                const std::vector<int>& v2, double beta, Color majority) {
  if (!(beta > 0.0 && beta < 1.0)) throw InvalidInput("beta must lie in (0,1)");
  if (g.red.order() != g.blue.order()) throw InvalidInput("colour classes disagree on the vertex count");
  const int n = g.order();
  require_vertices(v1, n, "V1");
  require_vertices(v2, n, "V2");
  std::vector<int> side(n, 0);
  for (int v : v1) {
    if (side[v]) throw InvalidInput("V1 repeats a vertex");
    side[v] = 1;
  }
  for (int v : v2) {
    if (side[v]) throw InvalidInput("V1 and V2 must be disjoint");
    side[v] = 2;
  }
  const SimpleGraph& major = g.of(majority);
  const SimpleGraph& minor = g.of(other(majority));

  CleanupResult r;
  r.threshold = std::pow(beta, 0.1);
  const double s1 = static_cast<double>(v1.size());
  const double s2 = static_cast<double>(v2.size());
  auto count_into = [&](const SimpleGraph& h, int v, int target) {
    int c = 0;
    for (int w : h.neighbors(v)) c += side[w] == target;
    return c;
  };
  for (int v : sorted_copy(v1)) {
    const int inside = count_into(minor, v, 1);
    const int cross = count_into(major, v, 2);
    r.wrong_inside += inside;
    r.wrong_cross += cross;
    if (inside >= r.threshold * s1) {
      r.removed_inside.push_back(v);
    } else if (cross >= r.threshold * s2) {
      r.removed_cross.push_back(v);
    } else {
      r.a.push_back(v);
    }
  }
  r.wrong_inside /= 2;
  for (int v : sorted_copy(v2)) {
    if (count_into(major, v, 1) >= r.threshold * s1) {
      r.removed_v2.push_back(v);
    } else {
      r.b.push_back(v);
    }
  }
  const double b5 = std::pow(beta, 0.2);
  r.hypotheses_hold = r.wrong_inside <= b5 * s1 * s1 && r.wrong_cross <= b5 * s1 * s2;
  r.size_bound_holds = r.a.size() >= (1.0 - 3.0 * r.threshold) * s1 && r.b.size() >= (1.0 - r.threshold) * s2;
  return r;
}

json two_sided_to_json(const TwoSidedResult& r) {
  json j{{"found", r.embedding.has_value()}, {"measured_defect", r.measured_defect}, {"guaranteed", r.guaranteed}};
  j["map"] = r.embedding ? json(r.embedding->map) : json(nullptr);
  return j;
}

json cleanup_to_json(const CleanupResult& r) {
  return json{{"A", r.a},
              {"B", r.b},
              {"removed_inside", r.removed_inside},
              {"removed_cross", r.removed_cross},
              {"removed_v2", r.removed_v2},
              {"threshold", r.threshold},
              {"wrong_inside", r.wrong_inside},
              {"wrong_cross", r.wrong_cross},
              {"hypotheses_hold", r.hypotheses_hold},
              {"size_bound_holds", r.size_bound_holds}};
}

}  // namespace ramchord
