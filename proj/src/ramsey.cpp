#include "ramchord/ramsey.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <mutex>
#include <thread>

#include "ramchord/graph_io.hpp"

namespace ramchord {

using nlohmann::json;

const char* to_string(Color c) { return c == Color::red ? "red" : "blue"; }

ColoredCompleteGraph::ColoredCompleteGraph(int n, Color fill) : n_(n) {
  if (n < 0) throw InvalidInput("negative vertex count");
  colors_.assign(static_cast<std::size_t>(n) * (n > 0 ? n - 1 : 0) / 2, static_cast<std::uint8_t>(fill));
}

ColoredCompleteGraph ColoredCompleteGraph::from_red_graph(const SimpleGraph& red) {
  ColoredCompleteGraph c(red.order(), Color::blue);
  for (const Edge& e : red.edges()) c.set_color(e.u, e.v, Color::red);
  return c;
}

std::size_t ColoredCompleteGraph::index(int u, int v) const {
  if (u > v) std::swap(u, v);
  if (u < 0 || v >= n_ || u == v) throw InvalidInput("invalid vertex pair for K_" + std::to_string(n_));
  // pairs (0,1..n-1), (1,2..n-1), ...
  const auto uu = static_cast<std::size_t>(u);
  return uu * (2 * static_cast<std::size_t>(n_) - uu - 1) / 2 + static_cast<std::size_t>(v - u - 1);
}

Color ColoredCompleteGraph::color(int u, int v) const { return static_cast<Color>(colors_[index(u, v)]); }

void ColoredCompleteGraph::set_color(int u, int v, Color c) { colors_[index(u, v)] = static_cast<std::uint8_t>(c); }

SimpleGraph ColoredCompleteGraph::subgraph(Color c) const {
  SimpleGraph g(n_);
  for (const Edge& e : edges_of(c)) g.add_edge(e.u, e.v);
  return g;
}

std::vector<Edge> ColoredCompleteGraph::edges_of(Color c) const {
  std::vector<Edge> out;
  std::size_t k = 0;
  for (int u = 0; u < n_; ++u)
    for (int v = u + 1; v < n_; ++v, ++k)
      if (colors_[k] == static_cast<std::uint8_t>(c)) out.emplace_back(u, v);
  return out;
}

json coloring_to_json(const ColoredCompleteGraph& c) {
  json red = json::array();
  for (const Edge& e : c.edges_of(Color::red)) red.push_back({e.u, e.v});
  return {{"N", c.order()}, {"red_edges", red}};
}

ColoredCompleteGraph coloring_from_json(const json& j) {
  try {
    ColoredCompleteGraph c(j.at("N").get<int>(), Color::blue);
    for (const auto& e : j.at("red_edges")) {
      if (!e.is_array() || e.size() != 2) throw InvalidInput("red edge must be a pair");
      c.set_color(e[0].get<int>(), e[1].get<int>(), Color::red);
    }
    return c;
  } catch (const json::exception& ex) {
    throw InvalidInput(std::string("malformed colouring JSON: ") + ex.what());
  }
}

std::string coloring_to_hex(const ColoredCompleteGraph& c) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  int acc = 0;
  int bits = 0;
  for (int u = 0; u < c.order(); ++u) {
    for (int v = u + 1; v < c.order(); ++v) {
      acc = (acc << 1) | (c.color(u, v) == Color::red ? 1 : 0);
      if (++bits == 4) {
        out.push_back(kDigits[acc]);
        acc = 0;
        bits = 0;
      }
    }
  }
  if (bits > 0) out.push_back(kDigits[acc << (4 - bits)]);
  return out;
}

ColoredCompleteGraph coloring_from_hex(int n, const std::string& hex) {
  ColoredCompleteGraph c(n, Color::blue);
  const std::size_t pairs = static_cast<std::size_t>(n) * (n > 0 ? n - 1 : 0) / 2;
  if (hex.size() != (pairs + 3) / 4) throw InvalidInput("hex colouring has the wrong length");
  std::size_t k = 0;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v, ++k) {
      const char ch = hex[k / 4];
      int digit = 0;
      if (ch >= '0' && ch <= '9') digit = ch - '0';
      else if (ch >= 'a' && ch <= 'f') digit = ch - 'a' + 10;
      else if (ch >= 'A' && ch <= 'F') digit = ch - 'A' + 10;
      else throw InvalidInput("invalid hex digit");
      if (digit & (8 >> (k % 4))) c.set_color(u, v, Color::red);
    }
  }
  return c;
}

std::optional<MonoCopy> mono_copy(const ColoredCompleteGraph& c, const SimpleGraph& pattern) {
  for (Color col : {Color::red, Color::blue}) {
    if (auto emb = find_subgraph(pattern, c.subgraph(col))) return MonoCopy{col, std::move(*emb)};
  }
  return std::nullopt;
}

json stats_to_json(const SearchStats& s) {
  return {{"nodes", s.nodes},
          {"prunes", s.prunes},
          {"seconds", s.seconds},
          {"split_edges", s.split_edges},
          {"branches", s.branches},
          {"branches_resumed", s.branches_resumed},
          {"branches_completed", s.branches_completed}};
}

json verdict_to_json(const ArrowingVerdict& v, const SimpleGraph& pattern) {
  json out = {{"N", v.n}, {"H", to_graph6(pattern)}, {"arrows", v.arrows}};
  if (v.witness) {
    out["witness"] = coloring_to_json(*v.witness);
    out["witness_hex"] = coloring_to_hex(*v.witness);
  } else {
    out["witness"] = nullptr;
  }
  return out;
}

namespace {

using Mask = std::uint64_t;
constexpr int kMaxVertices = 64;
constexpr std::uint64_t kCheckInterval = 1024;
constexpr std::size_t kAutoPrefixTarget = 2048;

inline Mask bit(int v) { return Mask{1} << v; }

/// Does some automorphism of h send a->c and b->d?
bool automorphism_maps(const std::vector<Mask>& adj, int a, int b, int c, int d) {
  const int n = static_cast<int>(adj.size());
  std::vector<int> f(static_cast<std::size_t>(n), -1);
  Mask used = 0;
  auto consistent = [&](int x, int y) {
    if (std::popcount(adj[x]) != std::popcount(adj[y])) return false;
    for (int w = 0; w < n; ++w) {
      if (f[w] == -1) continue;
      if (((adj[x] >> w) & 1) != ((adj[y] >> f[w]) & 1)) return false;
    }
    return true;
  };
  if (!consistent(a, c)) return false;
  f[a] = c;
  used |= bit(c);
  if (!consistent(b, d)) return false;
  f[b] = d;
  used |= bit(d);
  auto rec = [&](auto&& self, int x) -> bool {
    while (x < n && f[x] != -1) ++x;
    if (x == n) return true;
    for (int y = 0; y < n; ++y) {
      if ((used >> y) & 1) continue;
      if (!consistent(x, y)) continue;
      f[x] = y;
      used |= bit(y);
      if (self(self, x + 1)) return true;
      f[x] = -1;
      used &= ~bit(y);
    }
    return false;
  };
  return rec(rec, 0);
}

struct AnchorPlan {
  int a = 0;
  int b = 0;
  std::vector<int> order;                  // pattern vertices other than a, b
  std::vector<std::vector<int>> earlier;   // mapped neighbours per position
};

struct PatternPlan {
  int n = 0;
  std::vector<Mask> adj;
  std::vector<int> degree;
  std::vector<AnchorPlan> anchors;  // one per orbit of directed edges
};

PatternPlan make_plan(const SimpleGraph& h) {
  PatternPlan plan;
  plan.n = h.order();
  plan.adj.assign(static_cast<std::size_t>(plan.n), 0);
  plan.degree.assign(static_cast<std::size_t>(plan.n), 0);
  for (const Edge& e : h.edges()) {
    plan.adj[e.u] |= bit(e.v);
    plan.adj[e.v] |= bit(e.u);
  }
  for (int v = 0; v < plan.n; ++v) plan.degree[v] = h.degree(v);

  std::vector<std::pair<int, int>> reps;
  for (const Edge& e : h.edges()) {
    for (auto [a, b] : {std::pair{e.u, e.v}, std::pair{e.v, e.u}}) {
      bool seen = false;
      for (auto [ra, rb] : reps) {
        if (automorphism_maps(plan.adj, ra, rb, a, b)) {
          seen = true;
          break;
        }
      }
      if (!seen) reps.emplace_back(a, b);
    }
  }

  for (auto [a, b] : reps) {
    AnchorPlan ap;
    ap.a = a;
    ap.b = b;
    std::vector<char> done(static_cast<std::size_t>(plan.n), 0);
    done[a] = done[b] = 1;
    Mask placed = bit(a) | bit(b);
    for (int step = 2; step < plan.n; ++step) {
      int pick = -1;
      int pick_links = -1;
      for (int v = 0; v < plan.n; ++v) {
        if (done[v]) continue;
        const int links = std::popcount(plan.adj[v] & placed);
        if (links > pick_links || (links == pick_links && plan.degree[v] > plan.degree[pick])) {
          pick = v;
          pick_links = links;
        }
      }
      done[pick] = 1;
      std::vector<int> prev;
      for (int w = 0; w < plan.n; ++w) {
        if (((placed >> w) & 1) && ((plan.adj[pick] >> w) & 1)) prev.push_back(w);
      }
      ap.order.push_back(pick);
      ap.earlier.push_back(std::move(prev));
      placed |= bit(pick);
    }
    plan.anchors.push_back(std::move(ap));
  }
  return plan;
}

/// Colex order: (0,1), (0,2), (1,2), (0,3), ...
inline int colex_index(int u, int v) { return v * (v - 1) / 2 + u; }

struct SharedState {
  const SearchLimits* limits = nullptr;
  std::chrono::steady_clock::time_point start;
  std::atomic<std::uint64_t> nodes{0};
  std::atomic<std::uint64_t> prunes{0};
  std::atomic<bool> out_of_budget{false};
  std::atomic<std::size_t> best_witness{std::numeric_limits<std::size_t>::max()};

  double elapsed() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }

  /// Latches out_of_budget once either limit is reached.
  bool budget_exhausted() {
    if ((limits->max_nodes > 0 && nodes.load() >= limits->max_nodes) ||
        (limits->max_seconds > 0 && elapsed() >= limits->max_seconds)) {
      out_of_budget = true;
    }
    return out_of_budget.load();
  }
};

class Searcher {
 public:
  enum class Outcome { witness, exhausted, aborted };

  Searcher(const PatternPlan& plan, int n, SharedState& shared)
      : plan_(plan), n_(n), shared_(shared), edge_count_(n * (n - 1) / 2) {
    for (int v = 1; v < n; ++v)
      for (int u = 0; u < v; ++u) edges_.emplace_back(u, v);
    assign_.assign(static_cast<std::size_t>(edge_count_), 0);
    img_.assign(static_cast<std::size_t>(plan.n), -1);
  }

  ~Searcher() { flush(); }

  int edge_count() const { return edge_count_; }
  const std::vector<std::uint8_t>& assignment() const { return assign_; }

  /// Installs a prefix that already passed all checks.
  void load(const std::vector<std::uint8_t>& prefix) {
    std::fill(std::begin(col_[0]), std::end(col_[0]), 0);
    std::fill(std::begin(col_[1]), std::end(col_[1]), 0);
    for (std::size_t i = 0; i < prefix.size(); ++i) apply(static_cast<int>(i), prefix[i]);
  }

  /// Colours edge `depth`; false (and nothing applied) if symmetry or a mono copy forbids it.
  bool try_color(int depth, int c) {
    ++local_nodes_;
    const auto [u, v] = edges_[depth];
    if (depth == 0 && c != 0) return false;
    // Red neighbourhood of vertex 0 is an initial segment.
    if (u == 0 && v >= 2 && c == 0 && assign_[colex_index(0, v - 1)] != 0) return false;
    apply(depth, c);
    if (closes_copy(u, v, c)) {
      undo(depth, c);
      ++local_prunes_;
      return false;
    }
    return true;
  }

  void undo(int depth, int c) {
    const auto [u, v] = edges_[depth];
    col_[c][u] &= ~bit(v);
    col_[c][v] &= ~bit(u);
  }

  Outcome search(int depth, std::size_t branch) {
    branch_ = branch;
    return dfs(depth);
  }

  void flush() {
    shared_.nodes += local_nodes_;
    shared_.prunes += local_prunes_;
    local_nodes_ = 0;
    local_prunes_ = 0;
  }

 private:
  void apply(int depth, int c) {
    const auto [u, v] = edges_[depth];
    assign_[depth] = static_cast<std::uint8_t>(c);
    col_[c][u] |= bit(v);
    col_[c][v] |= bit(u);
  }

  bool should_stop() {
    if (local_nodes_ < kCheckInterval) return false;
    flush();
    return shared_.budget_exhausted() || shared_.best_witness.load() < branch_;
  }

  Outcome dfs(int depth) {
    if (depth == edge_count_) return Outcome::witness;
    if (should_stop()) return Outcome::aborted;
    for (int c = 0; c < 2; ++c) {
      if (!try_color(depth, c)) continue;
      const Outcome r = dfs(depth + 1);
      if (r != Outcome::exhausted) return r;
      undo(depth, c);
    }
    return Outcome::exhausted;
  }

  bool closes_copy(int u, int v, int c) {
    const Mask* col = col_[c];
    const int du = std::popcount(col[u]);
    const int dv = std::popcount(col[v]);
    for (const AnchorPlan& ap : plan_.anchors) {
      if (du < plan_.degree[ap.a] || dv < plan_.degree[ap.b]) continue;
      img_[ap.a] = u;
      img_[ap.b] = v;
      if (extend(ap, col, 0, bit(u) | bit(v))) return true;
    }
    return false;
  }

  bool extend(const AnchorPlan& ap, const Mask* col, std::size_t pos, Mask used) {
    if (pos == ap.order.size()) return true;
    const int p = ap.order[pos];
    Mask cand = (n_ == 64 ? ~Mask{0} : (bit(n_) - 1)) & ~used;
    for (int w : ap.earlier[pos]) cand &= col[img_[w]];
    const int need = plan_.degree[p];
    while (cand) {
      const int h = std::countr_zero(cand);
      cand &= cand - 1;
      if (std::popcount(col[h]) < need) continue;
      img_[p] = h;
      if (extend(ap, col, pos + 1, used | bit(h))) return true;
    }
    return false;
  }

  const PatternPlan& plan_;
  int n_;
  SharedState& shared_;
  int edge_count_;
  std::vector<Edge> edges_;
  std::vector<std::uint8_t> assign_;
  Mask col_[2][kMaxVertices] = {};
  std::vector<int> img_;
  std::uint64_t local_nodes_ = 0;
  std::uint64_t local_prunes_ = 0;
  std::size_t branch_ = 0;
};

ColoredCompleteGraph coloring_from_assignment(int n, const std::vector<std::uint8_t>& assign) {
  ColoredCompleteGraph c(n, Color::blue);
  for (int v = 1; v < n; ++v)
    for (int u = 0; u < v; ++u)
      if (assign[colex_index(u, v)] == 0) c.set_color(u, v, Color::red);
  return c;
}

struct Checkpoint {
  std::vector<char> completed;
};

json checkpoint_header(int n, const SimpleGraph& pattern, int split, std::size_t count) {
  return {{"format", "ramchord-arrows-checkpoint"},
          {"N", n},
          {"H", to_graph6(pattern)},
          {"split_edges", split},
          {"prefix_count", count}};
}

void write_checkpoint(const std::string& path, json header, const std::vector<char>& completed) {
  json done = json::array();
  for (std::size_t i = 0; i < completed.size(); ++i)
    if (completed[i]) done.push_back(i);
  header["completed"] = std::move(done);
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) throw std::runtime_error("cannot write checkpoint " + tmp);
    out << header.dump() << '\n';
  }
  std::filesystem::rename(tmp, path);
}

std::vector<char> read_checkpoint(const std::string& path, const json& header) {
  std::vector<char> completed(header.at("prefix_count").get<std::size_t>(), 0);
  std::ifstream in(path);
  if (!in) return completed;
  json j;
  try {
    in >> j;
  } catch (const json::exception& ex) {
    throw InvalidInput("unreadable checkpoint " + path + ": " + ex.what());
  }
  for (const char* key : {"format", "N", "H", "split_edges", "prefix_count"}) {
    if (j.value(key, json()) != header.at(key)) {
      throw InvalidInput(std::string("checkpoint ") + path + " does not match this search (" + key + ")");
    }
  }
  for (const auto& i : j.at("completed")) completed.at(i.get<std::size_t>()) = 1;
  return completed;
}

}  // namespace

ArrowingVerdict arrows(int n, const SimpleGraph& pattern, const SearchLimits& limits) {
  if (n < 1) throw InvalidInput("N must be at least 1");
  if (n > kMaxVertices) throw InvalidInput("arrowing search supports N <= 64");
  if (pattern.order() > kMaxVertices) throw InvalidInput("pattern too large");

  ArrowingVerdict verdict;
  verdict.n = n;
  const auto start = std::chrono::steady_clock::now();

  if (n < pattern.order()) {
    verdict.arrows = false;
    verdict.witness = ColoredCompleteGraph(n, Color::red);
    return verdict;
  }
  if (pattern.size() == 0 || n == 1) {
    // Edgeless pattern (or K_1 host, only reachable with an edgeless pattern here).
    verdict.arrows = true;
    return verdict;
  }

  const PatternPlan plan = make_plan(pattern);
  SharedState shared;
  shared.limits = &limits;
  shared.start = start;

  // Breadth-first prefix expansion keeps prefixes in depth-first order.
  Searcher root(plan, n, shared);
  const int edge_count = root.edge_count();
  std::vector<std::vector<std::uint8_t>> prefixes{{}};
  int depth = 0;
  const int target_depth = limits.split_edges >= 0 ? std::min(limits.split_edges, edge_count) : edge_count;
  while (depth < target_depth && !prefixes.empty()) {
    if (limits.split_edges < 0 && prefixes.size() >= kAutoPrefixTarget) break;
    std::vector<std::vector<std::uint8_t>> next;
    for (const auto& p : prefixes) {
      root.load(p);
      for (int c = 0; c < 2; ++c) {
        if (!root.try_color(depth, c)) continue;
        auto q = p;
        q.push_back(static_cast<std::uint8_t>(c));
        next.push_back(std::move(q));
        root.undo(depth, c);
      }
    }
    prefixes = std::move(next);
    ++depth;
    root.flush();
    if (shared.budget_exhausted()) {
      SearchStats st;
      st.nodes = shared.nodes.load();
      st.prunes = shared.prunes.load();
      st.seconds = shared.elapsed();
      st.split_edges = depth;
      throw ResourceLimitExceeded("search budget exhausted deciding K_" + std::to_string(n) + " -> H", st);
    }
  }
  root.flush();
  const int split = depth;

  const json header = checkpoint_header(n, pattern, split, prefixes.size());
  std::vector<char> completed(prefixes.size(), 0);
  if (!limits.checkpoint_path.empty()) completed = read_checkpoint(limits.checkpoint_path, header);
  const std::size_t resumed = static_cast<std::size_t>(std::count(completed.begin(), completed.end(), 1));

  std::mutex mu;
  std::optional<std::vector<std::uint8_t>> best_assignment;
  std::atomic<std::size_t> next_branch{0};
  auto last_write = std::chrono::steady_clock::now();

  auto worker = [&]() {
    Searcher s(plan, n, shared);
    for (;;) {
      const std::size_t i = next_branch.fetch_add(1);
      if (i >= prefixes.size() || shared.budget_exhausted()) break;
      if (completed[i] || i > shared.best_witness.load()) continue;
      s.load(prefixes[i]);
      const auto outcome = s.search(split, i);
      if (outcome == Searcher::Outcome::witness) {
        std::lock_guard lock(mu);
        if (i < shared.best_witness.load()) {
          shared.best_witness = i;
          best_assignment = s.assignment();
        }
      } else if (outcome == Searcher::Outcome::exhausted) {
        std::lock_guard lock(mu);
        completed[i] = 1;
        if (!limits.checkpoint_path.empty() &&
            std::chrono::steady_clock::now() - last_write > std::chrono::seconds(2)) {
          write_checkpoint(limits.checkpoint_path, header, completed);
          last_write = std::chrono::steady_clock::now();
        }
      }
      s.flush();
    }
  };

  const int workers = std::max(1, limits.workers);
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  SearchStats& st = verdict.stats;
  st.nodes = shared.nodes.load();
  st.prunes = shared.prunes.load();
  st.seconds = shared.elapsed();
  st.split_edges = split;
  st.branches = prefixes.size();
  st.branches_resumed = resumed;
  st.branches_completed = static_cast<std::size_t>(std::count(completed.begin(), completed.end(), 1));

  if (!limits.checkpoint_path.empty()) write_checkpoint(limits.checkpoint_path, header, completed);

  if (best_assignment) {
    verdict.arrows = false;
    verdict.witness = coloring_from_assignment(n, *best_assignment);
    return verdict;
  }
  if (shared.out_of_budget.load()) {
    throw ResourceLimitExceeded("search budget exhausted deciding K_" + std::to_string(n) + " -> H", st);
  }
  verdict.arrows = true;
  return verdict;
}

RamseyResult ramsey_number(const SimpleGraph& pattern, int n_max, const SearchLimits& limits) {
  if (n_max < pattern.order()) throw InvalidInput("N_max must be at least |H|");
  if (pattern.order() < 2) throw InvalidInput("pattern needs at least two vertices");
  const auto start = std::chrono::steady_clock::now();
  std::uint64_t nodes_used = 0;
  // The budget covers the whole scan over N, not each arrowing call.
  auto remaining = [&](int n) {
    SearchLimits lim = limits;
    if (limits.max_nodes > 0) {
      if (nodes_used >= limits.max_nodes) throw ResourceLimitExceeded("node budget exhausted", SearchStats{});
      lim.max_nodes = limits.max_nodes - nodes_used;
    }
    if (limits.max_seconds > 0) {
      const double spent = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      if (spent >= limits.max_seconds) throw ResourceLimitExceeded("time budget exhausted", SearchStats{});
      lim.max_seconds = limits.max_seconds - spent;
    }
    if (!limits.checkpoint_path.empty()) lim.checkpoint_path = limits.checkpoint_path + ".N" + std::to_string(n);
    return lim;
  };
  RamseyResult result;
  result.lower = arrows(pattern.order() - 1, pattern, remaining(pattern.order() - 1));
  for (int n = pattern.order(); n <= n_max; ++n) {
    auto v = arrows(n, pattern, remaining(n));
    nodes_used += v.stats.nodes;
    if (v.arrows) {
      result.value = n;
      result.upper = std::move(v);
      return result;
    }
    result.lower = std::move(v);
  }
  throw CapExceeded("no N <= " + std::to_string(n_max) + " arrows the pattern");
}

}  // namespace ramchord
