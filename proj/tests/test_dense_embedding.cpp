#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "oracles.hpp"
#include "ramchord/dense_embedding.hpp"
#include "ramchord/graph_io.hpp"

using namespace ramchord;

namespace {

SimpleGraph complete_minus_perfect_matching(int n) {
  SimpleGraph g = complete_graph(n).complement();
  for (int i = 0; i + 1 < n; i += 2) g.add_edge(i, i + 1);
  return g.complement();
}

/// Disjoint paths and cycles on n vertices in shuffled order.
SimpleGraph random_linear_forest(int n, std::mt19937_64& rng) {
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  SimpleGraph g(n);
  int start = 0;
  while (start < n) {
    const int len = std::min(n - start, 1 + static_cast<int>(rng() % 8));
    for (int i = start; i + 1 < start + len; ++i) g.add_edge(perm[i], perm[i + 1]);
    if (len >= 3 && rng() % 2) g.add_edge(perm[start], perm[start + len - 1]);
    start += len;
  }
  return g;
}

/// Cycle 0..n-1 plus a random matching of chords, so the maximum degree is 3.
SimpleGraph random_cubic_ish(int n, int chords, std::mt19937_64& rng) {
  SimpleGraph g = cycle_graph(n);
  for (int tries = 0; chords > 0 && tries < 100 * n; ++tries) {
    const int u = static_cast<int>(rng() % n);
    const int v = static_cast<int>(rng() % n);
    if (u == v || g.has_edge(u, v) || g.degree(u) > 2 || g.degree(v) > 2) continue;
    g.add_edge(u, v);
    --chords;
  }
  return g;
}

/// Dense host in the greedy's success regime: all but `low` vertices miss at
/// most `miss` neighbours, the low ones keep exactly `low_degree` neighbours.
SimpleGraph dense_host(int n, int low, int low_degree, int miss, std::mt19937_64& rng) {
  SimpleGraph g(n);
  std::vector<int> budget(n, miss);
  std::vector<std::vector<char>> drop(n, std::vector<char>(n, 0));
  for (int v = 0; v < low; ++v) {
    std::vector<int> others;
    for (int w = 0; w < n; ++w)
      if (w != v) others.push_back(w);
    std::shuffle(others.begin(), others.end(), rng);
    for (std::size_t i = low_degree; i < others.size(); ++i) drop[v][others[i]] = drop[others[i]][v] = 1;
  }
  for (int t = 0; t < n * miss; ++t) {
    const int u = low + static_cast<int>(rng() % (n - low));
    const int v = low + static_cast<int>(rng() % (n - low));
    if (u == v || drop[u][v] || budget[u] == 0 || budget[v] == 0) continue;
    drop[u][v] = drop[v][u] = 1;
    --budget[u];
    --budget[v];
  }
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (!drop[u][v]) g.add_edge(u, v);
  return g;
}

std::vector<int> range(int from, int to) {
  std::vector<int> v(to - from);
  std::iota(v.begin(), v.end(), from);
  return v;
}

bool disjoint_images_in(const Embedding& emb, const std::vector<int>& part, const std::vector<int>& target) {
  for (int x : part)
    if (std::find(target.begin(), target.end(), emb.map[x]) == target.end()) return false;
  return true;
}

}  // namespace

TEST_CASE("greedy dense embedding examples") {
  const auto c10 = cycle_graph(10);
  const auto host = complete_minus_perfect_matching(10);
  CHECK(host.size() == 40);
  auto emb = greedy_dense_embed(c10, host);
  REQUIRE(emb);
  CHECK(is_valid_embedding(c10, host, *emb));

  std::mt19937_64 rng(3);
  for (int i = 0; i < 30; ++i) {
    const int n = 5 + static_cast<int>(rng() % 40);
    const auto j = random_linear_forest(n, rng);
    REQUIRE(j.max_degree() <= 2);
    const auto k = complete_graph(n + static_cast<int>(rng() % 3));
    auto e = greedy_dense_embed(j, k);
    REQUIRE(e);
    CHECK(is_valid_embedding(j, k, *e));
  }

  CHECK_FALSE(greedy_dense_embed(complete_graph(4), complete_bipartite(3, 3)));
  CHECK_FALSE(greedy_dense_embed(cycle_graph(7), cycle_graph(6)));
}

TEST_CASE("greedy dense embedding in the dense regime") {
  std::mt19937_64 rng(17);
  const double eps = 0.05;
  const int delta = 3;
  for (int trial = 0; trial < 25; ++trial) {
    const int n = 60 + static_cast<int>(rng() % 60);
    const int low = static_cast<int>(eps * n);
    const int low_degree = static_cast<int>(std::ceil(3 * delta * eps * n));
    const int miss = static_cast<int>(eps * n);
    const auto host = dense_host(n, low, low_degree, miss, rng);
    const auto pattern = random_cubic_ish(n, n / 4, rng);
    REQUIRE(pattern.max_degree() <= delta);
    auto emb = greedy_dense_embed(pattern, host, {eps, 200000});
    CAPTURE(trial);
    REQUIRE(emb);
    CHECK(is_valid_embedding(pattern, host, *emb));
  }
}

TEST_CASE("greedy dense embedding is sound on small instances") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 300; ++trial) {
    const int p = 3 + static_cast<int>(rng() % 4);
    const int h = p + static_cast<int>(rng() % 3);
    const auto pattern = oracle::random_graph(p, 0.5, rng);
    const auto host = oracle::random_graph(h, 0.6, rng);
    auto emb = greedy_dense_embed(pattern, host);
    const bool exists = oracle::embeds(pattern, host);
    CAPTURE(to_graph6(pattern));
    CAPTURE(to_graph6(host));
    if (emb) CHECK(is_valid_embedding(pattern, host, *emb));
    // Tiny instances are searched exhaustively within the step budget.
    CHECK(emb.has_value() == exists);
  }
}

TEST_CASE("two-sided greedy embedding examples") {
  const auto c6 = cycle_graph(6);
  const VertexPartition xy{{{0, 2, 4}, {1, 3, 5}}};
  const auto blue = ColoredCompleteGraph::from_red_graph(complete_bipartite(5, 5).complement());
  const auto a = range(0, 5);
  const auto b = range(5, 10);
  auto r = two_sided_greedy_embed(c6, xy, blue, Color::blue, a, b, 0);
  REQUIRE(r.embedding);
  CHECK(r.guaranteed);
  CHECK(r.measured_defect == 0);
  CHECK(is_valid_embedding(c6, blue.subgraph(Color::blue), *r.embedding));
  CHECK(disjoint_images_in(*r.embedding, xy.parts[0], b));
  CHECK(disjoint_images_in(*r.embedding, xy.parts[1], a));
  CHECK(r.embedding->map == std::vector<int>{5, 0, 6, 1, 7, 2});

  SUBCASE("defect 1, |A'| = 10, Delta = 3, |Y| = 5") {
    // K_{10,10} minus a perfect matching, pattern C_10 plus chords between X and Y.
    SimpleGraph host = complete_bipartite(10, 10);
    SimpleGraph missing(20);
    for (int i = 0; i < 10; ++i) missing.add_edge(i, 10 + i);
    SimpleGraph g(20);
    for (const auto& e : host.edges())
      if (!missing.has_edge(e.u, e.v)) g.add_edge(e.u, e.v);
    auto j = cycle_graph(10);
    j.add_edge(0, 5);
    j.add_edge(2, 7);
    REQUIRE(j.max_degree() == 3);
    const VertexPartition parts{{{0, 2, 4, 6, 8}, {1, 3, 5, 7, 9}}};
    auto res = two_sided_greedy_embed(j, parts, g, range(0, 10), range(10, 20), 1);
    CHECK(res.measured_defect == 1);
    CHECK(res.guaranteed);
    REQUIRE(res.embedding);
    CHECK(is_valid_embedding(j, g, *res.embedding));
  }

  SUBCASE("capacity and partition errors") {
    CHECK_THROWS_AS(two_sided_greedy_embed(c6, xy, blue, Color::blue, {0, 1}, b, 0), InvalidInput);
    CHECK_THROWS_AS(two_sided_greedy_embed(c6, xy, blue, Color::blue, a, {5, 6}, 0), InvalidInput);
    CHECK_THROWS_AS(two_sided_greedy_embed(c6, VertexPartition{{{0, 1, 2}, {3, 4, 5}}}, blue, Color::blue, a, b, 0),
                    InvalidInput);
    CHECK_THROWS_AS(two_sided_greedy_embed(c6, xy, blue, Color::blue, a, {4, 5, 6}, 0), InvalidInput);
  }
}

TEST_CASE("two-sided greedy embedding with a third class") {
  // C_7 with Z = {6}: X = {0,2,4}, Y = {1,3,5}, and 6 joined to 5 and 0.
  const auto c7 = cycle_graph(7);
  const VertexPartition parts{{{0, 2, 4}, {1, 3, 5}, {6}}};
  SimpleGraph host(12);
  for (int a = 0; a < 5; ++a)
    for (int b = 5; b < 10; ++b) host.add_edge(a, b);
  for (int v = 0; v < 10; ++v) host.add_edge(10, v);
  auto r = two_sided_greedy_embed(c7, parts, host, range(0, 5), range(5, 10), 0, {10, 11});
  REQUIRE(r.embedding);
  CHECK(r.embedding->map[6] == 10);
  CHECK(is_valid_embedding(c7, host, *r.embedding));
  CHECK_THROWS_AS(two_sided_greedy_embed(c7, parts, host, range(0, 5), range(5, 10), 0, {}), InvalidInput);
}

TEST_CASE("two-sided greedy embedding succeeds under the counting hypothesis") {
  std::mt19937_64 rng(41);
  int attempted = 0;
  int succeeded = 0;
  while (attempted < 200) {
    const int delta = 2 + static_cast<int>(rng() % 3);
    const int defect = static_cast<int>(rng() % 4);
    const int x = 3 + static_cast<int>(rng() % 20);
    const int y = 3 + static_cast<int>(rng() % 20);
    const int size_a = std::max(y, delta * defect + y) + static_cast<int>(rng() % 4);
    const int size_b = x + static_cast<int>(rng() % 4);
    if (!(size_a - delta * defect > y - 1)) continue;
    // Random bipartite pattern with parts [0,x) and [x,x+y) and degrees at most delta.
    SimpleGraph j(x + y);
    for (int t = 0; t < 4 * (x + y); ++t) {
      const int u = static_cast<int>(rng() % x);
      const int v = x + static_cast<int>(rng() % y);
      if (j.degree(u) < delta && j.degree(v) < delta) j.add_edge(u, v);
    }
    // Host: A' = [0,size_a), B' = [size_a, size_a+size_b), each b missing at most `defect` of A'.
    const int n = size_a + size_b;
    SimpleGraph host(n);
    for (int b = size_a; b < n; ++b) {
      std::vector<int> a = range(0, size_a);
      std::shuffle(a.begin(), a.end(), rng);
      const int miss = static_cast<int>(rng() % (defect + 1));
      for (int i = miss; i < size_a; ++i) host.add_edge(b, a[i]);
    }
    for (int t = 0; t < n; ++t) {
      const int u = static_cast<int>(rng() % n);
      const int v = static_cast<int>(rng() % n);
      if (u != v && (u < size_a) == (v < size_a)) host.add_edge(u, v);
    }
    const VertexPartition parts{{range(0, x), range(x, x + y)}};
    auto r = two_sided_greedy_embed(j, parts, host, range(0, size_a), range(size_a, n), defect);
    ++attempted;
    CHECK(r.guaranteed);
    if (r.embedding && is_valid_embedding(j, host, *r.embedding) &&
        disjoint_images_in(*r.embedding, parts.parts[0], range(size_a, n)) &&
        disjoint_images_in(*r.embedding, parts.parts[1], range(0, size_a))) {
      ++succeeded;
    }
  }
  CHECK(succeeded == 200);
}

TEST_CASE("stability cleanup") {
  const int n1 = 40;
  const int n2 = 30;
  const auto v1 = range(0, n1);
  const auto v2 = range(n1, n1 + n2);
  const double beta = 1e-5;  // beta^(1/10) ~ 0.316
  auto clean = [&] {
    MultiColoredGraph g(n1 + n2);
    for (int u = 0; u < n1; ++u)
      for (int v = u + 1; v < n1; ++v) g.add_edge(u, v, Color::red);
    for (int u : v1)
      for (int v : v2) g.add_edge(u, v, Color::blue);
    return g;
  };

  SUBCASE("clean input keeps everything") {
    auto r = stability_cleanup(clean(), v1, v2, beta, Color::red);
    CHECK(r.a == v1);
    CHECK(r.b == v2);
    CHECK(r.hypotheses_hold);
    CHECK(r.size_bound_holds);
    CHECK(r.wrong_inside == 0);
  }

  SUBCASE("two planted bad vertices") {
    auto g = clean();
    const double t = std::pow(beta, 0.1);
    // Vertex 3 gets blue edges to 13 vertices of V1 (13 >= 0.316 * 40); vertex 7 red edges to 10 of V2 (>= 0.316 * 30).
    for (int v = 4; v < 4 + static_cast<int>(std::ceil(t * n1)); ++v) g.add_edge(3, v, Color::blue);
    for (int v = n1; v < n1 + static_cast<int>(std::ceil(t * n2)); ++v) g.add_edge(7, v, Color::red);
    // Near-threshold vertex 20: one edge short of the inside threshold.
    for (int v = 25; v < 25 + static_cast<int>(std::ceil(t * n1)) - 1; ++v) g.add_edge(20, v, Color::blue);
    auto r = stability_cleanup(g, v1, v2, beta, Color::red);
    CHECK(r.removed_inside == std::vector<int>{3});
    CHECK(r.removed_cross == std::vector<int>{7});
    CHECK(r.removed_v2.empty());
    CHECK(r.a.size() == n1 - 2);
    CHECK(r.b == v2);
  }

  SUBCASE("a V2 vertex with many majority edges") {
    auto g = clean();
    for (int v = 0; v < 20; ++v) g.add_edge(n1 + 5, v, Color::red);
    auto r = stability_cleanup(g, v1, v2, beta, Color::red);
    CHECK(r.removed_v2 == std::vector<int>{n1 + 5});
  }

  SUBCASE("threshold is inclusive") {
    MultiColoredGraph g(20);
    // beta^(1/10) = 0.5 with |V1| = 10: exactly 5 minority edges removes the vertex.
    const double b = std::pow(0.5, 10);
    for (int v = 1; v <= 5; ++v) g.add_edge(0, v, Color::blue);
    auto r = stability_cleanup(g, range(0, 10), range(10, 20), b, Color::red);
    CHECK(r.threshold == doctest::Approx(0.5));
    CHECK(r.removed_inside == std::vector<int>{0});
  }

  SUBCASE("hypotheses violated") {
    MultiColoredGraph g(n1 + n2);
    for (int u = 0; u < n1; ++u)
      for (int v = u + 1; v < n1; ++v) g.add_edge(u, v, Color::blue);
    auto r = stability_cleanup(g, v1, v2, beta, Color::red);
    CHECK_FALSE(r.hypotheses_hold);
    CHECK(r.a.empty());
    CHECK_FALSE(r.size_bound_holds);
  }

  SUBCASE("size bound whenever the hypotheses hold") {
    std::mt19937_64 rng(5);
    int with_hypotheses = 0;
    for (int trial = 0; trial < 300; ++trial) {
      auto g = clean();
      const double p = 0.02 * static_cast<double>(rng() % 10);
      std::bernoulli_distribution flip(p);
      for (int u = 0; u < n1; ++u)
        for (int v = u + 1; v < n1; ++v)
          if (flip(rng)) g.add_edge(u, v, Color::blue);
      for (int u : v1)
        for (int v : v2)
          if (flip(rng)) g.add_edge(u, v, Color::red);
      const double b = std::pow(10.0, -1.0 - static_cast<double>(rng() % 6));
      auto r = stability_cleanup(g, v1, v2, b, Color::red);
      if (r.hypotheses_hold) {
        ++with_hypotheses;
        CHECK(r.size_bound_holds);
      }
    }
    CHECK(with_hypotheses > 50);
  }

  CHECK_THROWS_AS(stability_cleanup(clean(), v1, {0, 50}, beta, Color::red), InvalidInput);
  CHECK_THROWS_AS(stability_cleanup(clean(), v1, v2, 1.0, Color::red), InvalidInput);
}
