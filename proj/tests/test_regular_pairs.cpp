#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "oracles.hpp"
#include "ramchord/regular_pairs.hpp"

using namespace ramchord;

namespace {

std::vector<int> range(int from, int to) {
  std::vector<int> v(to - from);
  std::iota(v.begin(), v.end(), from);
  return v;
}

/// Random bipartite graph between [0,n) and [n,2n).
SimpleGraph random_pair(int n, double p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(p);
  SimpleGraph g(2 * n);
  for (int u = 0; u < n; ++u)
    for (int v = n; v < 2 * n; ++v)
      if (coin(rng)) g.add_edge(u, v);
  return g;
}

void check_alternating(const SimpleGraph& g, const std::vector<int>& path, const std::vector<int>& x1,
                       const std::vector<int>& x2, int length) {
  REQUIRE(static_cast<int>(path.size()) == length + 1);
  std::vector<char> seen(g.order(), 0);
  for (std::size_t t = 0; t < path.size(); ++t) {
    const auto& side = t % 2 == 0 ? x1 : x2;
    CHECK(std::find(side.begin(), side.end(), path[t]) != side.end());
    CHECK_FALSE(seen[path[t]]);
    seen[path[t]] = 1;
    if (t + 1 < path.size()) CHECK(g.has_edge(path[t], path[t + 1]));
  }
}

}  // namespace

TEST_CASE("density") {
  const auto kb = complete_bipartite(4, 5);
  CHECK(density(kb, range(0, 4), range(4, 9)) == Rational{1, 1});
  CHECK(density(SimpleGraph(6), range(0, 3), range(3, 6)) == Rational{0, 1});
  CHECK(density(complete_graph(4), {0, 1}, {2, 3}) == Rational{1, 1});
  SimpleGraph g(4);
  g.add_edge(0, 2);
  g.add_edge(1, 2);
  CHECK(density(g, {0, 1}, {2, 3}) == Rational{1, 2});
  CHECK(Rational::of(6, 8).str() == "3/4");
  CHECK_THROWS_AS(density(g, {}, {2}), InvalidInput);
  CHECK_THROWS_AS(density(g, {0, 1}, {1, 2}), InvalidInput);
}

TEST_CASE("exact regularity check") {
  auto full = regularity_check(complete_bipartite(6, 6), range(0, 6), range(6, 12), 0.2, RegularityMode::exact);
  CHECK(full.regular);
  CHECK(full.max_deviation == 0.0);

  // Edges only between the first halves: density 1/4 overall, 1 on the halves.
  SimpleGraph g(16);
  for (int u = 0; u < 4; ++u)
    for (int v = 8; v < 12; ++v) g.add_edge(u, v);
  auto v = regularity_check(g, range(0, 8), range(8, 16), 0.3, RegularityMode::exact);
  CHECK(v.density == Rational{1, 4});
  CHECK_FALSE(v.regular);
  CHECK(v.max_deviation == doctest::Approx(0.75));
  REQUIRE(v.witness);
  CHECK(density(g, v.witness->first, v.witness->second).value() - 0.25 >= 0.3 - 1e-12);

  CHECK_THROWS_AS(regularity_check(SimpleGraph(40), range(0, 17), range(17, 34), 0.1, RegularityMode::exact),
                  InvalidInput);
  CHECK_THROWS_AS(regularity_check(g, range(0, 8), range(8, 16), 0.3, RegularityMode::sampled, 0), InvalidInput);
}

TEST_CASE("exact regularity check matches subset enumeration") {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 150; ++trial) {
    const int na = 2 + static_cast<int>(rng() % 5);
    const int nb = 2 + static_cast<int>(rng() % 5);
    const auto g = oracle::random_graph(na + nb, 0.5, rng);
    const auto a = range(0, na);
    const auto b = range(na, na + nb);
    for (double eps : {0.1, 0.3, 0.5}) {
      auto v = regularity_check(g, a, b, eps, RegularityMode::exact);
      const double want = oracle::regularity_deviation(g, a, b, eps);
      CHECK(v.max_deviation == doctest::Approx(want));
      CHECK(v.regular == (want < eps));
    }
  }
}

TEST_CASE("sampled regularity check") {
  const auto g = random_pair(200, 0.5, 2024);
  auto v = regularity_check(g, range(0, 200), range(200, 400), 0.1, RegularityMode::sampled, 10000, 7);
  CHECK(v.examined == 10000);
  // 20 x 20 subpairs have density spread ~0.025, so the maximum of 10^4 draws
  // sits near 0.1 and crosses it for about half of all seeds.
  CHECK(v.max_deviation < 0.15);
  CHECK(v.max_deviation > 0.05);
  CHECK(v.regular == (v.max_deviation < 0.1));
  auto again = regularity_check(g, range(0, 200), range(200, 400), 0.1, RegularityMode::sampled, 10000, 7);
  CHECK(again.max_deviation == v.max_deviation);

  // A planted dense block is refuted once samples land inside it.
  SimpleGraph planted(40);
  for (int u = 0; u < 10; ++u)
    for (int w = 20; w < 30; ++w) planted.add_edge(u, w);
  auto r = regularity_check(planted, range(0, 20), range(20, 40), 0.25, RegularityMode::sampled, 2000, 1);
  CHECK_FALSE(r.regular);
  CHECK(r.witness);
}

TEST_CASE("restricted random pairs stay close to regular") {
  // Subsets of size at least eps^(1/2)|V| of a random pair keep deviation below eps^(1/2) plus a margin.
  const double eps = 0.04;
  const auto g = random_pair(200, 0.5, 77);
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 10; ++trial) {
    auto a = range(0, 200);
    auto b = range(200, 400);
    std::shuffle(a.begin(), a.end(), rng);
    std::shuffle(b.begin(), b.end(), rng);
    const int keep = static_cast<int>(std::ceil(std::sqrt(eps) * 200)) + static_cast<int>(rng() % 100);
    a.resize(keep);
    b.resize(keep);
    auto v = regularity_check(g, a, b, std::sqrt(eps), RegularityMode::sampled, 500, trial);
    CHECK(v.max_deviation < std::sqrt(eps) + 0.1);
    CHECK(v.density.value() >= 0.5 - eps - 0.05);
  }
}

TEST_CASE("typical vertices") {
  const auto kb = complete_bipartite(5, 5);
  CHECK(typical_vertices(kb, range(0, 5), range(5, 10), 0.1, 1.0) == range(0, 5));

  SimpleGraph g(10);
  for (int u = 1; u < 5; ++u)
    for (int v = 5; v < 10; ++v) g.add_edge(u, v);
  CHECK(typical_vertices(g, range(0, 5), range(5, 10), 0.1, density(g, range(0, 5), range(5, 10)).value()) ==
        range(1, 5));

  const auto r = random_pair(200, 0.5, 31);
  const double eps = 0.1;
  const auto a = range(0, 200);
  const auto b = range(200, 400);
  const double d = density(r, a, b).value();
  auto v = regularity_check(r, a, b, eps, RegularityMode::sampled, 2000, 3);
  REQUIRE(v.regular);
  CHECK(typical_vertices(r, a, b, eps, d).size() >= (1 - eps) * 200);
}

TEST_CASE("pair path embedding") {
  const auto kb = complete_bipartite(10, 10);
  const auto x1 = range(0, 10);
  const auto x2 = range(10, 20);
  auto p = pair_path_embed(kb, x1, x2, 0, 10, 7);
  REQUIRE(p);
  check_alternating(kb, *p, x1, x2, 7);
  CHECK(p->front() == 0);
  CHECK(p->back() == 10);

  auto one = pair_path_embed(kb, x1, x2, 3, 14, 1);
  REQUIRE(one);
  CHECK(*one == std::vector<int>{3, 14});
  SimpleGraph sparse(4);
  sparse.add_edge(0, 3);
  CHECK_FALSE(pair_path_embed(sparse, {0, 1}, {2, 3}, 0, 2, 1));

  auto longest = pair_path_embed(kb, x1, x2, 0, 10, 19);
  REQUIRE(longest);
  check_alternating(kb, *longest, x1, x2, 19);

  PairPathOptions avoid;
  avoid.forbidden = {1, 2, 11};
  auto around = pair_path_embed(kb, x1, x2, 0, 10, 13, avoid);
  REQUIRE(around);
  for (int f : avoid.forbidden) CHECK(std::find(around->begin(), around->end(), f) == around->end());
  CHECK_FALSE(pair_path_embed(kb, x1, x2, 0, 10, 17, avoid));

  CHECK_THROWS_AS(pair_path_embed(kb, x1, x2, 0, 10, 6), InvalidInput);
  CHECK_THROWS_AS(pair_path_embed(kb, x1, x2, 10, 0, 7), InvalidInput);
  PairPathOptions picky;
  picky.min_deg_fraction = 0.5;
  CHECK_NOTHROW(pair_path_embed(sparse, {0, 1}, {2, 3}, 0, 3, 1, picky));
  CHECK_THROWS_AS(pair_path_embed(sparse, {0, 1}, {2, 3}, 0, 2, 1, picky), InvalidInput);

  const auto r = random_pair(200, 0.5, 5);
  auto big = pair_path_embed(r, range(0, 200), range(200, 400), 0, 200, 151);
  REQUIRE(big);
  check_alternating(r, *big, range(0, 200), range(200, 400), 151);
}

TEST_CASE("chunk allocation examples") {
  const double eps = 0.0015;
  auto a4 = allocate_chunks({13}, 4, 100, eps);
  CHECK(a4.q == std::vector<std::vector<int>>{{1, 11, 1}});
  CHECK(a4.long_paths);
  auto a6 = allocate_chunks({19}, 6, 100, eps);
  CHECK(a6.q == std::vector<std::vector<int>>{{1, 9, 1, 7, 1}});
  auto floor = allocate_chunks({9}, 6, 100, eps);
  CHECK(floor.q == std::vector<std::vector<int>>{{1, 3, 1, 3, 1}});
  CHECK_FALSE(floor.long_paths);

  auto kind_of = [&](auto&& f) {
    try {
      f();
    } catch (const AllocationError& e) {
      return std::string(to_string(e.kind()));
    }
    return std::string("none");
  };
  CHECK(kind_of([&] { allocate_chunks({13}, 5, 100, eps); }) == "parity");
  CHECK(kind_of([&] { allocate_chunks({13}, 2, 100, eps); }) == "parity");
  CHECK(kind_of([&] { allocate_chunks({14}, 4, 100, eps); }) == "parity");
  CHECK(kind_of([&] { allocate_chunks({7}, 6, 100, eps); }) == "floor");
  CHECK(kind_of([&] { allocate_chunks({101, 101}, 4, 100, eps); }) == "capacity");
  CHECK(kind_of([&] { allocate_chunks({21}, 4, 100, eps); }) == "none");
}

TEST_CASE("chunk allocation rebalances crowded slots") {
  // Leftmost-heavy rows overfill slot 2 with many paths; moves shift weight right.
  const int size = 14;
  const double eps = 0.0015;  // capacity 2(1 - 2 eps^(1/4)) 14 ~ 16.96
  auto alloc = allocate_chunks({11, 11, 11}, 6, size, eps);
  CHECK(allocation_violations(alloc, {11, 11, 11}, size, eps).empty());
  CHECK(alloc.q == std::vector<std::vector<int>>{{1, 3, 1, 5, 1}, {1, 5, 1, 3, 1}, {1, 5, 1, 3, 1}});
}

TEST_CASE("chunk allocation on random feasible instances") {
  std::mt19937_64 rng(99);
  int produced = 0;
  for (int trial = 0; produced < 1000; ++trial) {
    REQUIRE(trial < 100000);
    const int ell = 4 + 2 * static_cast<int>(rng() % 4);
    const int size = 20 + static_cast<int>(rng() % 280);
    const double eps = 1e-4 + 1.5e-3 * static_cast<double>(rng() % 1000) / 1000.0;
    const int k = 1 + static_cast<int>(rng() % 6);
    std::vector<int> lengths;
    long long total = 0;
    for (int i = 0; i < k; ++i) {
      const int p = 3 * ell + 2 * static_cast<int>(rng() % (size / 2 + 1)) + (ell % 2 == 0 ? 1 : 0);
      lengths.push_back(p);
      total += p;
    }
    if (total > (1 - 2 * std::pow(eps, 0.25)) * (ell - 2) * size) continue;
    auto alloc = allocate_chunks(lengths, ell, size, eps);
    CHECK(alloc.total_fits);
    CHECK(alloc.long_paths);
    const auto bad = allocation_violations(alloc, lengths, size, eps);
    CHECK(bad.empty());
    ++produced;
  }
}

TEST_CASE("chunk allocation agrees with enumeration on small instances") {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 300; ++trial) {
    const int ell = 4 + 2 * static_cast<int>(rng() % 2);
    const int size = 4 + static_cast<int>(rng() % 10);
    const double eps = 1e-3;
    const int k = 1 + static_cast<int>(rng() % 3);
    std::vector<int> lengths;
    for (int i = 0; i < k; ++i) lengths.push_back(2 * ell - 3 + 2 * static_cast<int>(rng() % 8));
    const double cap = 2 * (1 - 2 * std::pow(eps, 0.25)) * size;
    const bool feasible = oracle::allocation_exists(lengths, ell, cap);
    bool ok = true;
    try {
      auto alloc = allocate_chunks(lengths, ell, size, eps);
      CHECK(allocation_violations(alloc, lengths, size, eps).empty());
    } catch (const AllocationError& e) {
      CHECK(e.kind() == AllocationError::Kind::capacity);
      ok = false;
    }
    CAPTURE(ell);
    CAPTURE(size);
    CHECK(ok == feasible);
  }
}
