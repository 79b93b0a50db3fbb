#include <doctest.h>

#include <random>
#include <set>

#include "brute_oracles.hpp"
#include "twpart/neighborhood_search.hpp"

using namespace twpart;

namespace {

Graph path_graph(int n) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
  return Graph::from_edges(n, edges);
}

Graph complete_graph(int n) {
  std::vector<std::pair<int, int>> edges;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) edges.emplace_back(u, v);
  return Graph::from_edges(n, edges);
}

Graph cycle_graph(int n) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i) edges.emplace_back(i, (i + 1) % n);
  return Graph::from_edges(n, edges);
}

// connected random graph: random tree plus a few extra edges
Graph random_connected(int n, std::mt19937_64& rng) {
  std::vector<std::pair<int, int>> edges;
  for (int v = 1; v < n; ++v) edges.emplace_back(static_cast<int>(rng() % v), v);
  std::set<std::pair<int, int>> have(edges.begin(), edges.end());
  int extra = static_cast<int>(rng() % (n + 1));
  for (int i = 0; i < extra; ++i) {
    int u = static_cast<int>(rng() % n), v = static_cast<int>(rng() % n);
    if (u == v) continue;
    auto [a, b] = std::minmax(u, v);
    if (have.count({a, b}) || have.count({b, a})) continue;
    have.insert({a, b});
    edges.emplace_back(a, b);
  }
  return Graph::from_edges(n, edges);
}

}  // namespace

TEST_CASE("find_neighborhood on the spec examples") {
  QueryLedger ledger;

  Graph lonely = parse_graph_string("1 0\n");
  CHECK(find_neighborhood(lonely, ledger, 0, {5, Rational(1, 2), 2}) == VertexSet{0});

  // 10-path from an endpoint: the first BFS ball already qualifies
  Graph ten = path_graph(10);
  VertexSet s = find_neighborhood(ten, ledger, 0, {5, Rational(1, 5), 1});
  CHECK(s == VertexSet{0, 1, 2, 3, 4});
  CHECK(is_isolated_neighborhood(ten, 0, s, 5, Rational(1, 5), 1));

  // K4: nothing of size <= 2 with eta <= 1; the fallback is {v}
  Graph k4 = complete_graph(4);
  for (int v = 0; v < 4; ++v)
    CHECK(find_neighborhood(k4, ledger, v, {2, Rational(1, 2), 1}) == VertexSet{v});
}

TEST_CASE("enumerate_neighborhoods on the spec examples") {
  QueryLedger ledger;

  Graph lonely = parse_graph_string("1 0\n");
  auto sets = enumerate_neighborhoods(lonely, ledger, 0, {3, Rational(1), 2});
  CHECK(sets == std::vector<VertexSet>{{0}});

  // triangle with c = 0: only the whole component has no outside neighbors
  Graph triangle = complete_graph(3);
  sets = enumerate_neighborhoods(triangle, ledger, 0, {3, Rational(1), 0});
  CHECK(sets == std::vector<VertexSet>{{0, 1, 2}});

  // 6-cycle: exactly the qualifying segments through v, in canonical order
  Graph hexagon = cycle_graph(6);
  SearchBudget budget{3, Rational(1), 2};
  sets = enumerate_neighborhoods(hexagon, ledger, 0, budget);
  auto expected = oracles::brute_isolated_neighborhoods(hexagon, 0, budget);
  CHECK(sets == expected);
}

TEST_CASE("find_coverers on the spec examples") {
  QueryLedger ledger;

  Graph lonely = parse_graph_string("1 0\n");
  CHECK(find_coverers(lonely, ledger, 0, {2, Rational(1, 2), 1}) == std::vector<int>{0});

  // single edge: both endpoints find {0, 1}, so both cover both
  Graph edge = parse_graph_string("2 1\n0 1\n");
  SearchBudget budget{2, Rational(1), 0};
  CHECK(find_neighborhood(edge, ledger, 0, budget) == VertexSet{0, 1});
  CHECK(find_neighborhood(edge, ledger, 1, budget) == VertexSet{0, 1});
  CHECK(find_coverers(edge, ledger, 0, budget) == std::vector<int>{0, 1});

  // K4 with the failing budget: only the fallback self-cover remains
  Graph k4 = complete_graph(4);
  CHECK(find_coverers(k4, ledger, 2, {2, Rational(1, 2), 1}) == std::vector<int>{2});
}

TEST_CASE("min_cover_bruteforce") {
  CHECK(min_cover_bruteforce({}) == 0);
  CHECK(min_cover_bruteforce({{1}, {1}}) == 1);
  CHECK(min_cover_bruteforce({{1, 2}, {2, 3}, {1, 2, 3}}) == 1);
  CHECK(min_cover_bruteforce({{1, 2}, {3, 4}, {1, 3}}) == 2);
  CHECK_THROWS_AS(min_cover_bruteforce(std::vector<VertexSet>(21, VertexSet{1})), cap_error);
  // agrees with the uncapped exact search
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<VertexSet> family;
    int f = 1 + static_cast<int>(rng() % 8);
    for (int i = 0; i < f; ++i) {
      VertexSet s;
      for (int x = 0; x < 6; ++x)
        if (rng() % 2) s.push_back(x);
      if (s.empty()) s.push_back(static_cast<int>(rng() % 6));
      family.push_back(s);
    }
    CHECK(min_cover_bruteforce(family) == oracles::exact_min_cover(family));
  }
}

TEST_CASE("search success matches brute-force existence on small graphs") {
  std::mt19937_64 rng(424242);
  int checked = 0;
  for (int trial = 0; trial < 30; ++trial) {
    int n = 2 + static_cast<int>(rng() % 8);
    Graph g = random_connected(n, rng);
    for (long long k : {1, 3, 5}) {
      for (int c : {0, 1, 2}) {
        SearchBudget budget{k, Rational(1, 2), c};
        for (int v = 0; v < n; ++v) {
          QueryLedger ledger;
          VertexSet found = find_neighborhood(g, ledger, v, budget);
          auto all = oracles::brute_isolated_neighborhoods(g, v, budget);
          bool success = found != VertexSet{v} ||
                         is_isolated_neighborhood(g, v, {v}, budget.k, budget.delta, budget.c);
          if (success) {
            CHECK(!all.empty());
            CHECK(is_isolated_neighborhood(g, v, found, budget.k, budget.delta, budget.c));
          } else {
            CHECK(all.empty());
          }
          ++checked;
        }
      }
    }
  }
  CHECK(checked > 500);
}

TEST_CASE("enumeration lists exactly the isolated neighborhoods on small graphs") {
  std::mt19937_64 rng(31337);
  for (int trial = 0; trial < 20; ++trial) {
    int n = 2 + static_cast<int>(rng() % 8);
    Graph g = random_connected(n, rng);
    SearchBudget budget{4, Rational(1, 2), 2};
    for (int v = 0; v < n; ++v) {
      QueryLedger ledger;
      auto listed = enumerate_neighborhoods(g, ledger, v, budget);
      auto expected = oracles::brute_isolated_neighborhoods(g, v, budget);
      CHECK(listed == expected);
    }
  }
}

TEST_CASE("query accounting stays within the documented bound") {
  std::mt19937_64 rng(5150);
  for (int trial = 0; trial < 15; ++trial) {
    int n = 3 + static_cast<int>(rng() % 10);
    Graph g = random_connected(n, rng);
    long long d = std::max(1, g.max_degree());
    for (long long k : {1, 2, 4, 6}) {
      for (int c : {0, 1, 2, 3}) {
        for (int v = 0; v < n; ++v) {
          QueryLedger ledger;
          find_neighborhood(g, ledger, v, {k, Rational(1, 3), c});
          long long bound = kFindQueryConstant * d;
          for (int i = 0; i <= c; ++i) bound *= k;
          CHECK(static_cast<long long>(ledger.total()) <= bound);
        }
      }
    }
  }
}

TEST_CASE("query deltas of repeated identical calls are identical") {
  Graph g = cycle_graph(8);
  SearchBudget budget{4, Rational(1, 2), 2};
  QueryLedger first, second;
  find_neighborhood(g, first, 3, budget);
  find_neighborhood(g, second, 3, budget);
  CHECK(first.total() == second.total());
}

TEST_CASE("cover bounds from the small-cover lemma hold on small graphs") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 15; ++trial) {
    int n = 3 + static_cast<int>(rng() % 8);
    Graph g = random_connected(n, rng);
    for (int c : {0, 1, 2}) {
      SearchBudget budget{5, Rational(1, 2), c};
      long long factorial = 1;
      for (int i = 2; i <= c + 1; ++i) factorial *= i;
      for (int v = 0; v < n; ++v) {
        auto family = oracles::brute_isolated_neighborhoods(g, v, budget);
        if (!family.empty()) CHECK(oracles::exact_min_cover(family) <= factorial);

        // non-fallback coverers are bounded by k (c+1)!
        QueryLedger ledger;
        int non_fallback = 0;
        for (int u = 0; u < n; ++u) {
          VertexSet su = find_neighborhood(g, ledger, u, budget);
          if (su != VertexSet{u} && vertex_set_contains(su, v)) ++non_fallback;
        }
        CHECK(non_fallback <= budget.k * factorial);
        auto coverers = find_coverers(g, ledger, v, budget);
        CHECK(static_cast<long long>(coverers.size()) <= budget.k * factorial + 1);
        CHECK(vertex_set_contains(coverers, v));
      }
    }
  }
}
