#include <doctest.h>

#include <random>

#include "brute_oracles.hpp"
#include "twpart/generators.hpp"
#include "twpart/tree_decomp.hpp"

using namespace twpart;

namespace {

Graph path_graph(int n) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
  return Graph::from_edges(n, edges);
}

Graph cycle_graph(int n) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i) edges.emplace_back(i, (i + 1) % n);
  return Graph::from_edges(n, edges);
}

Graph complete_graph(int n) {
  std::vector<std::pair<int, int>> edges;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) edges.emplace_back(u, v);
  return Graph::from_edges(n, edges);
}

TreeDecomposition decomp(std::vector<VertexSet> bags, std::vector<std::pair<int, int>> links) {
  TreeDecomposition d;
  d.bags = std::move(bags);
  d.links = std::move(links);
  d.canonicalize();
  return d;
}

// random validity-preserving inflation of a witness decomposition
TreeDecomposition inflate(const Graph& g, TreeDecomposition d, std::mt19937_64& rng) {
  auto bags_with = [&](int v) {
    std::vector<int> out;
    for (int i = 0; i < d.bag_count(); ++i)
      if (vertex_set_contains(d.bags[i], v)) out.push_back(i);
    return out;
  };
  int ops = 2 + static_cast<int>(rng() % 10);
  for (int i = 0; i < ops && d.bag_count() > 0; ++i) {
    switch (rng() % 3) {
      case 0: {  // duplicate a bag and link the copy to the original
        int b = static_cast<int>(rng() % d.bag_count());
        d.bags.push_back(d.bags[b]);
        d.links.emplace_back(b, d.bag_count() - 1);
        break;
      }
      case 1: {  // add a vertex to a bag adjacent to one already holding it
        int v = static_cast<int>(rng() % g.vertex_count());
        auto holders = bags_with(v);
        std::vector<int> adjacent;
        for (auto [a, b] : d.links) {
          for (int h : holders) {
            if (a == h && !vertex_set_contains(d.bags[b], v)) adjacent.push_back(b);
            if (b == h && !vertex_set_contains(d.bags[a], v)) adjacent.push_back(a);
          }
        }
        if (!adjacent.empty()) {
          int target = adjacent[rng() % adjacent.size()];
          d.bags[target] = make_vertex_set([&] {
            auto bag = d.bags[target];
            bag.push_back(v);
            return bag;
          }());
        }
        break;
      }
      default: {  // hang a fresh empty bag anywhere
        int b = static_cast<int>(rng() % d.bag_count());
        d.bags.push_back({});
        d.links.emplace_back(b, d.bag_count() - 1);
        break;
      }
    }
  }
  d.canonicalize();
  return d;
}

}  // namespace

TEST_CASE("validate on the spec examples") {
  Graph path = path_graph(3);

  // single bag = V is valid for any graph on those vertices
  CHECK(validate(path, decomp({{0, 1, 2}}, {})).ok);

  // path decomposition of the 3-path
  auto d = decomp({{0, 1}, {1, 2}}, {{0, 1}});
  CHECK(validate(path, d).ok);
  CHECK(d.width() == 1);

  // same bags unlinked: vertex 1's bags are disconnected
  auto bad = decomp({{0, 1}, {1, 2}}, {});
  auto report = validate(path, bad);
  CHECK_FALSE(report.ok);
  CHECK(report.violation.find("vertex 1") != std::string::npos);

  // missing coverage / edge / cycle / range violations are all named
  CHECK(validate(path, decomp({{0, 1}}, {})).violation.find("vertex 2") != std::string::npos);
  CHECK(validate(path, decomp({{0, 1}, {2}}, {{0, 1}})).violation.find("edge {1,2}") !=
        std::string::npos);
  CHECK_FALSE(validate(path, decomp({{0, 1}, {1, 2}, {0, 2}}, {{0, 1}, {1, 2}, {0, 2}})).ok);
  CHECK_FALSE(validate(path, decomp({{0, 1, 7}}, {})).ok);
}

TEST_CASE("normalize on the spec examples") {
  // two equal linked bags collapse into one
  Graph edge = parse_graph_string("2 1\n0 1\n");
  auto norm = normalize(edge, decomp({{0, 1}, {0, 1}}, {{0, 1}}));
  CHECK(norm.bag_count() == 1);
  CHECK(norm.bags[0] == VertexSet{0, 1});
  CHECK(norm.links.empty());

  // two disjoint singleton bags lose their link
  Graph two = parse_graph_string("2 0\n");
  norm = normalize(two, decomp({{0}, {1}}, {{0, 1}}));
  CHECK(norm.bag_count() == 2);
  CHECK(norm.links.empty());

  // a lone bag {0,1,2} stays: vertex 2 appears nowhere else
  Graph g = parse_graph_string("3 1\n0 1\n");
  norm = normalize(g, decomp({{0, 1, 2}}, {}));
  CHECK(norm.bags == std::vector<VertexSet>{{0, 1, 2}});

  // with a linked second bag {2}, the subset-absorption rule fires before
  // any vertex stripping, collapsing back to the single bag
  norm = normalize(g, decomp({{0, 1, 2}, {2}}, {{0, 1}}));
  CHECK(norm.bags == std::vector<VertexSet>{{0, 1, 2}});
  CHECK(norm.links.empty());

  // an unlinked second bag is not a valid decomposition (vertex 2's bags
  // would be disconnected), so normalize refuses it
  CHECK_THROWS_AS(normalize(g, decomp({{0, 1, 2}, {2}}, {})), std::invalid_argument);
}

TEST_CASE("normalize output is normalized, width-bounded, idempotent, metric-decreasing") {
  std::mt19937_64 rng(777);
  for (int trial = 0; trial < 30; ++trial) {
    GenSpec spec;
    spec.family = trial % 2 == 0 ? Family::forest : Family::partial_ktree;
    spec.n = 12 + static_cast<int>(rng() % 20);
    spec.d = 5;
    spec.h = 2;
    spec.seed = rng();
    Generated gen = generate(spec);
    REQUIRE(gen.witness.has_value());
    TreeDecomposition messy = inflate(gen.graph, *gen.witness, rng);
    REQUIRE(validate(gen.graph, messy).ok);

    std::vector<long long> trace;
    TreeDecomposition norm = normalize(gen.graph, messy, &trace);
    CHECK(validate(gen.graph, norm).ok);
    CHECK(norm.width() <= messy.width());
    for (std::size_t i = 1; i < trace.size(); ++i) CHECK(trace[i] < trace[i - 1]);

    // normalized: structural lemma checker accepts it as a precondition
    auto report = check_structural_lemmas(gen.graph, norm);
    CHECK(report.ok);

    // idempotent
    TreeDecomposition again = normalize(gen.graph, norm);
    CHECK(again.bags == norm.bags);
    CHECK(again.links == norm.links);
  }
}

TEST_CASE("check_structural_lemmas rejects non-normalized input") {
  Graph path = path_graph(3);
  auto d = decomp({{0, 1}, {1, 2}, {}}, {{0, 1}, {1, 2}});
  REQUIRE(validate(path, d).ok);
  auto report = check_structural_lemmas(path, d);
  CHECK_FALSE(report.ok);
  CHECK(report.detail.find("precondition") != std::string::npos);

  CHECK(check_structural_lemmas(path, decomp({{0, 1}, {1, 2}}, {{0, 1}})).ok);
}

TEST_CASE("exact treewidth of known graphs") {
  CHECK(exact_treewidth(path_graph(5)).first == 1);
  CHECK(exact_treewidth(cycle_graph(6)).first == 2);
  CHECK(exact_treewidth(complete_graph(5)).first == 4);
  CHECK(exact_treewidth(parse_graph_string("1 0\n")).first == 0);
  CHECK(exact_treewidth(parse_graph_string("4 0\n")).first == 0);
  CHECK(exact_treewidth(Graph()).first == -1);

  CHECK(treewidth_at_most(cycle_graph(6), 2));
  CHECK_FALSE(treewidth_at_most(cycle_graph(6), 1));
  CHECK_THROWS_AS(exact_treewidth(complete_graph(26)), cap_error);
}

TEST_CASE("treewidth witnesses validate and match the reported width") {
  std::mt19937_64 rng(123);
  for (int trial = 0; trial < 20; ++trial) {
    GenSpec spec;
    spec.family = Family::partial_ktree;
    spec.n = 8 + static_cast<int>(rng() % 8);
    spec.d = 6;
    spec.h = 1 + static_cast<int>(rng() % 3);
    spec.seed = rng();
    Generated gen = generate(spec);

    auto [width, witness] = exact_treewidth(gen.graph);
    CHECK(validate(gen.graph, witness).ok);
    CHECK(witness.width() == width);
    // any valid decomposition is an upper bound, met by the witness
    REQUIRE(gen.witness.has_value());
    CHECK(width <= gen.witness->width());
  }
}

TEST_CASE("decomposition_partition on an edgeless graph") {
  Graph g = parse_graph_string("5 0\n");
  TreeDecomposition d;
  for (int v = 0; v < 5; ++v) d.bags.push_back({v});
  auto result = decomposition_partition(g, d, Rational(3, 10), Rational(3, 10));
  for (int v = 0; v < 5; ++v) CHECK(result.g_of(v) == VertexSet{v});
  CHECK(result.good_set == VertexSet{0, 1, 2, 3, 4});
  CHECK(result.h_used == 0);
  CHECK(result.cut_bound == 2);
}

TEST_CASE("decomposition_partition on a star with a single bag") {
  Graph star = Graph::from_edges(4, {{0, 1}, {0, 2}, {0, 3}});
  auto d = decomp({{0, 1, 2, 3}}, {});
  auto result = decomposition_partition(star, d, Rational(3, 10), Rational(3, 10));
  // the single bag is one good forest component; every vertex keeps the
  // whole star as its region
  for (int v = 0; v < 4; ++v) CHECK(result.g_of(v) == VertexSet{0, 1, 2, 3});
  CHECK(result.good_set == VertexSet{0, 1, 2, 3});
  CHECK(result.k_bound >= 4);
}

TEST_CASE("decomposition_partition invariants and good-set bound on a forest") {
  GenSpec spec;
  spec.family = Family::forest;
  spec.n = 10000;
  spec.d = 3;
  spec.seed = 11;
  Generated gen = generate(spec);
  REQUIRE(gen.witness.has_value());

  Rational eps(3, 10), delta(3, 10);
  auto result = decomposition_partition(gen.graph, *gen.witness, eps, delta);
  long long good_lower =
      rational_ceil(Rational(gen.graph.vertex_count()) * (Rational(1) - eps / 20));
  CHECK(static_cast<long long>(result.good_set.size()) >= good_lower);
  for (const auto& region : result.g_components)
    CHECK(static_cast<long long>(region.size()) <= result.k_bound);
  // spot-verify the per-vertex contract on a sample
  std::mt19937_64 rng(5);
  for (int i = 0; i < 200; ++i) {
    int v = result.good_set[rng() % result.good_set.size()];
    CHECK(is_isolated_neighborhood(gen.graph, v, result.g_of(v), result.k_bound, delta,
                                   result.cut_bound));
  }
}
