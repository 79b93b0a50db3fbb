#include <doctest.h>

#include "twpart/apps.hpp"
#include "twpart/generators.hpp"

using namespace twpart;

TEST_CASE("forest generator: degree cap, acyclicity, valid witness") {
  for (std::uint64_t seed : {0ull, 1ull, 42ull}) {
    GenSpec spec;
    spec.family = Family::forest;
    spec.n = 500;
    spec.d = 3;
    spec.seed = seed;
    Generated gen = generate(spec);
    CHECK(gen.graph.max_degree() <= 3);
    CHECK(is_acyclic(gen.graph));
    REQUIRE(gen.witness.has_value());
    CHECK(validate(gen.graph, *gen.witness).ok);
    CHECK(gen.witness->width() <= 1);
  }
  // single vertex: witness is one singleton bag
  GenSpec tiny;
  tiny.family = Family::forest;
  tiny.n = 1;
  Generated gen = generate(tiny);
  CHECK(gen.graph.vertex_count() == 1);
  REQUIRE(gen.witness.has_value());
  CHECK(gen.witness->bags == std::vector<VertexSet>{{0}});
}

TEST_CASE("generator output is byte-identical per spec") {
  GenSpec spec;
  spec.family = Family::forest;
  spec.n = 300;
  spec.d = 4;
  spec.seed = 777;
  CHECK(serialize_graph_string(generate(spec).graph) ==
        serialize_graph_string(generate(spec).graph));
  spec.family = Family::partial_ktree;
  spec.h = 2;
  spec.d = 6;
  CHECK(serialize_graph_string(generate(spec).graph) ==
        serialize_graph_string(generate(spec).graph));
  spec.seed = 778;  // different seed, different graph
  CHECK(serialize_graph_string(generate(spec).graph) !=
        serialize_graph_string(generate({Family::partial_ktree, 300, 6, 2, 777, 0}).graph));
}

TEST_CASE("cactus generator emits cacti under the degree cap") {
  for (std::uint64_t seed : {3ull, 9ull}) {
    GenSpec spec;
    spec.family = Family::cactus;
    spec.n = 400;
    spec.d = 4;
    spec.seed = seed;
    Generated gen = generate(spec);
    CHECK(gen.graph.max_degree() <= 4);
    CHECK(is_cactus(gen.graph));
    // it actually closed some cycles
    CHECK(gen.graph.edge_count() > gen.graph.vertex_count() - 1);
  }
}

TEST_CASE("partial k-tree generator: witness validates with width <= h") {
  GenSpec spec;
  spec.family = Family::partial_ktree;
  spec.n = 200;
  spec.d = 6;
  spec.h = 2;
  spec.seed = 5;
  Generated gen = generate(spec);
  CHECK(gen.graph.max_degree() <= 6);
  REQUIRE(gen.witness.has_value());
  CHECK(validate(gen.graph, *gen.witness).ok);
  CHECK(gen.witness->width() <= 2);

  // h = 1 without noise is a forest
  GenSpec tree_spec;
  tree_spec.family = Family::partial_ktree;
  tree_spec.n = 100;
  tree_spec.d = 4;
  tree_spec.h = 1;
  tree_spec.seed = 8;
  Generated t = generate(tree_spec);
  CHECK(is_acyclic(t.graph));
  CHECK(validate(t.graph, *t.witness).ok);
  VertexSet window;
  for (int v = 0; v < 20; ++v) window.push_back(v);
  auto [sub, ignore] = induced_subgraph(t.graph, window);
  CHECK(exact_treewidth(sub).first <= 1);

  CHECK_THROWS_AS(generate(GenSpec{Family::partial_ktree, 10, 2, 2, 0, 0}),
                  std::invalid_argument);
}

TEST_CASE("grid generator") {
  GenSpec spec;
  spec.family = Family::grid;
  spec.n = 9;
  Generated gen = generate(spec);
  CHECK(gen.graph.vertex_count() == 9);
  CHECK(gen.graph.edge_count() == 12);
  CHECK_FALSE(gen.witness.has_value());
}

TEST_CASE("perturb_far on the spec examples") {
  GenSpec spec;
  spec.family = Family::forest;
  spec.n = 10000;
  spec.d = 3;
  spec.seed = 21;
  Graph forest = generate(spec).graph;

  // zero noise leaves the graph unchanged
  Graph same = perturb_far(forest, 0, 4, 5);
  CHECK(serialize_graph_string(same) == serialize_graph_string(forest));

  // one extra edge creates exactly one cycle
  Graph once = perturb_far(forest, 1, 4, 5);
  long long comps = static_cast<long long>(connected_components(once).size());
  CHECK(once.edge_count() - (once.vertex_count() - comps) == 1);

  // 0.2n extra edges: cycle count equals the number of added edges
  long long noise = forest.vertex_count() / 5;
  Graph far = perturb_far(forest, noise, 4, 5);
  CHECK(far.max_degree() <= 4);
  comps = static_cast<long long>(connected_components(far).size());
  CHECK(far.edge_count() - (far.vertex_count() - comps) >= noise - 5);
  CHECK_FALSE(is_acyclic(far));

  // infeasible: a full clique cannot take extra edges at its degree bound
  Graph k3 = Graph::from_edges(3, {{0, 1}, {1, 2}, {0, 2}});
  CHECK_THROWS_AS(perturb_far(k3, 1, 2, 0), data_error);
}
