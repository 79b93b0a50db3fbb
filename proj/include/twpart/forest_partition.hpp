#pragma once

#include <iosfwd>
#include <vector>

#include "twpart/graph.hpp"
#include "twpart/rational.hpp"

namespace twpart {

// A partition of the vertex set into disjoint covering components.
struct Partition {
  std::vector<int> component_of;        // vertex -> index into components
  std::vector<VertexSet> components;    // each sorted ascending
  long long cut_edges = 0;              // edges with endpoints in different components

  int component_count() const { return static_cast<int>(components.size()); }
  const VertexSet& component(int v) const { return components[component_of[v]]; }
  // Canonical representative: smallest vertex id in the component.
  int representative(int v) const { return components[component_of[v]].front(); }
};

long long count_cut_edges(const Graph& g, const std::vector<int>& component_of);

// Partition file format: n lines "v rep", rep = smallest vertex id of v's component.
void serialize_partition(const Partition& p, std::ostream& out);

struct ForestPartitionResult {
  Partition partition;
  // component_isolated[i] <=> components[i] is a (k, delta, 2)-isolated
  // neighborhood in the forest, verified with the library predicate.
  std::vector<char> component_isolated;
  // Vertices whose component passed the check (the set C), sorted.
  VertexSet good_vertices;
  Rational component_size_bound;  // k = 481 d^2 / (delta eps)
};

// Partitions a forest so that almost every vertex lands in a (k, delta, 2)-
// isolated component, k = 481 d^2/(delta eps):
//   phase 1 contracts light leaves (weight < 480 d/(delta eps)) into their
//           neighbors,
//   phase 2 cuts out the branches hanging off vertices of degree > 2,
//   phase 3 chops the remaining paths into pieces of weight >= 2/delta,
//   phase 4 flushes isolated vertices.
// Whenever a rule says "pick a vertex", the smallest id is picked; degree
// conditions are re-evaluated after every removal. Output is a pure function
// of (forest, eps, delta, d).
//
// Preconditions: forest acyclic with max degree <= d, d >= 2, and
// eps, delta in (0, 1/2). Violations throw std::invalid_argument.
ForestPartitionResult stronger_tree_partition(const Graph& forest, const Rational& eps,
                                              const Rational& delta, long long d);

}  // namespace twpart
