#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "twpart/graph.hpp"
#include "twpart/tree_decomp.hpp"

namespace twpart {

enum class Family { forest, cactus, partial_ktree, grid };

std::string to_string(Family f);
Family family_from_string(const std::string& name);

struct GenSpec {
  Family family = Family::forest;
  int n = 0;
  int d = 3;            // degree bound
  int h = 2;            // treewidth target (partial_ktree)
  std::uint64_t seed = 0;
  long long noise_edges = 0;  // extra edges added after construction

  void validate() const;
};

struct Generated {
  Graph graph;
  std::optional<TreeDecomposition> witness;
};

// Seeded instance generator. Byte-identical output per spec.
//   forest        random attachment under the degree cap; a new tree is
//                 started with probability 1/n per vertex. Witness: one bag
//                 per vertex ({v, parent} or {root}), width <= 1.
//   cactus        degree-capped random tree plus chords closing
//                 vertex-disjoint cycles (noise_edges attempts, default n/8).
//   partial_ktree grown h-tree (new vertex joined to an h-clique picked among
//                 the lowest-degree candidates), then every non-skeleton edge
//                 dropped with probability 1/2. Witness from the construction
//                 cliques, width <= h. Requires d >= h+1.
//   grid          floor(sqrt(n)) x floor(sqrt(n)) grid, no witness.
// noise_edges > 0 additionally applies perturb_far to non-cactus families.
Generated generate(const GenSpec& spec);

// Adds `noise_edges` uniformly random non-edges between vertices of degree
// < d. Deterministic per seed; throws data_error when the additions cannot
// be placed.
Graph perturb_far(const Graph& g, long long noise_edges, int d, std::uint64_t seed);

}  // namespace twpart
