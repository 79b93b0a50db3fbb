#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "twpart/forest_partition.hpp"
#include "twpart/graph.hpp"
#include "twpart/rational.hpp"

namespace twpart {

// Bags plus a forest over bag indices. Valid when bags cover all vertices,
// every edge lies inside some bag, each vertex's bags induce a connected
// subforest, and the links are acyclic.
struct TreeDecomposition {
  std::vector<VertexSet> bags;
  std::vector<std::pair<int, int>> links;  // (i, j) with i < j, sorted

  int bag_count() const { return static_cast<int>(bags.size()); }
  // max |bag| - 1; -1 for a decomposition with no bags.
  int width() const;
  void canonicalize();  // sorts bag members and links
};

struct ValidationReport {
  bool ok = true;
  std::string violation;  // names the first violated property with a witness
};

ValidationReport validate(const Graph& g, const TreeDecomposition& d);

// Text format: header "b t"; b lines "bag_id size v1 ... v_size";
// t lines "bag_u bag_v". bag_id dense in [0, b).
TreeDecomposition parse_decomposition(std::istream& in);
TreeDecomposition parse_decomposition_string(const std::string& text);
TreeDecomposition parse_decomposition_file(const std::string& path);
void serialize_decomposition(const TreeDecomposition& d, std::ostream& out);
std::string serialize_decomposition_string(const TreeDecomposition& d);

// Rewrites a valid decomposition into an equivalent one that is
// edge-overlapping (linked bags intersect), minimal (no bag vertex is
// removable), and non-repeated (no empty bag, no linked bag contained in its
// neighbor), without increasing the width. Rules are applied in a fixed
// cyclic order (drop empty bag, absorb subset neighbor, cut disjoint link,
// strip redundant vertex), each scanning bags in ascending index, until a
// full cycle changes nothing. Optionally records the termination metric
// |bags| + |links| + sum |bag| after every rule application.
TreeDecomposition normalize(const Graph& g, const TreeDecomposition& d,
                            std::vector<long long>* metric_trace = nullptr);

struct StructuralReport {
  bool ok = true;
  std::string detail;
};

// For a normalized decomposition, checks the node-count sandwich
// |V(T')|/(h+1) <= |bags(T')| <= |V(T')| over every rooted subtree T', and
// the bag degree bound deg(bag) <= d(h+1). Reports the first violation.
// Inputs that are not normalized are reported as precondition violations.
StructuralReport check_structural_lemmas(const Graph& g, const TreeDecomposition& d);

// Exact treewidth by iterative deepening over elimination orders with
// memoization on eliminated subsets. Returns the width and a witness
// decomposition of that width. Throws cap_error above `cap` vertices.
std::pair<int, TreeDecomposition> exact_treewidth(const Graph& g, int cap = 25);

// Feasibility version: true iff treewidth(g) <= w.
bool treewidth_at_most(const Graph& g, int w, int cap = 25);

// Output of the decomposition-driven partition construction.
struct DecompositionPartitionResult {
  // g(v): vertices not in any good region map to the singleton {v}
  // (g_component_of[v] == -1); others to their component of G[A_good].
  std::vector<int> g_component_of;
  std::vector<VertexSet> g_components;
  VertexSet good_set;       // vertices whose g(v) passed the isolation check
  long long k_bound = 0;    // ceil(28860 d^3 (h+1)^5 / (delta eps^2))
  int h_used = 0;           // width of the normalized decomposition
  int cut_bound = 0;        // 2 (h_used + 1)

  VertexSet g_of(int v) const {
    if (g_component_of[v] < 0) return {v};
    return g_components[g_component_of[v]];
  }
};

// Constructs g: V -> 2^V from a valid decomposition: normalize, partition
// the bag forest with the forest partitioner (eps/(h+1), d(h+1),
// delta eps / (60 d (h+1))), classify components good/bad, and take
// connected components of the vertices that appear only inside one good
// component and never next to a good one. Membership of good_set is
// verified per vertex via is_isolated_neighborhood with c = 2(h+1).
DecompositionPartitionResult decomposition_partition(const Graph& g, const TreeDecomposition& d,
                                                     const Rational& eps, const Rational& delta);

}  // namespace twpart
