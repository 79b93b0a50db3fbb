#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>

#include "twpart/graph.hpp"
#include "twpart/oracle.hpp"

namespace twpart {

enum class Problem { matching, vertex_cover, dominating_set };
enum class PropertyKind { forest, cactus, treewidth_le_h, k_colorable };

std::string to_string(Problem p);
std::string to_string(PropertyKind p);

// Exact solvers on small graphs. Matching is Edmonds' blossom algorithm and
// is exact on arbitrary graphs; cover/domination are branch and bound.
int max_matching_size(const Graph& g);
int min_vertex_cover_size(const Graph& g);
int min_dominating_set_size(const Graph& g);
bool k_colorable(const Graph& g, int colors);
bool is_forest(const Graph& g);
bool is_cactus(const Graph& g);

// Caps for exact_component_optimum / the membership checks.
inline constexpr int kMatchingCap = 64;
inline constexpr int kBranchingCap = 30;
inline constexpr int kTreewidthCap = 25;
inline constexpr int kColoringCap = 64;

// Exact optimum of `problem` on the subgraph induced by `component`.
// Throws cap_error when the component exceeds the solver cap.
int exact_component_optimum(Problem problem, const Graph& g, const VertexSet& component);

// Query access to a fixed partition: vertex -> its (sorted) component.
// Backed either by an OracleSession or by a precomputed global partition;
// both expose the same function by the local/global equivalence contract.
using ComponentAccess = std::function<VertexSet(int)>;

ComponentAccess access_from_partition(const Partition& p);
ComponentAccess access_from_session(OracleSession& session);

struct EstimateReport {
  Problem problem = Problem::matching;
  double estimate = 0.0;
  long long samples = 0;
  double epsilon = 0.0;
  std::uint64_t seed = 0;
};

// Additive-eps*n estimate of the optimum: sample s = ceil(4.5 ln(40) / eps^2)
// vertices with replacement, score each by
//   y_v = opt(G[f(v)]) / |f(v)|  in [0, 1],
// and return (n/s) * sum y_v. With the partition cutting at most (eps/3) n
// edges and each cut edge shifting the optimum by at most 1, the estimate is
// within eps*n of OPT(G) with probability at least 3/4 (Hoeffding on the
// remaining eps/3 + slack).
EstimateReport estimate_optimum(const Graph& g, const ComponentAccess& f, Problem problem,
                                double epsilon, std::uint64_t seed, long long component_cap_k);

struct PropertySpec {
  PropertyKind kind = PropertyKind::forest;
  int h = 1;       // treewidth_le_h
  int colors = 2;  // k_colorable
};

// Membership check for one partition component (as induced subgraph).
bool check_component_membership(const PropertySpec& property, const Graph& component_graph);

struct TestVerdict {
  PropertyKind property = PropertyKind::forest;
  bool accept = true;
  std::optional<VertexSet> violating_component;   // stage-2 witness
  std::optional<double> cut_fraction_estimate;    // stage-1 witness
};

// Two-stage property tester.
// Stage 1 samples s1 = ceil(32/eps^2) uniformly random edges (vertex + slot,
// degree-corrected) and rejects when the cut fraction exceeds eps*n/(2m).
// Stage 2 samples s2 = ceil(16/eps) vertices and rejects when any sampled
// component fails the membership check. Hereditary properties can never be
// rejected by stage 2 on a graph that has the property.
TestVerdict test_property(const Graph& g, const ComponentAccess& f, const PropertySpec& property,
                          double epsilon, std::uint64_t seed, long long component_cap_k);

}  // namespace twpart
