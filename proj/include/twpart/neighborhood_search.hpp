#pragma once

#include <vector>

#include "twpart/graph.hpp"
#include "twpart/rational.hpp"

namespace twpart {

// Budget for isolated-neighborhood search: size cap k, conductance bound
// delta, cut-size bound c. delta >= 1 is permitted (it makes the conductance
// constraint essentially vacuous); test harnesses rely on that.
struct SearchBudget {
  long long k = 1;
  Rational delta{1, 2};
  int c = 0;

  void validate() const {
    if (k < 1) throw std::invalid_argument("budget: k must be >= 1");
    if (c < 0) throw std::invalid_argument("budget: c must be >= 0");
    if (delta <= Rational(0)) throw std::invalid_argument("budget: delta must be positive");
  }
};

// Finds a (k, delta, c)-isolated neighborhood of v if one exists, else {v}.
//
// Branch-and-guess search: BFS from v (neighbors in ascending id) until k
// vertices are collected or the component is exhausted; if the collected set
// is not isolated, guess one vertex of its boundary, delete it, and recurse
// with one less deletion allowed. Deletions only steer the BFS; every
// isolation check runs against the original graph with the full budget.
// Success returns the first valid set in this fixed branch order.
VertexSet find_neighborhood(const Graph& g, QueryLedger& ledger, int v, const SearchBudget& budget);

// Every isolated neighborhood the branching search encounters, deduplicated,
// in lexicographic order of sorted sets. Every (k, delta, c)-isolated
// neighborhood of v that exists appears in the union of the output.
std::vector<VertexSet> enumerate_neighborhoods(const Graph& g, QueryLedger& ledger, int v,
                                               const SearchBudget& budget);

// All u with v in find_neighborhood(u), ascending. The fallback counts as
// covering, so the result always contains v itself.
std::vector<int> find_coverers(const Graph& g, QueryLedger& ledger, int v,
                               const SearchBudget& budget);

// Size of the smallest subfamily whose union equals the union of the family.
// Exhaustive over subsets; |family| <= 20.
int min_cover_bruteforce(const std::vector<VertexSet>& family);

// Upper bound on ledger queries of one find_neighborhood call:
// queries <= kFindQueryConstant * d * k^(c+1).
inline constexpr long long kFindQueryConstant = 16;

}  // namespace twpart
