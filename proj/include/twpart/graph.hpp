#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "twpart/rational.hpp"

namespace twpart {

// Input/format problems (bad files, invalid decompositions, ...).
struct data_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A requested computation exceeds a configured cap (solver size, derived k, ...).
struct cap_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Sorted, duplicate-free set of vertex ids.
using VertexSet = std::vector<int>;

// Returns a sorted, deduplicated copy.
VertexSet make_vertex_set(std::vector<int> vertices);

bool vertex_set_contains(const VertexSet& s, int v);

// Counters for the two query types of the bounded-degree model.
// Snapshots attribute query cost to individual oracle calls: each snapshot
// stores the delta since the previous one.
class QueryLedger {
 public:
  std::uint64_t degree_queries = 0;
  std::uint64_t neighbor_queries = 0;

  std::uint64_t total() const { return degree_queries + neighbor_queries; }

  struct Snapshot {
    std::uint64_t call_id;
    std::uint64_t queries;  // delta since previous snapshot
  };

  void snapshot(std::uint64_t call_id) {
    snapshots_.push_back({call_id, total() - last_total_});
    last_total_ = total();
  }

  const std::vector<Snapshot>& snapshots() const { return snapshots_; }

 private:
  std::uint64_t last_total_ = 0;
  std::vector<Snapshot> snapshots_;
};

// Immutable bounded-degree undirected graph with canonical adjacency:
// every adjacency list is strictly ascending, no self-loops, no duplicate
// edges. The sorted order pins down "the j-th neighbor" and makes every
// algorithm built on top deterministic.
class Graph {
 public:
  Graph() = default;

  // Validates and canonicalizes. Throws std::invalid_argument on
  // out-of-range ids, self-loops, or duplicate edges.
  static Graph from_edges(int n, const std::vector<std::pair<int, int>>& edges);

  int vertex_count() const { return n_; }
  long long edge_count() const { return m_; }
  int max_degree() const { return d_max_; }

  int degree(int v) const { return static_cast<int>(adj_[v].size()); }
  std::span<const int> neighbors(int v) const { return adj_[v]; }

  // Bounded-degree model queries. neighbor() is 1-based per the model:
  // 1 <= j <= degree(v). Out-of-range j is a contract violation.
  int degree(QueryLedger& ledger, int v) const {
    ++ledger.degree_queries;
    return degree(v);
  }
  int neighbor(QueryLedger& ledger, int v, int j) const {
    ++ledger.neighbor_queries;
    if (j < 1 || j > degree(v)) throw std::invalid_argument("neighbor index out of range");
    return adj_[v][j - 1];
  }

  bool has_edge(int u, int v) const;

  // Edges as (u, v) with u < v, sorted lexicographically.
  std::vector<std::pair<int, int>> edges() const;

 private:
  int n_ = 0;
  long long m_ = 0;
  int d_max_ = 0;
  std::vector<std::vector<int>> adj_;
};

// Edge-list text format: optional '#' comment lines, header "n m", then
// exactly m lines "u v". Errors carry the offending line number.
Graph parse_graph(std::istream& in);
Graph parse_graph_string(const std::string& text);
Graph parse_graph_file(const std::string& path);

void serialize_graph(const Graph& g, std::ostream& out);
std::string serialize_graph_string(const Graph& g);

// cut-size eta(S): number of vertices outside S adjacent to S.
int cut_size(const Graph& g, const VertexSet& s);

// vertex conductance phi(S) = eta(S)/|S|, exact. S must be nonempty.
Rational conductance(const Graph& g, const VertexSet& s);

// True iff v is in S, G[S] is connected, |S| <= k, eta(S) <= c and
// phi(S) <= delta (exact rational comparison).
bool is_isolated_neighborhood(const Graph& g, int v, const VertexSet& s, long long k,
                              const Rational& delta, int c);

// Induced subgraph on `vertices` (need not be sorted); local ids follow the
// sorted order of `vertices`. Returns the subgraph and the local->global map.
std::pair<Graph, std::vector<int>> induced_subgraph(const Graph& g, const VertexSet& vertices);

// Connected components of G, each sorted, ordered by smallest member.
std::vector<VertexSet> connected_components(const Graph& g);

bool is_acyclic(const Graph& g);

}  // namespace twpart
