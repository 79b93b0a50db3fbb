#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "twpart/forest_partition.hpp"
#include "twpart/graph.hpp"
#include "twpart/neighborhood_search.hpp"
#include "twpart/rational.hpp"

namespace twpart {

// Full parameter vector of the partitioning oracle. c is always 2(h+1).
// In practical mode k and delta are caller-supplied; theoretical mode
// derives them from (eps, d, h), see derive_parameters.
struct OracleParams {
  Rational epsilon{1, 4};
  int d = 2;
  int h = 1;
  long long k = 1;
  Rational delta{1, 2};
  int c = 4;
  std::uint64_t seed = 0;

  SearchBudget budget() const { return SearchBudget{k, delta, c}; }

  void validate() const {
    if (h < 0) throw std::invalid_argument("params: h must be >= 0");
    if (c != 2 * (h + 1)) throw std::invalid_argument("params: c must equal 2(h+1)");
    if (k < 1) throw std::invalid_argument("params: k must be >= 1");
    if (!(delta > Rational(0) && delta < Rational(1)))
      throw std::invalid_argument("params: delta must be in (0, 1)");
  }
};

// Exact-arithmetic derivation of (k, delta) from (eps, d, h).
//
// k is the least fixed point of
//   k = ceil( 2886000 d^5 (h+1)^5 (2h+3)! (1 + log2ceil(k) + log2ceil((2h+3)!)) / eps^3 )
// reached by iterating from k = 1; delta is then the largest rational with
//   delta = eps / (100 (2h+3)! (1 + log2ceil(k) + log2ceil((2h+3)!))).
// log2ceil(x) is the smallest L with 2^L >= x, which keeps everything in
// integers and rounds both bounds in the conservative direction.
struct DerivedParams {
  boost::multiprecision::cpp_int k;
  boost::multiprecision::cpp_rational delta;
  int c = 0;

  // Converts to runnable parameters; throws cap_error when k exceeds the cap.
  OracleParams to_oracle_params(const Rational& eps, int d, int h, std::uint64_t seed,
                                long long cap = 1'000'000) const;
};

DerivedParams derive_parameters(const Rational& eps, int d, int h);

// Smallest L >= 0 with 2^L >= x (x >= 1).
int ceil_log2(const boost::multiprecision::cpp_int& x);

// Deterministic stand-in for the random values r_v: a fixed 64-bit mix of
// (seed, vertex), identical across platforms and runs. Ordering ties are
// broken by vertex id, so ranks are totally ordered.
std::uint64_t rank_value(std::uint64_t seed, int v);

// True iff v precedes w in rank order.
bool rank_less(std::uint64_t seed, int v, int w);

// The global partitioning pass: every vertex computes its neighborhood
// S_v = find_neighborhood(v, k, delta, 2(h+1)); vertices are processed in
// increasing rank; the not-yet-claimed part of S_v becomes a component.
Partition global_partition(const Graph& g, const OracleParams& params);
Partition global_partition(const Graph& g, const OracleParams& params, QueryLedger& ledger);

// Query access to exactly the partition global_partition computes.
// Answers are a pure function of (graph, params, seed) regardless of query
// order or caching.
class OracleSession {
 public:
  // cache = true memoizes S_v / coverer sets across queries (semantically
  // invisible); cache = false recomputes per call so per-call ledger
  // snapshots reflect the true query cost of a single call.
  OracleSession(const Graph& g, const OracleParams& params, bool cache = true);

  // f[q]: the component of q, sorted ascending.
  VertexSet query(int q);

  const QueryLedger& ledger() const { return ledger_; }
  const OracleParams& params() const { return params_; }

 private:
  VertexSet neighborhood_of(int v);
  std::vector<int> coverers_of(int v);
  int lowest_rank_coverer(int v);

  const Graph& g_;
  OracleParams params_;
  QueryLedger ledger_;
  bool cache_;
  std::uint64_t next_call_id_ = 0;
  std::map<int, VertexSet> neighborhood_cache_;
  std::map<int, std::vector<int>> coverer_cache_;
};

struct CutStats {
  long long cut_edges = 0;
  double cut_fraction = 0.0;  // cut_edges / n (the Theorem-1 claim-3 ratio)
  std::map<std::size_t, long long> component_size_histogram;
};

// Exact cut statistics for any component-id assignment over all vertices.
CutStats cut_stats(const Graph& g, const std::vector<int>& component_of);

}  // namespace twpart
