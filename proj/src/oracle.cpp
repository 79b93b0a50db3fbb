#include "twpart/oracle.hpp"

#include <algorithm>
#include <cassert>
#include <limits>

namespace twpart {

namespace mp = boost::multiprecision;

int ceil_log2(const mp::cpp_int& x) {
  assert(x >= 1);
  int l = 0;
  mp::cpp_int p = 1;
  while (p < x) {
    p <<= 1;
    ++l;
  }
  return l;
}

DerivedParams derive_parameters(const Rational& eps, int d, int h) {
  if (!(eps > Rational(0) && eps < Rational(1, 2)))
    throw std::invalid_argument("derive_parameters: eps must be in (0, 1/2)");
  if (d < 2) throw std::invalid_argument("derive_parameters: d must be >= 2");
  if (h < 1) throw std::invalid_argument("derive_parameters: h must be >= 1");

  mp::cpp_int factorial = 1;
  for (int i = 2; i <= 2 * h + 3; ++i) factorial *= i;
  const int log_factorial = ceil_log2(factorial);

  mp::cpp_int base = 2886000;
  for (int i = 0; i < 5; ++i) base *= d;
  for (int i = 0; i < 5; ++i) base *= h + 1;
  base *= factorial;

  const mp::cpp_int p = eps.numerator(), q = eps.denominator();
  const mp::cpp_int p3 = p * p * p, q3 = q * q * q;
  auto rhs = [&](const mp::cpp_int& k) {
    mp::cpp_int num = base * (1 + ceil_log2(k) + log_factorial) * q3;
    return (num + p3 - 1) / p3;  // ceil
  };

  mp::cpp_int k = 1;
  for (;;) {
    mp::cpp_int next = rhs(k);
    if (next == k) break;
    k = next;
  }

  DerivedParams out;
  out.k = k;
  out.delta = mp::cpp_rational(mp::cpp_int(eps.numerator()),
                               mp::cpp_int(eps.denominator()) * 100 * factorial *
                                   (1 + ceil_log2(k) + log_factorial));
  out.c = 2 * (h + 1);
  return out;
}

OracleParams DerivedParams::to_oracle_params(const Rational& eps, int d, int h, std::uint64_t seed,
                                             long long cap) const {
  if (k > cap)
    throw cap_error("derived k = " + k.str() + " exceeds the safety cap " + std::to_string(cap) +
                    "; use practical mode (--k/--delta)");
  const mp::cpp_int ll_max = std::numeric_limits<long long>::max();
  if (mp::numerator(delta) > ll_max || mp::denominator(delta) > ll_max)
    throw cap_error("derived delta does not fit the runtime rational type");
  OracleParams params;
  params.epsilon = eps;
  params.d = d;
  params.h = h;
  params.k = k.convert_to<long long>();
  params.delta = Rational(mp::numerator(delta).convert_to<long long>(),
                          mp::denominator(delta).convert_to<long long>());
  params.c = c;
  params.seed = seed;
  params.validate();
  return params;
}

std::uint64_t rank_value(std::uint64_t seed, int v) {
  // splitmix64 of (seed + (v+1) * golden gamma)
  std::uint64_t z = seed + (static_cast<std::uint64_t>(v) + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

bool rank_less(std::uint64_t seed, int v, int w) {
  std::uint64_t rv = rank_value(seed, v), rw = rank_value(seed, w);
  if (rv != rw) return rv < rw;
  return v < w;
}

Partition global_partition(const Graph& g, const OracleParams& params) {
  QueryLedger ledger;
  return global_partition(g, params, ledger);
}

Partition global_partition(const Graph& g, const OracleParams& params, QueryLedger& ledger) {
  params.validate();
  const int n = g.vertex_count();
  const SearchBudget budget = params.budget();

  std::vector<VertexSet> neighborhoods(n);
  for (int v = 0; v < n; ++v) neighborhoods[v] = find_neighborhood(g, ledger, v, budget);

  std::vector<int> by_rank(n);
  for (int v = 0; v < n; ++v) by_rank[v] = v;
  std::sort(by_rank.begin(), by_rank.end(),
            [&](int a, int b) { return rank_less(params.seed, a, b); });

  Partition part;
  part.component_of.assign(n, -1);
  std::vector<char> marked(n, 0);
  for (int v : by_rank) {
    VertexSet claimed;
    for (int w : neighborhoods[v])
      if (!marked[w]) claimed.push_back(w);
    if (claimed.empty()) continue;
    int id = part.component_count();
    for (int w : claimed) {
      marked[w] = 1;
      part.component_of[w] = id;
    }
    part.components.push_back(std::move(claimed));
  }
  part.cut_edges = count_cut_edges(g, part.component_of);
  return part;
}

OracleSession::OracleSession(const Graph& g, const OracleParams& params, bool cache)
    : g_(g), params_(params), cache_(cache) {
  params_.validate();
}

VertexSet OracleSession::neighborhood_of(int v) {
  if (cache_) {
    auto it = neighborhood_cache_.find(v);
    if (it != neighborhood_cache_.end()) return it->second;
  }
  VertexSet s = find_neighborhood(g_, ledger_, v, params_.budget());
  if (cache_) neighborhood_cache_.emplace(v, s);
  return s;
}

std::vector<int> OracleSession::coverers_of(int v) {
  if (cache_) {
    auto it = coverer_cache_.find(v);
    if (it != coverer_cache_.end()) return it->second;
  }
  std::vector<int> q = find_coverers(g_, ledger_, v, params_.budget());
  if (cache_) coverer_cache_.emplace(v, q);
  return q;
}

int OracleSession::lowest_rank_coverer(int v) {
  std::vector<int> q = coverers_of(v);
  int best = q.front();
  for (int u : q)
    if (rank_less(params_.seed, u, best)) best = u;
  return best;
}

VertexSet OracleSession::query(int q) {
  if (q < 0 || q >= g_.vertex_count()) throw std::invalid_argument("oracle query out of range");
  int u = lowest_rank_coverer(q);
  VertexSet s_u = neighborhood_of(u);
  VertexSet component;
  for (int w : s_u)
    if (lowest_rank_coverer(w) == u) component.push_back(w);
  ledger_.snapshot(next_call_id_++);
  return component;
}

CutStats cut_stats(const Graph& g, const std::vector<int>& component_of) {
  CutStats stats;
  stats.cut_edges = count_cut_edges(g, component_of);
  stats.cut_fraction =
      g.vertex_count() == 0 ? 0.0 : static_cast<double>(stats.cut_edges) / g.vertex_count();
  std::map<int, long long> sizes;
  for (int id : component_of) ++sizes[id];
  for (auto [id, size] : sizes) ++stats.component_size_histogram[static_cast<std::size_t>(size)];
  return stats;
}

}  // namespace twpart
