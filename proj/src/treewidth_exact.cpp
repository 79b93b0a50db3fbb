#include "twpart/tree_decomp.hpp"

#include <algorithm>
#include <cassert>
#include <unordered_set>

namespace twpart {

namespace {

using Mask = std::uint32_t;

struct EliminationSearch {
  int n;
  int width_target;
  std::vector<Mask> adj;
  Mask full;
  std::unordered_set<Mask> dead;  // eliminated-sets known to fail at this target

  // Vertices outside S u {v} adjacent to v directly or through S.
  int eliminated_degree(Mask s, int v) const {
    Mask visited = Mask{1} << v;
    Mask frontier = visited;
    Mask boundary = 0;
    while (frontier) {
      Mask next = 0;
      Mask f = frontier;
      while (f) {
        int u = __builtin_ctz(f);
        f &= f - 1;
        Mask reach = adj[u] & ~visited;
        boundary |= reach & ~s;
        next |= reach & s;
      }
      visited |= next;
      frontier = next;
    }
    return __builtin_popcount(boundary & ~(Mask{1} << v));
  }

  bool search(Mask s, std::vector<int>& order) {
    if (s == full) return true;
    if (dead.contains(s)) return false;
    for (int v = 0; v < n; ++v) {
      if (s & (Mask{1} << v)) continue;
      if (eliminated_degree(s, v) > width_target) continue;
      if (search(s | (Mask{1} << v), order)) {
        order.push_back(v);
        return true;
      }
    }
    dead.insert(s);
    return false;
  }
};

int degeneracy(const Graph& g) {
  int n = g.vertex_count();
  std::vector<int> deg(n);
  std::vector<char> gone(n, 0);
  for (int v = 0; v < n; ++v) deg[v] = g.degree(v);
  int best = 0;
  for (int round = 0; round < n; ++round) {
    int pick = -1;
    for (int v = 0; v < n; ++v)
      if (!gone[v] && (pick < 0 || deg[v] < deg[pick])) pick = v;
    best = std::max(best, deg[pick]);
    gone[pick] = 1;
    for (int w : g.neighbors(pick))
      if (!gone[w]) --deg[w];
  }
  return best;
}

// Finds an elimination order whose maximum elimination degree is `target`,
// or empty if none exists.
std::vector<int> elimination_order_for(const Graph& g, int target) {
  EliminationSearch search;
  search.n = g.vertex_count();
  search.width_target = target;
  search.adj.assign(search.n, 0);
  for (int v = 0; v < search.n; ++v)
    for (int w : g.neighbors(v)) search.adj[v] |= Mask{1} << w;
  search.full = search.n == 32 ? ~Mask{0} : (Mask{1} << search.n) - 1;
  std::vector<int> order;
  if (!search.search(0, order)) return {};
  std::reverse(order.begin(), order.end());
  return order;
}

TreeDecomposition decomposition_from_order(const Graph& g, const std::vector<int>& order) {
  const int n = g.vertex_count();
  std::vector<Mask> adj(n, 0);
  for (int v = 0; v < n; ++v)
    for (int w : g.neighbors(v)) adj[v] |= Mask{1} << w;
  std::vector<int> position(n);
  for (int i = 0; i < n; ++i) position[order[i]] = i;

  TreeDecomposition d;
  d.bags.assign(n, {});
  Mask remaining = n == 32 ? ~Mask{0} : (Mask{1} << n) - 1;
  for (int i = 0; i < n; ++i) {
    int v = order[i];
    remaining &= ~(Mask{1} << v);
    Mask members = adj[v] & remaining;
    VertexSet bag = {v};
    Mask mm = members;
    while (mm) {
      int u = __builtin_ctz(mm);
      mm &= mm - 1;
      bag.push_back(u);
    }
    d.bags[i] = make_vertex_set(std::move(bag));
    // successors of v become a clique
    Mask a = members;
    while (a) {
      int u = __builtin_ctz(a);
      a &= a - 1;
      adj[u] |= members & ~(Mask{1} << u);
    }
    if (members) {
      int next = -1;
      Mask b = members;
      while (b) {
        int u = __builtin_ctz(b);
        b &= b - 1;
        if (next < 0 || position[u] < position[next]) next = u;
      }
      d.links.emplace_back(i, position[next]);
    }
  }
  d.canonicalize();
  return d;
}

}  // namespace

bool treewidth_at_most(const Graph& g, int w, int cap) {
  if (g.vertex_count() > cap || g.vertex_count() > 31)
    throw cap_error("treewidth: graph larger than the exact-computation cap");
  if (g.vertex_count() == 0) return true;
  if (w >= g.vertex_count() - 1) return true;
  if (w < 0) return false;
  return !elimination_order_for(g, w).empty();
}

std::pair<int, TreeDecomposition> exact_treewidth(const Graph& g, int cap) {
  const int n = g.vertex_count();
  if (n > cap || n > 31) throw cap_error("treewidth: graph larger than the exact-computation cap");
  if (n == 0) return {-1, {}};
  for (int w = degeneracy(g);; ++w) {
    auto order = elimination_order_for(g, w);
    if (order.empty()) continue;
    TreeDecomposition witness = decomposition_from_order(g, order);
    assert(witness.width() == w);
    return {w, witness};
  }
}

}  // namespace twpart
