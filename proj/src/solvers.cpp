#include "twpart/apps.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>
#include <queue>

namespace twpart {

// ---------------------------------------------------------------------------
// Maximum matching: Edmonds' blossom algorithm, O(V^3).

namespace {

class Blossom {
 public:
  explicit Blossom(const Graph& g) : g_(g), n_(g.vertex_count()) {
    match_.assign(n_, -1);
    p_.assign(n_, -1);
    base_.assign(n_, 0);
  }

  int run() {
    int matched = 0;
    for (int v = 0; v < n_; ++v)
      if (match_[v] < 0 && try_augment(v)) ++matched;
    return matched;
  }

 private:
  int lca(int a, int b) {
    std::vector<char> used(n_, 0);
    for (;;) {
      a = base_[a];
      used[a] = 1;
      if (match_[a] < 0) break;
      a = p_[match_[a]];
    }
    for (;;) {
      b = base_[b];
      if (used[b]) return b;
      b = p_[match_[b]];
    }
  }

  void mark_path(std::vector<char>& blossom, int v, int b, int child) {
    while (base_[v] != b) {
      blossom[base_[v]] = 1;
      blossom[base_[match_[v]]] = 1;
      p_[v] = child;
      child = match_[v];
      v = p_[match_[v]];
    }
  }

  bool try_augment(int root) {
    std::vector<char> used(n_, 0);
    p_.assign(n_, -1);
    std::iota(base_.begin(), base_.end(), 0);
    used[root] = 1;
    std::queue<int> q;
    q.push(root);
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      for (int to : g_.neighbors(v)) {
        if (base_[v] == base_[to] || match_[v] == to) continue;
        if (to == root || (match_[to] >= 0 && p_[match_[to]] >= 0)) {
          int cur = lca(v, to);
          std::vector<char> blossom(n_, 0);
          mark_path(blossom, v, cur, to);
          mark_path(blossom, to, cur, v);
          for (int i = 0; i < n_; ++i)
            if (blossom[base_[i]]) {
              base_[i] = cur;
              if (!used[i]) {
                used[i] = 1;
                q.push(i);
              }
            }
        } else if (p_[to] < 0) {
          p_[to] = v;
          if (match_[to] < 0) {
            augment(to);
            return true;
          }
          used[match_[to]] = 1;
          q.push(match_[to]);
        }
      }
    }
    return false;
  }

  void augment(int v) {
    while (v >= 0) {
      int pv = p_[v], ppv = match_[pv];
      match_[v] = pv;
      match_[pv] = v;
      v = ppv;
    }
  }

  const Graph& g_;
  int n_;
  std::vector<int> match_, p_, base_;
};

}  // namespace

int max_matching_size(const Graph& g) { return Blossom(g).run(); }

// ---------------------------------------------------------------------------
// Minimum vertex cover: branch and reduce over bitmasks (n <= 63).

namespace {

struct MaskGraph {
  int n;
  std::vector<std::uint64_t> adj;

  explicit MaskGraph(const Graph& g) : n(g.vertex_count()), adj(g.vertex_count(), 0) {
    for (int v = 0; v < n; ++v)
      for (int w : g.neighbors(v)) adj[v] |= std::uint64_t{1} << w;
  }

  int degree_in(std::uint64_t active, int v) const {
    return __builtin_popcountll(adj[v] & active);
  }
};

int vc_search(const MaskGraph& g, std::uint64_t active) {
  constexpr auto bit = [](int v) { return std::uint64_t{1} << v; };
  // drop isolated vertices; apply the degree-1 rule (take the neighbor)
  int taken = 0;
  for (bool changed = true; changed;) {
    changed = false;
    std::uint64_t a = active;
    while (a) {
      int v = __builtin_ctzll(a);
      a &= a - 1;
      if (!(active & bit(v))) continue;
      std::uint64_t nb = g.adj[v] & active;
      if (nb == 0) {
        active &= ~bit(v);
      } else if (__builtin_popcountll(nb) == 1) {
        active &= ~(bit(v) | nb);
        ++taken;
        changed = true;
      }
    }
  }
  int best_v = -1, best_deg = 0;
  std::uint64_t a = active;
  while (a) {
    int v = __builtin_ctzll(a);
    a &= a - 1;
    int deg = g.degree_in(active, v);
    if (deg > best_deg) {
      best_deg = deg;
      best_v = v;
    }
  }
  if (best_v < 0) return taken;  // no edges left
  // branch: best_v in the cover, or all of its neighbors are
  std::uint64_t nb = g.adj[best_v] & active;
  int with_v = 1 + vc_search(g, active & ~bit(best_v));
  int without_v = best_deg + vc_search(g, active & ~nb & ~bit(best_v));
  return taken + std::min(with_v, without_v);
}

}  // namespace

int min_vertex_cover_size(const Graph& g) {
  if (g.vertex_count() > 63) throw cap_error("vertex cover solver: more than 63 vertices");
  if (g.vertex_count() == 0) return 0;
  MaskGraph mg(g);
  std::uint64_t all = ~std::uint64_t{0} >> (64 - g.vertex_count());
  return vc_search(mg, all);
}

// ---------------------------------------------------------------------------
// Minimum dominating set: branch and bound over closed neighborhoods.

namespace {

struct DsState {
  const MaskGraph* g;
  std::vector<std::uint64_t> closed;  // N[v]
  std::uint64_t full = 0;
  int max_cover = 1;
  int best = 0;

  void search(std::uint64_t dominated, int chosen) {
    if (dominated == full) {
      best = std::min(best, chosen);
      return;
    }
    int remaining = __builtin_popcountll(full & ~dominated);
    if (chosen + (remaining + max_cover - 1) / max_cover >= best) return;
    // pick the undominated vertex with the fewest possible dominators
    int pick = -1, pick_options = 1 << 30;
    std::uint64_t u = full & ~dominated;
    while (u) {
      int v = __builtin_ctzll(u);
      u &= u - 1;
      int options = __builtin_popcountll(closed[v]);
      if (options < pick_options) {
        pick_options = options;
        pick = v;
      }
    }
    std::uint64_t options = closed[pick];
    while (options) {
      int x = __builtin_ctzll(options);
      options &= options - 1;
      search(dominated | closed[x], chosen + 1);
    }
  }
};

}  // namespace

int min_dominating_set_size(const Graph& g) {
  const int n = g.vertex_count();
  if (n > 63) throw cap_error("dominating set solver: more than 63 vertices");
  if (n == 0) return 0;
  MaskGraph mg(g);
  DsState state;
  state.g = &mg;
  state.closed.resize(n);
  for (int v = 0; v < n; ++v) state.closed[v] = mg.adj[v] | (std::uint64_t{1} << v);
  state.full = ~std::uint64_t{0} >> (64 - n);
  for (int v = 0; v < n; ++v)
    state.max_cover = std::max(state.max_cover, __builtin_popcountll(state.closed[v]));
  state.best = n;  // taking everything always dominates
  state.search(0, 0);
  return state.best;
}

// ---------------------------------------------------------------------------
// k-colorability: backtracking in descending-degree order.

namespace {

bool color_search(const Graph& g, const std::vector<int>& order, std::vector<int>& color,
                  std::size_t pos, int colors) {
  if (pos == order.size()) return true;
  int v = order[pos];
  int used_cap = 0;
  for (int w : g.neighbors(v)) used_cap = std::max(used_cap, color[w]);
  int limit = std::min(colors, used_cap + 1);  // first untouched color is symmetric
  for (int c = 1; c <= limit; ++c) {
    bool clash = false;
    for (int w : g.neighbors(v))
      if (color[w] == c) {
        clash = true;
        break;
      }
    if (clash) continue;
    color[v] = c;
    if (color_search(g, order, color, pos + 1, colors)) return true;
    color[v] = 0;
  }
  return false;
}

}  // namespace

bool k_colorable(const Graph& g, int colors) {
  if (colors < 1) return g.vertex_count() == 0;
  if (g.vertex_count() > kColoringCap) throw cap_error("coloring solver: graph above cap");
  std::vector<int> order(g.vertex_count());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (g.degree(a) != g.degree(b)) return g.degree(a) > g.degree(b);
    return a < b;
  });
  std::vector<int> color(g.vertex_count(), 0);
  return color_search(g, order, color, 0, colors);
}

// ---------------------------------------------------------------------------
// Forest / cactus recognition.

bool is_forest(const Graph& g) { return is_acyclic(g); }

bool is_cactus(const Graph& g) {
  // DFS forest; each back edge (v -> ancestor a) covers the tree path v..a.
  // Cactus <=> no tree edge is covered twice. Cover counts accumulate as +1
  // at v, -1 at a, summed over subtrees.
  const int n = g.vertex_count();
  std::vector<int> parent(n, -2), depth(n, 0), cover(n, 0), order;
  order.reserve(n);
  for (int root = 0; root < n; ++root) {
    if (parent[root] != -2) continue;
    parent[root] = -1;
    std::vector<std::pair<int, std::size_t>> stack = {{root, 0}};
    while (!stack.empty()) {
      auto& [v, idx] = stack.back();
      if (idx == 0) order.push_back(v);
      auto nbs = g.neighbors(v);
      if (idx == nbs.size()) {
        stack.pop_back();
        continue;
      }
      int w = nbs[idx++];
      if (parent[w] == -2) {
        parent[w] = v;
        depth[w] = depth[v] + 1;
        stack.emplace_back(w, 0);
      } else if (w != parent[v] && depth[w] < depth[v]) {
        // back edge v -> w
        cover[v] += 1;
        cover[w] -= 1;
      }
    }
  }
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    int v = *it;
    if (parent[v] >= 0) {
      if (cover[v] > 1) return false;  // tree edge (v, parent) on >= 2 cycles
      cover[parent[v]] += cover[v];
    }
  }
  return true;
}

}  // namespace twpart
