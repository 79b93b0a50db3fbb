#include "twpart/generators.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <random>

namespace twpart {

std::string to_string(Family f) {
  switch (f) {
    case Family::forest: return "forest";
    case Family::cactus: return "cactus";
    case Family::partial_ktree: return "partial-ktree";
    default: return "grid";
  }
}

Family family_from_string(const std::string& name) {
  if (name == "forest") return Family::forest;
  if (name == "cactus") return Family::cactus;
  if (name == "partial-ktree" || name == "partial_ktree") return Family::partial_ktree;
  if (name == "grid") return Family::grid;
  throw std::invalid_argument("unknown family: " + name);
}

void GenSpec::validate() const {
  if (n < 0) throw std::invalid_argument("gen: n must be >= 0");
  if (d < 1) throw std::invalid_argument("gen: d must be >= 1");
  if (noise_edges < 0) throw std::invalid_argument("gen: noise_edges must be >= 0");
  if (family == Family::partial_ktree) {
    if (h < 1) throw std::invalid_argument("gen: partial_ktree needs h >= 1");
    if (d < h + 1) throw std::invalid_argument("gen: partial_ktree needs d >= h+1");
  }
}

namespace {

std::uint64_t rand_below(std::mt19937_64& rng, std::uint64_t n) {
  const std::uint64_t limit = n * (~std::uint64_t{0} / n);
  for (;;) {
    std::uint64_t x = rng();
    if (x < limit) return x % n;
  }
}

// Random attachment forest/tree under the degree cap. With
// new_tree_chance, each vertex starts a fresh tree with probability 1/n.
// Returns edges and the parent of each vertex (-1 for roots).
std::vector<int> attachment_parents(int n, int d, std::mt19937_64& rng, bool new_tree_chance) {
  std::vector<int> parent(n, -1);
  std::vector<int> degree(n, 0);
  std::vector<int> eligible;  // vertices with degree < d, insertion order
  if (n > 0) eligible.push_back(0);
  for (int v = 1; v < n; ++v) {
    bool fresh = new_tree_chance && rand_below(rng, static_cast<std::uint64_t>(n)) == 0;
    if (!fresh && !eligible.empty()) {
      auto idx = static_cast<std::size_t>(rand_below(rng, eligible.size()));
      int u = eligible[idx];
      parent[v] = u;
      if (++degree[u] == d) {
        eligible[idx] = eligible.back();
        eligible.pop_back();
      }
      degree[v] = 1;
    }
    if (degree[v] < d) eligible.push_back(v);
  }
  return parent;
}

Generated make_forest(const GenSpec& spec, std::mt19937_64& rng) {
  auto parent = attachment_parents(spec.n, spec.d, rng, /*new_tree_chance=*/true);
  std::vector<std::pair<int, int>> edges;
  for (int v = 0; v < spec.n; ++v)
    if (parent[v] >= 0) edges.emplace_back(parent[v], v);
  Generated out;
  out.graph = Graph::from_edges(spec.n, edges);
  TreeDecomposition witness;
  witness.bags.assign(spec.n, {});
  for (int v = 0; v < spec.n; ++v) {
    if (parent[v] >= 0) {
      witness.bags[v] = make_vertex_set({v, parent[v]});
      witness.links.emplace_back(v, parent[v]);
    } else {
      witness.bags[v] = {v};
    }
  }
  witness.canonicalize();
  out.witness = std::move(witness);
  return out;
}

Generated make_cactus(const GenSpec& spec, std::mt19937_64& rng) {
  auto parent = attachment_parents(spec.n, spec.d, rng, /*new_tree_chance=*/false);
  std::vector<std::pair<int, int>> edges;
  std::vector<int> degree(spec.n, 0), depth(spec.n, 0);
  for (int v = 0; v < spec.n; ++v)
    if (parent[v] >= 0) {
      edges.emplace_back(parent[v], v);
      ++degree[v];
      ++degree[parent[v]];
      depth[v] = depth[parent[v]] + 1;
    }

  auto tree_path = [&](int u, int v) {
    VertexSet path;
    int a = u, b = v;
    while (a != b) {
      if (depth[a] < depth[b]) std::swap(a, b);
      path.push_back(a);
      a = parent[a];
    }
    path.push_back(a);
    return path;
  };

  std::vector<char> on_cycle(spec.n, 0);
  long long target = spec.noise_edges > 0 ? spec.noise_edges : spec.n / 8;
  long long placed = 0;
  for (long long attempt = 0; attempt < 20 * target + 20 && placed < target && spec.n >= 3;
       ++attempt) {
    int u = static_cast<int>(rand_below(rng, static_cast<std::uint64_t>(spec.n)));
    int v = static_cast<int>(rand_below(rng, static_cast<std::uint64_t>(spec.n)));
    if (u == v || degree[u] >= spec.d || degree[v] >= spec.d) continue;
    if (parent[u] == v || parent[v] == u) continue;
    VertexSet path = tree_path(u, v);
    bool clean = true;
    for (int x : path)
      if (on_cycle[x]) {
        clean = false;
        break;
      }
    if (!clean) continue;
    for (int x : path) on_cycle[x] = 1;
    edges.emplace_back(u, v);
    ++degree[u];
    ++degree[v];
    ++placed;
  }
  Generated out;
  out.graph = Graph::from_edges(spec.n, edges);
  return out;
}

Generated grow_partial_ktree(const GenSpec& spec, std::mt19937_64& rng);

// Growth can hit a dead end when the degree cap is tight (every remaining
// clique holds a saturated vertex); retry with a derived stream before
// declaring the spec unsatisfiable. Attempt count is a function of the seed,
// so output stays reproducible.
Generated make_partial_ktree(const GenSpec& spec, std::mt19937_64& rng) {
  for (int attempt = 0;; ++attempt) {
    try {
      return grow_partial_ktree(spec, rng);
    } catch (const data_error&) {
      if (attempt >= 50) throw;
      rng.seed(spec.seed + 0x9E3779B97F4A7C15ULL * (attempt + 1));
    }
  }
}

Generated grow_partial_ktree(const GenSpec& spec, std::mt19937_64& rng) {
  const int h = spec.h;
  const int n = spec.n;
  Generated out;
  if (n <= h + 1) {
    // too small to grow: a clique on all n vertices, one bag
    std::vector<std::pair<int, int>> edges;
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v) edges.emplace_back(u, v);
    out.graph = Graph::from_edges(n, edges);
    TreeDecomposition witness;
    if (n > 0) {
      VertexSet all(n);
      for (int v = 0; v < n; ++v) all[v] = v;
      witness.bags.push_back(all);
    }
    out.witness = std::move(witness);
    return out;
  }

  std::vector<int> degree(n, 0);
  std::vector<int> intro_bag(n, 0);  // bag that introduced each vertex
  std::vector<VertexSet> cliques;    // h-cliques available for attachment
  std::vector<std::pair<int, int>> skeleton, optional_edges;

  TreeDecomposition witness;
  VertexSet root_bag(h + 1);
  for (int v = 0; v <= h; ++v) root_bag[v] = v;
  witness.bags.push_back(root_bag);
  for (int u = 0; u <= h; ++u)
    for (int v = u + 1; v <= h; ++v) {
      skeleton.emplace_back(u, v);
      ++degree[u];
      ++degree[v];
    }
  for (int skip = 0; skip <= h; ++skip) {
    VertexSet c;
    for (int v = 0; v <= h; ++v)
      if (v != skip) c.push_back(v);
    cliques.push_back(c);
  }

  for (int v = h + 1; v < n; ++v) {
    // candidates: cliques where every member can still take one more edge;
    // prefer the lowest maximum member degree, then the youngest clique.
    // The youngest tie-break keeps a low-degree frontier alive, otherwise
    // uniform choice can saturate a hub pair that sits in every clique.
    int best_load = spec.d, best_age = -1;
    std::vector<int> best;
    for (std::size_t ci = 0; ci < cliques.size(); ++ci) {
      int load = 0, age = 0;
      for (int u : cliques[ci]) {
        load = std::max(load, degree[u]);
        age = std::max(age, u);
      }
      if (load >= spec.d) continue;  // some member is full
      if (load < best_load || (load == best_load && age > best_age)) {
        best_load = load;
        best_age = age;
        best.clear();
      }
      if (load == best_load && age == best_age) best.push_back(static_cast<int>(ci));
    }
    if (best.empty())
      throw data_error("partial_ktree: degree cap " + std::to_string(spec.d) +
                       " is too tight to attach vertex " + std::to_string(v));
    int chosen = best[rand_below(rng, best.size())];
    const VertexSet clique = cliques[chosen];

    int anchor = clique.back();  // youngest member, its bag contains the clique
    for (int u : clique) {
      ++degree[u];
      if (u == clique.front())
        skeleton.emplace_back(u, v);
      else
        optional_edges.emplace_back(u, v);
    }
    degree[v] = h;

    VertexSet bag = clique;
    bag.push_back(v);
    bag = make_vertex_set(std::move(bag));
    int bag_id = witness.bag_count();
    witness.bags.push_back(bag);
    witness.links.emplace_back(bag_id, intro_bag[anchor]);
    intro_bag[v] = bag_id;

    for (int skip = 0; skip < h; ++skip) {
      VertexSet fresh;
      for (int i = 0; i < h; ++i)
        if (i != skip) fresh.push_back(clique[i]);
      fresh.push_back(v);
      cliques.push_back(make_vertex_set(std::move(fresh)));
    }
  }

  // keep the skeleton; each optional edge survives a fair coin
  std::vector<std::pair<int, int>> edges = skeleton;
  for (auto e : optional_edges)
    if (rand_below(rng, 2) == 0) edges.push_back(e);
  out.graph = Graph::from_edges(n, edges);
  witness.canonicalize();
  out.witness = std::move(witness);
  return out;
}

Generated make_grid(const GenSpec& spec) {
  int side = static_cast<int>(std::floor(std::sqrt(static_cast<double>(spec.n))));
  int n = side * side;
  std::vector<std::pair<int, int>> edges;
  for (int r = 0; r < side; ++r)
    for (int c = 0; c < side; ++c) {
      int v = r * side + c;
      if (c + 1 < side) edges.emplace_back(v, v + 1);
      if (r + 1 < side) edges.emplace_back(v, v + side);
    }
  Generated out;
  out.graph = Graph::from_edges(n, edges);
  return out;
}

}  // namespace

Generated generate(const GenSpec& spec) {
  spec.validate();
  std::mt19937_64 rng(spec.seed);
  Generated out;
  switch (spec.family) {
    case Family::forest: out = make_forest(spec, rng); break;
    case Family::cactus: out = make_cactus(spec, rng); break;
    case Family::partial_ktree: out = make_partial_ktree(spec, rng); break;
    default: out = make_grid(spec); break;
  }
  if (spec.noise_edges > 0 && spec.family != Family::cactus)
    out.graph = perturb_far(out.graph, spec.noise_edges, spec.d, spec.seed ^ 0x9E3779B97F4A7C15ULL);
  return out;
}

Graph perturb_far(const Graph& g, long long noise_edges, int d, std::uint64_t seed) {
  const int n = g.vertex_count();
  std::mt19937_64 rng(seed);
  auto edges = g.edges();
  std::vector<int> degree(n, 0);
  for (auto [u, v] : edges) {
    ++degree[u];
    ++degree[v];
  }
  std::vector<std::vector<int>> added(n);
  auto has_added = [&](int u, int v) {
    return std::find(added[u].begin(), added[u].end(), v) != added[u].end();
  };

  long long placed = 0;
  long long attempts_left = 50 * noise_edges + 100;
  while (placed < noise_edges) {
    if (attempts_left-- <= 0)
      throw data_error("perturb_far: could not place " + std::to_string(noise_edges) +
                       " extra edges under degree cap " + std::to_string(d));
    if (n < 2) throw data_error("perturb_far: graph too small");
    int u = static_cast<int>(rand_below(rng, static_cast<std::uint64_t>(n)));
    int v = static_cast<int>(rand_below(rng, static_cast<std::uint64_t>(n)));
    if (u == v || degree[u] >= d || degree[v] >= d) continue;
    if (g.has_edge(u, v) || has_added(u, v)) continue;
    edges.emplace_back(u, v);
    added[u].push_back(v);
    added[v].push_back(u);
    ++degree[u];
    ++degree[v];
    ++placed;
  }
  return Graph::from_edges(n, edges);
}

}  // namespace twpart
