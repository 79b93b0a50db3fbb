#include "twpart/graph.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace twpart {

VertexSet make_vertex_set(std::vector<int> vertices) {
  std::sort(vertices.begin(), vertices.end());
  vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
  return vertices;
}

bool vertex_set_contains(const VertexSet& s, int v) {
  return std::binary_search(s.begin(), s.end(), v);
}

Graph Graph::from_edges(int n, const std::vector<std::pair<int, int>>& edges) {
  if (n < 0) throw std::invalid_argument("negative vertex count");
  Graph g;
  g.n_ = n;
  g.adj_.assign(n, {});
  for (auto [u, v] : edges) {
    if (u < 0 || u >= n || v < 0 || v >= n) throw std::invalid_argument("vertex id out of range");
    if (u == v) throw std::invalid_argument("self-loop");
    g.adj_[u].push_back(v);
    g.adj_[v].push_back(u);
  }
  for (int v = 0; v < n; ++v) {
    auto& a = g.adj_[v];
    std::sort(a.begin(), a.end());
    if (std::adjacent_find(a.begin(), a.end()) != a.end())
      throw std::invalid_argument("duplicate edge");
    g.d_max_ = std::max(g.d_max_, static_cast<int>(a.size()));
  }
  g.m_ = static_cast<long long>(edges.size());
  return g;
}

bool Graph::has_edge(int u, int v) const {
  const auto& a = adj_[u];
  return std::binary_search(a.begin(), a.end(), v);
}

std::vector<std::pair<int, int>> Graph::edges() const {
  std::vector<std::pair<int, int>> result;
  result.reserve(static_cast<std::size_t>(m_));
  for (int u = 0; u < n_; ++u)
    for (int v : adj_[u])
      if (u < v) result.emplace_back(u, v);
  return result;
}

namespace {

[[noreturn]] void parse_fail(int line, const std::string& what) {
  throw data_error("line " + std::to_string(line) + ": " + what);
}

}  // namespace

Graph parse_graph(std::istream& in) {
  std::string line;
  int line_no = 0;
  long long n = -1, m = -1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream hs(line);
    if (!(hs >> n >> m) || n < 0 || m < 0) parse_fail(line_no, "malformed header, expected 'n m'");
    std::string rest;
    if (hs >> rest) parse_fail(line_no, "malformed header, expected 'n m'");
    break;
  }
  if (n < 0) throw data_error("missing header line 'n m'");

  std::vector<std::pair<int, int>> edges;
  edges.reserve(static_cast<std::size_t>(m));
  // (u, v, line) with u < v, for duplicate reporting with line numbers
  std::vector<std::array<long long, 3>> seen;
  seen.reserve(static_cast<std::size_t>(m));
  long long read = 0;
  while (read < m) {
    if (!std::getline(in, line)) throw data_error("unexpected end of input: expected " + std::to_string(m) + " edges");
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream es(line);
    long long u, v;
    if (!(es >> u >> v)) parse_fail(line_no, "malformed edge, expected 'u v'");
    std::string rest;
    if (es >> rest) parse_fail(line_no, "malformed edge, expected 'u v'");
    if (u < 0 || u >= n) parse_fail(line_no, "vertex id " + std::to_string(u) + " out of range [0, " + std::to_string(n) + ")");
    if (v < 0 || v >= n) parse_fail(line_no, "vertex id " + std::to_string(v) + " out of range [0, " + std::to_string(n) + ")");
    if (u == v) parse_fail(line_no, "self-loop at vertex " + std::to_string(u));
    seen.push_back({std::min(u, v), std::max(u, v), line_no});
    edges.emplace_back(static_cast<int>(u), static_cast<int>(v));
    ++read;
  }
  std::sort(seen.begin(), seen.end());
  for (std::size_t i = 1; i < seen.size(); ++i)
    if (seen[i][0] == seen[i - 1][0] && seen[i][1] == seen[i - 1][1])
      parse_fail(static_cast<int>(seen[i][2]), "duplicate edge {" + std::to_string(seen[i][0]) + ", " + std::to_string(seen[i][1]) + "}");
  return Graph::from_edges(static_cast<int>(n), edges);
}

Graph parse_graph_string(const std::string& text) {
  std::istringstream in(text);
  return parse_graph(in);
}

Graph parse_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw data_error("cannot open graph file: " + path);
  return parse_graph(in);
}

void serialize_graph(const Graph& g, std::ostream& out) {
  out << g.vertex_count() << ' ' << g.edge_count() << '\n';
  for (auto [u, v] : g.edges()) out << u << ' ' << v << '\n';
}

std::string serialize_graph_string(const Graph& g) {
  std::ostringstream out;
  serialize_graph(g, out);
  return out.str();
}

int cut_size(const Graph& g, const VertexSet& s) {
  std::vector<int> outside;
  for (int v : s)
    for (int w : g.neighbors(v))
      if (!vertex_set_contains(s, w)) outside.push_back(w);
  std::sort(outside.begin(), outside.end());
  outside.erase(std::unique(outside.begin(), outside.end()), outside.end());
  return static_cast<int>(outside.size());
}

Rational conductance(const Graph& g, const VertexSet& s) {
  if (s.empty()) throw std::invalid_argument("conductance of empty set");
  return Rational(cut_size(g, s), static_cast<long long>(s.size()));
}

bool is_isolated_neighborhood(const Graph& g, int v, const VertexSet& s, long long k,
                              const Rational& delta, int c) {
  if (!vertex_set_contains(s, v)) return false;
  if (static_cast<long long>(s.size()) > k) return false;
  // connectivity of G[S] by BFS inside S
  std::vector<int> stack = {v};
  VertexSet visited = {v};
  std::size_t reached = 1;
  while (!stack.empty()) {
    int u = stack.back();
    stack.pop_back();
    for (int w : g.neighbors(u)) {
      if (!vertex_set_contains(s, w)) continue;
      auto it = std::lower_bound(visited.begin(), visited.end(), w);
      if (it != visited.end() && *it == w) continue;
      visited.insert(it, w);
      ++reached;
      stack.push_back(w);
    }
  }
  if (reached != s.size()) return false;
  int eta = cut_size(g, s);
  if (eta > c) return false;
  return Rational(eta, static_cast<long long>(s.size())) <= delta;
}

std::pair<Graph, std::vector<int>> induced_subgraph(const Graph& g, const VertexSet& vertices) {
  VertexSet sorted = vertices;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  std::vector<std::pair<int, int>> edges;
  for (std::size_t i = 0; i < sorted.size(); ++i)
    for (int w : g.neighbors(sorted[i])) {
      auto it = std::lower_bound(sorted.begin(), sorted.end(), w);
      if (it == sorted.end() || *it != w) continue;
      auto j = static_cast<std::size_t>(it - sorted.begin());
      if (i < j) edges.emplace_back(static_cast<int>(i), static_cast<int>(j));
    }
  return {Graph::from_edges(static_cast<int>(sorted.size()), edges), sorted};
}

std::vector<VertexSet> connected_components(const Graph& g) {
  int n = g.vertex_count();
  std::vector<char> seen(n, 0);
  std::vector<VertexSet> result;
  std::vector<int> stack;
  for (int v = 0; v < n; ++v) {
    if (seen[v]) continue;
    VertexSet comp;
    seen[v] = 1;
    stack.push_back(v);
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      comp.push_back(u);
      for (int w : g.neighbors(u))
        if (!seen[w]) {
          seen[w] = 1;
          stack.push_back(w);
        }
    }
    std::sort(comp.begin(), comp.end());
    result.push_back(std::move(comp));
  }
  return result;
}

bool is_acyclic(const Graph& g) {
  long long components = static_cast<long long>(connected_components(g).size());
  return g.edge_count() == g.vertex_count() - components;
}

}  // namespace twpart
