#include "twpart/apps.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "twpart/tree_decomp.hpp"

namespace twpart {

std::string to_string(Problem p) {
  switch (p) {
    case Problem::matching: return "matching";
    case Problem::vertex_cover: return "vertex_cover";
    default: return "dominating_set";
  }
}

std::string to_string(PropertyKind p) {
  switch (p) {
    case PropertyKind::forest: return "forest";
    case PropertyKind::cactus: return "cactus";
    case PropertyKind::treewidth_le_h: return "treewidth_le_h";
    default: return "k_colorable";
  }
}

int exact_component_optimum(Problem problem, const Graph& g, const VertexSet& component) {
  const int cap = problem == Problem::matching ? kMatchingCap : kBranchingCap;
  if (static_cast<int>(component.size()) > cap)
    throw cap_error("component of size " + std::to_string(component.size()) +
                    " exceeds the exact-solver cap " + std::to_string(cap) + " for " +
                    to_string(problem));
  auto [sub, ignore] = induced_subgraph(g, component);
  switch (problem) {
    case Problem::matching: return max_matching_size(sub);
    case Problem::vertex_cover: return min_vertex_cover_size(sub);
    default: return min_dominating_set_size(sub);
  }
}

ComponentAccess access_from_partition(const Partition& p) {
  return [&p](int v) { return p.component(v); };
}

ComponentAccess access_from_session(OracleSession& session) {
  return [&session](int v) { return session.query(v); };
}

namespace {

// Unbiased integer in [0, n) by rejection.
std::uint64_t rand_below(std::mt19937_64& rng, std::uint64_t n) {
  const std::uint64_t limit = n * (~std::uint64_t{0} / n);
  for (;;) {
    std::uint64_t x = rng();
    if (x < limit) return x % n;
  }
}

long long solver_cap(Problem problem) {
  return problem == Problem::matching ? kMatchingCap : kBranchingCap;
}

}  // namespace

EstimateReport estimate_optimum(const Graph& g, const ComponentAccess& f, Problem problem,
                                double epsilon, std::uint64_t seed, long long component_cap_k) {
  if (epsilon <= 0 || epsilon >= 1) throw std::invalid_argument("estimate: epsilon must be in (0,1)");
  if (component_cap_k > solver_cap(problem))
    throw cap_error("estimate: component bound k = " + std::to_string(component_cap_k) +
                    " exceeds the exact-solver cap for " + to_string(problem));
  EstimateReport report;
  report.problem = problem;
  report.epsilon = epsilon;
  report.seed = seed;
  report.samples = static_cast<long long>(std::ceil(4.5 * std::log(40.0) / (epsilon * epsilon)));

  const int n = g.vertex_count();
  if (n == 0) return report;

  std::mt19937_64 rng(seed);
  double score_sum = 0.0;
  for (long long i = 0; i < report.samples; ++i) {
    int v = static_cast<int>(rand_below(rng, static_cast<std::uint64_t>(n)));
    VertexSet component = f(v);
    int opt = exact_component_optimum(problem, g, component);
    score_sum += static_cast<double>(opt) / static_cast<double>(component.size());
  }
  report.estimate = score_sum * n / static_cast<double>(report.samples);
  return report;
}

bool check_component_membership(const PropertySpec& property, const Graph& component_graph) {
  switch (property.kind) {
    case PropertyKind::forest:
      return is_forest(component_graph);
    case PropertyKind::cactus:
      return is_cactus(component_graph);
    case PropertyKind::treewidth_le_h:
      if (component_graph.vertex_count() > kTreewidthCap)
        throw cap_error("treewidth membership check above cap");
      return treewidth_at_most(component_graph, property.h, kTreewidthCap);
    default:
      return k_colorable(component_graph, property.colors);
  }
}

TestVerdict test_property(const Graph& g, const ComponentAccess& f, const PropertySpec& property,
                          double epsilon, std::uint64_t seed, long long component_cap_k) {
  if (epsilon <= 0 || epsilon >= 1) throw std::invalid_argument("tester: epsilon must be in (0,1)");
  if (property.kind == PropertyKind::treewidth_le_h && component_cap_k > kTreewidthCap)
    throw cap_error("tester: component bound k exceeds the treewidth check cap");
  if (property.kind == PropertyKind::k_colorable && component_cap_k > kColoringCap)
    throw cap_error("tester: component bound k exceeds the coloring check cap");

  TestVerdict verdict;
  verdict.property = property.kind;
  const int n = g.vertex_count();
  const long long m = g.edge_count();
  std::mt19937_64 rng(seed);

  // Stage 1: estimate the fraction of cut edges from s1 degree-corrected
  // uniform edge samples; reject when it exceeds eps*n/(2m). A run whose
  // true cut is at most eps*n/4 edges sits at half the threshold, so
  // Hoeffding over s1 = 32/eps^2 samples leaves o(1/3) rejection mass.
  if (m > 0 && n > 0) {
    const long long s1 = static_cast<long long>(std::ceil(32.0 / (epsilon * epsilon)));
    const int d = g.max_degree();
    long long cut_hits = 0;
    for (long long i = 0; i < s1; ++i) {
      for (;;) {
        int u = static_cast<int>(rand_below(rng, static_cast<std::uint64_t>(n)));
        int slot = static_cast<int>(rand_below(rng, static_cast<std::uint64_t>(d)));
        if (slot >= g.degree(u)) continue;
        int w = g.neighbors(u)[slot];
        if (f(u) != f(w)) ++cut_hits;
        break;
      }
    }
    double fraction = static_cast<double>(cut_hits) / static_cast<double>(s1);
    double threshold = epsilon * static_cast<double>(n) / (2.0 * static_cast<double>(m));
    if (fraction > threshold) {
      verdict.accept = false;
      verdict.cut_fraction_estimate = fraction;
      return verdict;
    }
  }

  // Stage 2: membership of sampled components.
  if (n > 0) {
    const long long s2 = static_cast<long long>(std::ceil(16.0 / epsilon));
    for (long long i = 0; i < s2; ++i) {
      int v = static_cast<int>(rand_below(rng, static_cast<std::uint64_t>(n)));
      VertexSet component = f(v);
      auto [sub, ignore] = induced_subgraph(g, component);
      if (!check_component_membership(property, sub)) {
        verdict.accept = false;
        verdict.violating_component = component;
        return verdict;
      }
    }
  }
  return verdict;
}

}  // namespace twpart
