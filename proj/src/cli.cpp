#include "twpart/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <thread>

#include "twpart/apps.hpp"
#include "twpart/generators.hpp"
#include "twpart/graph.hpp"
#include "twpart/oracle.hpp"
#include "twpart/tree_decomp.hpp"

namespace twpart {

namespace {

using json = nlohmann::ordered_json;

int thread_count() {
  const char* env = std::getenv("TWPART_THREADS");
  if (!env) return 1;
  int t = std::atoi(env);
  return t < 1 ? 1 : t;
}

// Runs fn(begin, end, slot) over [0, total) split into contiguous chunks.
template <typename Fn>
void parallel_chunks(long long total, int threads, Fn&& fn) {
  threads = static_cast<int>(std::min<long long>(threads, std::max<long long>(total, 1)));
  if (threads <= 1) {
    fn(0LL, total, 0);
    return;
  }
  std::vector<std::thread> pool;
  long long chunk = (total + threads - 1) / threads;
  for (int t = 0; t < threads; ++t) {
    long long begin = t * chunk, end = std::min(total, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back([&fn, begin, end, t] { fn(begin, end, t); });
  }
  for (auto& th : pool) th.join();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw data_error("cannot write file: " + path);
  out << content;
}

struct BudgetFlags {
  std::string mode = "practical";  // practical | theoretical
  long long k = 0;
  std::string delta;
  int h = 1;
  std::string epsilon;
  int d = 3;
  long long cap = 1'000'000;
  std::uint64_t seed = 0;

  // with_theoretical = false attaches the practical-mode flags only; the
  // estimator, tester, and bench run practical budgets and own --epsilon/--d
  // for their own parameters.
  void attach(CLI::App* cmd, bool with_theoretical = true) {
    cmd->add_option("--k", k, "component size bound (practical mode)");
    cmd->add_option("--delta", delta, "conductance bound as p/q (practical mode)");
    cmd->add_option("--h", h, "treewidth bound");
    cmd->add_option("--seed", seed, "rank seed");
    if (with_theoretical) {
      cmd->add_option("--params", mode, "parameter mode: practical | theoretical")
          ->check(CLI::IsMember({"practical", "theoretical"}));
      cmd->add_option("--epsilon", epsilon, "accuracy as p/q (theoretical mode)");
      cmd->add_option("--d", d, "degree bound (theoretical mode)");
      cmd->add_option("--cap", cap, "safety cap on derived k (theoretical mode)");
    }
  }

  OracleParams resolve() const {
    if (mode == "theoretical") {
      if (epsilon.empty()) throw std::invalid_argument("theoretical mode needs --epsilon");
      Rational eps = parse_rational(epsilon);
      return derive_parameters(eps, d, h).to_oracle_params(eps, d, h, seed, cap);
    }
    if (k <= 0 || delta.empty())
      throw std::invalid_argument("practical mode needs --k and --delta");
    OracleParams params;
    params.epsilon = epsilon.empty() ? Rational(0) : parse_rational(epsilon);
    params.d = d;
    params.h = h;
    params.k = k;
    params.delta = parse_rational(delta);
    params.c = 2 * (h + 1);
    params.seed = seed;
    params.validate();
    return params;
  }
};

json params_json(const OracleParams& p) {
  return json{{"k", p.k},
              {"delta", to_string(p.delta)},
              {"c", p.c},
              {"h", p.h},
              {"seed", p.seed}};
}

void emit(const json& j) { std::cout << j.dump() << '\n'; }

// ---------------------------------------------------------------------- gen

int cmd_gen(const std::string& family, int n, int d, int h, std::uint64_t seed,
            long long noise_edges, const std::string& output, const std::string& witness_out) {
  GenSpec spec;
  spec.family = family_from_string(family);
  spec.n = n;
  spec.d = d;
  spec.h = h;
  spec.seed = seed;
  spec.noise_edges = noise_edges;
  Generated gen = generate(spec);
  write_file(output, serialize_graph_string(gen.graph));
  json out{{"command", "gen"},
           {"family", family},
           {"n", gen.graph.vertex_count()},
           {"m", gen.graph.edge_count()},
           {"d_max", gen.graph.max_degree()},
           {"seed", seed},
           {"noise_edges", noise_edges},
           {"output", output}};
  if (!witness_out.empty()) {
    if (!gen.witness) throw data_error("family " + family + " does not emit a witness decomposition");
    write_file(witness_out, serialize_decomposition_string(*gen.witness));
    out["witness_output"] = witness_out;
    out["witness_width"] = gen.witness->width();
  }
  emit(out);
  return 0;
}

// ----------------------------------------------------------------- partition

int cmd_partition(const std::string& input, const std::string& output, const std::string& mode,
                  const BudgetFlags& budget) {
  Graph g = parse_graph_file(input);
  OracleParams params = budget.resolve();

  Partition part;
  std::uint64_t queries_total = 0, max_per_call = 0;
  if (mode == "global") {
    QueryLedger ledger;
    part = global_partition(g, params, ledger);
    queries_total = ledger.total();
  } else {
    // one session per worker; answers are query-order independent
    const int threads = thread_count();
    const int n = g.vertex_count();
    std::vector<VertexSet> answers(n);
    std::vector<std::uint64_t> totals(threads, 0), maxima(threads, 0);
    parallel_chunks(n, threads, [&](long long begin, long long end, int slot) {
      OracleSession session(g, params, /*cache=*/true);
      for (long long v = begin; v < end; ++v) answers[v] = session.query(static_cast<int>(v));
      totals[slot] = session.ledger().total();
      for (const auto& snap : session.ledger().snapshots())
        maxima[slot] = std::max(maxima[slot], snap.queries);
    });
    for (int t = 0; t < threads; ++t) {
      queries_total += totals[t];
      max_per_call = std::max(max_per_call, maxima[t]);
    }
    part.component_of.assign(n, -1);
    for (int v = 0; v < n; ++v) {
      if (part.component_of[v] >= 0) continue;
      int id = part.component_count();
      for (int w : answers[v]) part.component_of[w] = id;
      part.components.push_back(answers[v]);
    }
    part.cut_edges = count_cut_edges(g, part.component_of);
  }

  std::ostringstream body;
  serialize_partition(part, body);
  if (!output.empty()) write_file(output, body.str());

  std::size_t max_component = 0;
  for (const auto& c : part.components) max_component = std::max(max_component, c.size());
  json out{{"command", "partition"},
           {"mode", mode},
           {"input", input},
           {"n", g.vertex_count()},
           {"m", g.edge_count()},
           {"cut_edges", part.cut_edges},
           {"max_component", max_component},
           {"components", part.component_count()},
           {"queries_total", queries_total},
           {"max_queries_per_call", max_per_call},
           {"seed", params.seed}};
  out.update(params_json(params));
  if (!output.empty()) out["output"] = output;
  emit(out);
  return 0;
}

// -------------------------------------------------------------- oracle-query

int cmd_oracle_query(const std::string& input, int q, const BudgetFlags& budget) {
  Graph g = parse_graph_file(input);
  OracleParams params = budget.resolve();
  OracleSession session(g, params, /*cache=*/false);
  VertexSet component = session.query(q);
  json out{{"command", "oracle-query"}, {"q", q}, {"component", component},
           {"queries", session.ledger().total()}};
  out.update(params_json(params));
  emit(out);
  return 0;
}

// --------------------------------------------------------- find-neighborhood

int cmd_find_neighborhood(const std::string& input, int v, long long k, const std::string& delta,
                          int c) {
  Graph g = parse_graph_file(input);
  SearchBudget budget{k, parse_rational(delta), c};
  QueryLedger ledger;
  VertexSet s = find_neighborhood(g, ledger, v, budget);
  bool isolated = is_isolated_neighborhood(g, v, s, budget.k, budget.delta, budget.c);
  json out{{"command", "find-neighborhood"},
           {"v", v},
           {"set", s},
           {"isolated", isolated},
           {"k", k},
           {"delta", to_string(budget.delta)},
           {"c", c},
           {"queries", ledger.total()}};
  emit(out);
  return 0;
}

// ------------------------------------------------------------------ estimate

Problem problem_from_string(const std::string& name) {
  if (name == "matching") return Problem::matching;
  if (name == "vertex-cover" || name == "vertex_cover") return Problem::vertex_cover;
  if (name == "dominating-set" || name == "dominating_set") return Problem::dominating_set;
  throw std::invalid_argument("unknown problem: " + name);
}

int cmd_estimate(const std::string& input, const std::string& problem_name, double epsilon,
                 const BudgetFlags& budget) {
  Graph g = parse_graph_file(input);
  OracleParams params = budget.resolve();
  Problem problem = problem_from_string(problem_name);
  // the estimator materializes the partition once; answers equal the
  // per-query oracle by the local/global equivalence contract
  Partition part = global_partition(g, params);
  EstimateReport report =
      estimate_optimum(g, access_from_partition(part), problem, epsilon, params.seed, params.k);
  json out{{"command", "estimate"},
           {"problem", to_string(problem)},
           {"estimate", report.estimate},
           {"samples", report.samples},
           {"epsilon", epsilon},
           {"n", g.vertex_count()},
           {"m", g.edge_count()},
           {"cut_edges", part.cut_edges}};
  out.update(params_json(params));
  emit(out);
  return 0;
}

// ---------------------------------------------------------------------- test

PropertySpec property_from_flags(const std::string& name, int h, int colors) {
  PropertySpec spec;
  if (name == "forest") spec.kind = PropertyKind::forest;
  else if (name == "cactus") spec.kind = PropertyKind::cactus;
  else if (name == "treewidth") spec.kind = PropertyKind::treewidth_le_h;
  else if (name == "colorable") spec.kind = PropertyKind::k_colorable;
  else throw std::invalid_argument("unknown property: " + name);
  spec.h = h;
  spec.colors = colors;
  return spec;
}

int cmd_test(const std::string& input, const std::string& property_name, int prop_h, int colors,
             double epsilon, const BudgetFlags& budget) {
  Graph g = parse_graph_file(input);
  OracleParams params = budget.resolve();
  PropertySpec property = property_from_flags(property_name, prop_h, colors);
  Partition part = global_partition(g, params);
  TestVerdict verdict =
      test_property(g, access_from_partition(part), property, epsilon, params.seed, params.k);
  json out{{"command", "test"},
           {"property", to_string(property.kind)},
           {"accept", verdict.accept},
           {"epsilon", epsilon},
           {"n", g.vertex_count()},
           {"m", g.edge_count()}};
  if (verdict.violating_component) out["violating_component"] = *verdict.violating_component;
  if (verdict.cut_fraction_estimate) out["cut_fraction_estimate"] = *verdict.cut_fraction_estimate;
  out.update(params_json(params));
  emit(out);
  return 0;
}

// --------------------------------------------------------------------- bench

int cmd_bench(const std::string& family, const std::string& sizes_csv, int d,
              const BudgetFlags& budget, long long samples) {
  std::vector<long long> sizes;
  std::stringstream ss(sizes_csv);
  std::string token;
  while (std::getline(ss, token, ',')) sizes.push_back(std::stoll(token));

  OracleParams params = budget.resolve();
  std::cout << "n,max_queries_per_call\n";
  for (long long n : sizes) {
    GenSpec spec;
    spec.family = family_from_string(family);
    spec.n = static_cast<int>(n);
    spec.d = d;
    spec.seed = budget.seed;
    Generated gen = generate(spec);
    const Graph& g = gen.graph;

    long long sample_count = std::min<long long>(samples, g.vertex_count());
    std::mt19937_64 pick(params.seed ^ 0xD1B54A32D192ED03ULL);
    std::vector<int> targets(sample_count);
    for (auto& t : targets) t = static_cast<int>(pick() % static_cast<std::uint64_t>(g.vertex_count()));

    const int threads = thread_count();
    std::vector<std::uint64_t> maxima(threads, 0);
    parallel_chunks(sample_count, threads, [&](long long begin, long long end, int slot) {
      for (long long i = begin; i < end; ++i) {
        // fresh cold session per call: the snapshot is the true per-call cost
        OracleSession session(g, params, /*cache=*/false);
        session.query(targets[i]);
        maxima[slot] = std::max(maxima[slot], session.ledger().snapshots().back().queries);
      }
    });
    std::uint64_t max_per_call = 0;
    for (auto m : maxima) max_per_call = std::max(max_per_call, m);
    std::cout << n << ',' << max_per_call << '\n';
  }
  return 0;
}

// -------------------------------------------------------------------- decomp

int cmd_decomp(const std::string& graph_path, const std::string& decomp_path,
               const std::string& op, const std::string& output) {
  Graph g = parse_graph_file(graph_path);
  if (op == "treewidth") {
    auto [width, witness] = exact_treewidth(g);
    if (!output.empty()) write_file(output, serialize_decomposition_string(witness));
    json out{{"command", "decomp"}, {"op", op}, {"treewidth", width}};
    if (!output.empty()) out["output"] = output;
    emit(out);
    return 0;
  }
  if (decomp_path.empty()) throw std::invalid_argument("op '" + op + "' needs --decomp");
  TreeDecomposition d = parse_decomposition_file(decomp_path);
  if (op == "validate") {
    auto report = validate(g, d);
    json out{{"command", "decomp"}, {"op", op}, {"valid", report.ok}};
    if (!report.ok) out["violation"] = report.violation;
    emit(out);
    return 0;
  }
  if (op == "normalize") {
    TreeDecomposition norm = normalize(g, d);
    if (!output.empty()) write_file(output, serialize_decomposition_string(norm));
    json out{{"command", "decomp"},
             {"op", op},
             {"width_before", d.width()},
             {"width_after", norm.width()},
             {"bags_before", d.bag_count()},
             {"bags_after", norm.bag_count()}};
    if (!output.empty()) out["output"] = output;
    emit(out);
    return 0;
  }
  throw std::invalid_argument("unknown decomp op: " + op);
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"partitioning oracle for bounded-treewidth bounded-degree graphs"};
  app.require_subcommand(1);
  // --h is a domain flag (treewidth bound), so help is --help only
  app.set_help_flag("--help", "print help");
  auto add_subcommand = [&](const std::string& name, const std::string& desc) {
    auto* cmd = app.add_subcommand(name, desc);
    cmd->set_help_flag("--help", "print help");
    return cmd;
  };

  // gen
  auto* gen = add_subcommand("gen", "generate a seeded instance");
  std::string gen_family = "forest", gen_output = "graph.txt", gen_witness;
  int gen_n = 1000, gen_d = 3, gen_h = 2;
  std::uint64_t gen_seed = 0;
  long long gen_noise = 0;
  gen->add_option("--family", gen_family, "forest | cactus | partial-ktree | grid");
  gen->add_option("--n", gen_n, "vertex count");
  gen->add_option("--d", gen_d, "degree bound");
  gen->add_option("--h", gen_h, "treewidth target (partial-ktree)");
  gen->add_option("--seed", gen_seed, "generator seed");
  gen->add_option("--noise-edges", gen_noise, "extra random edges");
  gen->add_option("--output", gen_output, "graph file to write")->required();
  gen->add_option("--witness-output", gen_witness, "decomposition file to write");

  // partition
  auto* partition = add_subcommand("partition", "partition a graph (global or local-sweep)");
  std::string part_input, part_output, part_mode = "global";
  BudgetFlags part_budget;
  partition->add_option("--input", part_input)->required();
  partition->add_option("--output", part_output, "partition file to write");
  partition->add_option("--mode", part_mode, "global | local-sweep")
      ->check(CLI::IsMember({"global", "local-sweep"}));
  part_budget.attach(partition);

  // oracle-query
  auto* oq = add_subcommand("oracle-query", "answer one oracle query");
  std::string oq_input;
  int oq_q = 0;
  BudgetFlags oq_budget;
  oq->add_option("--input", oq_input)->required();
  oq->add_option("--q", oq_q, "query vertex")->required();
  oq_budget.attach(oq);

  // find-neighborhood
  auto* fn = add_subcommand("find-neighborhood", "search one isolated neighborhood");
  std::string fn_input, fn_delta = "1/2";
  int fn_v = 0, fn_c = 2;
  long long fn_k = 10;
  fn->add_option("--input", fn_input)->required();
  fn->add_option("--v", fn_v)->required();
  fn->add_option("--k", fn_k);
  fn->add_option("--delta", fn_delta);
  fn->add_option("--c", fn_c);

  // estimate
  auto* est = add_subcommand("estimate", "additive-eps*n optimum estimate");
  std::string est_input, est_problem = "matching";
  double est_eps = 0.2;
  BudgetFlags est_budget;
  est->add_option("--input", est_input)->required();
  est->add_option("--problem", est_problem, "matching | vertex-cover | dominating-set");
  est->add_option("--epsilon", est_eps, "additive accuracy");
  est_budget.attach(est, /*with_theoretical=*/false);

  // test
  auto* tst = add_subcommand("test", "property tester");
  std::string tst_input, tst_property = "forest";
  int tst_h = 1, tst_colors = 2;
  double tst_eps = 0.1;
  BudgetFlags tst_budget;
  tst->add_option("--input", tst_input)->required();
  tst->add_option("--property", tst_property, "forest | cactus | treewidth | colorable");
  tst->add_option("--property-h", tst_h, "width bound for the treewidth property");
  tst->add_option("--colors", tst_colors, "colors for the colorable property");
  tst->add_option("--epsilon", tst_eps, "distance parameter");
  tst_budget.attach(tst, /*with_theoretical=*/false);

  // bench
  auto* bench = add_subcommand("bench", "query count versus n sweep (CSV)");
  std::string bench_family = "forest", bench_sizes = "1000,10000";
  int bench_d = 3;
  long long bench_samples = 300;
  BudgetFlags bench_budget;
  bench_budget.k = 20;
  bench_budget.delta = "1/5";
  bench->add_option("--family", bench_family);
  bench->add_option("--sizes", bench_sizes, "comma separated vertex counts");
  bench->add_option("--d", bench_d, "generator degree bound");
  bench->add_option("--samples", bench_samples, "oracle calls sampled per size");
  bench_budget.attach(bench, /*with_theoretical=*/false);

  // decomp
  auto* dec = add_subcommand("decomp", "validate / normalize / treewidth");
  std::string dec_graph, dec_decomp, dec_op = "validate", dec_output;
  dec->add_option("--input", dec_graph, "graph file")->required();
  dec->add_option("--decomp", dec_decomp, "decomposition file");
  dec->add_option("--op", dec_op)->check(CLI::IsMember({"validate", "normalize", "treewidth"}));
  dec->add_option("--output", dec_output);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (gen->parsed())
      return cmd_gen(gen_family, gen_n, gen_d, gen_h, gen_seed, gen_noise, gen_output, gen_witness);
    if (partition->parsed()) return cmd_partition(part_input, part_output, part_mode, part_budget);
    if (oq->parsed()) return cmd_oracle_query(oq_input, oq_q, oq_budget);
    if (fn->parsed()) return cmd_find_neighborhood(fn_input, fn_v, fn_k, fn_delta, fn_c);
    if (est->parsed()) return cmd_estimate(est_input, est_problem, est_eps, est_budget);
    if (tst->parsed()) return cmd_test(tst_input, tst_property, tst_h, tst_colors, tst_eps, tst_budget);
    if (bench->parsed()) return cmd_bench(bench_family, bench_sizes, bench_d, bench_budget, bench_samples);
    if (dec->parsed()) return cmd_decomp(dec_graph, dec_decomp, dec_op, dec_output);
  } catch (const cap_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const data_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 1;
}

}  // namespace twpart
