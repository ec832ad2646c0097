#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "dmc/bench.hpp"
#include "dmc/cutter.hpp"
#include "dmc/errors.hpp"
#include "dmc/fraccut.hpp"
#include "dmc/graph.hpp"
#include "dmc/instances.hpp"
#include "dmc/oracle.hpp"
#include "dmc/parallel.hpp"
#include "dmc/reductions.hpp"

using nlohmann::json;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw dmc::Error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw dmc::Error("cannot write " + path);
  out << content;
}

double now_ms() {
  using clock = std::chrono::steady_clock;
  return std::chrono::duration<double, std::milli>(clock::now().time_since_epoch()).count();
}

json cut_to_json(const dmc::CutSet& cut) {
  json j;
  j["flavor"] = cut.flavor == dmc::Flavor::vertex ? "vertex" : "edge";
  if (cut.flavor == dmc::Flavor::vertex) {
    json ids = json::array();
    for (int v : cut.nodes) ids.push_back(v + 1);
    j["nodes"] = ids;
  } else {
    json arcs = json::array();
    for (const dmc::Arc& a : cut.arcs) arcs.push_back({a.from + 1, a.to + 1});
    j["arcs"] = arcs;
  }
  return j;
}

// Closest unweighted demand distance; the algorithms only separate pairs at
// distance >= L, so a usable L must not exceed this.
std::optional<double> max_usable_L(const dmc::Instance& inst) {
  std::optional<double> best;
  for (auto [s, t] : inst.resolve_demands()) {
    int d = dmc::vdist_unweighted(inst.graph, s)[t];
    if (d == dmc::kUnreachable) continue;  // vacuous pair
    if (!best || d < *best) best = d;
  }
  return best;
}

int run_solve(const std::string& path, const std::string& algo, std::optional<double> L_flag,
              uint64_t seed, int trials, bool trace, bool reuse_basis,
              const std::string& json_out) {
  dmc::Instance inst = dmc::load_instance(path);

  dmc::ReductionMapping route;
  bool routed = inst.flavor == dmc::Flavor::edge;
  if (routed) route = dmc::edge_to_vertex(inst);
  const dmc::Instance& work = routed ? route.transformed : inst;

  std::optional<double> usable = max_usable_L(work);
  if (usable && *usable < 1.0)
    throw dmc::Error("a demand pair is joined by a direct arc; no interior cut exists");
  double L = L_flag ? *L_flag : usable.value_or(1.0);
  if (usable && L > *usable)
    throw dmc::Error("scale " + std::to_string(L) + " exceeds the closest demand distance " +
                     std::to_string(*usable) + "; the cut would skip that pair");

  dmc::AlgoConfig cfg;
  cfg.L = L;
  cfg.seed = seed;
  cfg.trials = trials;
  cfg.collect_trace = trace;
  cfg.reuse_lp_basis = reuse_basis;

  double t0 = now_ms();
  dmc::CutResult res = algo == "gupta" ? dmc::gupta_baseline(work.graph, cfg)
                                       : dmc::vertex_cut_main(work.graph, cfg);
  double t1 = now_ms();

  dmc::CutSet cut = routed ? route.pull_back(res.cut) : res.cut;
  double cost = dmc::cut_cost(inst, cut);
  auto violated = dmc::check_cut(inst, cut);
  double frac = dmc::fractional_multicut(inst).value;

  json report;
  report["command"] = "solve";
  report["digest"] = dmc::instance_digest(inst);
  report["config"] = {{"algo", algo},          {"L", L},
                      {"seed", seed},          {"trials", trials},
                      {"trace", trace},        {"reuse_lp_basis", reuse_basis}};
  report["cut"] = cut_to_json(cut);
  report["cut_cost"] = cost;
  report["fractional_value"] = frac;
  report["epochs"] = res.epochs;
  report["rounds"] = res.rounds;
  report["trials"] = res.trials_run;
  report["seed"] = seed;
  report["wall_ms"] = t1 - t0;
  if (trace && res.trace) {
    json epochs = json::array();
    for (const dmc::EpochRecord& e : res.trace->epochs)
      epochs.push_back({{"epoch", e.epoch},
                        {"mass_start", e.mass_start},
                        {"pairs_start", e.pairs_start},
                        {"rounds", e.rounds_in_epoch},
                        {"cap", e.cap},
                        {"max_free_weight", e.max_free_weight}});
    json rounds = json::array();
    for (const dmc::RoundRecord& r : res.trace->rounds) {
      json added = json::array();
      for (int v : r.added) added.push_back(v + 1);
      rounds.push_back({{"round", r.round},
                        {"epoch", r.epoch},
                        {"pair", {r.pair.first + 1, r.pair.second + 1}},
                        {"d", r.d},
                        {"added", added}});
    }
    report["trace"] = {{"factor", res.trace->factor}, {"epochs", epochs}, {"rounds", rounds}};
  }
  if (!json_out.empty()) write_file(json_out, report.dump(2) + "\n");

  std::cout << "cut cost " << cost << " (" << cut.size() << " elements), fractional lower bound "
            << frac << ", " << res.rounds << " rounds, " << res.epochs << " epoch(s)\n";
  if (!violated.empty()) {
    std::cerr << "cut fails to separate " << violated.size() << " demand pair(s)\n";
    return 2;
  }
  return 0;
}

int run_exact(const std::string& path, int budget, const std::string& cut_out) {
  dmc::Instance inst = dmc::load_instance(path);
  dmc::CutSet cut = dmc::exact_integral_multicut(inst, budget);
  if (!cut_out.empty()) dmc::save_cut(cut, cut_out);
  std::cout << "optimum " << cut.cost << "\n" << dmc::serialize_cut(cut);
  return 0;
}

int run_gap(const std::string& path, int budget, size_t path_limit) {
  dmc::Instance inst = dmc::load_instance(path);
  dmc::OracleReport rep = dmc::empirical_gap(inst, budget, path_limit);
  std::cout << "gap " << rep.gap << "\n"
            << "integral " << rep.integral_opt << "\n"
            << "fractional " << rep.fractional_opt << "\n"
            << "paths " << rep.paths_enumerated << "\n";
  return 0;
}

int run_verify(const std::string& path, const std::string& cut_path) {
  dmc::Instance inst = dmc::load_instance(path);
  dmc::CutSet cut = dmc::load_cut(cut_path);
  auto violated = dmc::check_cut(inst, cut);
  if (violated.empty()) {
    std::cout << "valid cut, cost " << dmc::cut_cost(inst, cut) << "\n";
    return 0;
  }
  for (auto [s, t] : violated)
    std::cout << "uncut pair " << s + 1 << " -> " << t + 1 << "\n";
  return 2;
}

int run_reduce(const std::string& path, const std::string& to, std::string out,
               std::string map_out, double heavy_c) {
  dmc::Instance inst = dmc::load_instance(path);
  dmc::ReductionMapping m;
  if (to == "vertex") {
    m = dmc::edge_to_vertex(inst);
  } else if (to == "edge") {
    m = dmc::vertex_to_edge(inst);
  } else if (to == "unit-cost") {
    m = dmc::to_unit_costs(inst);
  } else if (to == "uniform-weight") {
    m = dmc::to_uniform_weights(inst);
  } else if (to == "heavy") {
    m = dmc::heavy_node_preprocess(inst, heavy_c);
  } else {
    throw dmc::Error("unknown reduction target: " + to);
  }
  if (out.empty()) out = path + "." + to + ".dmc";
  if (map_out.empty()) map_out = out + ".map";
  dmc::save_instance(m.transformed, out);
  write_file(map_out, dmc::serialize_mapping(m));
  std::cout << "wrote " << out << " and " << map_out << "\n";
  return 0;
}

int run_pullback(const std::string& original, const std::string& transformed,
                 const std::string& map_path, const std::string& cut_path,
                 const std::string& out) {
  dmc::Instance orig = dmc::load_instance(original);
  dmc::Instance trans = dmc::load_instance(transformed);
  dmc::ReductionMapping m = dmc::parse_mapping(read_file(map_path), orig, std::move(trans));
  dmc::CutSet cut = dmc::load_cut(cut_path);
  dmc::CutSet pulled = m.pull_back(cut);
  if (!out.empty()) dmc::save_cut(pulled, out);
  std::cout << "pulled-back cut cost " << pulled.cost << " (" << pulled.size() << " elements)\n";
  auto violated = dmc::check_cut(orig, pulled);
  if (!violated.empty()) {
    std::cerr << "pulled-back cut fails to separate " << violated.size() << " demand pair(s)\n";
    return 2;
  }
  return 0;
}

int run_gen(const std::string& family, int n, int layers, int width, int rows, int cols,
            double prob, uint64_t seed, std::optional<double> L, const std::string& out) {
  auto fam = dmc::family_from_name(family);
  if (!fam) throw dmc::Error("unknown family: " + family);
  dmc::GeneratorSpec spec;
  spec.family = *fam;
  spec.n = n;
  spec.layers = layers;
  spec.width = width;
  spec.rows = rows;
  spec.cols = cols;
  spec.arc_prob = prob;
  spec.seed = seed;
  spec.threshold_L = L;
  std::string text = dmc::serialize_instance(dmc::generate(spec));
  if (out.empty())
    std::cout << text;
  else
    write_file(out, text);
  return 0;
}

int run_bench_cmd(const std::string& family, const std::string& sizes_str,
                  const std::string& L_rule, int seeds, bool no_oracle, int oracle_budget,
                  double arc_prob, uint64_t gen_seed, const std::string& csv_out) {
  dmc::BenchOptions opt;
  opt.family = family;
  opt.L_rule = L_rule;
  opt.seeds = seeds;
  opt.with_oracle = !no_oracle;
  opt.oracle_budget = oracle_budget;
  opt.arc_prob = arc_prob;
  opt.gen_seed = gen_seed;
  std::stringstream ss(sizes_str);
  std::string tok;
  while (std::getline(ss, tok, ','))
    if (!tok.empty()) opt.sizes.push_back(std::stoi(tok));
  if (opt.sizes.empty()) throw dmc::Error("no sizes given");

  std::string csv = dmc::bench_csv(dmc::run_bench(opt));
  if (csv_out.empty())
    std::cout << csv;
  else {
    write_file(csv_out, csv);
    std::cout << "wrote " << csv_out << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"directed multicut solver and experiment toolkit"};
  app.require_subcommand(1);
  int workers = 0;
  app.add_option("--workers", workers, "worker threads (0 = library default)");

  auto* solve = app.add_subcommand("solve", "run a randomized cut algorithm");
  std::string solve_file, solve_algo = "main", solve_json;
  std::optional<double> solve_L;
  uint64_t solve_seed = 1;
  int solve_trials = 0;
  bool solve_trace = false, solve_reuse = false;
  solve->add_option("file", solve_file, "instance file")->required();
  solve->add_option("--algo", solve_algo, "main | gupta")
      ->check(CLI::IsMember({"main", "gupta"}));
  solve->add_option("--L", solve_L, "distance scale (default: closest demand distance)");
  solve->add_option("--seed", solve_seed, "random seed");
  solve->add_option("--trials", solve_trials, "independent trials (0 = auto)");
  solve->add_flag("--trace", solve_trace, "embed the per-round trace in the report");
  solve->add_flag("--reuse-lp-basis", solve_reuse, "warm-start the per-pair LP solves");
  solve->add_option("--json", solve_json, "write the run report here");

  auto* exact = app.add_subcommand("exact", "exact integral multicut (small instances)");
  std::string exact_file, exact_cut_out;
  int exact_budget = 24;
  exact->add_option("file", exact_file, "instance file")->required();
  exact->add_option("--budget", exact_budget, "max cuttable elements");
  exact->add_option("--cut-out", exact_cut_out, "write the witness cut here");

  auto* gap = app.add_subcommand("gap", "integral vs fractional optimum");
  std::string gap_file;
  int gap_budget = 24;
  size_t gap_paths = 100000;
  gap->add_option("file", gap_file, "instance file")->required();
  gap->add_option("--budget", gap_budget, "max cuttable elements");
  gap->add_option("--path-limit", gap_paths, "max enumerated demand paths");

  auto* verify = app.add_subcommand("verify", "check a cut file against an instance");
  std::string verify_file, verify_cut;
  verify->add_option("file", verify_file, "instance file")->required();
  verify->add_option("cut", verify_cut, "cut file")->required();

  auto* reduce = app.add_subcommand("reduce", "transform an instance");
  std::string reduce_file, reduce_to, reduce_out, reduce_map;
  double reduce_heavy_c = 0.5;
  reduce->add_option("file", reduce_file, "instance file")->required();
  reduce->add_option("--to", reduce_to, "vertex | edge | unit-cost | uniform-weight | heavy")
      ->required()
      ->check(CLI::IsMember({"vertex", "edge", "unit-cost", "uniform-weight", "heavy"}));
  reduce->add_option("--out", reduce_out, "transformed instance path");
  reduce->add_option("--map-out", reduce_map, "mapping sidecar path");
  reduce->add_option("--heavy-c", reduce_heavy_c, "exponent for the heavy-node threshold");

  auto* pullback = app.add_subcommand("pullback", "map a transformed-instance cut back");
  std::string pb_original, pb_transformed, pb_map, pb_cut, pb_out;
  pullback->add_option("original", pb_original, "original instance")->required();
  pullback->add_option("--transformed", pb_transformed, "transformed instance")->required();
  pullback->add_option("--map", pb_map, "mapping sidecar")->required();
  pullback->add_option("--cut", pb_cut, "cut on the transformed instance")->required();
  pullback->add_option("--out", pb_out, "write the pulled-back cut here");

  auto* gen = app.add_subcommand("gen", "generate an instance");
  std::string gen_family = "path", gen_out;
  int gen_n = 10, gen_layers = 4, gen_width = 3, gen_rows = 3, gen_cols = 3;
  double gen_prob = 0.5;
  uint64_t gen_seed = 1;
  std::optional<double> gen_L;
  gen->add_option("--family", gen_family, "figure1 | path | layered | random_dag | grid");
  gen->add_option("--n", gen_n, "node count (path, random_dag)");
  gen->add_option("--layers", gen_layers, "layer count (layered)");
  gen->add_option("--width", gen_width, "layer width (layered)");
  gen->add_option("--rows", gen_rows, "grid rows");
  gen->add_option("--cols", gen_cols, "grid cols");
  gen->add_option("--prob", gen_prob, "arc probability");
  gen->add_option("--seed", gen_seed, "generator seed");
  gen->add_option("--L", gen_L, "attach threshold demands at this scale");
  gen->add_option("--out", gen_out, "output path (default stdout)");

  auto* bench = app.add_subcommand("bench", "size sweep over both algorithms");
  std::string bench_family = "layered", bench_sizes, bench_rule = "n^(2/3)", bench_csv_out;
  int bench_seeds = 1, bench_oracle_budget = 24;
  bool bench_no_oracle = false;
  double bench_prob = 0.5;
  uint64_t bench_gen_seed = 1;
  bench->add_option("--family", bench_family, "layered | random_dag | path");
  bench->add_option("--sizes", bench_sizes, "comma-separated node counts")->required();
  bench->add_option("--L-rule", bench_rule, "number, n, or n^(p/q)");
  bench->add_option("--seeds", bench_seeds, "seeds per (instance, algorithm)");
  bench->add_flag("--no-oracle", bench_no_oracle, "skip exact oracle rows");
  bench->add_option("--oracle-budget", bench_oracle_budget, "oracle cuttable-element budget");
  bench->add_option("--arc-prob", bench_prob, "arc probability (random_dag)");
  bench->add_option("--gen-seed", bench_gen_seed, "instance generator seed");
  bench->add_option("--csv", bench_csv_out, "CSV output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    if (workers > 0) dmc::set_thread_count(workers);
    if (solve->parsed())
      return run_solve(solve_file, solve_algo, solve_L, solve_seed, solve_trials, solve_trace,
                       solve_reuse, solve_json);
    if (exact->parsed()) return run_exact(exact_file, exact_budget, exact_cut_out);
    if (gap->parsed()) return run_gap(gap_file, gap_budget, gap_paths);
    if (verify->parsed()) return run_verify(verify_file, verify_cut);
    if (reduce->parsed())
      return run_reduce(reduce_file, reduce_to, reduce_out, reduce_map, reduce_heavy_c);
    if (pullback->parsed()) return run_pullback(pb_original, pb_transformed, pb_map, pb_cut, pb_out);
    if (gen->parsed())
      return run_gen(gen_family, gen_n, gen_layers, gen_width, gen_rows, gen_cols, gen_prob,
                     gen_seed, gen_L, gen_out);
    if (bench->parsed())
      return run_bench_cmd(bench_family, bench_sizes, bench_rule, bench_seeds, bench_no_oracle,
                           bench_oracle_budget, bench_prob, bench_gen_seed, bench_csv_out);
  } catch (const dmc::BudgetExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return gap->parsed() ? 3 : 1;
  } catch (const dmc::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
