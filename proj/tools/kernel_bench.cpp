#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>

#include "CLI11.hpp"

#include "dmc/cutter.hpp"
#include "dmc/graph.hpp"
#include "dmc/instances.hpp"
#include "dmc/parallel.hpp"

namespace {

double time_ms(const std::function<void()>& fn, int reps) {
  using clock = std::chrono::steady_clock;
  double best = 1e300;
  for (int i = 0; i < reps; ++i) {
    auto t0 = clock::now();
    fn();
    auto t1 = clock::now();
    best = std::min(best, std::chrono::duration<double, std::milli>(t1 - t0).count());
  }
  return best;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"serial vs parallel kernel timings"};
  int layers = 40, width = 5, reps = 3, threads = 0;
  double L = 0.0;
  uint64_t seed = 1;
  app.add_option("--layers", layers, "layer count");
  app.add_option("--width", width, "layer width");
  app.add_option("--L", L, "distance scale (0 = n^(2/3))");
  app.add_option("--seed", seed, "seed");
  app.add_option("--reps", reps, "repetitions, best-of");
  app.add_option("--threads", threads, "parallel thread count (0 = hardware)");
  CLI11_PARSE(app, argc, argv);

  dmc::Instance inst = dmc::gen_layered(layers, width, 1.0, seed);
  const dmc::DirectedGraph& g = inst.graph;
  const int n = g.node_count();
  if (L <= 0.0) L = std::ceil(std::pow(n, 2.0 / 3.0));
  const int par = threads > 0 ? threads : dmc::hardware_threads();

  std::printf("layered graph: %d nodes, %d arcs, L = %g, parallel threads = %d\n", n,
              g.arc_count(), L, par);

  double pairs_serial = time_ms([&] { dmc::demand_pairs_at_least_serial(g, L); }, reps);
  dmc::set_thread_count(par);
  double pairs_par = time_ms([&] { dmc::demand_pairs_at_least_parallel(g, L); }, reps);
  std::printf("%-28s serial %9.2f ms   parallel %9.2f ms   speedup %.2fx\n", "demand pair scan",
              pairs_serial, pairs_par, pairs_serial / pairs_par);

  dmc::AlgoConfig cfg;
  cfg.L = L;
  cfg.seed = seed;
  cfg.trials = 1;
  cfg.reuse_lp_basis = true;

  dmc::set_thread_count(1);
  double cut_serial = time_ms([&] { dmc::vertex_cut_main(g, cfg); }, reps);
  dmc::set_thread_count(par);
  double cut_par = time_ms([&] { dmc::vertex_cut_main(g, cfg); }, reps);
  std::printf("%-28s serial %9.2f ms   parallel %9.2f ms   speedup %.2fx\n",
              "epoch cut (LP refresh)", cut_serial, cut_par, cut_serial / cut_par);

  dmc::set_thread_count(1);
  double gupta_serial = time_ms([&] { dmc::gupta_baseline(g, cfg); }, reps);
  dmc::set_thread_count(par);
  double gupta_par = time_ms([&] { dmc::gupta_baseline(g, cfg); }, reps);
  std::printf("%-28s serial %9.2f ms   parallel %9.2f ms   speedup %.2fx\n", "level-cut baseline",
              gupta_serial, gupta_par, gupta_serial / gupta_par);
  return 0;
}
