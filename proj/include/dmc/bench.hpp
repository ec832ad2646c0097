#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dmc/graph.hpp"

namespace dmc {

// One benchmark cell: a single algorithm invocation on a generated instance,
// or the exact oracle's answer for it (algo "oracle", seed 0).
struct BenchRow {
  std::string family;
  int n = 0;
  double L = 0.0;
  uint64_t seed = 0;
  std::string algo;
  double cut_cost = 0.0;
  double frac_value = 0.0;
  int epochs = 0;
  int rounds = 0;
  double millis = 0.0;
};

struct BenchOptions {
  std::string family = "layered";
  std::vector<int> sizes;
  std::string L_rule = "n^(2/3)";
  int seeds = 1;
  bool reuse_lp_basis = true;
  bool with_oracle = true;  // emit an oracle row when the instance fits its budget
  int oracle_budget = 24;
  double arc_prob = 0.5;    // random_dag family
  uint64_t gen_seed = 1;
};

// Scale rule for a size sweep: either a plain number, "n", or "n^(p/q)"
// (evaluated as ceil(n^(p/q))). Throws Error on anything else.
double eval_L_rule(const std::string& rule, int n);

// The instance a bench cell runs on: one deterministic instance per
// (family, size), threshold demands at the L the rule gives.
Instance bench_instance(const BenchOptions& opt, int size);

// Runs the full sweep serially and returns rows sorted by
// (family, n, algo, seed). Every algorithm run is validated on the spot:
// the cut must separate all demand pairs, and runs of the epoch algorithm
// must show capped weights, a real mass drop at every epoch switch, and an
// epoch count within the logarithmic bound. A violation throws Error rather
// than producing a row.
std::vector<BenchRow> run_bench(const BenchOptions& opt);

// Header plus one comma-separated line per row.
std::string bench_csv(const std::vector<BenchRow>& rows);

}  // namespace dmc
