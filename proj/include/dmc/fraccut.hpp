#pragma once

#include <span>
#include <utility>
#include <vector>

#include "dmc/graph.hpp"

namespace dmc {

// Node (or arc) weights, dense over element ids.
struct WeightFunction {
  std::vector<double> values;

  double at(int v) const { return values[v]; }
  double sum_free(const std::vector<char>& frozen) const {
    double s = 0.0;
    for (size_t v = 0; v < values.size(); ++v)
      if (!frozen[v]) s += values[v];
    return s;
  }
};

// weights carry the objective variables only: frozen elements stay 0 in the
// vector (they are counted at weight 1 inside the LP but cost nothing), so
// value always equals the cost-weighted sum of weights.
struct LPResult {
  WeightFunction weights;
  double value = 0.0;
  int constraint_count = 0;  // path constraints generated over the whole solve
  int iterations = 0;        // simplex pivots over the whole solve
};

struct LpOptions {
  double sep_eps = 1e-6;      // a path counts as violated below 1 - sep_eps
  bool drop_slack_rows = false;  // keep the working set near the binding rows
};

// Persistent constraint set for one demand pair, reused across solves when
// the caller opts into warm starts. Rows store interior element ids.
struct PairLpState {
  std::vector<std::vector<int>> rows;
};

// Generic path-covering LP, solved by constraint generation:
//   minimize  sum_e cost(e) * w(e)   over free elements e
//   s.t.      every s~>t path (per demand pair) has weighted length >= 1,
//             frozen elements counted at 1, 0 <= w(e) <= ub(e)
// Separation is a shortest path per pair; a violated path with no free
// element (a direct arc in vertex flavor) raises Infeasible; so does a path
// whose free elements cannot reach 1 under the caps. Pivot and row budgets
// raise SolverStall.
LPResult solve_path_lp(const DirectedGraph& g, Flavor flavor,
                       std::span<const std::pair<int, int>> pairs, std::span<const double> costs,
                       std::span<const double> ub, const std::vector<char>& frozen,
                       const LpOptions& opt, PairLpState* warm = nullptr);

// Minimum fractional (s,t) vertex cut with frozen nodes at weight 1 and free
// node weights capped at `cap`. Unit objective over free nodes.
LPResult min_capped_vertex_cut(const DirectedGraph& g, const std::vector<char>& frozen, int s,
                               int t, double cap, const LpOptions& opt = {},
                               PairLpState* warm = nullptr);

// Minimum-cost fractional multicut of the instance over its resolved demand
// pairs. Weights are unbounded above; vertex or edge flavor.
LPResult fractional_multicut(const Instance& inst, const LpOptions& opt = {});

// One fractional cut per remaining demand pair, as maintained by the main
// algorithm. per_pair weights are fixed when a new epoch adopts them (frozen
// nodes of that moment baked in at 1); frozen_set tracks the cut as it grows.
struct FractionalCutFamily {
  std::vector<std::pair<int, int>> pairs;       // index-aligned with per_pair
  std::vector<WeightFunction> per_pair;
  std::vector<char> frozen_set;                 // current integral cut X
  double cap = 0.0;

  int node_count() const { return static_cast<int>(frozen_set.size()); }
};

// sum over the remaining pairs of the weight outside frozen_set
double mass(const FractionalCutFamily& family, std::span<const int> remaining);

}  // namespace dmc
