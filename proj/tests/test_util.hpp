#pragma once

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

#include "dmc/fraccut.hpp"
#include "dmc/graph.hpp"
#include "dmc/instances.hpp"
#include "dmc/rng.hpp"

namespace testutil {

inline dmc::Instance vertex_instance(int n, std::vector<dmc::Arc> arcs,
                                     std::vector<std::pair<int, int>> demands,
                                     std::vector<double> costs = {}) {
  dmc::Instance inst;
  inst.graph = dmc::DirectedGraph(n, std::move(arcs));
  inst.flavor = dmc::Flavor::vertex;
  inst.costs = costs.empty() ? std::vector<double>(n, 1.0) : std::move(costs);
  inst.demands = dmc::Demands::explicit_list(std::move(demands));
  return inst;
}

inline dmc::Instance edge_instance(int n, std::vector<dmc::Arc> arcs,
                                   std::vector<std::pair<int, int>> demands,
                                   std::vector<double> costs = {}) {
  dmc::Instance inst;
  inst.graph = dmc::DirectedGraph(n, std::move(arcs));
  inst.flavor = dmc::Flavor::edge;
  inst.costs = costs.empty() ? std::vector<double>(inst.graph.arc_count(), 1.0) : std::move(costs);
  inst.demands = dmc::Demands::explicit_list(std::move(demands));
  return inst;
}

inline dmc::CutSet node_cut(std::vector<int> nodes) {
  dmc::CutSet cut;
  cut.flavor = dmc::Flavor::vertex;
  std::sort(nodes.begin(), nodes.end());
  cut.nodes = std::move(nodes);
  cut.cost = static_cast<double>(cut.nodes.size());
  return cut;
}

inline dmc::CutSet arc_cut(std::vector<dmc::Arc> arcs) {
  dmc::CutSet cut;
  cut.flavor = dmc::Flavor::edge;
  std::sort(arcs.begin(), arcs.end());
  cut.arcs = std::move(arcs);
  cut.cost = static_cast<double>(cut.arcs.size());
  return cut;
}

// Random DAG with threshold demands, the workhorse for randomized checks.
inline dmc::Instance random_dag_instance(int n, double arc_prob, uint64_t seed, double L) {
  dmc::Instance inst = dmc::gen_random_dag(n, arc_prob, seed);
  inst.demands = dmc::Demands::threshold(L);
  return inst;
}

// Attach node/arc weights from the fractional relaxation, scaled up a hair
// so every demand pair really sits at weighted distance >= 1 (the LP only
// certifies 1 - sep_eps). Skips instances whose LP is degenerate (no
// demands). Returns false in that case.
inline bool attach_lp_weights(dmc::Instance& inst) {
  if (inst.resolve_demands().empty()) return false;
  dmc::LPResult lp = dmc::fractional_multicut(inst);
  std::vector<double> w = lp.weights.values;
  for (double& x : w) x *= 1.01 / (1.0 - 1e-6);
  inst.weights = std::move(w);
  return true;
}

// Minimum-cost multicut by brute subset enumeration over the given candidate
// elements; lexicographically smallest witness among minimum-cost subsets.
// Independent of the branch-and-bound solver, for cross-checking it.
inline std::optional<dmc::CutSet> naive_multicut(const dmc::Instance& inst,
                                                 const std::vector<int>& candidates) {
  const size_t k = candidates.size();
  std::optional<dmc::CutSet> best;
  std::vector<int> best_elems;
  for (uint64_t mask = 0; mask < (uint64_t{1} << k); ++mask) {
    std::vector<int> elems;
    double cost = 0.0;
    for (size_t i = 0; i < k; ++i)
      if (mask >> i & 1) {
        elems.push_back(candidates[i]);
        cost += inst.costs[candidates[i]];
      }
    dmc::CutSet cut;
    cut.flavor = inst.flavor;
    cut.cost = cost;
    if (inst.flavor == dmc::Flavor::vertex) {
      cut.nodes = elems;
      std::sort(cut.nodes.begin(), cut.nodes.end());
    } else {
      for (int e : elems) cut.arcs.push_back(inst.graph.arcs()[e]);
      std::sort(cut.arcs.begin(), cut.arcs.end());
    }
    if (!dmc::check_cut(inst, cut).empty()) continue;
    std::vector<int> sorted = elems;
    std::sort(sorted.begin(), sorted.end());
    if (!best || cost < best->cost - 1e-9 ||
        (cost < best->cost + 1e-9 && sorted < best_elems)) {
      best = cut;
      best_elems = sorted;
    }
  }
  return best;
}

// All element ids, candidates for naive enumeration on small instances.
inline std::vector<int> all_elements(const dmc::Instance& inst) {
  std::vector<int> ids(inst.element_count());
  for (size_t i = 0; i < ids.size(); ++i) ids[i] = static_cast<int>(i);
  return ids;
}

}  // namespace testutil
