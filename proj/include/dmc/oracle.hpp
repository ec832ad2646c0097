#pragma once

#include <cstddef>
#include <vector>

#include "dmc/fraccut.hpp"
#include "dmc/graph.hpp"

namespace dmc {

// All simple s->t paths as full node sequences, in DFS order over sorted
// adjacency. Throws BudgetExceeded past `limit` paths.
std::vector<std::vector<int>> enumerate_simple_paths(const DirectedGraph& g, int s, int t,
                                                     size_t limit);

// Fractional multicut solved over the exhaustively enumerated path set, one
// explicit covering row per simple demand path. Slow and only for small
// instances; exists to cross-check the constraint-generation solver.
LPResult exact_fractional_multicut_small(const Instance& inst, size_t path_limit = 100000);

// Minimum-cost integral multicut by branch and bound over the elements that
// lie on some demand path. Branches on the free elements of a violated path;
// bounds with the fractional LP. Exact; ties broken toward the
// lexicographically smallest element set. Throws BudgetExceeded when more
// than `max_candidates` elements are cuttable, Infeasible when some demand
// pair cannot be cut at all.
CutSet exact_integral_multicut(const Instance& inst, int max_candidates = 24);

// Maximum number of internally vertex-disjoint s->t paths (= minimum interior
// separating set), via unit-capacity max flow on the split graph. Throws
// Infeasible when the arc s->t exists.
int menger_min_vertex_cut(const DirectedGraph& g, int s, int t);

struct OracleReport {
  double integral_opt = 0.0;
  CutSet integral_cut;
  double fractional_opt = 0.0;
  WeightFunction fractional_weights;
  double gap = 1.0;  // integral_opt / fractional_opt; 1 when both vanish
  int paths_enumerated = 0;
};

OracleReport empirical_gap(const Instance& inst, int max_candidates = 24,
                           size_t path_limit = 100000);

}  // namespace dmc
