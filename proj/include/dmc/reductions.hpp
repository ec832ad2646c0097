#pragma once

#include <string>
#include <vector>

#include "dmc/graph.hpp"

namespace dmc {

enum class ReductionKind {
  edge_to_vertex,
  vertex_to_edge,
  to_unit_costs,
  to_uniform_weights,
  heavy_node,
};

const char* reduction_kind_name(ReductionKind k);
ReductionKind reduction_kind_from_name(const std::string& s);

// An instance transform together with the correspondence needed to map cuts
// of the transformed instance back to the original. `origins[e]` lists the
// original elements a transformed element e stands for; most kinds pull a
// cut back as the union of origins, to_unit_costs includes an original node
// only when every one of its copies was cut. heavy_node additionally carries
// the pre-removed node set, which joins every pulled-back cut.
struct ReductionMapping {
  ReductionKind kind = ReductionKind::vertex_to_edge;
  Instance transformed;
  std::vector<std::vector<int>> origins;  // transformed element -> original elements
  CutSet preprocessed_cut;                // heavy_node's up-front removals, else empty

  // Original-side context captured at construction so pull_back is
  // self-contained.
  Flavor original_flavor = Flavor::vertex;
  int original_elements = 0;
  std::vector<Arc> original_arcs;    // original edge flavor only
  std::vector<double> original_costs;

  CutSet pull_back(const CutSet& transformed_cut) const;
};

// Each vertex becomes a directed path of equal-weight copies (in-arcs to the
// first, out-arcs from the last), evening out the weight function. Requires
// unit costs. Cuts pull back copy -> vertex, so |X| <= |X'|.
ReductionMapping to_uniform_weights(const Instance& inst);

// Three-step rebuild of a vertex instance so every node has cost 1: contract
// featherweight non-terminals and double the weights, rescale costs to the
// fixed cost-weight balance, then split each node into ceil(cost) unit-cost
// copies that all inherit the full arc neighborhood. A node is pulled into
// the cut only when all of its copies were.
ReductionMapping to_unit_costs(const Instance& inst);

// Arc-cut instance to node-cut instance: each vertex expands to a small
// biclique of weight-labelled nodes plus zero-weight start/end terminals,
// and each arc lands on the label matching its weight. Node costs aggregate
// the costs of the arcs they absorb, so pulled-back cuts never cost more.
ReductionMapping edge_to_vertex(const Instance& inst);

// Node-cut instance to arc-cut instance by the standard in/out split. The
// split arc inherits the node's weight and cost; rerouted arcs get weight 0
// and a cost larger than any all-split cut.
ReductionMapping vertex_to_edge(const Instance& inst);

// Removes every node of fractional weight >= n^(-c/(1+c))/4 up front (they
// are few and cheap relative to the LP value), doubles the surviving
// weights, and leaves the rest as a smaller instance with implicit demands.
ReductionMapping heavy_node_preprocess(const Instance& inst, double c = 0.5);

// Sidecar text for a mapping: a header naming the kind, `x <elem>` lines for
// the up-front cut, and one `m <transformed> <original>` line per
// correspondence entry. Node elements print 1-based; arc elements print as
// `u,v`. parse_mapping rebuilds the mapping against the two instances it
// relates; malformed text raises ParseError.
std::string serialize_mapping(const ReductionMapping& m);
ReductionMapping parse_mapping(const std::string& text, const Instance& original,
                               Instance transformed);

}  // namespace dmc
