#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "dmc/errors.hpp"

namespace dmc {

struct Arc {
  int from = -1;
  int to = -1;
  friend bool operator==(const Arc&, const Arc&) = default;
  friend auto operator<=>(const Arc&, const Arc&) = default;
};

// Unreachable marker for unweighted distances. Weighted distances use IEEE
// infinity; both compare exactly, neither is ever a "large" finite value.
inline constexpr int kUnreachable = std::numeric_limits<int>::max();
inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Tolerance for >=1 / >=L threshold tests on weighted distances.
inline constexpr double kDistEps = 1e-9;

// Simple directed graph. Arcs are stored sorted and deduplicated; self-loops
// are rejected. Node ids are 0-based internally (files are 1-based).
class DirectedGraph {
 public:
  DirectedGraph() = default;
  DirectedGraph(int node_count, std::vector<Arc> arcs);

  int node_count() const { return n_; }
  int arc_count() const { return static_cast<int>(arcs_.size()); }
  const std::vector<Arc>& arcs() const { return arcs_; }

  std::span<const int> out(int v) const {
    return {out_adj_.data() + out_off_[v], out_adj_.data() + out_off_[v + 1]};
  }
  std::span<const int> in(int v) const {
    return {in_adj_.data() + in_off_[v], in_adj_.data() + in_off_[v + 1]};
  }

  bool has_arc(int u, int v) const { return arc_index(u, v) >= 0; }
  // index into arcs() or -1
  int arc_index(int u, int v) const;

  friend bool operator==(const DirectedGraph& a, const DirectedGraph& b) {
    return a.n_ == b.n_ && a.arcs_ == b.arcs_;
  }

 private:
  int n_ = 0;
  std::vector<Arc> arcs_;
  std::vector<int> out_off_, out_adj_, in_off_, in_adj_;
};

enum class Flavor { vertex, edge };

// Demand description. Explicit pairs, a threshold L (all pairs at unweighted
// vertex distance >= L), or implicit (all pairs at weighted distance >= 1,
// usable only when the instance carries weights). Pairs with no connecting
// path are vacuously cut and never enter the resolved set.
struct Demands {
  enum class Mode { explicit_pairs, threshold, implicit };
  Mode mode = Mode::implicit;
  std::vector<std::pair<int, int>> pairs;  // explicit_pairs
  double L = 0.0;                          // threshold

  static Demands explicit_list(std::vector<std::pair<int, int>> p) {
    return {Mode::explicit_pairs, std::move(p), 0.0};
  }
  static Demands threshold(double L) { return {Mode::threshold, {}, L}; }
  static Demands implicit_from_weights() { return {Mode::implicit, {}, 0.0}; }

  friend bool operator==(const Demands&, const Demands&) = default;
};

// A multicut problem. Vertex flavor: costs/weights live on nodes and a cut is
// a node set that hits the interior of every demand path. Edge flavor: they
// live on arcs and a cut hits some arc of every demand path.
struct Instance {
  DirectedGraph graph;
  Flavor flavor = Flavor::vertex;
  std::vector<double> costs;                    // per node / per arc
  std::optional<std::vector<double>> weights;   // per node / per arc
  Demands demands;

  int element_count() const {
    return flavor == Flavor::vertex ? graph.node_count() : graph.arc_count();
  }
  // Demand pairs this instance actually asks to cut. Threshold mode is only
  // valid for vertex flavor; implicit mode resolves to {} without weights.
  std::vector<std::pair<int, int>> resolve_demands() const;

  friend bool operator==(const Instance&, const Instance&) = default;
};

struct CutSet {
  Flavor flavor = Flavor::vertex;
  std::vector<int> nodes;   // vertex flavor, sorted
  std::vector<Arc> arcs;    // edge flavor, sorted
  double cost = 0.0;

  size_t size() const { return flavor == Flavor::vertex ? nodes.size() : arcs.size(); }
};

double cut_cost(const Instance& inst, const CutSet& cut);

// --- distances ---------------------------------------------------------

// vdist(s,v) = minimum number of interior vertices over s->v paths.
// vdist(s,s) = 0; a direct arc gives 0; kUnreachable if no path.
std::vector<int> vdist_unweighted(const DirectedGraph& g, int s);

// Same, restricted to paths whose nodes (s excepted) avoid `blocked`.
std::vector<int> vdist_unweighted_avoiding(const DirectedGraph& g, const std::vector<char>& blocked,
                                           int s);

// Weighted vertex distance: minimum total weight of interior vertices.
// Equivalent to shortest path in the node-split graph (v_in -> v_out carries
// w(v), original arcs carry 0) measured from s_out to v_in.
std::vector<double> vdist_weighted(const DirectedGraph& g, std::span<const double> w, int s);

// Same, but nodes in `frozen` count with weight 1 regardless of w.
std::vector<double> vdist_weighted_frozen(const DirectedGraph& g, std::span<const double> w,
                                          const std::vector<char>& frozen, int s);

// Edge-weighted distance (sum of arc weights), for edge-flavor instances.
std::vector<double> edist_weighted(const DirectedGraph& g, std::span<const double> w, int s);

// Is there a u->v path whose interior avoids `blocked`? u and v may be
// blocked themselves; endpoints never count.
bool reachable_avoiding(const DirectedGraph& g, const std::vector<char>& blocked, int u, int v);

// --- demand resolution and validation -----------------------------------

// All ordered pairs (s,t) with finite unweighted vdist >= L.
// Serial twin of the OpenMP kernel; both return source-major sorted order.
std::vector<std::pair<int, int>> demand_pairs_at_least_serial(const DirectedGraph& g, double L);
std::vector<std::pair<int, int>> demand_pairs_at_least_parallel(const DirectedGraph& g, double L);
std::vector<std::pair<int, int>> demand_pairs_at_least(const DirectedGraph& g, double L);

// Violated demand pairs, empty iff the cut is valid. Throws FlavorMismatch
// when cut and instance flavors differ.
std::vector<std::pair<int, int>> check_cut(const Instance& inst, const CutSet& cut);

}  // namespace dmc
