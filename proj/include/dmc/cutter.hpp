#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "dmc/fraccut.hpp"
#include "dmc/graph.hpp"

namespace dmc {

// Closed-interval slack for level-cut membership. Must be strictly wider than
// the LP separation tolerance (LpOptions::sep_eps): a pair whose certified
// distance is only 1 - sep_eps must still be unable to dodge its own level
// cut, so the per-path interval chain has to cover every level d < 1.
inline constexpr double kLevelSlack = 1e-6 + 1e-9;

struct AlgoConfig {
  double L = 2.0;          // distance scale; pairs at unweighted vdist >= L get cut
  uint64_t seed = 1;
  int trials = 0;          // 0: ceil(log2 n), at least 1; best (smallest) cut wins
  double epoch_log_base = 2.0;  // base for the log n in the epoch trigger; > 1
  bool collect_trace = false;
  bool reuse_lp_basis = false;  // keep per-pair constraint sets across rounds (speed opt-in)
  double sep_eps = 1e-6;        // separation tolerance for the candidate LPs
};

struct EpochRecord {
  int epoch = 1;            // 1-based
  double mass_start = 0.0;  // family mass over remaining pairs when the epoch began
  int pairs_start = 0;      // |P| when the epoch began
  int rounds_in_epoch = 0;  // rounds played under this epoch's weights
  double cap = 0.0;         // free-weight bound 4^epoch / L
  double max_free_weight = 0.0;  // largest weight on a then-free node at adoption
};

struct RoundRecord {
  int round = 1;  // 1-based
  int epoch = 1;
  std::pair<int, int> pair{-1, -1};
  double d = 0.0;
  std::vector<int> added;  // nodes newly cut this round, sorted
};

struct RunTrace {
  int n = 0;
  double L = 0.0;
  double factor = 0.0;  // epoch switch factor actually used, max(2, log_base n)
  int pair_count = 0;   // initial |P|
  std::vector<EpochRecord> epochs;
  std::vector<RoundRecord> rounds;
};

struct CutResult {
  CutSet cut;  // vertex flavor; cost = node count (the algorithms are cost-blind)
  int rounds = 0;
  int epochs = 1;
  int trials_run = 1;
  int best_trial = 0;
  std::optional<RunTrace> trace;  // best trial, present when cfg.collect_trace
};

// Everything a round knew, for invariant checks. References are valid only
// during the callback. dist is from pair.first with frozen nodes at weight 1
// and free nodes at `weights`; frozen_before is the cut before this round.
struct RoundContext {
  int trial = 0;
  int round = 1;
  int epoch = 1;
  std::pair<int, int> pair{-1, -1};
  double d = 0.0;
  const std::vector<double>& weights;
  const std::vector<double>& dist;
  const std::vector<char>& frozen_before;
  const std::vector<int>& added;
};
using RoundObserver = std::function<void(const RoundContext&)>;

// The level-cut set for source s at level d: every v whose interval
// [vdist(s,v), vdist(s,v) + w(v)] contains d, where vdist counts frozen nodes
// at weight 1 and free nodes at w. Interval ends are widened by `slack`;
// unreachable nodes are never members. Sorted ascending.
std::vector<int> random_level_cut(const DirectedGraph& g, const WeightFunction& w,
                                  const std::vector<char>& frozen, int s, double d,
                                  double slack = kLevelSlack);

// Membership step of random_level_cut given precomputed distances.
std::vector<int> level_cut_members(std::span<const double> w, std::span<const double> dist,
                                   double d, double slack = kLevelSlack);

// Overlap length of [lo, hi] with [0, 1]; 0 when the interval is empty or
// reversed. With lo = vdist(s,u), hi = vdist(s,v) this is the chance that a
// uniform level d lands between u and v.
double val(double lo, double hi);

// Sum of the interval overlaps above across the remaining pairs of a cut
// family, each measured under that pair's weights. Diagnostic only.
double val(const DirectedGraph& g, const FractionalCutFamily& family,
           std::span<const int> remaining, int u, int v);

// Epoch-driven randomized vertex multicut for all pairs at unweighted vertex
// distance >= L. Runs cfg.trials independent trials and keeps the smallest
// cut. The observer fires once per round across every trial.
CutResult vertex_cut_main(const DirectedGraph& g, const AlgoConfig& cfg, RoundObserver obs = {});

// Unweighted baseline: one random hop-distance band per demand pair, with
// distances recomputed in the residual graph each round.
CutResult gupta_baseline(const DirectedGraph& g, const AlgoConfig& cfg, RoundObserver obs = {});

}  // namespace dmc
