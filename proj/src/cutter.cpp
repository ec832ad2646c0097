#include "dmc/cutter.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numeric>

#include "dmc/parallel.hpp"
#include "dmc/rng.hpp"

namespace dmc {

namespace {

int default_trials(int n) {
  double lg = std::log2(static_cast<double>(std::max(2, n)));
  return std::max(1, static_cast<int>(std::ceil(lg)));
}

double switch_factor(const AlgoConfig& cfg, int n) {
  if (cfg.epoch_log_base <= 1.0) throw Error("epoch log base must exceed 1");
  double lg = std::log(static_cast<double>(std::max(2, n))) / std::log(cfg.epoch_log_base);
  return std::max(2.0, lg);
}

void check_scale(const AlgoConfig& cfg, int n) {
  if (cfg.L < 1.0 || cfg.L > static_cast<double>(std::max(1, n)))
    throw Error("distance scale L must satisfy 1 <= L <= n");
}

struct TrialResult {
  std::vector<int> cut_nodes;  // sorted
  int rounds = 0;
  int epochs = 1;
  RunTrace trace;
};

// One full run of the epoch algorithm. Every round recomputes a candidate
// cut for each remaining pair against the current frozen set; the epoch
// trigger compares total masses, both summed in pair-index order. The PRNG
// is only touched in the serial select-and-cut step (two draws per round),
// so runs are reproducible independent of thread count.
TrialResult run_main_trial(const DirectedGraph& g,
                           const std::vector<std::pair<int, int>>& all_pairs,
                           const AlgoConfig& cfg, uint64_t seed, int trial,
                           const RoundObserver& obs) {
  const int n = g.node_count();
  const int np = static_cast<int>(all_pairs.size());
  const double F = switch_factor(cfg, n);
  const double slack = cfg.sep_eps + kDistEps;
  Rng rng(seed);

  std::vector<char> frozen(n, 0);
  std::vector<int> cut_nodes;

  std::vector<WeightFunction> cur(np);
  std::vector<std::vector<double>> cand(np);
  std::vector<double> cand_mass(np, 0.0);
  std::vector<PairLpState> warm(np);
  for (int i = 0; i < np; ++i) cur[i].values.assign(n, 1.0 / cfg.L);

  int epoch = 1;
  double cap = 4.0 / cfg.L;
  std::vector<EpochRecord> epochs;
  epochs.push_back({1, static_cast<double>(np) * n / cfg.L, np, 0, cap,
                    np > 0 ? 1.0 / cfg.L : 0.0});

  LpOptions lo;
  lo.sep_eps = cfg.sep_eps;
  auto refresh_candidates = [&](const std::vector<int>& idx) {
    auto solve_one = [&](int i) {
      auto [s, t] = all_pairs[i];
      LPResult r = min_capped_vertex_cut(g, frozen, s, t, cap, lo,
                                         cfg.reuse_lp_basis ? &warm[i] : nullptr);
      cand[i] = std::move(r.weights.values);
      cand_mass[i] = r.value;
    };
    if (thread_count() == 1) {
      for (int i : idx) solve_one(i);
      return;
    }
    std::vector<std::exception_ptr> errs(idx.size());
#pragma omp parallel for schedule(dynamic) num_threads(thread_count())
    for (size_t j = 0; j < idx.size(); ++j) {
      try {
        solve_one(idx[j]);
      } catch (...) {
        errs[j] = std::current_exception();
      }
    }
    for (const auto& e : errs)
      if (e != nullptr) std::rethrow_exception(e);
  };

  std::vector<int> remaining(np);
  std::iota(remaining.begin(), remaining.end(), 0);

  TrialResult res;
  int round = 0;
  std::vector<char> frozen_before;
  while (!remaining.empty()) {
    ++round;

    refresh_candidates(remaining);
    double mass_old = 0.0, mass_new = 0.0;
    for (int i : remaining) {
      mass_old += cur[i].sum_free(frozen);
      mass_new += cand_mass[i];
    }

    if (mass_old > F * mass_new) {
      ++epoch;
      cap = std::pow(4.0, epoch) / cfg.L;
      double max_free = 0.0;
      for (int i : remaining) {
        cur[i].values = cand[i];
        for (int v = 0; v < n; ++v)
          if (!frozen[v]) max_free = std::max(max_free, cur[i].values[v]);
      }
      epochs.push_back(
          {epoch, mass_new, static_cast<int>(remaining.size()), 0, cap, max_free});
    }

    size_t k = rng.next_below(remaining.size());
    int pi = remaining[k];
    remaining.erase(remaining.begin() + static_cast<ptrdiff_t>(k));
    double d = rng.next_unit();
    auto [s, t] = all_pairs[pi];

    std::vector<double> dist = vdist_weighted_frozen(g, cur[pi].values, frozen, s);
    std::vector<int> members = level_cut_members(cur[pi].values, dist, d, slack);
    std::vector<int> added;
    for (int v : members)
      if (!frozen[v]) added.push_back(v);

    if (obs) frozen_before = frozen;
    for (int v : added) {
      frozen[v] = 1;
      cut_nodes.push_back(v);
    }

    if (obs) obs({trial, round, epoch, all_pairs[pi], d, cur[pi].values, dist, frozen_before, added});
    if (cfg.collect_trace) res.trace.rounds.push_back({round, epoch, all_pairs[pi], d, added});
    ++epochs.back().rounds_in_epoch;
  }

  std::sort(cut_nodes.begin(), cut_nodes.end());
  res.cut_nodes = std::move(cut_nodes);
  res.rounds = round;
  res.epochs = epoch;
  if (cfg.collect_trace) {
    res.trace.n = n;
    res.trace.L = cfg.L;
    res.trace.factor = F;
    res.trace.pair_count = np;
    res.trace.epochs = std::move(epochs);
  }
  return res;
}

TrialResult run_gupta_trial(const DirectedGraph& g,
                            const std::vector<std::pair<int, int>>& all_pairs,
                            const AlgoConfig& cfg, uint64_t seed, int trial,
                            const RoundObserver& obs) {
  const int n = g.node_count();
  const int np = static_cast<int>(all_pairs.size());
  Rng rng(seed);

  std::vector<char> frozen(n, 0);
  std::vector<int> cut_nodes;
  std::vector<int> remaining(np);
  std::iota(remaining.begin(), remaining.end(), 0);

  TrialResult res;

  // Observer scratch, rebuilt only when someone listens.
  std::vector<double> ones, hop_dist;
  std::vector<char> frozen_before;

  int round = 0;
  while (!remaining.empty()) {
    ++round;
    size_t k = rng.next_below(remaining.size());
    int pi = remaining[k];
    remaining.erase(remaining.begin() + static_cast<ptrdiff_t>(k));
    double d = cfg.L * rng.next_unit();
    auto [s, t] = all_pairs[pi];

    std::vector<char> mask = frozen;
    mask[s] = 0;
    mask[t] = 0;
    std::vector<int> hop = vdist_unweighted_avoiding(g, mask, s);

    // Band [d-1, d] over integer distances is exact in doubles; no slack.
    std::vector<int> added;
    for (int v = 0; v < n; ++v) {
      if (frozen[v] || hop[v] == kUnreachable) continue;
      double h = static_cast<double>(hop[v]);
      if (h >= d - 1.0 && h <= d) added.push_back(v);
    }

    if (obs) frozen_before = frozen;
    for (int v : added) {
      frozen[v] = 1;
      cut_nodes.push_back(v);
    }

    if (obs) {
      ones.assign(n, 1.0);
      hop_dist.assign(n, kInf);
      for (int v = 0; v < n; ++v)
        if (hop[v] != kUnreachable) hop_dist[v] = static_cast<double>(hop[v]);
      obs({trial, round, 1, all_pairs[pi], d, ones, hop_dist, frozen_before, added});
    }
    if (cfg.collect_trace) res.trace.rounds.push_back({round, 1, all_pairs[pi], d, added});
  }

  std::sort(cut_nodes.begin(), cut_nodes.end());
  res.cut_nodes = std::move(cut_nodes);
  res.rounds = round;
  res.epochs = 1;
  if (cfg.collect_trace) {
    res.trace.n = n;
    res.trace.L = cfg.L;
    res.trace.pair_count = np;
  }
  return res;
}

template <typename TrialFn>
CutResult best_of_trials(const DirectedGraph& g, const AlgoConfig& cfg, TrialFn&& one_trial) {
  const int n = g.node_count();
  const int trials = cfg.trials > 0 ? cfg.trials : default_trials(n);

  CutResult out;
  out.trials_run = trials;
  TrialResult best;
  for (int t = 0; t < trials; ++t) {
    TrialResult r = one_trial(derive_seed(cfg.seed, static_cast<uint64_t>(t)), t);
    bool better = t == 0 || r.cut_nodes.size() < best.cut_nodes.size() ||
                  (r.cut_nodes.size() == best.cut_nodes.size() && r.cut_nodes < best.cut_nodes);
    if (better) {
      best = std::move(r);
      out.best_trial = t;
    }
  }
  out.cut.flavor = Flavor::vertex;
  out.cut.nodes = std::move(best.cut_nodes);
  out.cut.cost = static_cast<double>(out.cut.nodes.size());
  out.rounds = best.rounds;
  out.epochs = best.epochs;
  if (cfg.collect_trace) out.trace = std::move(best.trace);
  return out;
}

}  // namespace

std::vector<int> level_cut_members(std::span<const double> w, std::span<const double> dist,
                                   double d, double slack) {
  std::vector<int> out;
  for (size_t v = 0; v < w.size(); ++v) {
    double lo = dist[v];
    if (lo == kInf) continue;
    if (d >= lo - slack && d <= lo + w[v] + slack) out.push_back(static_cast<int>(v));
  }
  return out;
}

std::vector<int> random_level_cut(const DirectedGraph& g, const WeightFunction& w,
                                  const std::vector<char>& frozen, int s, double d,
                                  double slack) {
  std::vector<double> dist = vdist_weighted_frozen(g, w.values, frozen, s);
  return level_cut_members(w.values, dist, d, slack);
}

double val(double lo, double hi) {
  if (!(hi > lo)) return 0.0;
  double a = std::max(0.0, lo);
  double b = std::min(1.0, hi);
  return b > a ? b - a : 0.0;
}

double val(const DirectedGraph& g, const FractionalCutFamily& family,
           std::span<const int> remaining, int u, int v) {
  double total = 0.0;
  for (int i : remaining) {
    int s = family.pairs[i].first;
    std::vector<double> dist =
        vdist_weighted_frozen(g, family.per_pair[i].values, family.frozen_set, s);
    total += val(dist[u], dist[v]);
  }
  return total;
}

CutResult vertex_cut_main(const DirectedGraph& g, const AlgoConfig& cfg, RoundObserver obs) {
  check_scale(cfg, g.node_count());
  auto pairs = demand_pairs_at_least(g, cfg.L);
  return best_of_trials(g, cfg, [&](uint64_t seed, int trial) {
    return run_main_trial(g, pairs, cfg, seed, trial, obs);
  });
}

CutResult gupta_baseline(const DirectedGraph& g, const AlgoConfig& cfg, RoundObserver obs) {
  check_scale(cfg, g.node_count());
  auto pairs = demand_pairs_at_least(g, cfg.L);
  return best_of_trials(g, cfg, [&](uint64_t seed, int trial) {
    return run_gupta_trial(g, pairs, cfg, seed, trial, obs);
  });
}

}  // namespace dmc
