#include "dmc/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <tuple>

#include "dmc/cutter.hpp"
#include "dmc/errors.hpp"
#include "dmc/fraccut.hpp"
#include "dmc/instances.hpp"
#include "dmc/oracle.hpp"
#include "dmc/rng.hpp"

namespace dmc {

namespace {

constexpr int kBenchLayerWidth = 5;

double now_ms() {
  using clock = std::chrono::steady_clock;
  return std::chrono::duration<double, std::milli>(clock::now().time_since_epoch()).count();
}

// Largest admissible epoch count: the total pair mass starts below n^3 and
// every switch divides it by more than the switch factor, padded 3x for
// slack plus one zero-mass switch at the tail.
int epoch_bound(int n) {
  double f = std::max(2.0, std::log2(static_cast<double>(n)));
  return static_cast<int>(std::ceil(9.0 * std::log2(static_cast<double>(n)) / std::log2(f))) + 1;
}

void validate_run(const Instance& inst, const CutResult& res, int n) {
  auto violated = check_cut(inst, res.cut);
  if (!violated.empty())
    throw Error("benchmark run produced a cut that misses " + std::to_string(violated.size()) +
                " demand pair(s)");
  if (!res.trace) return;
  const RunTrace& tr = *res.trace;
  for (const EpochRecord& e : tr.epochs)
    if (e.max_free_weight > e.cap + 1e-9)
      throw Error("benchmark run exceeded the per-epoch weight cap");
  for (size_t i = 1; i < tr.epochs.size(); ++i)
    if (tr.epochs[i].mass_start * tr.factor > tr.epochs[i - 1].mass_start + 1e-9)
      throw Error("benchmark run switched epochs without the required mass drop");
  if (n >= 16 && res.epochs > epoch_bound(n))
    throw Error("benchmark run used more epochs than the logarithmic bound allows");
}

std::string fmt_g(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

}  // namespace

double eval_L_rule(const std::string& rule, int n) {
  if (rule == "n") return static_cast<double>(n);
  if (rule.rfind("n^(", 0) == 0 && rule.back() == ')') {
    std::string body = rule.substr(3, rule.size() - 4);
    size_t slash = body.find('/');
    try {
      double p = std::stod(slash == std::string::npos ? body : body.substr(0, slash));
      double q = slash == std::string::npos ? 1.0 : std::stod(body.substr(slash + 1));
      if (q == 0.0) throw Error("zero denominator in scale rule");
      return std::ceil(std::pow(static_cast<double>(n), p / q));
    } catch (const Error&) {
      throw;
    } catch (...) {
      throw Error("malformed scale rule: " + rule);
    }
  }
  try {
    size_t used = 0;
    double v = std::stod(rule, &used);
    if (used != rule.size()) throw Error("malformed scale rule: " + rule);
    return v;
  } catch (const Error&) {
    throw;
  } catch (...) {
    throw Error("malformed scale rule: " + rule);
  }
}

Instance bench_instance(const BenchOptions& opt, int size) {
  Instance inst;
  if (opt.family == "layered") {
    int layers = std::max(2, size / kBenchLayerWidth);
    inst = gen_layered(layers, kBenchLayerWidth, 1.0, derive_seed(opt.gen_seed, size));
  } else if (opt.family == "random_dag") {
    inst = gen_random_dag(size, opt.arc_prob, derive_seed(opt.gen_seed, size));
  } else if (opt.family == "path") {
    inst = gen_path(size);
  } else {
    throw Error("unknown benchmark family: " + opt.family);
  }
  inst.demands = Demands::threshold(eval_L_rule(opt.L_rule, inst.graph.node_count()));
  return inst;
}

std::vector<BenchRow> run_bench(const BenchOptions& opt) {
  std::vector<BenchRow> rows;
  for (int size : opt.sizes) {
    Instance inst = bench_instance(opt, size);
    const int n = inst.graph.node_count();
    const double L = inst.demands.L;
    const double frac = fractional_multicut(inst).value;

    for (const char* algo : {"main", "gupta"}) {
      bool is_main = std::string(algo) == "main";
      for (int seed = 1; seed <= opt.seeds; ++seed) {
        AlgoConfig cfg;
        cfg.L = L;
        cfg.seed = static_cast<uint64_t>(seed);
        cfg.trials = 1;
        cfg.collect_trace = is_main;
        cfg.reuse_lp_basis = opt.reuse_lp_basis;
        double t0 = now_ms();
        CutResult res =
            is_main ? vertex_cut_main(inst.graph, cfg) : gupta_baseline(inst.graph, cfg);
        double t1 = now_ms();
        validate_run(inst, res, n);
        rows.push_back({opt.family, n, L, static_cast<uint64_t>(seed), algo,
                        cut_cost(inst, res.cut), frac, res.epochs, res.rounds, t1 - t0});
      }
    }

    if (opt.with_oracle) {
      try {
        double t0 = now_ms();
        CutSet exact = exact_integral_multicut(inst, opt.oracle_budget);
        double t1 = now_ms();
        rows.push_back({opt.family, n, L, 0, "oracle", exact.cost, frac, 0, 0, t1 - t0});
      } catch (const BudgetExceeded&) {
        // instance too large for the exact solver; no oracle row
      }
    }
  }
  std::sort(rows.begin(), rows.end(), [](const BenchRow& a, const BenchRow& b) {
    return std::tie(a.family, a.n, a.algo, a.seed) < std::tie(b.family, b.n, b.algo, b.seed);
  });
  return rows;
}

std::string bench_csv(const std::vector<BenchRow>& rows) {
  std::string out = "family,n,L,seed,algo,cut_cost,frac_value,epochs,rounds,millis\n";
  for (const BenchRow& r : rows) {
    out += r.family + "," + std::to_string(r.n) + "," + fmt_g(r.L) + "," +
           std::to_string(r.seed) + "," + r.algo + "," + fmt_g(r.cut_cost) + "," +
           fmt_g(r.frac_value) + "," + std::to_string(r.epochs) + "," +
           std::to_string(r.rounds) + ",";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.3f", r.millis);
    out += buf;
    out += "\n";
  }
  return out;
}

}  // namespace dmc
