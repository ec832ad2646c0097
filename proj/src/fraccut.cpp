#include "dmc/fraccut.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <queue>
#include <set>
#include <string>

#include "dmc/errors.hpp"
#include "dmc/simplex.hpp"

namespace dmc {

namespace {

constexpr double kTiny = 1e-9;

// Shortest s->t path under per-node weights (interior nodes only), frozen
// nodes counted at 1. Returns the interior node list, or nullopt when t is
// unreachable or the path is long enough already.
struct SepResult {
  double dist = kInf;
  std::vector<int> row;  // free elements on the path
  bool direct = false;   // reachable with no free element on the path
};

SepResult separate_vertex(const DirectedGraph& g, const std::vector<double>& w,
                          const std::vector<char>& frozen, int s, int t) {
  const int n = g.node_count();
  std::vector<double> dist(n, kInf);
  std::vector<int> parent(n, -1);
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  dist[s] = 0.0;
  heap.push({0.0, s});
  while (!heap.empty()) {
    auto [du, u] = heap.top();
    heap.pop();
    if (du > dist[u] + kDistEps) continue;
    if (u == t) break;
    double through = du;
    if (u != s) through += frozen[u] ? 1.0 : w[u];
    for (int v : g.out(u)) {
      if (through + kDistEps < dist[v]) {
        dist[v] = through;
        parent[v] = u;
        heap.push({dist[v], v});
      }
    }
  }
  SepResult res;
  res.dist = dist[t];
  if (!std::isfinite(dist[t])) return res;
  std::vector<int> nodes;
  for (int v = t; v != -1; v = parent[v]) nodes.push_back(v);
  for (size_t i = 1; i + 1 < nodes.size(); ++i) {
    int v = nodes[i];
    if (!frozen[v]) res.row.push_back(v);
  }
  std::sort(res.row.begin(), res.row.end());
  res.direct = res.row.empty();
  return res;
}

SepResult separate_edge(const DirectedGraph& g, const std::vector<double>& w,
                        const std::vector<char>& frozen, int s, int t) {
  const int n = g.node_count();
  std::vector<double> dist(n, kInf);
  std::vector<int> parent_arc(n, -1);
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  dist[s] = 0.0;
  heap.push({0.0, s});
  while (!heap.empty()) {
    auto [du, u] = heap.top();
    heap.pop();
    if (du > dist[u] + kDistEps) continue;
    if (u == t) break;
    for (int v : g.out(u)) {
      int a = g.arc_index(u, v);
      double len = frozen[a] ? 1.0 : w[a];
      if (du + len + kDistEps < dist[v]) {
        dist[v] = du + len;
        parent_arc[v] = a;
        heap.push({dist[v], v});
      }
    }
  }
  SepResult res;
  res.dist = dist[t];
  if (!std::isfinite(dist[t])) return res;
  for (int v = t; v != s;) {
    int a = parent_arc[v];
    if (!frozen[a]) res.row.push_back(a);
    v = g.arcs()[a].from;
  }
  std::sort(res.row.begin(), res.row.end());
  res.direct = res.row.empty();
  return res;
}

}  // namespace

LPResult solve_path_lp(const DirectedGraph& g, Flavor flavor,
                       std::span<const std::pair<int, int>> pairs, std::span<const double> costs,
                       std::span<const double> ub, const std::vector<char>& frozen,
                       const LpOptions& opt, PairLpState* warm) {
  const int elems = flavor == Flavor::vertex ? g.node_count() : g.arc_count();
  LPResult out;
  out.weights.values.assign(elems, 0.0);

  std::vector<std::vector<int>> rows;
  if (warm != nullptr) rows = warm->rows;
  std::set<std::vector<int>> present(rows.begin(), rows.end());
  std::map<std::vector<int>, int> dropped;  // once re-added, a row stays

  const long long row_budget = 10LL * elems * elems + 64;
  long long rows_generated = static_cast<long long>(rows.size());

  std::vector<double> w(elems, 0.0);

  while (true) {
    // Restricted LP over the elements that appear in an active row. Rows
    // touching a frozen element are satisfied outright (frozen weights are 1)
    // and skipped.
    std::vector<const std::vector<int>*> active;
    for (const auto& r : rows) {
      bool live = true;
      for (int e : r)
        if (frozen[e]) {
          live = false;
          break;
        }
      if (live) active.push_back(&r);
    }

    std::vector<int> locals;
    for (const auto* r : active) locals.insert(locals.end(), r->begin(), r->end());
    std::sort(locals.begin(), locals.end());
    locals.erase(std::unique(locals.begin(), locals.end()), locals.end());
    std::vector<int> col_of(elems, -1);
    for (size_t j = 0; j < locals.size(); ++j) col_of[locals[j]] = static_cast<int>(j);

    std::fill(w.begin(), w.end(), 0.0);
    if (!active.empty()) {
      std::vector<std::vector<double>> mat(active.size(), std::vector<double>(locals.size(), 0.0));
      std::vector<double> b(active.size(), 1.0), c(locals.size()), cap(locals.size());
      for (size_t i = 0; i < active.size(); ++i) {
        double reachable = 0.0;
        for (int e : *active[i]) {
          mat[i][col_of[e]] = 1.0;
          reachable += ub[e];
        }
        if (reachable < 1.0 - kTiny) throw Infeasible("path cannot reach length 1 under the weight cap");
      }
      for (size_t j = 0; j < locals.size(); ++j) {
        c[j] = costs[locals[j]];
        cap[j] = ub[locals[j]];
      }
      long long budget =
          10LL * elems * std::max<long long>(1, static_cast<long long>(active.size())) + 64;
      SimplexResult lp = solve_bounded_lp(mat, b, c, cap, budget);
      if (!lp.feasible) throw Infeasible("path constraints admit no weighting under the caps");
      out.iterations += lp.pivots;
      for (size_t j = 0; j < locals.size(); ++j) w[locals[j]] = lp.x[j];
    }

    // Drop clearly slack one-shot rows to keep the working set small.
    if (opt.drop_slack_rows && !rows.empty()) {
      std::vector<std::vector<int>> kept;
      kept.reserve(rows.size());
      for (auto& r : rows) {
        double lhs = 0.0;
        bool has_frozen = false;
        for (int e : r) {
          if (frozen[e]) has_frozen = true;
          lhs += frozen[e] ? 1.0 : w[e];
        }
        if (has_frozen) {
          // Frozen elements never thaw, so the row stays satisfied forever.
          present.erase(r);
        } else if (lhs > 1.0 + 1e-7 && dropped.find(r) == dropped.end()) {
          dropped[r] = 1;
          present.erase(r);
        } else {
          kept.push_back(std::move(r));
        }
      }
      rows = std::move(kept);
    }

    // Separation: one shortest path per pair.
    bool added = false;
    for (auto [s, t] : pairs) {
      SepResult sep = flavor == Flavor::vertex ? separate_vertex(g, w, frozen, s, t)
                                               : separate_edge(g, w, frozen, s, t);
      if (!std::isfinite(sep.dist)) continue;
      if (sep.dist >= 1.0 - opt.sep_eps) continue;
      if (sep.direct)
        throw Infeasible("demand pair admits no cut: a path carries no free element");
      if (present.insert(sep.row).second) {
        rows.push_back(sep.row);
        ++rows_generated;
        added = true;
      }
    }
    if (!added) break;
    if (rows_generated > row_budget)
      throw SolverStall("constraint generation exceeded its row budget");
  }

  out.weights.values = w;
  out.constraint_count = static_cast<int>(rows_generated);
  double value = 0.0;
  for (int e = 0; e < elems; ++e) value += costs[e] * w[e];
  out.value = value;
  if (warm != nullptr) warm->rows = std::move(rows);
  return out;
}

LPResult min_capped_vertex_cut(const DirectedGraph& g, const std::vector<char>& frozen, int s,
                               int t, double cap, const LpOptions& opt, PairLpState* warm) {
  std::vector<double> costs(g.node_count(), 1.0);
  std::vector<double> ub(g.node_count(), cap);
  std::pair<int, int> pair{s, t};
  return solve_path_lp(g, Flavor::vertex, std::span(&pair, 1), costs, ub, frozen, opt, warm);
}

LPResult fractional_multicut(const Instance& inst, const LpOptions& opt) {
  const int elems = inst.element_count();
  std::vector<double> ub(elems, kInf);
  std::vector<char> frozen(elems, 0);
  auto pairs = inst.resolve_demands();
  LpOptions o = opt;
  o.drop_slack_rows = true;
  return solve_path_lp(inst.graph, inst.flavor, pairs, inst.costs, ub, frozen, o);
}

double mass(const FractionalCutFamily& family, std::span<const int> remaining) {
  double total = 0.0;
  for (int i : remaining) {
    const auto& vals = family.per_pair[i].values;
    for (size_t v = 0; v < vals.size(); ++v)
      if (!family.frozen_set[v]) total += vals[v];
  }
  return total;
}

}  // namespace dmc
