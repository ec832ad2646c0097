#include "dmc/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <set>

#include "dmc/errors.hpp"
#include "dmc/simplex.hpp"

namespace dmc {

namespace {

void paths_dfs(const DirectedGraph& g, int t, size_t limit, std::vector<int>& walk,
               std::vector<char>& on_walk, std::vector<std::vector<int>>& out) {
  int u = walk.back();
  if (u == t) {
    if (out.size() >= limit) throw BudgetExceeded("simple path enumeration budget");
    out.push_back(walk);
    return;
  }
  for (int v : g.out(u)) {
    if (on_walk[v]) continue;
    on_walk[v] = 1;
    walk.push_back(v);
    paths_dfs(g, t, limit, walk, on_walk, out);
    walk.pop_back();
    on_walk[v] = 0;
  }
}

// Element ids a cut could use against this path: interior nodes, or the arcs.
std::vector<int> path_elements(const DirectedGraph& g, Flavor flavor,
                               const std::vector<int>& path) {
  std::vector<int> elems;
  if (flavor == Flavor::vertex) {
    for (size_t i = 1; i + 1 < path.size(); ++i) elems.push_back(path[i]);
  } else {
    for (size_t i = 0; i + 1 < path.size(); ++i) elems.push_back(g.arc_index(path[i], path[i + 1]));
  }
  return elems;
}

}  // namespace

std::vector<std::vector<int>> enumerate_simple_paths(const DirectedGraph& g, int s, int t,
                                                     size_t limit) {
  if (s == t) throw Error("path enumeration needs distinct endpoints");
  std::vector<std::vector<int>> out;
  std::vector<int> walk{s};
  std::vector<char> on_walk(g.node_count(), 0);
  on_walk[s] = 1;
  paths_dfs(g, t, limit, walk, on_walk, out);
  return out;
}

LPResult exact_fractional_multicut_small(const Instance& inst, size_t path_limit) {
  const int elems = inst.element_count();
  std::set<std::vector<int>> row_set;
  for (auto [s, t] : inst.resolve_demands()) {
    if (s == t) continue;
    for (const auto& path : enumerate_simple_paths(inst.graph, s, t, path_limit)) {
      std::vector<int> row = path_elements(inst.graph, inst.flavor, path);
      if (row.empty()) throw Infeasible("demand pair admits no cut: a path carries no element");
      std::sort(row.begin(), row.end());
      row.erase(std::unique(row.begin(), row.end()), row.end());
      row_set.insert(std::move(row));
    }
  }

  LPResult out;
  out.weights.values.assign(elems, 0.0);
  if (row_set.empty()) return out;

  std::vector<int> locals;
  for (const auto& r : row_set) locals.insert(locals.end(), r.begin(), r.end());
  std::sort(locals.begin(), locals.end());
  locals.erase(std::unique(locals.begin(), locals.end()), locals.end());
  std::vector<int> col_of(elems, -1);
  for (size_t j = 0; j < locals.size(); ++j) col_of[locals[j]] = static_cast<int>(j);

  std::vector<std::vector<double>> mat;
  mat.reserve(row_set.size());
  for (const auto& r : row_set) {
    std::vector<double> row(locals.size(), 0.0);
    for (int e : r) row[col_of[e]] = 1.0;
    mat.push_back(std::move(row));
  }
  std::vector<double> b(mat.size(), 1.0), c(locals.size()), ub(locals.size(), kInf);
  for (size_t j = 0; j < locals.size(); ++j) c[j] = inst.costs[locals[j]];

  long long budget =
      10LL * static_cast<long long>(locals.size() + 1) * static_cast<long long>(mat.size() + 1) +
      1000;
  SimplexResult lp = solve_bounded_lp(mat, b, c, ub, budget);
  if (!lp.feasible) throw Infeasible("enumerated path constraints are infeasible");
  for (size_t j = 0; j < locals.size(); ++j) out.weights.values[locals[j]] = lp.x[j];
  out.constraint_count = static_cast<int>(mat.size());
  out.iterations = lp.pivots;
  double value = 0.0;
  for (size_t j = 0; j < locals.size(); ++j) value += c[j] * lp.x[j];
  out.value = value;
  return out;
}

namespace {

struct BranchAndBound {
  const Instance& inst;
  std::vector<std::pair<int, int>> pairs;
  int elems;
  double best_cost = kInf;
  std::vector<int> best_elems;
  bool found = false;
  long long explored = 0;
  static constexpr long long kNodeBudget = 10'000'000;
  static constexpr double kCostEps = 1e-9;

  explicit BranchAndBound(const Instance& i) : inst(i), pairs(i.resolve_demands()) {
    elems = inst.element_count();
  }

  // Free (branchable) elements of some still-uncut demand path, in path
  // order. nullopt: every pair is cut. Empty: a violated path survives but
  // nothing on it may be added, so the branch is dead.
  std::optional<std::vector<int>> violated_free_elements(const std::vector<char>& in,
                                                         const std::vector<char>& out) const {
    const DirectedGraph& g = inst.graph;
    int n = g.node_count();
    for (auto [s, t] : pairs) {
      if (s == t) continue;
      // BFS that refuses elements already in the cut.
      std::vector<int> parent(n, -1);
      std::vector<char> seen(n, 0);
      std::vector<int> q{s};
      seen[s] = 1;
      bool hit = false;
      for (size_t head = 0; head < q.size() && !hit; ++head) {
        int u = q[head];
        for (int v : g.out(u)) {
          if (seen[v]) continue;
          if (inst.flavor == Flavor::vertex && v != t && in[v]) continue;
          if (inst.flavor == Flavor::edge && in[g.arc_index(u, v)]) continue;
          seen[v] = 1;
          parent[v] = u;
          if (v == t) {
            hit = true;
            break;
          }
          q.push_back(v);
        }
      }
      if (!hit) continue;
      std::vector<int> path;
      for (int v = t; v != -1; v = parent[v]) path.push_back(v);
      std::reverse(path.begin(), path.end());
      std::vector<int> free;
      for (int e : path_elements(g, inst.flavor, path))
        if (!in[e] && !out[e]) free.push_back(e);
      return free;
    }
    return std::nullopt;
  }

  double lower_bound(const std::vector<char>& in, const std::vector<char>& out,
                     double in_cost) const {
    std::vector<double> ub(elems, kInf);
    for (int e = 0; e < elems; ++e)
      if (out[e]) ub[e] = 0.0;
    LpOptions lo;
    LPResult lp = solve_path_lp(inst.graph, inst.flavor, pairs, inst.costs, ub, in, lo);
    return in_cost + lp.value;
  }

  void record(const std::vector<char>& in, double in_cost) {
    std::vector<int> sol;
    for (int e = 0; e < elems; ++e)
      if (in[e]) sol.push_back(e);
    if (!found || in_cost < best_cost - kCostEps ||
        (in_cost <= best_cost + kCostEps && sol < best_elems)) {
      best_cost = found ? std::min(best_cost, in_cost) : in_cost;
      best_elems = std::move(sol);
      found = true;
    }
  }

  void search(std::vector<char>& in, std::vector<char>& out, double in_cost) {
    if (++explored > kNodeBudget) throw BudgetExceeded("branch and bound node budget");
    auto free = violated_free_elements(in, out);
    if (!free) {
      record(in, in_cost);
      return;
    }
    if (free->empty()) return;
    if (found && in_cost > best_cost + kCostEps) return;
    if (found) {
      bool bound_prunes;
      try {
        bound_prunes = lower_bound(in, out, in_cost) > best_cost + kCostEps;
      } catch (const Infeasible&) {
        return;
      }
      if (bound_prunes) return;
    }
    // Every cut extending (in, out) hits this path at its first not-yet-
    // excluded element; one child per choice.
    for (size_t i = 0; i < free->size(); ++i) {
      int e = (*free)[i];
      in[e] = 1;
      for (size_t j = 0; j < i; ++j) out[(*free)[j]] = 1;
      search(in, out, in_cost + inst.costs[e]);
      in[e] = 0;
      for (size_t j = 0; j < i; ++j) out[(*free)[j]] = 0;
    }
  }
};

}  // namespace

CutSet exact_integral_multicut(const Instance& inst, int max_candidates) {
  const DirectedGraph& g = inst.graph;
  const int n = g.node_count();

  // Elements on some demand path are the only ones worth branching on.
  std::vector<char> cuttable(inst.element_count(), 0);
  for (auto [s, t] : inst.resolve_demands()) {
    if (s == t) continue;
    std::vector<char> none(n, 0);
    std::vector<int> from_s = vdist_unweighted(g, s);
    for (int v = 0; v < n; ++v) {
      if (from_s[v] == kUnreachable) continue;
      if (inst.flavor == Flavor::vertex) {
        if (v != s && v != t && reachable_avoiding(g, none, v, t)) cuttable[v] = 1;
      } else {
        for (int u2 : g.out(v))
          if (reachable_avoiding(g, none, u2, t)) cuttable[g.arc_index(v, u2)] = 1;
      }
    }
  }
  int k = static_cast<int>(std::count(cuttable.begin(), cuttable.end(), 1));
  if (k > max_candidates) throw BudgetExceeded("too many cuttable elements for exact search");

  BranchAndBound bb(inst);
  std::vector<char> in(inst.element_count(), 0), out(inst.element_count(), 0);
  // Elements off every demand path never enter a minimal cut.
  for (int e = 0; e < inst.element_count(); ++e)
    if (!cuttable[e]) out[e] = 1;
  bb.search(in, out, 0.0);
  if (!bb.found) throw Infeasible("some demand pair cannot be cut");

  CutSet res;
  res.flavor = inst.flavor;
  if (inst.flavor == Flavor::vertex) {
    res.nodes = bb.best_elems;
  } else {
    for (int e : bb.best_elems) res.arcs.push_back(g.arcs()[e]);
  }
  res.cost = bb.best_cost;
  return res;
}

namespace {

// Unit-capacity Dinic, small graphs only.
struct Dinic {
  struct E {
    int to, rev, cap;
  };
  std::vector<std::vector<E>> adj;
  std::vector<int> level, it;

  explicit Dinic(int n) : adj(n), level(n), it(n) {}

  void add(int u, int v, int cap) {
    adj[u].push_back({v, static_cast<int>(adj[v].size()), cap});
    adj[v].push_back({u, static_cast<int>(adj[u].size()) - 1, 0});
  }

  bool bfs(int s, int t) {
    std::fill(level.begin(), level.end(), -1);
    std::vector<int> q{s};
    level[s] = 0;
    for (size_t head = 0; head < q.size(); ++head) {
      int u = q[head];
      for (const E& e : adj[u])
        if (e.cap > 0 && level[e.to] < 0) {
          level[e.to] = level[u] + 1;
          q.push_back(e.to);
        }
    }
    return level[t] >= 0;
  }

  int dfs(int u, int t, int f) {
    if (u == t) return f;
    for (int& i = it[u]; i < static_cast<int>(adj[u].size()); ++i) {
      E& e = adj[u][i];
      if (e.cap > 0 && level[e.to] == level[u] + 1) {
        int got = dfs(e.to, t, std::min(f, e.cap));
        if (got > 0) {
          e.cap -= got;
          adj[e.to][e.rev].cap += got;
          return got;
        }
      }
    }
    return 0;
  }

  int maxflow(int s, int t) {
    int flow = 0;
    while (bfs(s, t)) {
      std::fill(it.begin(), it.end(), 0);
      int f;
      while ((f = dfs(s, t, 1 << 29)) > 0) flow += f;
    }
    return flow;
  }
};

}  // namespace

int menger_min_vertex_cut(const DirectedGraph& g, int s, int t) {
  if (s == t) throw Error("flow endpoints must differ");
  if (g.has_arc(s, t)) throw Infeasible("endpoints are directly connected");
  const int n = g.node_count();
  const int big = 1 << 29;
  // v splits into 2v (in) and 2v+1 (out); interior split arcs carry 1.
  Dinic dn(2 * n);
  for (int v = 0; v < n; ++v) dn.add(2 * v, 2 * v + 1, v == s || v == t ? big : 1);
  for (const Arc& a : g.arcs()) dn.add(2 * a.from + 1, 2 * a.to, big);
  return dn.maxflow(2 * s + 1, 2 * t);
}

OracleReport empirical_gap(const Instance& inst, int max_candidates, size_t path_limit) {
  OracleReport rep;
  for (auto [s, t] : inst.resolve_demands()) {
    if (s == t) continue;
    rep.paths_enumerated +=
        static_cast<int>(enumerate_simple_paths(inst.graph, s, t, path_limit).size());
  }
  rep.integral_cut = exact_integral_multicut(inst, max_candidates);
  rep.integral_opt = rep.integral_cut.cost;
  LPResult lp = exact_fractional_multicut_small(inst, path_limit);
  rep.fractional_weights = std::move(lp.weights);
  rep.fractional_opt = lp.value;
  if (rep.fractional_opt > 1e-12) {
    rep.gap = rep.integral_opt / rep.fractional_opt;
  } else {
    rep.gap = rep.integral_opt > 1e-12 ? kInf : 1.0;
  }
  return rep;
}

}  // namespace dmc
