#include "dmc/graph.hpp"

#include <algorithm>
#include <queue>

#include "dmc/parallel.hpp"

namespace dmc {

namespace {
int g_thread_count = 0;
}

void set_thread_count(int k) { g_thread_count = k < 0 ? 0 : k; }
int thread_count() {
  if (g_thread_count > 0) return g_thread_count;
  return hardware_threads();
}

DirectedGraph::DirectedGraph(int node_count, std::vector<Arc> arcs) : n_(node_count) {
  if (node_count < 0) throw Error("negative node count");
  for (const Arc& a : arcs) {
    if (a.from < 0 || a.from >= n_ || a.to < 0 || a.to >= n_)
      throw Error("arc endpoint out of range");
    if (a.from == a.to) throw Error("self-loop");
  }
  std::sort(arcs.begin(), arcs.end());
  arcs.erase(std::unique(arcs.begin(), arcs.end()), arcs.end());
  arcs_ = std::move(arcs);

  out_off_.assign(n_ + 1, 0);
  in_off_.assign(n_ + 1, 0);
  for (const Arc& a : arcs_) {
    ++out_off_[a.from + 1];
    ++in_off_[a.to + 1];
  }
  for (int v = 0; v < n_; ++v) {
    out_off_[v + 1] += out_off_[v];
    in_off_[v + 1] += in_off_[v];
  }
  out_adj_.resize(arcs_.size());
  in_adj_.resize(arcs_.size());
  std::vector<int> op = out_off_, ip = in_off_;
  for (const Arc& a : arcs_) {
    out_adj_[op[a.from]++] = a.to;
    in_adj_[ip[a.to]++] = a.from;
  }
}

int DirectedGraph::arc_index(int u, int v) const {
  if (u < 0 || u >= n_ || v < 0 || v >= n_) return -1;
  auto it = std::lower_bound(arcs_.begin(), arcs_.end(), Arc{u, v});
  if (it != arcs_.end() && it->from == u && it->to == v)
    return static_cast<int>(it - arcs_.begin());
  return -1;
}

std::vector<int> vdist_unweighted(const DirectedGraph& g, int s) {
  // BFS edge distance, then interior count = edges - 1 (0 for s itself).
  int n = g.node_count();
  std::vector<int> edges(n, kUnreachable);
  edges[s] = 0;
  std::vector<int> q;
  q.reserve(n);
  q.push_back(s);
  for (size_t head = 0; head < q.size(); ++head) {
    int u = q[head];
    for (int v : g.out(u)) {
      if (edges[v] == kUnreachable) {
        edges[v] = edges[u] + 1;
        q.push_back(v);
      }
    }
  }
  std::vector<int> d(n, kUnreachable);
  for (int v = 0; v < n; ++v) {
    if (edges[v] == kUnreachable) continue;
    d[v] = edges[v] <= 1 ? 0 : edges[v] - 1;
  }
  return d;
}

std::vector<int> vdist_unweighted_avoiding(const DirectedGraph& g, const std::vector<char>& blocked,
                                           int s) {
  int n = g.node_count();
  std::vector<int> edges(n, kUnreachable);
  edges[s] = 0;
  std::vector<int> q;
  q.reserve(n);
  q.push_back(s);
  for (size_t head = 0; head < q.size(); ++head) {
    int u = q[head];
    for (int v : g.out(u)) {
      if (edges[v] == kUnreachable && !blocked[v]) {
        edges[v] = edges[u] + 1;
        q.push_back(v);
      }
    }
  }
  std::vector<int> d(n, kUnreachable);
  for (int v = 0; v < n; ++v) {
    if (edges[v] == kUnreachable) continue;
    d[v] = edges[v] <= 1 ? 0 : edges[v] - 1;
  }
  return d;
}

namespace {

// Dijkstra over the implicit node-split graph. dist[v] = least interior
// weight over s->v paths (v's own weight excluded). eff(u) is added when a
// path continues through u, so all relaxations are nonnegative.
template <typename EffW>
std::vector<double> vdist_dijkstra(const DirectedGraph& g, int s, EffW eff) {
  int n = g.node_count();
  std::vector<double> dist(n, kInf);
  std::vector<char> done(n, 0);
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> pq;
  dist[s] = 0.0;
  pq.emplace(0.0, s);
  while (!pq.empty()) {
    auto [du, u] = pq.top();
    pq.pop();
    if (done[u]) continue;
    done[u] = 1;
    double through = u == s ? du : du + eff(u);
    for (int v : g.out(u)) {
      if (!done[v] && through < dist[v]) {
        dist[v] = through;
        pq.emplace(through, v);
      }
    }
  }
  return dist;
}

}  // namespace

std::vector<double> vdist_weighted(const DirectedGraph& g, std::span<const double> w, int s) {
  return vdist_dijkstra(g, s, [&](int u) { return w[u]; });
}

std::vector<double> vdist_weighted_frozen(const DirectedGraph& g, std::span<const double> w,
                                          const std::vector<char>& frozen, int s) {
  return vdist_dijkstra(g, s, [&](int u) { return frozen[u] ? 1.0 : w[u]; });
}

std::vector<double> edist_weighted(const DirectedGraph& g, std::span<const double> w, int s) {
  int n = g.node_count();
  std::vector<double> dist(n, kInf);
  std::vector<char> done(n, 0);
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> pq;
  dist[s] = 0.0;
  pq.emplace(0.0, s);
  while (!pq.empty()) {
    auto [du, u] = pq.top();
    pq.pop();
    if (done[u]) continue;
    done[u] = 1;
    for (int v : g.out(u)) {
      double cand = du + w[g.arc_index(u, v)];
      if (!done[v] && cand < dist[v]) {
        dist[v] = cand;
        pq.emplace(cand, v);
      }
    }
  }
  return dist;
}

bool reachable_avoiding(const DirectedGraph& g, const std::vector<char>& blocked, int u, int v) {
  if (u == v) return true;
  std::vector<char> seen(g.node_count(), 0);
  std::vector<int> stack{u};
  seen[u] = 1;
  while (!stack.empty()) {
    int x = stack.back();
    stack.pop_back();
    for (int y : g.out(x)) {
      if (y == v) return true;
      if (!seen[y] && !blocked[y]) {
        seen[y] = 1;
        stack.push_back(y);
      }
    }
  }
  return false;
}

namespace {

void pairs_from_source(const DirectedGraph& g, double L, int s,
                       std::vector<std::pair<int, int>>& out) {
  std::vector<int> d = vdist_unweighted(g, s);
  for (int t = 0; t < g.node_count(); ++t) {
    if (t == s || d[t] == kUnreachable) continue;
    if (static_cast<double>(d[t]) + kDistEps >= L) out.emplace_back(s, t);
  }
}

}  // namespace

std::vector<std::pair<int, int>> demand_pairs_at_least_serial(const DirectedGraph& g, double L) {
  std::vector<std::pair<int, int>> pairs;
  for (int s = 0; s < g.node_count(); ++s) pairs_from_source(g, L, s, pairs);
  return pairs;
}

std::vector<std::pair<int, int>> demand_pairs_at_least_parallel(const DirectedGraph& g, double L) {
  int n = g.node_count();
  std::vector<std::vector<std::pair<int, int>>> per_source(n);
#pragma omp parallel for schedule(dynamic, 4) num_threads(thread_count())
  for (int s = 0; s < n; ++s) pairs_from_source(g, L, s, per_source[s]);
  std::vector<std::pair<int, int>> pairs;
  for (int s = 0; s < n; ++s)
    pairs.insert(pairs.end(), per_source[s].begin(), per_source[s].end());
  return pairs;
}

std::vector<std::pair<int, int>> demand_pairs_at_least(const DirectedGraph& g, double L) {
  if (thread_count() == 1) return demand_pairs_at_least_serial(g, L);
  return demand_pairs_at_least_parallel(g, L);
}

std::vector<std::pair<int, int>> Instance::resolve_demands() const {
  switch (demands.mode) {
    case Demands::Mode::explicit_pairs:
      return demands.pairs;
    case Demands::Mode::threshold:
      if (flavor != Flavor::vertex) throw Error("threshold demands require vertex flavor");
      return demand_pairs_at_least(graph, demands.L);
    case Demands::Mode::implicit: {
      std::vector<std::pair<int, int>> pairs;
      if (!weights) return pairs;
      int n = graph.node_count();
      for (int s = 0; s < n; ++s) {
        std::vector<double> d = flavor == Flavor::vertex
                                    ? vdist_weighted(graph, *weights, s)
                                    : edist_weighted(graph, *weights, s);
        for (int t = 0; t < n; ++t)
          if (t != s && d[t] != kInf && d[t] + kDistEps >= 1.0) pairs.emplace_back(s, t);
      }
      return pairs;
    }
  }
  return {};
}

double cut_cost(const Instance& inst, const CutSet& cut) {
  if (cut.flavor != inst.flavor) throw FlavorMismatch("cut/instance flavor mismatch");
  double c = 0.0;
  if (inst.flavor == Flavor::vertex) {
    for (int v : cut.nodes) c += inst.costs[v];
  } else {
    for (const Arc& a : cut.arcs) {
      int idx = inst.graph.arc_index(a.from, a.to);
      if (idx < 0) throw Error("cut arc not in graph");
      c += inst.costs[idx];
    }
  }
  return c;
}

std::vector<std::pair<int, int>> check_cut(const Instance& inst, const CutSet& cut) {
  if (cut.flavor != inst.flavor) throw FlavorMismatch("cut/instance flavor mismatch");
  std::vector<std::pair<int, int>> violated;
  std::vector<std::pair<int, int>> pairs = inst.resolve_demands();
  if (inst.flavor == Flavor::vertex) {
    std::vector<char> blocked(inst.graph.node_count(), 0);
    for (int v : cut.nodes) blocked[v] = 1;
    for (auto [s, t] : pairs) {
      if (s == t) continue;
      if (reachable_avoiding(inst.graph, blocked, s, t)) violated.emplace_back(s, t);
    }
  } else {
    std::vector<Arc> kept;
    std::vector<Arc> removed = cut.arcs;
    std::sort(removed.begin(), removed.end());
    for (const Arc& a : inst.graph.arcs())
      if (!std::binary_search(removed.begin(), removed.end(), a)) kept.push_back(a);
    DirectedGraph sub(inst.graph.node_count(), kept);
    std::vector<char> none(sub.node_count(), 0);
    for (auto [s, t] : pairs) {
      if (s == t) continue;
      if (reachable_avoiding(sub, none, s, t)) violated.emplace_back(s, t);
    }
  }
  return violated;
}

}  // namespace dmc
