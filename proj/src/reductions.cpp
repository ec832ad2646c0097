#include "dmc/reductions.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>
#include <string>

#include "dmc/errors.hpp"

namespace dmc {

namespace {

void capture_original(ReductionMapping& m, const Instance& inst) {
  m.original_flavor = inst.flavor;
  m.original_elements = inst.element_count();
  m.original_costs = inst.costs;
  if (inst.flavor == Flavor::edge) m.original_arcs = inst.graph.arcs();
}

void require_flavor(const Instance& inst, Flavor f, const char* what) {
  if (inst.flavor != f) throw FlavorMismatch(what);
}

const std::vector<double>& require_weights(const Instance& inst, const char* what) {
  if (!inst.weights) throw Error(std::string(what) + " needs explicit weights");
  return *inst.weights;
}

int ceil_count(double x) {
  return std::max(1, static_cast<int>(std::ceil(x - 1e-9)));
}

}  // namespace

const char* reduction_kind_name(ReductionKind k) {
  switch (k) {
    case ReductionKind::edge_to_vertex: return "edge-to-vertex";
    case ReductionKind::vertex_to_edge: return "vertex-to-edge";
    case ReductionKind::to_unit_costs: return "to-unit-costs";
    case ReductionKind::to_uniform_weights: return "to-uniform-weights";
    case ReductionKind::heavy_node: return "heavy-node";
  }
  throw Error("unknown reduction kind");
}

ReductionKind reduction_kind_from_name(const std::string& s) {
  for (ReductionKind k :
       {ReductionKind::edge_to_vertex, ReductionKind::vertex_to_edge, ReductionKind::to_unit_costs,
        ReductionKind::to_uniform_weights, ReductionKind::heavy_node})
    if (s == reduction_kind_name(k)) return k;
  throw Error("unknown reduction kind: " + s);
}

CutSet ReductionMapping::pull_back(const CutSet& transformed_cut) const {
  if (transformed_cut.flavor != transformed.flavor)
    throw FlavorMismatch("cut flavor does not match the transformed instance");

  std::vector<int> telems;
  if (transformed.flavor == Flavor::vertex) {
    telems = transformed_cut.nodes;
  } else {
    for (const Arc& a : transformed_cut.arcs) {
      int e = transformed.graph.arc_index(a.from, a.to);
      if (e < 0) throw Error("cut contains an arc absent from the transformed graph");
      telems.push_back(e);
    }
  }
  std::sort(telems.begin(), telems.end());
  telems.erase(std::unique(telems.begin(), telems.end()), telems.end());
  for (int e : telems)
    if (e < 0 || e >= static_cast<int>(origins.size()))
      throw Error("cut element outside the transformed instance");

  std::vector<char> keep(original_elements, 0);
  if (kind == ReductionKind::to_unit_costs) {
    // A node was only really paid for when every copy of it was bought.
    std::vector<int> total(original_elements, 0), hit(original_elements, 0);
    for (const auto& os : origins)
      for (int o : os) ++total[o];
    for (int e : telems)
      for (int o : origins[e]) ++hit[o];
    for (int o = 0; o < original_elements; ++o)
      if (total[o] > 0 && hit[o] == total[o]) keep[o] = 1;
  } else {
    for (int e : telems)
      for (int o : origins[e]) keep[o] = 1;
  }
  for (int v : preprocessed_cut.nodes) keep[v] = 1;

  CutSet out;
  out.flavor = original_flavor;
  for (int o = 0; o < original_elements; ++o) {
    if (!keep[o]) continue;
    if (original_flavor == Flavor::vertex)
      out.nodes.push_back(o);
    else
      out.arcs.push_back(original_arcs[o]);
    out.cost += original_costs[o];
  }
  return out;
}

ReductionMapping to_uniform_weights(const Instance& inst) {
  require_flavor(inst, Flavor::vertex, "uniform-weight transform expects a vertex instance");
  const std::vector<double>& w = require_weights(inst, "uniform-weight transform");
  for (double c : inst.costs)
    if (c != 1.0) throw Error("uniform-weight transform requires unit costs");

  const int n = inst.graph.node_count();
  double total = 0.0;
  for (double x : w) total += x;
  const double unit = total > 0.0 ? total / n : 0.0;

  std::vector<int> first(n, 0), count(n, 1);
  int nn = 0;
  for (int v = 0; v < n; ++v) {
    count[v] = total > 0.0 ? ceil_count(w[v] / unit) : 1;
    first[v] = nn;
    nn += count[v];
  }

  std::vector<Arc> arcs;
  for (int v = 0; v < n; ++v)
    for (int i = 0; i + 1 < count[v]; ++i) arcs.push_back({first[v] + i, first[v] + i + 1});
  for (const Arc& a : inst.graph.arcs())
    arcs.push_back({first[a.from] + count[a.from] - 1, first[a.to]});

  std::vector<std::pair<int, int>> dem;
  for (auto [a, b] : inst.resolve_demands())
    dem.emplace_back(first[a] + count[a] - 1, first[b]);

  ReductionMapping m;
  m.kind = ReductionKind::to_uniform_weights;
  capture_original(m, inst);
  m.transformed.graph = DirectedGraph(nn, std::move(arcs));
  m.transformed.flavor = Flavor::vertex;
  m.transformed.costs.assign(nn, 1.0);
  m.transformed.weights = std::vector<double>(nn, unit);
  m.transformed.demands = Demands::explicit_list(std::move(dem));
  m.origins.resize(nn);
  for (int v = 0; v < n; ++v)
    for (int i = 0; i < count[v]; ++i) m.origins[first[v] + i] = {v};
  return m;
}

ReductionMapping to_unit_costs(const Instance& inst) {
  require_flavor(inst, Flavor::vertex, "unit-cost transform expects a vertex instance");
  const std::vector<double>& w0 = require_weights(inst, "unit-cost transform");

  const int n = inst.graph.node_count();
  const double thr = n > 0 ? 1.0 / (2.0 * n) : 0.0;
  auto pairs = inst.resolve_demands();
  std::vector<char> terminal(n, 0);
  for (auto [a, b] : pairs) terminal[a] = terminal[b] = 1;

  // Contract every light non-terminal, ascending id, each against the graph
  // as it stands. Weights never change here, so one sweep covers them all.
  std::vector<std::set<int>> outs(n), ins(n);
  for (const Arc& a : inst.graph.arcs()) {
    outs[a.from].insert(a.to);
    ins[a.to].insert(a.from);
  }
  std::vector<char> alive(n, 1);
  for (int v = 0; v < n; ++v) {
    if (terminal[v] || w0[v] > thr) continue;
    for (int u : ins[v])
      for (int x : outs[v])
        if (u != x) {
          outs[u].insert(x);
          ins[x].insert(u);
        }
    for (int u : ins[v]) outs[u].erase(v);
    for (int x : outs[v]) ins[x].erase(v);
    ins[v].clear();
    outs[v].clear();
    alive[v] = 0;
  }

  std::vector<int> new_id(n, -1);
  std::vector<int> old_id;
  for (int v = 0; v < n; ++v)
    if (alive[v]) {
      new_id[v] = static_cast<int>(old_id.size());
      old_id.push_back(v);
    }
  const int ns = static_cast<int>(old_id.size());

  std::vector<double> w2(ns), cost2(ns);
  for (int i = 0; i < ns; ++i) w2[i] = std::min(1.0, 2.0 * w0[old_id[i]]);

  double balance = 0.0, wsum = 0.0;
  for (int i = 0; i < ns; ++i) {
    balance += inst.costs[old_id[i]] * w2[i];
    wsum += w2[i];
  }
  const double alpha = balance > 0.0 ? wsum / (2.0 * balance) : 1.0;
  for (int i = 0; i < ns; ++i) {
    int v = old_id[i];
    cost2[i] = terminal[v] ? 1.0 : std::max(1.0, inst.costs[v] * alpha);
  }

  std::vector<int> first(ns, 0), count(ns, 1);
  int nn = 0;
  for (int i = 0; i < ns; ++i) {
    count[i] = ceil_count(cost2[i]);
    first[i] = nn;
    nn += count[i];
  }

  std::vector<Arc> arcs;
  for (int i = 0; i < ns; ++i)
    for (int x : outs[old_id[i]]) {
      int j = new_id[x];
      for (int ci = 0; ci < count[i]; ++ci)
        for (int cj = 0; cj < count[j]; ++cj) arcs.push_back({first[i] + ci, first[j] + cj});
    }

  std::vector<double> wt(nn), ct(nn, 1.0);
  for (int i = 0; i < ns; ++i)
    for (int ci = 0; ci < count[i]; ++ci) wt[first[i] + ci] = w2[i];

  std::vector<std::pair<int, int>> dem;
  for (auto [a, b] : pairs) dem.emplace_back(first[new_id[a]], first[new_id[b]]);

  ReductionMapping m;
  m.kind = ReductionKind::to_unit_costs;
  capture_original(m, inst);
  m.transformed.graph = DirectedGraph(nn, std::move(arcs));
  m.transformed.flavor = Flavor::vertex;
  m.transformed.costs = std::move(ct);
  m.transformed.weights = std::move(wt);
  m.transformed.demands = Demands::explicit_list(std::move(dem));
  m.origins.resize(nn);
  for (int i = 0; i < ns; ++i)
    for (int ci = 0; ci < count[i]; ++ci) m.origins[first[i] + ci] = {old_id[i]};
  return m;
}

ReductionMapping edge_to_vertex(const Instance& inst) {
  require_flavor(inst, Flavor::edge, "edge-to-vertex transform expects an edge instance");

  const int n = inst.graph.node_count();
  const int an = inst.graph.arc_count();
  std::vector<double> aw(an, 1.0);
  if (inst.weights) aw = *inst.weights;

  const double thr = n > 0 ? 1.0 / (2.0 * n) : 0.0;
  auto label_of = [&](double wv) {
    if (wv <= thr) return 0.0;
    if (wv >= 1.0) return 1.0;
    double lab = 1.0;
    while (lab / 2.0 > wv) lab /= 2.0;
    return lab;  // smallest power of 1/2 strictly above wv
  };

  // Distinct labels used on each side of each vertex, descending so the node
  // layout is deterministic.
  std::vector<std::map<double, std::vector<int>, std::greater<double>>> in_lab(n), out_lab(n);
  for (int e = 0; e < an; ++e) {
    const Arc& a = inst.graph.arcs()[e];
    double lab = label_of(aw[e]);
    out_lab[a.from][lab].push_back(e);
    in_lab[a.to][lab].push_back(e);
  }

  std::vector<int> s_node(n), e_node(n);
  std::vector<std::map<double, int, std::greater<double>>> l_node(n), r_node(n);
  int nn = 0;
  std::vector<double> wt, ct;
  std::vector<std::vector<int>> origins;
  auto add_node = [&](double weight, double cost, std::vector<int> orig) {
    wt.push_back(weight);
    ct.push_back(cost);
    origins.push_back(std::move(orig));
    return nn++;
  };
  for (int v = 0; v < n; ++v) {
    s_node[v] = add_node(0.0, 0.0, {});
    e_node[v] = add_node(0.0, 0.0, {});
    for (const auto& [lab, es] : in_lab[v]) {
      double cost = 0.0;
      for (int e : es) cost += inst.costs[e];
      l_node[v][lab] = add_node(lab, cost, es);
    }
    for (const auto& [lab, es] : out_lab[v]) {
      double cost = 0.0;
      for (int e : es) cost += inst.costs[e];
      r_node[v][lab] = add_node(lab, cost, es);
    }
  }

  std::vector<Arc> arcs;
  for (int v = 0; v < n; ++v) {
    for (const auto& [lab, id] : r_node[v]) arcs.push_back({s_node[v], id});
    for (const auto& [labl, idl] : l_node[v]) {
      arcs.push_back({idl, e_node[v]});
      for (const auto& [labr, idr] : r_node[v]) arcs.push_back({idl, idr});
    }
  }
  for (int e = 0; e < an; ++e) {
    const Arc& a = inst.graph.arcs()[e];
    double lab = label_of(aw[e]);
    arcs.push_back({r_node[a.from][lab], l_node[a.to][lab]});
  }

  std::vector<std::pair<int, int>> dem;
  for (auto [a, b] : inst.resolve_demands()) dem.emplace_back(s_node[a], e_node[b]);

  ReductionMapping m;
  m.kind = ReductionKind::edge_to_vertex;
  capture_original(m, inst);
  m.transformed.graph = DirectedGraph(nn, std::move(arcs));
  m.transformed.flavor = Flavor::vertex;
  m.transformed.costs = std::move(ct);
  m.transformed.weights = std::move(wt);
  m.transformed.demands = Demands::explicit_list(std::move(dem));
  m.origins = std::move(origins);
  return m;
}

ReductionMapping vertex_to_edge(const Instance& inst) {
  require_flavor(inst, Flavor::vertex, "vertex-to-edge transform expects a vertex instance");

  const int n = inst.graph.node_count();
  double cost_sum = 0.0;
  for (double c : inst.costs) cost_sum += c;
  const double big = 1.0 + cost_sum;

  std::vector<Arc> arcs;
  for (int v = 0; v < n; ++v) arcs.push_back({2 * v, 2 * v + 1});
  for (const Arc& a : inst.graph.arcs()) arcs.push_back({2 * a.from + 1, 2 * a.to});

  ReductionMapping m;
  m.kind = ReductionKind::vertex_to_edge;
  capture_original(m, inst);
  m.transformed.graph = DirectedGraph(2 * n, std::move(arcs));
  m.transformed.flavor = Flavor::edge;

  const int ta = m.transformed.graph.arc_count();
  m.transformed.costs.assign(ta, 0.0);
  std::vector<double> tw(ta, 0.0);
  m.origins.resize(ta);
  for (int e = 0; e < ta; ++e) {
    const Arc& a = m.transformed.graph.arcs()[e];
    if (a.from % 2 == 0) {  // split arc (v_in, v_out)
      int v = a.from / 2;
      m.transformed.costs[e] = inst.costs[v];
      if (inst.weights) tw[e] = (*inst.weights)[v];
      m.origins[e] = {v};
    } else {  // rerouted original arc (u_out, v_in)
      int u = a.from / 2, v = a.to / 2;
      m.transformed.costs[e] = big;
      m.origins[e] = {u, v};
    }
  }
  if (inst.weights) m.transformed.weights = std::move(tw);

  std::vector<std::pair<int, int>> dem;
  for (auto [a, b] : inst.resolve_demands()) dem.emplace_back(2 * a + 1, 2 * b);
  m.transformed.demands = Demands::explicit_list(std::move(dem));
  return m;
}

ReductionMapping heavy_node_preprocess(const Instance& inst, double c) {
  require_flavor(inst, Flavor::vertex, "heavy-node preprocessing expects a vertex instance");
  const std::vector<double>& w = require_weights(inst, "heavy-node preprocessing");
  if (!(c > 0.0)) throw Error("heavy-node exponent must be positive");

  const int n = inst.graph.node_count();
  const double thr =
      n > 0 ? std::pow(static_cast<double>(n), -c / (1.0 + c)) / 4.0 : kInf;

  ReductionMapping m;
  m.kind = ReductionKind::heavy_node;
  capture_original(m, inst);
  m.preprocessed_cut.flavor = Flavor::vertex;

  std::vector<int> new_id(n, -1);
  std::vector<int> old_id;
  for (int v = 0; v < n; ++v) {
    if (w[v] >= thr) {
      m.preprocessed_cut.nodes.push_back(v);
      m.preprocessed_cut.cost += inst.costs[v];
    } else {
      new_id[v] = static_cast<int>(old_id.size());
      old_id.push_back(v);
    }
  }
  const int ns = static_cast<int>(old_id.size());

  std::vector<Arc> arcs;
  for (const Arc& a : inst.graph.arcs())
    if (new_id[a.from] >= 0 && new_id[a.to] >= 0) arcs.push_back({new_id[a.from], new_id[a.to]});

  m.transformed.graph = DirectedGraph(ns, std::move(arcs));
  m.transformed.flavor = Flavor::vertex;
  m.transformed.costs.resize(ns);
  std::vector<double> tw(ns);
  for (int i = 0; i < ns; ++i) {
    m.transformed.costs[i] = inst.costs[old_id[i]];
    tw[i] = 2.0 * w[old_id[i]];
  }
  m.transformed.weights = std::move(tw);
  m.transformed.demands = Demands::implicit_from_weights();
  m.origins.resize(ns);
  for (int i = 0; i < ns; ++i) m.origins[i] = {old_id[i]};
  return m;
}

namespace {

std::string elem_str(Flavor f, const std::vector<Arc>& arcs, int e) {
  if (f == Flavor::vertex) return std::to_string(e + 1);
  return std::to_string(arcs[e].from + 1) + "," + std::to_string(arcs[e].to + 1);
}

int parse_elem(const std::string& tok, const Instance& inst, int lineno) {
  size_t comma = tok.find(',');
  if (comma == std::string::npos) {
    if (inst.flavor != Flavor::vertex) throw ParseError(lineno, "node element in an arc context");
    int id = 0;
    try {
      id = std::stoi(tok);
    } catch (...) {
      throw ParseError(lineno, "bad node id '" + tok + "'");
    }
    if (id < 1 || id > inst.graph.node_count()) throw ParseError(lineno, "node id out of range");
    return id - 1;
  }
  if (inst.flavor != Flavor::edge) throw ParseError(lineno, "arc element in a node context");
  int u = 0, v = 0;
  try {
    u = std::stoi(tok.substr(0, comma));
    v = std::stoi(tok.substr(comma + 1));
  } catch (...) {
    throw ParseError(lineno, "bad arc element '" + tok + "'");
  }
  int e = inst.graph.arc_index(u - 1, v - 1);
  if (e < 0) throw ParseError(lineno, "arc not present: " + tok);
  return e;
}

}  // namespace

std::string serialize_mapping(const ReductionMapping& m) {
  std::string out = "r dmc mapping ";
  out += reduction_kind_name(m.kind);
  out += "\n";
  for (int v : m.preprocessed_cut.nodes) {
    out += "x " + elem_str(m.original_flavor, m.original_arcs, v) + "\n";
  }
  const std::vector<Arc>& tarcs = m.transformed.graph.arcs();
  for (size_t e = 0; e < m.origins.size(); ++e)
    for (int o : m.origins[e]) {
      out += "m " + elem_str(m.transformed.flavor, tarcs, static_cast<int>(e)) + " " +
             elem_str(m.original_flavor, m.original_arcs, o) + "\n";
    }
  return out;
}

ReductionMapping parse_mapping(const std::string& text, const Instance& original,
                               Instance transformed) {
  ReductionMapping m;
  m.transformed = std::move(transformed);
  capture_original(m, original);
  m.preprocessed_cut.flavor = original.flavor;
  m.origins.resize(m.transformed.element_count());

  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag) || tag == "c") continue;
    if (!have_header) {
      std::string d1, d2, kind;
      if (tag != "r" || !(ls >> d1 >> d2 >> kind) || d1 != "dmc" || d2 != "mapping")
        throw ParseError(lineno, "expected 'r dmc mapping <kind>' header");
      try {
        m.kind = reduction_kind_from_name(kind);
      } catch (const Error&) {
        throw ParseError(lineno, "unknown mapping kind '" + kind + "'");
      }
      have_header = true;
      continue;
    }
    if (tag == "x") {
      std::string tok;
      if (!(ls >> tok)) throw ParseError(lineno, "x line needs an element");
      int o = parse_elem(tok, original, lineno);
      if (original.flavor == Flavor::vertex)
        m.preprocessed_cut.nodes.push_back(o);
      else
        m.preprocessed_cut.arcs.push_back(original.graph.arcs()[o]);
      m.preprocessed_cut.cost += original.costs[o];
    } else if (tag == "m") {
      std::string tt, ot;
      if (!(ls >> tt >> ot)) throw ParseError(lineno, "m line needs two elements");
      int te = parse_elem(tt, m.transformed, lineno);
      int oe = parse_elem(ot, original, lineno);
      m.origins[te].push_back(oe);
    } else {
      throw ParseError(lineno, "unknown line tag '" + tag + "'");
    }
  }
  if (!have_header) throw ParseError(lineno, "missing mapping header");
  std::sort(m.preprocessed_cut.nodes.begin(), m.preprocessed_cut.nodes.end());
  std::sort(m.preprocessed_cut.arcs.begin(), m.preprocessed_cut.arcs.end());
  return m;
}

}  // namespace dmc
