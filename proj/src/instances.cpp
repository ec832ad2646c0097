#include "dmc/instances.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

#include "dmc/rng.hpp"

namespace dmc {

namespace {

std::string fmt_num(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

std::vector<std::string> split_ws(const std::string& line) {
  std::vector<std::string> toks;
  std::istringstream in(line);
  std::string t;
  while (in >> t) toks.push_back(t);
  return toks;
}

double parse_num(const std::string& tok, int line, const char* what) {
  const char* s = tok.c_str();
  char* end = nullptr;
  double v = std::strtod(s, &end);
  if (end != s + tok.size() || tok.empty()) throw ParseError(line, std::string("bad ") + what);
  return v;
}

long parse_int(const std::string& tok, int line, const char* what) {
  const char* s = tok.c_str();
  char* end = nullptr;
  long v = std::strtol(s, &end, 10);
  if (end != s + tok.size() || tok.empty()) throw ParseError(line, std::string("bad ") + what);
  return v;
}

int parse_id(const std::string& tok, int line, long n) {
  long v = parse_int(tok, line, "node id");
  if (v < 1 || v > n) throw ParseError(line, "node id out of range");
  return static_cast<int>(v - 1);
}

}  // namespace

Instance parse_instance(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;

  bool have_p = false;
  Flavor flavor = Flavor::vertex;
  long n = 0, m = 0;

  struct NodeLine {
    double cost;
    std::optional<double> weight;
  };
  std::map<int, NodeLine> node_lines;
  struct ArcLine {
    Arc arc;
    double cost;
    std::optional<double> weight;
    int line;
  };
  std::vector<ArcLine> arc_lines;
  std::vector<std::pair<int, int>> demand_pairs;
  std::optional<double> threshold;
  bool any_weight = false;

  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::vector<std::string> t = split_ws(line);
    if (t.empty()) continue;
    if (t[0] == "c") continue;
    if (!have_p) {
      if (t[0] != "p") throw ParseError(lineno, "expected p line");
      if (t.size() != 5 || t[1] != "dmc") throw ParseError(lineno, "malformed p line");
      if (t[2] == "vertex")
        flavor = Flavor::vertex;
      else if (t[2] == "edge")
        flavor = Flavor::edge;
      else
        throw ParseError(lineno, "unknown flavor");
      n = parse_int(t[3], lineno, "node count");
      m = parse_int(t[4], lineno, "arc count");
      if (n < 0 || m < 0) throw ParseError(lineno, "negative count");
      have_p = true;
      continue;
    }
    if (t[0] == "p") throw ParseError(lineno, "duplicate p line");
    if (t[0] == "n") {
      if (flavor != Flavor::vertex) throw ParseError(lineno, "n line in edge flavor");
      if (t.size() != 3 && t.size() != 4) throw ParseError(lineno, "malformed n line");
      int id = parse_id(t[1], lineno, n);
      if (node_lines.count(id)) throw ParseError(lineno, "duplicate n line");
      NodeLine nl{parse_num(t[2], lineno, "cost"), std::nullopt};
      if (nl.cost < 0) throw ParseError(lineno, "negative cost");
      if (t.size() == 4) {
        nl.weight = parse_num(t[3], lineno, "weight");
        if (*nl.weight < 0) throw ParseError(lineno, "negative weight");
        any_weight = true;
      }
      node_lines[id] = nl;
      continue;
    }
    if (t[0] == "a") {
      size_t want_min = flavor == Flavor::vertex ? 3 : 4;
      size_t want_max = flavor == Flavor::vertex ? 3 : 5;
      if (t.size() < want_min || t.size() > want_max) throw ParseError(lineno, "malformed a line");
      Arc a{parse_id(t[1], lineno, n), parse_id(t[2], lineno, n)};
      if (a.from == a.to) throw ParseError(lineno, "self-loop");
      ArcLine al{a, 1.0, std::nullopt, lineno};
      if (flavor == Flavor::edge) {
        al.cost = parse_num(t[3], lineno, "cost");
        if (al.cost < 0) throw ParseError(lineno, "negative cost");
        if (t.size() == 5) {
          al.weight = parse_num(t[4], lineno, "weight");
          if (*al.weight < 0) throw ParseError(lineno, "negative weight");
          any_weight = true;
        }
      }
      arc_lines.push_back(al);
      continue;
    }
    if (t[0] == "d") {
      if (threshold) throw ParseError(lineno, "d line after t line");
      if (t.size() != 3) throw ParseError(lineno, "malformed d line");
      int s = parse_id(t[1], lineno, n);
      int dst = parse_id(t[2], lineno, n);
      if (s == dst) throw ParseError(lineno, "degenerate demand pair");
      demand_pairs.emplace_back(s, dst);
      continue;
    }
    if (t[0] == "t") {
      if (!demand_pairs.empty()) throw ParseError(lineno, "t line after d lines");
      if (threshold) throw ParseError(lineno, "duplicate t line");
      if (flavor != Flavor::vertex) throw ParseError(lineno, "threshold demands require vertex flavor");
      if (t.size() != 2) throw ParseError(lineno, "malformed t line");
      double L = parse_num(t[1], lineno, "threshold");
      if (L <= 0) throw ParseError(lineno, "threshold must be positive");
      threshold = L;
      continue;
    }
    throw ParseError(lineno, "unknown line type");
  }
  if (!have_p) throw ParseError(lineno, "missing p line");
  if (static_cast<long>(arc_lines.size()) != m) throw ParseError(lineno, "arc count mismatch");

  Instance inst;
  inst.flavor = flavor;
  std::sort(arc_lines.begin(), arc_lines.end(),
            [](const ArcLine& x, const ArcLine& y) { return x.arc < y.arc; });
  if (flavor == Flavor::edge) {
    for (size_t i = 1; i < arc_lines.size(); ++i)
      if (arc_lines[i].arc == arc_lines[i - 1].arc)
        throw ParseError(arc_lines[i].line, "duplicate arc");
  } else {
    arc_lines.erase(std::unique(arc_lines.begin(), arc_lines.end(),
                                [](const ArcLine& x, const ArcLine& y) { return x.arc == y.arc; }),
                    arc_lines.end());
  }
  std::vector<Arc> arcs;
  arcs.reserve(arc_lines.size());
  for (const ArcLine& al : arc_lines) arcs.push_back(al.arc);
  inst.graph = DirectedGraph(static_cast<int>(n), arcs);

  if (flavor == Flavor::vertex) {
    inst.costs.assign(n, 1.0);
    std::vector<double> w(n, 0.0);
    for (auto& [id, nl] : node_lines) {
      inst.costs[id] = nl.cost;
      if (nl.weight) w[id] = *nl.weight;
    }
    if (any_weight) inst.weights = std::move(w);
  } else {
    inst.costs.resize(arc_lines.size());
    std::vector<double> w(arc_lines.size(), 0.0);
    for (size_t i = 0; i < arc_lines.size(); ++i) {
      inst.costs[i] = arc_lines[i].cost;
      if (arc_lines[i].weight) w[i] = *arc_lines[i].weight;
    }
    if (any_weight) inst.weights = std::move(w);
  }

  if (threshold)
    inst.demands = Demands::threshold(*threshold);
  else if (!demand_pairs.empty()) {
    std::sort(demand_pairs.begin(), demand_pairs.end());
    demand_pairs.erase(std::unique(demand_pairs.begin(), demand_pairs.end()), demand_pairs.end());
    inst.demands = Demands::explicit_list(std::move(demand_pairs));
  } else
    inst.demands = Demands::implicit_from_weights();
  return inst;
}

std::string serialize_instance(const Instance& inst) {
  std::string out;
  int n = inst.graph.node_count();
  out += "p dmc ";
  out += inst.flavor == Flavor::vertex ? "vertex" : "edge";
  out += " " + std::to_string(n) + " " + std::to_string(inst.graph.arc_count()) + "\n";
  if (inst.flavor == Flavor::vertex) {
    for (int v = 0; v < n; ++v) {
      out += "n " + std::to_string(v + 1) + " " + fmt_num(inst.costs[v]);
      if (inst.weights) out += " " + fmt_num((*inst.weights)[v]);
      out += "\n";
    }
    for (const Arc& a : inst.graph.arcs())
      out += "a " + std::to_string(a.from + 1) + " " + std::to_string(a.to + 1) + "\n";
  } else {
    const auto& arcs = inst.graph.arcs();
    for (size_t i = 0; i < arcs.size(); ++i) {
      out += "a " + std::to_string(arcs[i].from + 1) + " " + std::to_string(arcs[i].to + 1) + " " +
             fmt_num(inst.costs[i]);
      if (inst.weights) out += " " + fmt_num((*inst.weights)[i]);
      out += "\n";
    }
  }
  if (inst.demands.mode == Demands::Mode::threshold) {
    out += "t " + fmt_num(inst.demands.L) + "\n";
  } else if (inst.demands.mode == Demands::Mode::explicit_pairs) {
    std::vector<std::pair<int, int>> pairs = inst.demands.pairs;
    std::sort(pairs.begin(), pairs.end());
    pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
    for (auto [s, t] : pairs)
      out += "d " + std::to_string(s + 1) + " " + std::to_string(t + 1) + "\n";
  }
  return out;
}

Instance load_instance(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error("cannot open " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_instance(ss.str());
}

void save_instance(const Instance& inst, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw Error("cannot write " + path);
  f << serialize_instance(inst);
}

CutSet parse_cut(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  bool have_p = false;
  CutSet cut;
  long k = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::vector<std::string> t = split_ws(line);
    if (t.empty() || t[0] == "c") continue;
    if (!have_p) {
      if (t.size() != 5 || t[0] != "p" || t[1] != "dmc" || t[2] != "cut")
        throw ParseError(lineno, "expected cut p line");
      if (t[3] == "vertex")
        cut.flavor = Flavor::vertex;
      else if (t[3] == "edge")
        cut.flavor = Flavor::edge;
      else
        throw ParseError(lineno, "unknown flavor");
      k = parse_int(t[4], lineno, "element count");
      have_p = true;
      continue;
    }
    if (t[0] == "n" && cut.flavor == Flavor::vertex && t.size() == 2) {
      long id = parse_int(t[1], lineno, "node id");
      if (id < 1) throw ParseError(lineno, "node id out of range");
      cut.nodes.push_back(static_cast<int>(id - 1));
      continue;
    }
    if (t[0] == "a" && cut.flavor == Flavor::edge && t.size() == 3) {
      long u = parse_int(t[1], lineno, "node id");
      long v = parse_int(t[2], lineno, "node id");
      if (u < 1 || v < 1) throw ParseError(lineno, "node id out of range");
      cut.arcs.push_back({static_cast<int>(u - 1), static_cast<int>(v - 1)});
      continue;
    }
    throw ParseError(lineno, "unknown cut line");
  }
  if (!have_p) throw ParseError(lineno, "missing p line");
  std::sort(cut.nodes.begin(), cut.nodes.end());
  cut.nodes.erase(std::unique(cut.nodes.begin(), cut.nodes.end()), cut.nodes.end());
  std::sort(cut.arcs.begin(), cut.arcs.end());
  cut.arcs.erase(std::unique(cut.arcs.begin(), cut.arcs.end()), cut.arcs.end());
  if (static_cast<long>(cut.size()) != k) throw ParseError(lineno, "element count mismatch");
  return cut;
}

std::string serialize_cut(const CutSet& cut) {
  std::string out = "p dmc cut ";
  out += cut.flavor == Flavor::vertex ? "vertex" : "edge";
  out += " " + std::to_string(cut.size()) + "\n";
  if (cut.flavor == Flavor::vertex) {
    std::vector<int> nodes = cut.nodes;
    std::sort(nodes.begin(), nodes.end());
    for (int v : nodes) out += "n " + std::to_string(v + 1) + "\n";
  } else {
    std::vector<Arc> arcs = cut.arcs;
    std::sort(arcs.begin(), arcs.end());
    for (const Arc& a : arcs)
      out += "a " + std::to_string(a.from + 1) + " " + std::to_string(a.to + 1) + "\n";
  }
  return out;
}

CutSet load_cut(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error("cannot open " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_cut(ss.str());
}

void save_cut(const CutSet& cut, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw Error("cannot write " + path);
  f << serialize_cut(cut);
}

std::string instance_digest(const Instance& inst) {
  std::string s = serialize_instance(inst);
  uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

Instance gen_figure1() {
  // s1..s3 = 0..2, t1..t3 = 3..5, a=6, b=7, c=8
  std::vector<Arc> arcs = {{6, 7}, {7, 8}, {8, 6}, {0, 6}, {8, 3},
                           {1, 8}, {7, 4}, {2, 7}, {6, 5}};
  Instance inst;
  inst.flavor = Flavor::edge;
  inst.graph = DirectedGraph(9, arcs);
  inst.costs.assign(inst.graph.arc_count(), 1.0);
  inst.demands = Demands::explicit_list({{0, 3}, {1, 4}, {2, 5}});
  return inst;
}

Instance gen_path(int n) {
  std::vector<Arc> arcs;
  for (int i = 0; i + 1 < n; ++i) arcs.push_back({i, i + 1});
  Instance inst;
  inst.flavor = Flavor::vertex;
  inst.graph = DirectedGraph(n, arcs);
  inst.costs.assign(n, 1.0);
  inst.demands = Demands::implicit_from_weights();
  return inst;
}

Instance gen_layered(int layers, int width, double arc_prob, uint64_t seed) {
  Rng rng(seed);
  std::vector<Arc> arcs;
  for (int l = 0; l + 1 < layers; ++l)
    for (int u = 0; u < width; ++u)
      for (int v = 0; v < width; ++v)
        if (rng.next_unit() < arc_prob) arcs.push_back({l * width + u, (l + 1) * width + v});
  Instance inst;
  inst.flavor = Flavor::vertex;
  inst.graph = DirectedGraph(layers * width, arcs);
  inst.costs.assign(inst.graph.node_count(), 1.0);
  inst.demands = Demands::implicit_from_weights();
  return inst;
}

Instance gen_random_dag(int n, double arc_prob, uint64_t seed) {
  Rng rng(seed);
  std::vector<Arc> arcs;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (rng.next_unit() < arc_prob) arcs.push_back({i, j});
  Instance inst;
  inst.flavor = Flavor::vertex;
  inst.graph = DirectedGraph(n, arcs);
  inst.costs.assign(n, 1.0);
  inst.demands = Demands::implicit_from_weights();
  return inst;
}

Instance gen_grid(int rows, int cols) {
  std::vector<Arc> arcs;
  auto id = [&](int r, int c) { return r * cols + c; };
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) {
      if (c + 1 < cols) arcs.push_back({id(r, c), id(r, c + 1)});
      if (r + 1 < rows) arcs.push_back({id(r, c), id(r + 1, c)});
    }
  Instance inst;
  inst.flavor = Flavor::vertex;
  inst.graph = DirectedGraph(rows * cols, arcs);
  inst.costs.assign(inst.graph.node_count(), 1.0);
  inst.demands = Demands::implicit_from_weights();
  return inst;
}

Instance generate(const GeneratorSpec& spec) {
  Instance inst;
  switch (spec.family) {
    case GeneratorSpec::Family::figure1:
      inst = gen_figure1();
      break;
    case GeneratorSpec::Family::path:
      inst = gen_path(spec.n);
      break;
    case GeneratorSpec::Family::layered:
      inst = gen_layered(spec.layers, spec.width, spec.arc_prob, spec.seed);
      break;
    case GeneratorSpec::Family::random_dag:
      inst = gen_random_dag(spec.n, spec.arc_prob, spec.seed);
      break;
    case GeneratorSpec::Family::grid:
      inst = gen_grid(spec.rows, spec.cols);
      break;
  }
  if (spec.threshold_L) {
    if (inst.flavor != Flavor::vertex) throw Error("threshold demands require vertex flavor");
    inst.demands = Demands::threshold(*spec.threshold_L);
  }
  return inst;
}

std::optional<GeneratorSpec::Family> family_from_name(const std::string& name) {
  using F = GeneratorSpec::Family;
  if (name == "figure1") return F::figure1;
  if (name == "path") return F::path;
  if (name == "layered") return F::layered;
  if (name == "random-dag" || name == "random_dag") return F::random_dag;
  if (name == "grid") return F::grid;
  return std::nullopt;
}

std::string family_name(GeneratorSpec::Family family) {
  using F = GeneratorSpec::Family;
  switch (family) {
    case F::figure1: return "figure1";
    case F::path: return "path";
    case F::layered: return "layered";
    case F::random_dag: return "random_dag";
    case F::grid: return "grid";
  }
  return "?";
}

}  // namespace dmc
