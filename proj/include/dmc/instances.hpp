#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "dmc/graph.hpp"

namespace dmc {

// DIMACS-like instance files, 1-indexed ids, LF line endings:
//   c <comment>
//   p dmc <vertex|edge> <n> <m>
//   n <id> <cost> [<weight>]          (vertex flavor; missing lines: cost 1)
//   a <u> <v>                         (vertex flavor)
//   a <u> <v> <cost> [<weight>]       (edge flavor)
//   d <s> <t>                         (explicit demands)
//   t <L>                             (threshold demands, vertex flavor only)
// d and t are mutually exclusive; neither means demands are implicit (all
// pairs at weighted distance >= 1) when weights are present, empty otherwise.
Instance parse_instance(const std::string& text);
Instance load_instance(const std::string& path);

// Canonical form: sorted sections, single spaces, %.12g numbers. Generated
// instances keep all values on a 1/256 grid so parse(serialize(x)) == x.
std::string serialize_instance(const Instance& inst);
void save_instance(const Instance& inst, const std::string& path);

// Cut files:
//   p dmc cut <vertex|edge> <k>
//   n <id>        or       a <u> <v>
CutSet parse_cut(const std::string& text);
CutSet load_cut(const std::string& path);
std::string serialize_cut(const CutSet& cut);
void save_cut(const CutSet& cut, const std::string& path);

// FNV-1a over the canonical serialization, as 16 hex chars.
std::string instance_digest(const Instance& inst);

struct GeneratorSpec {
  enum class Family { figure1, path, layered, random_dag, grid };
  Family family = Family::path;
  int n = 0;                              // path, random_dag
  int layers = 0;                         // layered
  int width = 0;                          // layered
  int rows = 0, cols = 0;                 // grid
  double arc_prob = 0.5;                  // layered, random_dag
  uint64_t seed = 1;
  std::optional<double> threshold_L;      // attach threshold demands
};

// Three hard demand pairs over a 3-cycle; integral optimum 2, fractional 1.5.
Instance gen_figure1();
Instance gen_path(int n);
Instance gen_layered(int layers, int width, double arc_prob, uint64_t seed);
Instance gen_random_dag(int n, double arc_prob, uint64_t seed);
Instance gen_grid(int rows, int cols);
Instance generate(const GeneratorSpec& spec);

std::optional<GeneratorSpec::Family> family_from_name(const std::string& name);
std::string family_name(GeneratorSpec::Family family);

}  // namespace dmc
