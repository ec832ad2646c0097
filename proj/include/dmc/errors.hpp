#pragma once

#include <stdexcept>
#include <string>

namespace dmc {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Input file could not be parsed. Carries the 1-based line number.
struct ParseError : Error {
  ParseError(int line, const std::string& reason)
      : Error("parse error at line " + std::to_string(line) + ": " + reason), line(line) {}
  int line;
};

// A requested cut does not exist, e.g. a demand pair joined by a direct arc.
struct Infeasible : Error {
  using Error::Error;
};

// LP kernel exceeded its pivot or constraint budget.
struct SolverStall : Error {
  using Error::Error;
};

// Exact oracle refused an instance above its size budget.
struct BudgetExceeded : Error {
  using Error::Error;
};

// Cut flavor does not match the instance flavor.
struct FlavorMismatch : Error {
  using Error::Error;
};

}  // namespace dmc
