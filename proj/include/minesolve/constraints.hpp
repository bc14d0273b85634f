#pragma once

#include "minesolve/board.hpp"

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace minesolve {

enum class Assignment : std::uint8_t { Safe = 0, Mine = 1 };

using Assignments = std::map<Cell, Assignment>;

// Sum of 0/1 cell variables equals rhs. `vars` is kept sorted and unique.
struct Constraint {
  std::vector<Cell> vars;
  int rhs = 0;

  std::size_t size() const { return vars.size(); }
  bool contains(Cell c) const;

  friend bool operator==(const Constraint&, const Constraint&) = default;
};

// Sorts and deduplicates vars. Throws std::invalid_argument on an empty
// variable set or rhs outside [0, |vars|].
Constraint make_constraint(std::vector<Cell> vars, int rhs);

// Deterministic processing order: (|vars|, lexicographic cells, rhs).
bool constraint_less(const Constraint& a, const Constraint& b);

class Contradiction : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ConstraintSystem {
  std::vector<Constraint> constraints;
  Assignments known;
  // Cells forced by reduce(), in the order they were discovered.
  std::vector<Cell> deduced;
};

// One constraint per revealed clue with covered, unassigned neighbours. Known
// mines are subtracted from the clue. Throws Contradiction on an out-of-range
// adjusted clue.
ConstraintSystem extract_constraints(const PlayerView& view, const Assignments& known = {});
ConstraintSystem extract_constraints(const GameState& state, const Assignments& known = {});

// longer - shorter when shorter.vars is a proper subset of longer.vars.
// The result may carry an out-of-range rhs; callers treat that as a
// contradiction.
std::optional<Constraint> subtract(const Constraint& longer, const Constraint& shorter);

struct ReduceStats {
  std::size_t rewrites = 0;  // subset subtractions plus propagation rounds
  std::size_t passes = 0;
};

// Fixpoint of subset subtraction and unit propagation (rhs == 0 forces Safe,
// rhs == |vars| forces Mine). Forced cells move into `known`; the remaining
// constraints are deduplicated and sorted by constraint_less. Throws
// Contradiction if the system has no solution detectable by these rules.
ConstraintSystem reduce(ConstraintSystem system, ReduceStats* stats = nullptr);

struct Deductions {
  std::vector<Cell> safe;
  std::vector<Cell> mines;
};

// Cells forced since extraction, each list in row-major order.
Deductions deductions(const ConstraintSystem& system);

// One "cells... = rhs" line per constraint, e.g. "(0,1) (0,2) = 1".
std::string dump(const ConstraintSystem& system);

}  // namespace minesolve
