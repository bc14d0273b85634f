#pragma once

#include "minesolve/constraints.hpp"
#include "minesolve/tally.hpp"

#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace minesolve {

struct BoardContext {
  int remaining_mines = 0;          // total mines minus known mines
  std::vector<Cell> unconstrained;  // covered, unassigned, in no group
};

// Mine probability for every covered, unassigned cell.
struct ProbabilityMap {
  std::map<Cell, double> probs;

  double at(Cell c) const { return probs.at(c); }
  double sum() const;
};

class NoConsistentPlacement : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CombineOptions {
  // When false, groups are treated as independent and the unconstrained cells
  // share whatever mines the groups are not expected to hold.
  bool sea_coupling = true;
};

// Marginals under the joint weight
//   prod_g N_g(k_g) * C(|U|, M - sum_g k_g)
// over all mine-count vectors (k_1..k_G). Computed by log-space convolution
// over groups. A cell that some positive-weight placement marks as a mine
// never reports exactly 0.
//
// Throws NoConsistentPlacement when every vector has zero weight.
ProbabilityMap combine(std::span<const GroupTally> tallies, const BoardContext& context,
                       const CombineOptions& options = {});

// Grid dump with 4 decimals per covered unassigned cell; known cells print as
// 0.0000/1.0000 and revealed cells as "  .   ".
std::string dump_probability_grid(const ProbabilityMap& map, int width, int height, const Assignments& known = {});

// log C(n, r); -inf outside 0 <= r <= n.
double log_binomial(int n, int r);

}  // namespace minesolve
