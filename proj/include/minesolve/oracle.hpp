#pragma once

#include "minesolve/board.hpp"
#include "minesolve/combiner.hpp"
#include "minesolve/constraints.hpp"

#include <cstddef>
#include <stdexcept>

namespace minesolve {

inline constexpr std::size_t kOracleMaxCells = 25;

class OracleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Ground truth by brute force: tries every placement of the remaining mines
// over the covered, unassigned cells and keeps those matching every revealed
// clue. Shares no code with the solver pipeline.
//
// Throws OracleError with more than kOracleMaxCells open cells or when no
// placement is consistent.
ProbabilityMap exact_board_probabilities(const PlayerView& view, const Assignments& known = {});

}  // namespace minesolve
