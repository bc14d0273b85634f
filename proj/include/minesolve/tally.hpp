#pragma once

#include "minesolve/grouping.hpp"

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace minesolve {

using Clock = std::chrono::steady_clock;

// Per-group solution counts split by mine count k.
//   counts[k]            N(k): assignments with exactly k mines
//   cell_count(v, k)     C(v,k): those assignments where vars[v] is a mine
// Exact tallies hold integer counts (exactly representable: they never exceed
// 2^53). Sampled tallies hold importance-weighted estimates sharing one
// unknown scale factor per group.
struct GroupTally {
  std::size_t group_id = 0;
  std::vector<Cell> vars;
  std::vector<double> counts;
  std::vector<double> cell_counts;  // row-major [var][k], k in 0..vars.size()
  bool exact = true;
  std::uint64_t samples_used = 0;

  GroupTally() = default;
  GroupTally(std::size_t id, std::vector<Cell> group_vars);

  std::size_t var_count() const { return vars.size(); }
  std::size_t max_k() const { return vars.size(); }
  double& cell_count(std::size_t var, std::size_t k) { return cell_counts[var * (vars.size() + 1) + k]; }
  double cell_count(std::size_t var, std::size_t k) const { return cell_counts[var * (vars.size() + 1) + k]; }
  double total() const;
  // Probability that vars[var] is a mine, ignoring everything outside the group.
  double local_marginal(std::size_t var) const;
};

}  // namespace minesolve
