#pragma once

#include "minesolve/tally.hpp"

#include <optional>
#include <stdexcept>

namespace minesolve {

inline constexpr std::size_t kExactThreshold = 22;

class ThresholdExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class Unsatisfiable : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DeadlineExpired : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct EnumerateOptions {
  std::size_t threshold = kExactThreshold;
  std::optional<Clock::time_point> deadline;
  std::size_t group_id = 0;
};

struct EnumerateStats {
  // Terminal nodes of the pruned search tree: dead ends plus solutions.
  std::uint64_t search_leaves = 0;
  std::uint64_t solutions = 0;
};

// Backtracking count of every satisfying assignment of the group. Variables
// are branched most-constrained-first; a branch is cut as soon as some
// constraint can no longer reach its rhs.
GroupTally enumerate_group(const Group& group, const EnumerateOptions& options = {},
                           EnumerateStats* stats = nullptr);

}  // namespace minesolve
