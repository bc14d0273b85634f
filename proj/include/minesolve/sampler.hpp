#pragma once

#include "minesolve/tally.hpp"

#include <optional>
#include <stdexcept>

namespace minesolve {

enum class SamplerMode { Importance, Rejection };

struct SamplerOptions {
  std::uint64_t max_samples = std::uint64_t{1} << 18;
  SamplerMode mode = SamplerMode::Importance;
  std::optional<Clock::time_point> deadline;
  std::uint64_t seed = 0;
  std::size_t group_id = 0;
  // Keep up to this many accepted assignments in SampleStats::recorded.
  std::size_t record_limit = 0;
};

struct SampleStats {
  std::uint64_t draws = 0;
  std::uint64_t accepted = 0;
  bool hit_deadline = false;
  std::vector<std::vector<std::uint8_t>> recorded;  // indexed like group.vars
};

class NoAcceptedSamples : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Monte Carlo estimate of the group's tally.
//
// Importance mode: each draw visits the variables in a fresh random order and
// gives each one a value drawn uniformly from those that keep every touching
// constraint reachable. A completed draw with f free (two-way) choices had
// probability 2^-f, so it is recorded with weight 2^(f - n); summed weights are
// unbiased for the exact counts up to the constant 2^-n / draws.
//
// Rejection mode: every variable is a fair coin and only satisfying draws are
// kept, each with weight 1.
//
// Deadline is polled every 1024 draws. Throws NoAcceptedSamples if nothing was
// accepted.
GroupTally sample_group(const Group& group, const SamplerOptions& options, SampleStats* stats = nullptr);

}  // namespace minesolve
