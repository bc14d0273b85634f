#pragma once

#include "minesolve/board.hpp"
#include "minesolve/policy.hpp"

#include <json.hpp>

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace minesolve {

struct MoveTimeSummary {
  double mean = 0.0;
  double p50 = 0.0;
  double p99 = 0.0;
  double max = 0.0;
};

struct BatchReport {
  BoardSpec spec;
  Mode mode = Mode::Full;
  std::uint64_t base_seed = 0;
  std::uint64_t games = 0;
  std::uint64_t wins = 0;
  double win_rate = 0.0;
  std::pair<double, double> wilson_95{0.0, 0.0};
  MoveTimeSummary move_time_ms;
  std::uint64_t moves = 0;
  std::uint64_t first_move_losses = 0;
  std::uint64_t forced_move_losses = 0;
  double wall_seconds = 0.0;
  std::vector<GameRecord> records;  // ordered by seed
};

struct BatchOptions {
  BoardSpec spec;
  std::uint64_t games = 1;
  std::uint64_t base_seed = 0;
  PolicyConfig policy;
  unsigned threads = 0;  // 0: MINESOLVE_THREADS, else hardware concurrency
  bool keep_records = true;
};

// Worker count: explicit request, then MINESOLVE_THREADS, then the hardware.
unsigned worker_count(unsigned requested = 0);

// Wilson score interval for a binomial proportion.
std::pair<double, double> wilson_interval(std::uint64_t successes, std::uint64_t trials, double z = 1.96);

// Nearest-rank percentile of an unsorted sample (q in [0, 1]).
double percentile(std::vector<double> values, double q);

// Plays games with seeds base_seed .. base_seed + games - 1 on a worker pool.
// Win/loss outcomes depend only on the options; timings are wall-clock.
BatchReport run_batch(const BatchOptions& options);

// Paired comparison of two modes played on identical seeds.
struct PairedDelta {
  Mode a = Mode::Full;
  Mode b = Mode::Logic;
  std::uint64_t pairs = 0;
  std::uint64_t only_a_won = 0;
  std::uint64_t only_b_won = 0;
  double delta = 0.0;  // win_rate(a) - win_rate(b)
  double ci_low = 0.0;  // 95% normal interval of the paired difference
  double ci_high = 0.0;
};

PairedDelta paired_delta(const BatchReport& a, const BatchReport& b);

struct AblationReport {
  std::vector<BatchReport> per_mode;
  std::vector<PairedDelta> deltas;  // every ordered pair (earlier, later) in per_mode order
};

// Runs every mode on the same seeds. `base` supplies budget, first move and
// sampler settings; mode-specific defaults come from PolicyConfig::for_mode.
AblationReport run_ablation(const BoardSpec& spec, std::uint64_t games, std::uint64_t base_seed,
                            const PolicyConfig& base, const std::vector<Mode>& modes = {Mode::Full, Mode::Exact, Mode::Logic},
                            unsigned threads = 0);

nlohmann::json to_json(const BatchReport& report, bool include_records = false);
nlohmann::json to_json(const AblationReport& report, bool include_records = false);
std::string to_text(const BatchReport& report);
std::string to_text(const AblationReport& report);
// One row per game: seed,won,moves,first_move_loss,forced_move_losses,max_move_ms
std::string to_csv(const BatchReport& report);
// Move list of one game, one "row col kind depth prob elapsed_ms outcome" line per move.
std::string replay_log(const GameRecord& record);

}  // namespace minesolve
