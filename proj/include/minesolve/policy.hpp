#pragma once

#include "minesolve/board.hpp"
#include "minesolve/combiner.hpp"
#include "minesolve/constraints.hpp"
#include "minesolve/sampler.hpp"

#include <chrono>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

namespace minesolve {

// Pipeline truncation used for ablations.
//   Logic: subset reduction, then the per-constraint density heuristic.
//   Exact: plus exact per-group counting; groups are not coupled through the
//          global mine count and oversized groups fall back to the heuristic.
//   Full:  plus sampling of oversized groups and global mine-count coupling.
enum class Mode { Full, Exact, Logic };
enum class FirstMoveRule { Center, Corner, Fixed };
enum class TieBreak { RowMajor, Random };
enum class MoveKind { RevealSafe, Guess, FirstMove };
enum class PipelineDepth { Logic, Exact, Sampled, Fallback };

std::string_view to_string(Mode mode);
std::string_view to_string(MoveKind kind);
std::string_view to_string(PipelineDepth depth);
std::optional<Mode> parse_mode(std::string_view name);

struct PolicyConfig {
  Mode mode = Mode::Full;
  std::chrono::milliseconds budget{5000};
  FirstMoveRule first_move = FirstMoveRule::Center;
  Cell fixed_first_move{};
  TieBreak tie_break = TieBreak::RowMajor;
  bool sea_coupling = true;
  SamplerMode sampler_mode = SamplerMode::Importance;
  std::uint64_t max_samples = std::uint64_t{1} << 18;
  std::size_t exact_threshold = 22;

  // Defaults for a mode; Exact turns sea coupling off.
  static PolicyConfig for_mode(Mode mode);
};

struct MoveDecision {
  MoveKind kind = MoveKind::Guess;
  Cell cell{};
  double prob = 0.0;
  double elapsed_ms = 0.0;
  PipelineDepth depth = PipelineDepth::Fallback;
};

// Everything one pipeline run learned about a position.
struct Analysis {
  MoveDecision decision;
  // Cells proven safe (by reduction, or by exact counting), row-major.
  std::vector<Cell> certain_safe;
  Assignments known;
  ProbabilityMap probabilities;  // empty when logic alone settled the move
};

Cell first_move(const BoardSpec& spec, const PolicyConfig& config = {});

// Lowest probability cell; RowMajor keeps the first minimum in row-major
// order, Random picks uniformly among exact minima using `seed`.
Cell select_min(const ProbabilityMap& map, TieBreak tie_break = TieBreak::RowMajor, std::uint64_t seed = 0);

// Per-constraint density estimate: mean rhs/|vars| over the constraints that
// contain the cell; unconstrained cells get M/|U|.
ProbabilityMap fallback_probabilities(const ConstraintSystem& reduced, const PlayerView& view);

// Runs extract -> reduce -> partition -> tally -> combine on the visible part
// of the board. Throws IllegalMove on a finished game.
Analysis analyze(const GameState& state, const PolicyConfig& config);

MoveDecision next_move(const GameState& state, const PolicyConfig& config);

// Stateful player: reuses cells proven safe by an earlier analysis so a batch
// of forced reveals costs one pipeline run.
class Agent {
 public:
  explicit Agent(PolicyConfig config) : config_(config) {}
  MoveDecision decide(const GameState& state);

 private:
  PolicyConfig config_;
  std::vector<Cell> pending_safe_;
  PipelineDepth pending_depth_ = PipelineDepth::Logic;
};

struct MoveLog {
  Cell cell{};
  MoveKind kind = MoveKind::Guess;
  PipelineDepth depth = PipelineDepth::Fallback;
  double prob = 0.0;
  double elapsed_ms = 0.0;
  bool boom = false;
};

struct GameRecord {
  std::uint64_t seed = 0;
  bool won = false;
  bool loss_on_first_move = false;
  int forced_move_losses = 0;  // RevealSafe decisions that hit a mine
  std::vector<MoveLog> moves;
};

// Plays one game on `spec` with spec.seed replaced by `seed`.
GameRecord play_game(BoardSpec spec, const PolicyConfig& config, std::uint64_t seed);

}  // namespace minesolve
