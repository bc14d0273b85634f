#include "minesolve/policy.hpp"

#include "minesolve/enumerate.hpp"
#include "minesolve/grouping.hpp"
#include "minesolve/rng.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace minesolve {

std::string_view to_string(Mode mode) {
  switch (mode) {
    case Mode::Full: return "full";
    case Mode::Exact: return "exact";
    case Mode::Logic: return "logic";
  }
  return "?";
}

std::string_view to_string(MoveKind kind) {
  switch (kind) {
    case MoveKind::RevealSafe: return "reveal_safe";
    case MoveKind::Guess: return "guess";
    case MoveKind::FirstMove: return "first_move";
  }
  return "?";
}

std::string_view to_string(PipelineDepth depth) {
  switch (depth) {
    case PipelineDepth::Logic: return "logic";
    case PipelineDepth::Exact: return "exact";
    case PipelineDepth::Sampled: return "sampled";
    case PipelineDepth::Fallback: return "fallback";
  }
  return "?";
}

std::optional<Mode> parse_mode(std::string_view name) {
  if (name == "full") return Mode::Full;
  if (name == "exact") return Mode::Exact;
  if (name == "logic") return Mode::Logic;
  return std::nullopt;
}

PolicyConfig PolicyConfig::for_mode(Mode mode) {
  PolicyConfig config;
  config.mode = mode;
  config.sea_coupling = mode == Mode::Full;
  return config;
}

Cell first_move(const BoardSpec& spec, const PolicyConfig& config) {
  switch (config.first_move) {
    case FirstMoveRule::Center: return Cell{spec.height / 2, spec.width / 2};
    case FirstMoveRule::Corner: return Cell{0, 0};
    case FirstMoveRule::Fixed:
      if (!spec.contains(config.fixed_first_move)) throw std::invalid_argument("fixed first move is off the board");
      return config.fixed_first_move;
  }
  return Cell{};
}

Cell select_min(const ProbabilityMap& map, TieBreak tie_break, std::uint64_t seed) {
  if (map.probs.empty()) throw std::invalid_argument("no candidate cells");
  // std::map iterates in row-major order
  auto best = map.probs.begin();
  for (auto it = map.probs.begin(); it != map.probs.end(); ++it) {
    if (it->second < best->second) best = it;
  }
  if (tie_break == TieBreak::RowMajor) return best->first;

  std::vector<Cell> ties;
  for (const auto& [cell, p] : map.probs) {
    if (p == best->second) ties.push_back(cell);
  }
  Rng rng(seed);
  return ties[rng.below(ties.size())];
}

ProbabilityMap fallback_probabilities(const ConstraintSystem& reduced, const PlayerView& view) {
  std::map<Cell, std::pair<double, int>> density;
  for (const auto& c : reduced.constraints) {
    const double d = static_cast<double>(c.rhs) / static_cast<double>(c.vars.size());
    for (const Cell v : c.vars) {
      auto& [sum, n] = density[v];
      sum += d;
      ++n;
    }
  }
  int known_mines = 0;
  for (const auto& [cell, a] : reduced.known) known_mines += a == Assignment::Mine;

  ProbabilityMap map;
  std::vector<Cell> sea;
  for (int i = 0; i < view.cell_count(); ++i) {
    if (view.cells[i] != PlayerView::kCovered) continue;
    const Cell c = view.cell_at(i);
    if (reduced.known.contains(c)) continue;
    if (const auto it = density.find(c); it != density.end()) {
      map.probs[c] = it->second.first / it->second.second;
    } else {
      sea.push_back(c);
    }
  }
  if (!sea.empty()) {
    const double p = std::clamp(static_cast<double>(view.total_mines - known_mines) / sea.size(), 0.0, 1.0);
    for (const Cell c : sea) map.probs[c] = p;
  }
  return map;
}

namespace {

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

}  // namespace

Analysis analyze(const GameState& state, const PolicyConfig& config) {
  if (state.status() != GameStatus::InProgress) throw IllegalMove("game is already over");
  const auto start = Clock::now();
  // Leave a tenth of the budget for combining and bookkeeping.
  const auto work_deadline = start + config.budget * 9 / 10;
  const auto& spec = state.spec();
  const PlayerView view = view_of(state);
  const std::uint64_t move_index = state.moves().size();

  Analysis out;
  auto finish = [&]() -> Analysis {
    out.decision.elapsed_ms = ms_since(start);
    return std::move(out);
  };

  if (state.revealed_count() == 0) {
    out.decision.kind = MoveKind::FirstMove;
    out.decision.cell = first_move(spec, config);
    out.decision.prob = static_cast<double>(spec.mine_count) / spec.cell_count();
    out.decision.depth = PipelineDepth::Fallback;
    return finish();
  }

  const ConstraintSystem reduced = reduce(extract_constraints(view));
  out.known = reduced.known;
  for (const auto& [cell, a] : reduced.known) {
    if (a == Assignment::Safe) out.certain_safe.push_back(cell);
  }
  if (!out.certain_safe.empty()) {
    out.decision = {MoveKind::RevealSafe, out.certain_safe.front(), 0.0, 0.0, PipelineDepth::Logic};
    return finish();
  }

  const std::uint64_t tie_seed = derive_seed(spec.seed, move_index, 0x7469650000000000ULL);
  auto guess_from = [&](const ProbabilityMap& map, PipelineDepth depth) {
    const Cell cell = select_min(map, config.tie_break, tie_seed);
    out.decision = {MoveKind::Guess, cell, map.at(cell), 0.0, depth};
  };

  int remaining_mines = spec.mine_count;
  for (const auto& [cell, a] : reduced.known) remaining_mines -= a == Assignment::Mine;

  if (config.mode == Mode::Logic) {
    out.probabilities = fallback_probabilities(reduced, view);
    guess_from(out.probabilities, PipelineDepth::Fallback);
    return finish();
  }

  const std::vector<Group> groups = partition(reduced);
  std::set<Cell> grouped;
  for (const auto& g : groups) grouped.insert(g.vars.begin(), g.vars.end());
  BoardContext context;
  context.remaining_mines = remaining_mines;
  for (int i = 0; i < view.cell_count(); ++i) {
    const Cell c = view.cell_at(i);
    if (view.cells[i] == PlayerView::kCovered && !reduced.known.contains(c) && !grouped.contains(c)) {
      context.unconstrained.push_back(c);
    }
  }

  std::vector<GroupTally> tallies;
  std::vector<std::size_t> oversized;
  bool sampled = false;
  bool gave_up = false;
  for (std::size_t g = 0; g < groups.size() && !gave_up; ++g) {
    if (groups[g].vars.size() > config.exact_threshold) {
      oversized.push_back(g);
      continue;
    }
    try {
      tallies.push_back(enumerate_group(groups[g], {config.exact_threshold, work_deadline, g}));
    } catch (const DeadlineExpired&) {
      gave_up = true;
    }
  }

  if (config.mode == Mode::Full && !gave_up) {
    for (std::size_t i = 0; i < oversized.size(); ++i) {
      const auto now = Clock::now();
      if (now >= work_deadline) {
        gave_up = true;
        break;
      }
      const std::size_t g = oversized[i];
      SamplerOptions options;
      options.max_samples = config.max_samples;
      options.mode = config.sampler_mode;
      options.deadline = now + (work_deadline - now) / static_cast<long>(oversized.size() - i);
      options.seed = derive_seed(spec.seed, move_index, g);
      options.group_id = g;
      try {
        tallies.push_back(sample_group(groups[g], options));
        sampled = true;
      } catch (const NoAcceptedSamples&) {
        gave_up = true;
      }
    }
    oversized.clear();
  }

  ProbabilityMap fallback;
  if (gave_up || !oversized.empty()) fallback = fallback_probabilities(reduced, view);
  if (gave_up) {
    out.probabilities = std::move(fallback);
    guess_from(out.probabilities, PipelineDepth::Fallback);
    return finish();
  }

  // Exact mode: oversized groups keep their heuristic values and take their
  // expected mine count out of the budget shared with the rest.
  BoardContext combined_context = context;
  double heuristic_mines = 0.0;
  for (const std::size_t g : oversized) {
    for (const Cell c : groups[g].vars) heuristic_mines += fallback.at(c);
  }
  if (!oversized.empty()) {
    combined_context.remaining_mines =
        std::clamp(static_cast<int>(std::lround(remaining_mines - heuristic_mines)), 0, remaining_mines);
  }

  try {
    out.probabilities = combine(tallies, combined_context, {config.sea_coupling});
  } catch (const NoConsistentPlacement&) {
    if (!sampled && oversized.empty()) throw;
    out.probabilities = fallback_probabilities(reduced, view);
    guess_from(out.probabilities, PipelineDepth::Fallback);
    return finish();
  }
  for (const std::size_t g : oversized) {
    for (const Cell c : groups[g].vars) out.probabilities.probs[c] = fallback.at(c);
  }

  const bool fully_exact = !sampled && oversized.empty() && config.sea_coupling;
  if (fully_exact) {
    for (const auto& [cell, p] : out.probabilities.probs) {
      if (p == 0.0) out.certain_safe.push_back(cell);
    }
  } else {
    // A cell that is a mine in no local solution of an exact group is safe
    // whatever happens elsewhere.
    for (const auto& t : tallies) {
      if (!t.exact) continue;
      for (std::size_t v = 0; v < t.var_count(); ++v) {
        double mines = 0.0;
        for (std::size_t k = 0; k <= t.max_k(); ++k) mines += t.cell_count(v, k);
        if (mines == 0.0) out.certain_safe.push_back(t.vars[v]);
      }
    }
    std::sort(out.certain_safe.begin(), out.certain_safe.end());
  }

  const PipelineDepth depth = sampled ? PipelineDepth::Sampled : PipelineDepth::Exact;
  if (!out.certain_safe.empty()) {
    out.decision = {MoveKind::RevealSafe, out.certain_safe.front(), 0.0, 0.0, depth};
  } else {
    guess_from(out.probabilities, depth);
  }
  return finish();
}

MoveDecision next_move(const GameState& state, const PolicyConfig& config) { return analyze(state, config).decision; }

MoveDecision Agent::decide(const GameState& state) {
  const auto start = Clock::now();
  std::erase_if(pending_safe_, [&](Cell c) { return state.is_revealed(c); });
  if (!pending_safe_.empty() && state.status() == GameStatus::InProgress) {
    MoveDecision d{MoveKind::RevealSafe, pending_safe_.front(), 0.0, 0.0, pending_depth_};
    pending_safe_.erase(pending_safe_.begin());
    d.elapsed_ms = ms_since(start);
    return d;
  }
  Analysis a = analyze(state, config_);
  if (a.decision.kind == MoveKind::RevealSafe) {
    pending_safe_ = std::move(a.certain_safe);
    std::erase(pending_safe_, a.decision.cell);
    pending_depth_ = a.decision.depth;
  }
  a.decision.elapsed_ms = ms_since(start);
  return a.decision;
}

GameRecord play_game(BoardSpec spec, const PolicyConfig& config, std::uint64_t seed) {
  spec.seed = seed;
  validate(spec);
  const Cell opening = first_move(spec, config);
  GameState state = new_board(spec, spec.first_click_safe ? std::optional<Cell>(opening) : std::nullopt);

  GameRecord record;
  record.seed = seed;
  Agent agent(config);
  while (state.status() == GameStatus::InProgress) {
    const MoveDecision d = agent.decide(state);
    const RevealOutcome outcome = state.reveal(d.cell);
    record.moves.push_back({d.cell, d.kind, d.depth, d.prob, d.elapsed_ms, outcome.boom});
    if (outcome.boom) {
      record.loss_on_first_move = record.moves.size() == 1;
      if (d.kind == MoveKind::RevealSafe) ++record.forced_move_losses;
    }
  }
  record.won = state.status() == GameStatus::Won;
  return record;
}

}  // namespace minesolve
