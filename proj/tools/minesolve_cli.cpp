#include "minesolve/harness.hpp"
#include "minesolve/policy.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace minesolve;

namespace {

struct BoardArgs {
  std::string difficulty;
  int width = 0;
  int height = 0;
  int mines = -1;
  bool first_click_safe = false;
};

struct PolicyArgs {
  std::string mode = "full";
  long budget_ms = 5000;
  std::string first_move = "center";
  std::string tie_break = "row-major";
  std::string sea_coupling = "default";
  std::string sampler = "importance";
  std::uint64_t max_samples = std::uint64_t{1} << 18;
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void add_board_options(CLI::App& cmd, BoardArgs& args) {
  cmd.add_option("--difficulty", args.difficulty, "simple | intermediate | hard")
      ->check(CLI::IsMember({"simple", "intermediate", "hard"}));
  cmd.add_option("--width", args.width, "custom board width");
  cmd.add_option("--height", args.height, "custom board height");
  cmd.add_option("--mines", args.mines, "custom mine count");
  cmd.add_flag("--first-click-safe", args.first_click_safe, "never place a mine under the first click");
}

void add_policy_options(CLI::App& cmd, PolicyArgs& args) {
  cmd.add_option("--mode", args.mode, "full | exact | logic")->check(CLI::IsMember({"full", "exact", "logic"}));
  cmd.add_option("--budget-ms", args.budget_ms, "per-move time budget")->check(CLI::PositiveNumber);
  cmd.add_option("--first-move", args.first_move, "center | corner | R,C");
  cmd.add_option("--tie-break", args.tie_break, "row-major | random")->check(CLI::IsMember({"row-major", "random"}));
  cmd.add_option("--sea-coupling", args.sea_coupling, "on | off (default: per mode)")
      ->check(CLI::IsMember({"default", "on", "off"}));
  cmd.add_option("--sampler", args.sampler, "importance | rejection")->check(CLI::IsMember({"importance", "rejection"}));
  cmd.add_option("--max-samples", args.max_samples, "sample budget per oversized group")->check(CLI::PositiveNumber);
}

BoardSpec board_from(const BoardArgs& args) {
  BoardSpec spec;
  const bool custom = args.width > 0 || args.height > 0 || args.mines >= 0;
  if (!args.difficulty.empty()) {
    if (custom) throw ConfigError("use either --difficulty or --width/--height/--mines");
    spec = preset(*parse_difficulty(args.difficulty));
  } else if (custom) {
    if (args.width <= 0 || args.height <= 0 || args.mines < 0) {
      throw ConfigError("--width, --height and --mines must all be given");
    }
    spec = BoardSpec{args.width, args.height, args.mines};
  } else {
    spec = preset(Difficulty::Simple);
  }
  spec.first_click_safe = args.first_click_safe;
  try {
    validate(spec);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return spec;
}

PolicyConfig policy_from(const PolicyArgs& args) {
  PolicyConfig config = PolicyConfig::for_mode(*parse_mode(args.mode));
  config.budget = std::chrono::milliseconds(args.budget_ms);
  if (args.first_move == "center") {
    config.first_move = FirstMoveRule::Center;
  } else if (args.first_move == "corner") {
    config.first_move = FirstMoveRule::Corner;
  } else {
    int r = 0;
    int c = 0;
    char comma = 0;
    std::istringstream in(args.first_move);
    if (!(in >> r >> comma >> c) || comma != ',' || !in.eof()) {
      throw ConfigError("--first-move must be center, corner or R,C");
    }
    config.first_move = FirstMoveRule::Fixed;
    config.fixed_first_move = Cell{r, c};
  }
  config.tie_break = args.tie_break == "random" ? TieBreak::Random : TieBreak::RowMajor;
  if (args.sea_coupling != "default") config.sea_coupling = args.sea_coupling == "on";
  config.sampler_mode = args.sampler == "rejection" ? SamplerMode::Rejection : SamplerMode::Importance;
  config.max_samples = args.max_samples;
  return config;
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write " + path);
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Minesweeper solver benchmark harness"};
  app.require_subcommand(1);

  BoardArgs board;
  PolicyArgs policy;
  std::uint64_t games = 1;
  std::uint64_t seed = 0;
  std::string out_path;
  std::string format = "text";
  std::string replay_dir;

  auto* play = app.add_subcommand("play", "play a batch of games and report win rate and move timings");
  add_board_options(*play, board);
  add_policy_options(*play, policy);
  play->add_option("--games", games, "number of games")->check(CLI::PositiveNumber);
  play->add_option("--seed", seed, "seed of the first game");
  play->add_option("--out", out_path, "write the report here instead of stdout");
  play->add_option("--format", format, "json | text | csv")->check(CLI::IsMember({"json", "text", "csv"}));
  play->add_option("--replay-dir", replay_dir, "write a move list for every lost game");

  std::uint64_t ablate_games = 200;
  std::uint64_t ablate_seed = 0;
  std::string ablate_out;
  std::string ablate_format = "text";
  std::vector<std::string> modes{"full", "exact", "logic"};
  BoardArgs ablate_board;
  PolicyArgs ablate_policy;
  auto* ablate = app.add_subcommand("ablate", "compare pipeline modes on paired seeds");
  add_board_options(*ablate, ablate_board);
  add_policy_options(*ablate, ablate_policy);
  ablate->add_option("--games", ablate_games, "games per mode")->check(CLI::PositiveNumber);
  ablate->add_option("--seed", ablate_seed, "seed of the first game");
  ablate->add_option("--modes", modes, "modes to compare")->delimiter(',')->check(CLI::IsMember({"full", "exact", "logic"}));
  ablate->add_option("--out", ablate_out, "write the report here instead of stdout");
  ablate->add_option("--format", ablate_format, "json | text")->check(CLI::IsMember({"json", "text"}));

  std::string board_file;
  PolicyArgs analyze_policy;
  auto* analyze_cmd = app.add_subcommand("analyze", "print the probability grid and chosen move for a board file");
  analyze_cmd->add_option("board", board_file, "board in text format")->required()->check(CLI::ExistingFile);
  add_policy_options(*analyze_cmd, analyze_policy);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (*play) {
      BatchOptions options;
      options.spec = board_from(board);
      options.games = games;
      options.base_seed = seed;
      options.policy = policy_from(policy);
      const BatchReport report = run_batch(options);
      if (format == "json") {
        emit(to_json(report, true).dump(2) + "\n", out_path);
      } else if (format == "csv") {
        emit(to_csv(report), out_path);
      } else {
        emit(to_text(report), out_path);
      }
      if (!replay_dir.empty()) {
        std::filesystem::create_directories(replay_dir);
        for (const auto& r : report.records) {
          if (r.won) continue;
          std::ofstream log(std::filesystem::path(replay_dir) / ("game_" + std::to_string(r.seed) + ".txt"));
          log << replay_log(r);
        }
      }
    } else if (*ablate) {
      std::vector<Mode> parsed;
      for (const auto& m : modes) parsed.push_back(*parse_mode(m));
      const AblationReport report =
          run_ablation(board_from(ablate_board), ablate_games, ablate_seed, policy_from(ablate_policy), parsed);
      emit(ablate_format == "json" ? to_json(report).dump(2) + "\n" : to_text(report), ablate_out);
    } else if (*analyze_cmd) {
      std::ifstream in(board_file);
      std::stringstream text;
      text << in.rdbuf();
      const GameState state = parse_board(text.str());
      const PolicyConfig config = policy_from(analyze_policy);
      const Analysis a = analyze(state, config);
      const auto& spec = state.spec();
      if (!a.probabilities.probs.empty()) {
        std::cout << dump_probability_grid(a.probabilities, spec.width, spec.height, a.known);
      }
      std::cout << "move " << a.decision.cell.row << ',' << a.decision.cell.col << ' ' << to_string(a.decision.kind)
                << " depth=" << to_string(a.decision.depth) << " prob=" << a.decision.prob << '\n';
    }
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const BoardFormatError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
