#include "minesolve/board.hpp"

#include "minesolve/rng.hpp"

#include <algorithm>
#include <charconv>
#include <deque>
#include <numeric>
#include <sstream>

namespace minesolve {

std::string to_string(Cell cell) {
  return "(" + std::to_string(cell.row) + "," + std::to_string(cell.col) + ")";
}

void validate(const BoardSpec& spec) {
  if (spec.width < 1 || spec.height < 1) {
    throw std::invalid_argument("board dimensions must be positive");
  }
  if (spec.mine_count < 0) {
    throw std::invalid_argument("mine count must be non-negative");
  }
  const int limit = spec.first_click_safe ? spec.cell_count() - 1 : spec.cell_count();
  if (spec.mine_count > limit) {
    throw std::invalid_argument("mine count " + std::to_string(spec.mine_count) + " exceeds the " +
                                std::to_string(limit) + " eligible cells");
  }
}

BoardSpec preset(Difficulty difficulty) {
  switch (difficulty) {
    case Difficulty::Simple: return BoardSpec{8, 8, 10};
    case Difficulty::Intermediate: return BoardSpec{16, 16, 40};
    case Difficulty::Hard: return BoardSpec{30, 16, 99};
  }
  throw std::invalid_argument("unknown difficulty");
}

std::optional<Difficulty> parse_difficulty(std::string_view name) {
  if (name == "simple") return Difficulty::Simple;
  if (name == "intermediate") return Difficulty::Intermediate;
  if (name == "hard") return Difficulty::Hard;
  return std::nullopt;
}

std::string_view to_string(Difficulty difficulty) {
  switch (difficulty) {
    case Difficulty::Simple: return "simple";
    case Difficulty::Intermediate: return "intermediate";
    case Difficulty::Hard: return "hard";
  }
  return "?";
}

std::vector<Cell> neighbors(const BoardSpec& spec, Cell cell) {
  std::vector<Cell> out;
  out.reserve(8);
  for_each_neighbor(spec.width, spec.height, cell, [&](Cell n) { out.push_back(n); });
  return out;
}

GameState::GameState(BoardSpec spec, std::vector<std::uint8_t> mines, std::vector<std::uint8_t> revealed)
    : spec_(spec), mines_(std::move(mines)), revealed_(std::move(revealed)) {
  if (spec_.width < 1 || spec_.height < 1) {
    throw std::invalid_argument("board dimensions must be positive");
  }
  const auto n = static_cast<std::size_t>(spec_.cell_count());
  if (mines_.size() != n) throw std::invalid_argument("mine mask has the wrong size");
  if (revealed_.empty()) revealed_.assign(n, 0);
  if (revealed_.size() != n) throw std::invalid_argument("revealed mask has the wrong size");

  spec_.mine_count = static_cast<int>(std::count_if(mines_.begin(), mines_.end(), [](auto m) { return m != 0; }));
  int revealed_mines = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (revealed_[i] == 0) continue;
    ++revealed_count_;
    if (mines_[i] != 0) ++revealed_mines;
  }
  if (revealed_mines > 1) throw std::invalid_argument("more than one revealed mine");
  update_status();
  if (revealed_mines == 1) status_ = GameStatus::Lost;
}

int GameState::value(Cell c) const {
  int v = 0;
  for_each_neighbor(spec_.width, spec_.height, c, [&](Cell n) { v += mines_[spec_.index(n)] != 0; });
  return v;
}

void GameState::update_status() {
  if (status_ == GameStatus::InProgress && revealed_count_ == safe_cell_count()) {
    status_ = GameStatus::Won;
  }
}

RevealOutcome GameState::reveal(Cell cell) {
  if (status_ != GameStatus::InProgress) throw IllegalMove("game is already over");
  if (!spec_.contains(cell)) throw IllegalMove("cell " + to_string(cell) + " is out of bounds");
  if (is_revealed(cell)) throw IllegalMove("cell " + to_string(cell) + " is already revealed");

  RevealOutcome outcome;
  outcome.opened.push_back(cell);
  revealed_[spec_.index(cell)] = 1;
  ++revealed_count_;

  if (is_mine(cell)) {
    outcome.boom = true;
    status_ = GameStatus::Lost;
    moves_.push_back({cell, true, 0});
    return outcome;
  }

  outcome.value = value(cell);
  if (outcome.value == 0) {
    std::deque<Cell> frontier{cell};
    while (!frontier.empty()) {
      const Cell current = frontier.front();
      frontier.pop_front();
      for_each_neighbor(spec_.width, spec_.height, current, [&](Cell n) {
        const int idx = spec_.index(n);
        if (revealed_[idx] != 0) return;
        // a zero cell has no mine neighbours, so everything opened here is safe
        revealed_[idx] = 1;
        ++revealed_count_;
        outcome.opened.push_back(n);
        if (value(n) == 0) frontier.push_back(n);
      });
    }
  }
  moves_.push_back({cell, false, outcome.value});
  update_status();
  return outcome;
}

GameState new_board(const BoardSpec& spec, std::optional<Cell> first_click) {
  validate(spec);
  if (spec.first_click_safe) {
    if (!first_click) throw std::invalid_argument("first_click_safe requires a first click");
    if (!spec.contains(*first_click)) throw std::invalid_argument("first click is out of bounds");
  }

  std::vector<int> eligible;
  eligible.reserve(spec.cell_count());
  for (int i = 0; i < spec.cell_count(); ++i) {
    if (spec.first_click_safe && i == spec.index(*first_click)) continue;
    eligible.push_back(i);
  }

  // Partial Fisher-Yates: the first mine_count slots are a uniform sample.
  Rng rng(spec.seed);
  for (int i = 0; i < spec.mine_count; ++i) {
    const auto remaining = static_cast<std::uint64_t>(eligible.size() - i);
    const auto j = i + static_cast<int>(rng.below(remaining));
    std::swap(eligible[i], eligible[j]);
  }

  std::vector<std::uint8_t> mines(spec.cell_count(), 0);
  for (int i = 0; i < spec.mine_count; ++i) mines[eligible[i]] = 1;
  GameState state(spec, std::move(mines));
  return state;
}

namespace {

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    const auto end = text.find('\n', start);
    if (end == std::string_view::npos) {
      lines.push_back(text.substr(start));
      break;
    }
    lines.push_back(text.substr(start, end - start));
    start = end + 1;
  }
  return lines;
}

int parse_int(std::string_view token) {
  int v = 0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
  if (ec != std::errc{} || ptr != token.data() + token.size()) {
    throw BoardFormatError("expected an integer, got '" + std::string(token) + "'");
  }
  return v;
}

}  // namespace

GameState parse_board(std::string_view text) {
  const auto lines = split_lines(text);
  if (lines.empty()) throw BoardFormatError("empty board text");

  std::vector<std::string_view> header;
  {
    std::string_view h = lines[0];
    while (!h.empty()) {
      const auto sp = h.find(' ');
      const auto tok = h.substr(0, sp);
      if (!tok.empty()) header.push_back(tok);
      if (sp == std::string_view::npos) break;
      h.remove_prefix(sp + 1);
    }
  }
  if (header.size() != 3) throw BoardFormatError("header must be 'width height mine_count'");
  BoardSpec spec;
  spec.width = parse_int(header[0]);
  spec.height = parse_int(header[1]);
  spec.mine_count = parse_int(header[2]);
  if (spec.width < 1 || spec.height < 1) throw BoardFormatError("board dimensions must be positive");

  const auto h = static_cast<std::size_t>(spec.height);
  if (lines.size() != 2 * h + 2) {
    throw BoardFormatError("expected " + std::to_string(2 * h + 2) + " lines, got " + std::to_string(lines.size()));
  }
  if (!lines[h + 1].empty()) throw BoardFormatError("expected a blank line between mine grid and mask");

  std::vector<std::uint8_t> mines(spec.cell_count(), 0);
  std::vector<std::uint8_t> revealed(spec.cell_count(), 0);
  auto read_grid = [&](std::size_t first_line, char on, char off, std::vector<std::uint8_t>& out) {
    for (std::size_t r = 0; r < h; ++r) {
      const auto line = lines[first_line + r];
      if (line.size() != static_cast<std::size_t>(spec.width)) {
        throw BoardFormatError("row " + std::to_string(r) + " has " + std::to_string(line.size()) +
                               " cells, expected " + std::to_string(spec.width));
      }
      for (int c = 0; c < spec.width; ++c) {
        const char ch = line[c];
        if (ch != on && ch != off) throw BoardFormatError(std::string("unexpected character '") + ch + "'");
        out[r * spec.width + c] = ch == on;
      }
    }
  };
  read_grid(1, '*', '.', mines);
  read_grid(h + 2, 'R', '#', revealed);

  const auto placed = std::count(mines.begin(), mines.end(), std::uint8_t{1});
  if (placed != spec.mine_count) {
    throw BoardFormatError("header says " + std::to_string(spec.mine_count) + " mines, grid has " +
                           std::to_string(placed));
  }
  try {
    return GameState(spec, std::move(mines), std::move(revealed));
  } catch (const std::invalid_argument& e) {
    throw BoardFormatError(e.what());
  }
}

std::string render_board(const GameState& state) {
  const auto& spec = state.spec();
  std::string out = std::to_string(spec.width) + " " + std::to_string(spec.height) + " " +
                    std::to_string(spec.mine_count) + "\n";
  for (int r = 0; r < spec.height; ++r) {
    for (int c = 0; c < spec.width; ++c) out += state.is_mine({r, c}) ? '*' : '.';
    out += '\n';
  }
  out += '\n';
  for (int r = 0; r < spec.height; ++r) {
    for (int c = 0; c < spec.width; ++c) out += state.is_revealed({r, c}) ? 'R' : '#';
    out += '\n';
  }
  return out;
}

PlayerView view_of(const GameState& state) {
  const auto& spec = state.spec();
  PlayerView view;
  view.width = spec.width;
  view.height = spec.height;
  view.total_mines = spec.mine_count;
  view.cells.assign(spec.cell_count(), PlayerView::kCovered);
  for (int i = 0; i < spec.cell_count(); ++i) {
    const Cell c = spec.cell_at(i);
    if (state.is_revealed(c) && !state.is_mine(c)) view.cells[i] = static_cast<std::int8_t>(state.value(c));
  }
  return view;
}

}  // namespace minesolve
