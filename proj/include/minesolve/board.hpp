#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace minesolve {

struct Cell {
  int row = 0;
  int col = 0;

  // Lexicographic (row, col) is row-major order.
  friend auto operator<=>(const Cell&, const Cell&) = default;
};

std::string to_string(Cell cell);

struct BoardSpec {
  int width = 0;
  int height = 0;
  int mine_count = 0;
  bool first_click_safe = false;
  std::uint64_t seed = 0;

  int cell_count() const { return width * height; }
  bool contains(Cell c) const { return c.row >= 0 && c.row < height && c.col >= 0 && c.col < width; }
  int index(Cell c) const { return c.row * width + c.col; }
  Cell cell_at(int index) const { return Cell{index / width, index % width}; }
};

// Throws std::invalid_argument when dimensions or mine count are out of range.
void validate(const BoardSpec& spec);

enum class Difficulty { Simple, Intermediate, Hard };

// simple 8x8/10, intermediate 16x16/40, hard 30x16/99 (width x height).
BoardSpec preset(Difficulty difficulty);
std::optional<Difficulty> parse_difficulty(std::string_view name);
std::string_view to_string(Difficulty difficulty);

// In-bounds orthogonal and diagonal neighbours, row-major order.
std::vector<Cell> neighbors(const BoardSpec& spec, Cell cell);

template <typename F>
void for_each_neighbor(int width, int height, Cell cell, F&& f) {
  for (int dr = -1; dr <= 1; ++dr) {
    for (int dc = -1; dc <= 1; ++dc) {
      if (dr == 0 && dc == 0) continue;
      const Cell n{cell.row + dr, cell.col + dc};
      if (n.row < 0 || n.row >= height || n.col < 0 || n.col >= width) continue;
      f(n);
    }
  }
}

enum class GameStatus { InProgress, Won, Lost };

class IllegalMove : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class BoardFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RevealOutcome {
  bool boom = false;
  int value = 0;            // clue of the clicked cell; meaningless on boom
  std::vector<Cell> opened; // clicked cell first, then cascade in BFS order
};

struct MoveRecord {
  Cell cell;
  bool boom = false;
  int value = 0;
};

class GameState {
 public:
  // `mines` and `revealed` are row-major masks of spec.cell_count() entries.
  // mine_count is taken from the mask. Status is derived from the masks.
  GameState(BoardSpec spec, std::vector<std::uint8_t> mines, std::vector<std::uint8_t> revealed = {});

  const BoardSpec& spec() const { return spec_; }
  GameStatus status() const { return status_; }
  const std::vector<MoveRecord>& moves() const { return moves_; }

  bool is_mine(Cell c) const { return mines_[spec_.index(c)] != 0; }
  bool is_revealed(Cell c) const { return revealed_[spec_.index(c)] != 0; }
  // Number of adjacent mines, regardless of whether the cell is revealed.
  int value(Cell c) const;
  int revealed_count() const { return revealed_count_; }
  int safe_cell_count() const { return spec_.cell_count() - spec_.mine_count; }

  // Throws IllegalMove when the game is over, the cell is out of bounds or
  // already revealed.
  RevealOutcome reveal(Cell cell);

 private:
  void update_status();

  BoardSpec spec_;
  std::vector<std::uint8_t> mines_;
  std::vector<std::uint8_t> revealed_;
  GameStatus status_ = GameStatus::InProgress;
  int revealed_count_ = 0;
  std::vector<MoveRecord> moves_;
};

// Places spec.mine_count mines uniformly among eligible cells using spec.seed.
// With first_click_safe the first click is excluded from placement; otherwise
// mines are laid before any click and first_click is ignored.
GameState new_board(const BoardSpec& spec, std::optional<Cell> first_click = std::nullopt);

// Text format:
//   "<width> <height> <mine_count>"
//   <height lines of '*' / '.'>
//   ""
//   <height lines of 'R' / '#'>
GameState parse_board(std::string_view text);
std::string render_board(const GameState& state);

// What a player may see: clue values of revealed cells, everything else covered.
struct PlayerView {
  static constexpr std::int8_t kCovered = -1;

  int width = 0;
  int height = 0;
  int total_mines = 0;
  std::vector<std::int8_t> cells;

  int index(Cell c) const { return c.row * width + c.col; }
  Cell cell_at(int index) const { return Cell{index / width, index % width}; }
  bool covered(Cell c) const { return cells[index(c)] == kCovered; }
  int value(Cell c) const { return cells[index(c)]; }
  int cell_count() const { return width * height; }
};

PlayerView view_of(const GameState& state);

}  // namespace minesolve
