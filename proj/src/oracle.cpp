#include "minesolve/oracle.hpp"

#include <algorithm>
#include <cstdint>

namespace minesolve {

ProbabilityMap exact_board_probabilities(const PlayerView& view, const Assignments& known) {
  const int n_cells = view.cell_count();
  std::vector<std::uint8_t> mine(n_cells, 0);
  std::vector<int> open;
  int known_mines = 0;
  for (int i = 0; i < n_cells; ++i) {
    if (view.cells[i] != PlayerView::kCovered) continue;
    const Cell c = view.cell_at(i);
    const auto it = known.find(c);
    if (it == known.end()) {
      open.push_back(i);
    } else if (it->second == Assignment::Mine) {
      mine[i] = 1;
      ++known_mines;
    }
  }
  if (open.size() > kOracleMaxCells) {
    throw OracleError(std::to_string(open.size()) + " open cells is too many to enumerate");
  }
  const int to_place = view.total_mines - known_mines;
  if (to_place < 0 || to_place > static_cast<int>(open.size())) {
    throw OracleError("remaining mine count does not fit the open cells");
  }

  std::vector<int> clues;
  for (int i = 0; i < n_cells; ++i) {
    if (view.cells[i] != PlayerView::kCovered) clues.push_back(i);
  }

  // selector holds to_place ones; prev_permutation walks every arrangement
  std::vector<std::uint8_t> selector(open.size(), 0);
  std::fill(selector.begin(), selector.begin() + to_place, 1);
  std::vector<std::uint64_t> hits(open.size(), 0);
  std::uint64_t consistent = 0;
  do {
    for (std::size_t j = 0; j < open.size(); ++j) mine[open[j]] = selector[j];
    bool ok = true;
    for (const int i : clues) {
      int adjacent = 0;
      for_each_neighbor(view.width, view.height, view.cell_at(i), [&](Cell n) { adjacent += mine[view.index(n)]; });
      if (adjacent != view.cells[i]) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    ++consistent;
    for (std::size_t j = 0; j < open.size(); ++j) hits[j] += selector[j];
  } while (std::prev_permutation(selector.begin(), selector.end()));

  if (consistent == 0) throw OracleError("no mine placement matches the revealed clues");

  ProbabilityMap map;
  for (std::size_t j = 0; j < open.size(); ++j) {
    map.probs[view.cell_at(open[j])] = static_cast<double>(hits[j]) / static_cast<double>(consistent);
  }
  return map;
}

}  // namespace minesolve
