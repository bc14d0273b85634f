#include "minesolve/grouping.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>

namespace minesolve {

UnionFind::UnionFind(std::size_t n) : parent_(n), size_(n, 1) {
  std::iota(parent_.begin(), parent_.end(), std::size_t{0});
}

std::size_t UnionFind::find(std::size_t x) {
  std::size_t root = x;
  while (parent_[root] != root) root = parent_[root];
  while (parent_[x] != root) {
    const std::size_t next = parent_[x];
    parent_[x] = root;
    x = next;
  }
  return root;
}

bool UnionFind::unite(std::size_t a, std::size_t b) {
  a = find(a);
  b = find(b);
  if (a == b) return false;
  if (size_[a] < size_[b]) std::swap(a, b);
  parent_[b] = a;
  size_[a] += size_[b];
  return true;
}

std::vector<Group> partition(const ConstraintSystem& system, PartitionStats* stats) {
  PartitionStats local;

  std::vector<Cell> cells;
  for (const auto& c : system.constraints) cells.insert(cells.end(), c.vars.begin(), c.vars.end());
  std::sort(cells.begin(), cells.end());
  cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
  auto id_of = [&](Cell c) {
    return static_cast<std::size_t>(std::lower_bound(cells.begin(), cells.end(), c) - cells.begin());
  };

  UnionFind sets(cells.size());
  for (const auto& c : system.constraints) {
    const std::size_t first = id_of(c.vars.front());
    for (std::size_t i = 1; i < c.vars.size(); ++i) {
      sets.unite(first, id_of(c.vars[i]));
      ++local.unions;
    }
  }

  // Cells are visited in sorted order, so groups come out ordered by their
  // smallest cell and each group's vars are already sorted.
  std::vector<std::size_t> group_of_root(cells.size(), SIZE_MAX);
  std::vector<Group> groups;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const std::size_t root = sets.find(i);
    ++local.finds;
    if (group_of_root[root] == SIZE_MAX) {
      group_of_root[root] = groups.size();
      groups.emplace_back();
    }
    groups[group_of_root[root]].vars.push_back(cells[i]);
  }
  for (const auto& c : system.constraints) {
    const std::size_t root = sets.find(id_of(c.vars.front()));
    ++local.finds;
    groups[group_of_root[root]].constraints.push_back(c);
  }
  for (auto& g : groups) std::sort(g.constraints.begin(), g.constraints.end(), constraint_less);

  if (stats != nullptr) *stats = local;
  return groups;
}

}  // namespace minesolve
