#pragma once

#include "minesolve/constraints.hpp"

#include <cstddef>
#include <vector>

namespace minesolve {

// Disjoint-set forest with path compression and union by size.
class UnionFind {
 public:
  explicit UnionFind(std::size_t n);

  std::size_t find(std::size_t x);
  // Returns false when a and b were already in the same set.
  bool unite(std::size_t a, std::size_t b);
  std::size_t set_size(std::size_t x) { return size_[find(x)]; }
  std::size_t element_count() const { return parent_.size(); }

 private:
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> size_;
};

// Connected component of constraints under shared variables.
struct Group {
  std::vector<Constraint> constraints;  // in constraint_less order
  std::vector<Cell> vars;               // sorted union of constraint vars
};

struct PartitionStats {
  std::size_t unions = 0;
  std::size_t finds = 0;
};

// Variable-disjoint groups, ordered by smallest cell.
std::vector<Group> partition(const ConstraintSystem& system, PartitionStats* stats = nullptr);

}  // namespace minesolve
