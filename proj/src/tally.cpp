#include "minesolve/tally.hpp"

#include <numeric>

namespace minesolve {

GroupTally::GroupTally(std::size_t id, std::vector<Cell> group_vars)
    : group_id(id),
      vars(std::move(group_vars)),
      counts(vars.size() + 1, 0.0),
      cell_counts(vars.size() * (vars.size() + 1), 0.0) {}

double GroupTally::total() const { return std::accumulate(counts.begin(), counts.end(), 0.0); }

double GroupTally::local_marginal(std::size_t var) const {
  double mines = 0.0;
  for (std::size_t k = 0; k <= max_k(); ++k) mines += cell_count(var, k);
  const double t = total();
  return t > 0.0 ? mines / t : 0.0;
}

}  // namespace minesolve
