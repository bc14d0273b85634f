#include "minesolve/enumerate.hpp"
#include "support/brute_force.hpp"

#include <doctest.h>

using namespace minesolve;
using minesolve::testing::var_cell;

namespace {

Group group_of(std::vector<Constraint> cs) {
  ConstraintSystem s;
  s.constraints = std::move(cs);
  auto groups = partition(s);
  REQUIRE(groups.size() == 1);
  return groups[0];
}

Constraint con(std::initializer_list<int> ids, int rhs) {
  std::vector<Cell> vars;
  for (const int i : ids) vars.push_back(var_cell(i));
  return make_constraint(std::move(vars), rhs);
}

// C(v,k) keyed by cell, so tallies over different variable orders compare.
std::map<std::pair<Cell, std::size_t>, double> by_cell(const GroupTally& t) {
  std::map<std::pair<Cell, std::size_t>, double> out;
  for (std::size_t v = 0; v < t.var_count(); ++v) {
    for (std::size_t k = 0; k <= t.max_k(); ++k) out[{t.vars[v], k}] = t.cell_count(v, k);
  }
  return out;
}

void check_tally_invariants(const GroupTally& t) {
  double total = 0.0;
  for (std::size_t k = 0; k <= t.max_k(); ++k) {
    double sum = 0.0;
    for (std::size_t v = 0; v < t.var_count(); ++v) {
      REQUIRE(t.cell_count(v, k) >= 0.0);
      REQUIRE(t.cell_count(v, k) <= t.counts[k]);
      sum += t.cell_count(v, k);
    }
    REQUIRE(sum == static_cast<double>(k) * t.counts[k]);
    total += t.counts[k];
  }
  REQUIRE(total >= 1.0);
}

}  // namespace

TEST_CASE("one constraint over two cells") {
  const GroupTally t = enumerate_group(group_of({con({0, 1}, 1)}));
  CHECK(t.exact);
  CHECK(t.counts == std::vector<double>{0, 2, 0});
  CHECK(t.cell_count(0, 1) == 1);
  CHECK(t.cell_count(1, 1) == 1);
  check_tally_invariants(t);
}

TEST_CASE("three choose two") {
  const GroupTally t = enumerate_group(group_of({con({0, 1, 2}, 2)}));
  CHECK(t.counts[2] == 3);
  CHECK(t.total() == 3);
  for (std::size_t v = 0; v < 3; ++v) CHECK(t.cell_count(v, 2) == 2);
}

TEST_CASE("1-2-1 group") {
  const Group g = group_of({con({0, 1}, 1), con({0, 1, 2}, 2), con({1, 2}, 1)});
  // brute force: 8 assignments, only (1,0,1) survives
  const GroupTally naive = testing::naive_tally(g);
  CHECK(naive.counts[2] == 1);
  CHECK(naive.total() == 1);

  EnumerateStats stats;
  const GroupTally t = enumerate_group(g, {}, &stats);
  CHECK(t.counts == naive.counts);
  CHECK(t.cell_count(0, 2) == 1);
  CHECK(t.cell_count(1, 2) == 0);
  CHECK(t.cell_count(2, 2) == 1);
  CHECK(stats.solutions == 1);
  CHECK(stats.search_leaves < 8);
}

TEST_CASE("errors") {
  Group big;
  for (int i = 0; i < 23; ++i) big.vars.push_back(var_cell(i));
  big.constraints.push_back(make_constraint(big.vars, 3));
  CHECK_THROWS_AS(enumerate_group(big), ThresholdExceeded);

  Group bad;
  bad.vars = {var_cell(0), var_cell(1)};
  bad.constraints = {con({0, 1}, 1), con({0}, 1), con({1}, 1)};
  CHECK_THROWS_AS(enumerate_group(bad), Unsatisfiable);

  Group stray;
  stray.vars = {var_cell(0)};
  stray.constraints = {con({0, 1}, 1)};
  CHECK_THROWS_AS(enumerate_group(stray), std::invalid_argument);
}

TEST_CASE("deadline in the past aborts a large search") {
  Group g;
  for (int i = 0; i < 22; ++i) g.vars.push_back(var_cell(i));
  g.constraints.push_back(make_constraint(g.vars, 11));
  EnumerateOptions options;
  options.deadline = Clock::now() - std::chrono::seconds(1);
  CHECK_THROWS_AS(enumerate_group(g, options), DeadlineExpired);
}

TEST_CASE("threshold-sized group counts exactly") {
  Group g;
  for (int i = 0; i < 22; ++i) g.vars.push_back(var_cell(i));
  g.constraints.push_back(make_constraint(g.vars, 11));
  const GroupTally t = enumerate_group(g);
  CHECK(t.counts[11] == 705432.0);  // C(22, 11)
  CHECK(t.cell_count(0, 11) == 352716.0);  // C(21, 10)
}

TEST_CASE("property: backtracking equals naive enumeration") {
  Rng rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 2 + static_cast<int>(rng.below(11));
    const auto rs = testing::random_system(rng, n, 2 + static_cast<int>(rng.below(7)), 4);
    ConstraintSystem s;
    s.constraints = rs.constraints;
    for (const Group& g : partition(s)) {
      EnumerateStats stats;
      const GroupTally t = enumerate_group(g, {}, &stats);
      const GroupTally naive = testing::naive_tally(g);
      REQUIRE(t.counts == naive.counts);
      REQUIRE(t.cell_counts == naive.cell_counts);
      REQUIRE(stats.search_leaves <= (std::uint64_t{1} << g.vars.size()));
      check_tally_invariants(t);
    }
  }
}

TEST_CASE("property: tally does not depend on variable order") {
  Rng rng(12);
  for (int trial = 0; trial < 60; ++trial) {
    const auto rs = testing::random_system(rng, 10, 6, 4);
    ConstraintSystem s;
    s.constraints = rs.constraints;
    for (const Group& g : partition(s)) {
      const auto reference = by_cell(enumerate_group(g));
      for (int p = 0; p < 5; ++p) {
        Group shuffled = g;
        rng.shuffle(std::span<Cell>(shuffled.vars));
        rng.shuffle(std::span<Constraint>(shuffled.constraints));
        REQUIRE(by_cell(enumerate_group(shuffled)) == reference);
      }
    }
  }
}
