#include "minesolve/combiner.hpp"
#include "minesolve/enumerate.hpp"
#include "support/brute_force.hpp"

#include <doctest.h>

#include <cmath>

using namespace minesolve;
using minesolve::testing::var_cell;

namespace {

Constraint con(std::initializer_list<int> ids, int rhs) {
  std::vector<Cell> vars;
  for (const int i : ids) vars.push_back(var_cell(i));
  return make_constraint(std::move(vars), rhs);
}

std::vector<GroupTally> exact_tallies(const std::vector<Constraint>& cs) {
  ConstraintSystem s;
  s.constraints = cs;
  std::vector<GroupTally> out;
  for (const Group& g : partition(s)) out.push_back(enumerate_group(g));
  return out;
}

std::vector<Cell> cells(int from, int to) {
  std::vector<Cell> out;
  for (int i = from; i < to; ++i) out.push_back(var_cell(i));
  return out;
}

// Marginals over all 0/1 placements that satisfy the constraints and put
// exactly `mines` mines on `all`.
std::map<Cell, double> brute_marginals(const std::vector<Cell>& all, std::vector<Constraint> cs, int mines) {
  cs.push_back(make_constraint(all, mines));
  const auto sols = testing::brute_force_solutions(all, cs);
  std::map<Cell, double> out;
  for (std::size_t i = 0; i < all.size(); ++i) {
    int hits = 0;
    for (const auto mask : sols) hits += (mask >> i) & 1U;
    out[all[i]] = static_cast<double>(hits) / static_cast<double>(sols.size());
  }
  return out;
}

}  // namespace

TEST_CASE("one group with sea cells") {
  const std::vector<Constraint> cs{con({0, 1}, 1)};
  const BoardContext ctx{2, cells(2, 4)};
  const ProbabilityMap p = combine(exact_tallies(cs), ctx);
  const auto brute = brute_marginals(cells(0, 4), cs, 2);  // 4 consistent placements
  for (const auto& [cell, q] : brute) CHECK(p.at(cell) == doctest::Approx(q).epsilon(1e-12));
  CHECK(p.at(var_cell(0)) == doctest::Approx(0.5));
  CHECK(p.at(var_cell(2)) == doctest::Approx(0.5));
  CHECK(p.sum() == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("no groups: uniform over the sea") {
  const ProbabilityMap p = combine({}, BoardContext{2, cells(0, 5)});
  REQUIRE(p.probs.size() == 5);
  for (const auto& [cell, q] : p.probs) CHECK(q == doctest::Approx(0.4).epsilon(1e-12));
}

TEST_CASE("single group, empty sea") {
  const ProbabilityMap p = combine(exact_tallies({con({0, 1, 2}, 2)}), BoardContext{2, {}});
  for (int i = 0; i < 3; ++i) CHECK(p.at(var_cell(i)) == doctest::Approx(2.0 / 3).epsilon(1e-12));
}

TEST_CASE("two groups, empty sea") {
  const std::vector<Constraint> cs{con({0, 1}, 1), con({2, 3, 4}, 2)};
  const ProbabilityMap p = combine(exact_tallies(cs), BoardContext{3, {}});
  const auto brute = brute_marginals(cells(0, 5), cs, 3);  // 2 x 3 assignments
  CHECK(p.at(var_cell(0)) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(p.at(var_cell(2)) == doctest::Approx(2.0 / 3).epsilon(1e-12));
  for (const auto& [cell, q] : brute) CHECK(p.at(cell) == doctest::Approx(q).epsilon(1e-12));
}

TEST_CASE("global mine count rules out every vector") {
  const auto tallies = exact_tallies({con({0, 1}, 1), con({2, 3, 4}, 2)});
  CHECK_THROWS_AS(combine(tallies, BoardContext{1, {}}), NoConsistentPlacement);
  CHECK_THROWS_AS(combine(tallies, BoardContext{-1, {}}), std::invalid_argument);
}

TEST_CASE("global mine count prunes some vectors") {
  // group {a,b,c} holds 1 or 2 mines; with M=2 and {d,e} needing 1, only 1 survives
  const std::vector<Constraint> cs{con({0, 1}, 1), con({1, 2}, 1), con({3, 4}, 1)};
  const auto tallies = exact_tallies(cs);
  const ProbabilityMap p = combine(tallies, BoardContext{2, {}});
  const auto brute = brute_marginals(cells(0, 5), cs, 2);
  for (const auto& [cell, q] : brute) CHECK(p.at(cell) == doctest::Approx(q).epsilon(1e-12));
  CHECK(p.at(var_cell(1)) == 1.0);
  CHECK(p.at(var_cell(0)) == 0.0);
}

TEST_CASE("impossible cells are exactly zero, possible ones never are") {
  const std::vector<Constraint> cs{con({0, 1}, 1), con({1, 2}, 1)};
  const ProbabilityMap p = combine(exact_tallies(cs), BoardContext{1, cells(3, 400)});
  CHECK(p.at(var_cell(0)) == 0.0);
  CHECK(p.at(var_cell(1)) == 1.0);
  CHECK(p.at(var_cell(3)) == 0.0);

  // with a large sea the a=c=1 branch is unlikely but still possible
  const ProbabilityMap q = combine(exact_tallies(cs), BoardContext{2, cells(3, 480)});
  CHECK(q.at(var_cell(0)) > 0.0);
}

TEST_CASE("independent mode ignores the global count") {
  const std::vector<Constraint> cs{con({0, 1}, 1), con({1, 2}, 1)};
  const ProbabilityMap p = combine(exact_tallies(cs), BoardContext{3, cells(3, 7)}, {false});
  CHECK(p.at(var_cell(0)) == doctest::Approx(0.5));
  CHECK(p.at(var_cell(1)) == doctest::Approx(0.5));
  // expected group mines 1.5, so the 4 sea cells share 1.5
  CHECK(p.at(var_cell(3)) == doctest::Approx(1.5 / 4));
}

TEST_CASE("log binomial") {
  CHECK(std::exp(log_binomial(5, 2)) == doctest::Approx(10.0));
  CHECK(std::exp(log_binomial(480, 0)) == doctest::Approx(1.0));
  CHECK(log_binomial(3, 4) == -std::numeric_limits<double>::infinity());
  CHECK(log_binomial(3, -1) == -std::numeric_limits<double>::infinity());
}

TEST_CASE("probability grid dump") {
  ProbabilityMap p;
  p.probs[{0, 1}] = 0.25;
  p.probs[{1, 1}] = 1.0 / 3;
  const std::string grid = dump_probability_grid(p, 2, 2, {{{0, 0}, Assignment::Mine}});
  CHECK(grid == "1.0000 0.2500\n  .    0.3333\n");
}

TEST_CASE("property: convolution matches explicit vector enumeration") {
  Rng rng(21);
  for (int trial = 0; trial < 300; ++trial) {
    // up to 4 groups of up to 5 cells each
    std::vector<Constraint> cs;
    int next = 0;
    const int groups = 1 + static_cast<int>(rng.below(4));
    for (int g = 0; g < groups; ++g) {
      const int size = 1 + static_cast<int>(rng.below(5));
      std::vector<Cell> vars = cells(next, next + size);
      const int rhs = static_cast<int>(rng.below(size + 1));
      cs.push_back(make_constraint(vars, rhs));
      if (size >= 3 && rng.bit()) cs.push_back(make_constraint({vars[0], vars[1]}, static_cast<int>(rng.below(std::min(rhs, 2) + 1))));
      next += size;
    }
    std::vector<GroupTally> tallies;
    try {
      tallies = exact_tallies(cs);
    } catch (const Unsatisfiable&) {
      continue;
    }
    const int sea = static_cast<int>(rng.below(6));
    const BoardContext ctx{static_cast<int>(rng.below(next + sea + 1)), cells(next, next + sea)};
    std::map<Cell, double> reference;
    bool feasible = true;
    try {
      reference = testing::combine_by_vectors(tallies, ctx);
      for (const auto& [c, q] : reference) feasible &= std::isfinite(q);
    } catch (...) {
      feasible = false;
    }
    if (!feasible) {
      CHECK_THROWS_AS(combine(tallies, ctx), NoConsistentPlacement);
      continue;
    }
    const ProbabilityMap p = combine(tallies, ctx);
    for (const auto& [cell, q] : reference) REQUIRE(p.at(cell) == doctest::Approx(q).epsilon(1e-12));
    REQUIRE(std::fabs(p.sum() - ctx.remaining_mines) <= 1e-9);
  }
}

TEST_CASE("property: marginals stay finite and in range across mine sweeps") {
  Rng rng(22);
  for (int trial = 0; trial < 20; ++trial) {
    const auto rs = testing::random_system(rng, 14, 6, 4);
    ConstraintSystem s;
    s.constraints = rs.constraints;
    std::vector<GroupTally> tallies;
    for (const Group& g : partition(reduce(s))) tallies.push_back(enumerate_group(g));
    const std::vector<Cell> sea = cells(100, 300);
    for (int m = 0; m <= 200; m += 5) {
      ProbabilityMap p;
      try {
        p = combine(tallies, BoardContext{m, sea});
      } catch (const NoConsistentPlacement&) {
        continue;
      }
      for (const auto& [cell, q] : p.probs) REQUIRE((std::isfinite(q) && q >= 0.0 && q <= 1.0));
      REQUIRE(std::fabs(p.sum() - m) <= 1e-9);
    }
  }
}
