#include "minesolve/constraints.hpp"

#include <algorithm>
#include <unordered_map>

namespace minesolve {

bool Constraint::contains(Cell c) const { return std::binary_search(vars.begin(), vars.end(), c); }

Constraint make_constraint(std::vector<Cell> vars, int rhs) {
  std::sort(vars.begin(), vars.end());
  vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
  if (vars.empty()) throw std::invalid_argument("constraint needs at least one variable");
  if (rhs < 0 || rhs > static_cast<int>(vars.size())) {
    throw std::invalid_argument("constraint rhs out of range");
  }
  return Constraint{std::move(vars), rhs};
}

bool constraint_less(const Constraint& a, const Constraint& b) {
  if (a.vars.size() != b.vars.size()) return a.vars.size() < b.vars.size();
  if (a.vars != b.vars) return a.vars < b.vars;
  return a.rhs < b.rhs;
}

namespace {

void check_range(const Constraint& c) {
  if (c.rhs < 0 || c.rhs > static_cast<int>(c.vars.size())) {
    throw Contradiction("constraint " + std::to_string(c.vars.size()) + " cells = " + std::to_string(c.rhs) +
                        " is unsatisfiable");
  }
}

// Substitutes known cells, drops emptied constraints, validates ranges, sorts
// and merges duplicates.
void normalize(ConstraintSystem& system) {
  std::vector<Constraint> out;
  out.reserve(system.constraints.size());
  for (auto& c : system.constraints) {
    Constraint n;
    n.rhs = c.rhs;
    n.vars.reserve(c.vars.size());
    for (const Cell v : c.vars) {
      const auto it = system.known.find(v);
      if (it == system.known.end()) {
        n.vars.push_back(v);
      } else if (it->second == Assignment::Mine) {
        --n.rhs;
      }
    }
    if (n.vars.empty()) {
      if (n.rhs != 0) throw Contradiction("fully assigned constraint does not hold");
      continue;
    }
    check_range(n);
    out.push_back(std::move(n));
  }
  std::sort(out.begin(), out.end(), constraint_less);
  std::vector<Constraint> merged;
  merged.reserve(out.size());
  for (auto& c : out) {
    if (!merged.empty() && merged.back().vars == c.vars) {
      if (merged.back().rhs != c.rhs) throw Contradiction("duplicate constraints disagree");
      continue;
    }
    merged.push_back(std::move(c));
  }
  system.constraints = std::move(merged);
}

struct CellHash {
  std::size_t operator()(Cell c) const noexcept {
    return std::hash<std::uint64_t>{}((static_cast<std::uint64_t>(static_cast<std::uint32_t>(c.row)) << 32) |
                                      static_cast<std::uint32_t>(c.col));
  }
};

}  // namespace

ConstraintSystem extract_constraints(const PlayerView& view, const Assignments& known) {
  ConstraintSystem system;
  system.known = known;
  for (int i = 0; i < view.cell_count(); ++i) {
    const int value = view.cells[i];
    if (value == PlayerView::kCovered) continue;
    const Cell cell = view.cell_at(i);
    Constraint c;
    c.rhs = value;
    for_each_neighbor(view.width, view.height, cell, [&](Cell n) {
      if (!view.covered(n)) return;
      const auto it = known.find(n);
      if (it == known.end()) {
        c.vars.push_back(n);
      } else if (it->second == Assignment::Mine) {
        --c.rhs;
      }
    });
    if (c.vars.empty()) {
      if (c.rhs != 0) throw Contradiction("clue at " + to_string(cell) + " cannot be satisfied");
      continue;
    }
    check_range(c);
    system.constraints.push_back(std::move(c));
  }
  normalize(system);
  return system;
}

ConstraintSystem extract_constraints(const GameState& state, const Assignments& known) {
  return extract_constraints(view_of(state), known);
}

std::optional<Constraint> subtract(const Constraint& longer, const Constraint& shorter) {
  if (shorter.vars.size() >= longer.vars.size()) return std::nullopt;
  if (!std::includes(longer.vars.begin(), longer.vars.end(), shorter.vars.begin(), shorter.vars.end())) {
    return std::nullopt;
  }
  Constraint diff;
  diff.rhs = longer.rhs - shorter.rhs;
  std::set_difference(longer.vars.begin(), longer.vars.end(), shorter.vars.begin(), shorter.vars.end(),
                      std::back_inserter(diff.vars));
  return diff;
}

ConstraintSystem reduce(ConstraintSystem system, ReduceStats* stats) {
  ReduceStats local;
  normalize(system);

  for (;;) {
    ++local.passes;

    Assignments forced;
    for (const auto& c : system.constraints) {
      if (c.rhs != 0 && c.rhs != static_cast<int>(c.vars.size())) continue;
      const Assignment a = c.rhs == 0 ? Assignment::Safe : Assignment::Mine;
      for (const Cell v : c.vars) {
        const auto [it, inserted] = forced.emplace(v, a);
        if (!inserted && it->second != a) throw Contradiction("cell " + to_string(v) + " forced both ways");
      }
    }
    if (!forced.empty()) {
      for (const auto& [cell, a] : forced) {
        system.known.emplace(cell, a);
        system.deduced.push_back(cell);
      }
      ++local.rewrites;
      normalize(system);
      continue;
    }

    // Index constraints by their first (smallest) cell: a subset candidate of
    // constraint j must have its first cell inside j.
    std::unordered_map<Cell, std::vector<std::size_t>, CellHash> by_first;
    for (std::size_t i = 0; i < system.constraints.size(); ++i) {
      by_first[system.constraints[i].vars.front()].push_back(i);
    }

    bool changed = false;
    auto& cs = system.constraints;
    for (std::size_t j = 0; j < cs.size(); ++j) {
      bool again = true;
      while (again) {
        again = false;
        for (std::size_t p = 0; p < cs[j].vars.size() && !again; ++p) {
          const auto it = by_first.find(cs[j].vars[p]);
          if (it == by_first.end()) continue;
          for (const std::size_t i : it->second) {
            if (i == j) continue;
            auto diff = subtract(cs[j], cs[i]);
            if (!diff) continue;
            check_range(*diff);
            cs[j] = std::move(*diff);
            ++local.rewrites;
            changed = true;
            again = true;  // cs[j] shrank; rescan it from its new first cell
            break;
          }
        }
      }
    }
    if (!changed) break;
    normalize(system);
  }

  if (stats != nullptr) *stats = local;
  return system;
}

Deductions deductions(const ConstraintSystem& system) {
  Deductions out;
  for (const Cell c : system.deduced) {
    const auto it = system.known.find(c);
    if (it == system.known.end()) continue;
    (it->second == Assignment::Safe ? out.safe : out.mines).push_back(c);
  }
  std::sort(out.safe.begin(), out.safe.end());
  std::sort(out.mines.begin(), out.mines.end());
  return out;
}

std::string dump(const ConstraintSystem& system) {
  std::string out;
  for (const auto& c : system.constraints) {
    for (const Cell v : c.vars) out += to_string(v) + " ";
    out += "= " + std::to_string(c.rhs) + "\n";
  }
  return out;
}

}  // namespace minesolve
