#include "minesolve/enumerate.hpp"

#include <algorithm>
#include <map>

namespace minesolve {

namespace {

class Search {
 public:
  Search(const Group& group, const EnumerateOptions& options)
      : tally_(options.group_id, group.vars), deadline_(options.deadline) {
    const std::size_t n = group.vars.size();
    std::map<Cell, int> id;
    for (std::size_t i = 0; i < n; ++i) id.emplace(group.vars[i], static_cast<int>(i));

    var_cons_.resize(n);
    for (const auto& c : group.constraints) {
      const int ci = static_cast<int>(rhs_.size());
      rhs_.push_back(c.rhs);
      remaining_.push_back(static_cast<int>(c.vars.size()));
      sum_.push_back(0);
      for (const Cell v : c.vars) {
        const auto it = id.find(v);
        if (it == id.end()) throw std::invalid_argument("constraint cell " + to_string(v) + " is not a group variable");
        var_cons_[it->second].push_back(ci);
      }
    }

    order_.resize(n);
    for (std::size_t i = 0; i < n; ++i) order_[i] = static_cast<int>(i);
    std::sort(order_.begin(), order_.end(), [&](int a, int b) {
      if (var_cons_[a].size() != var_cons_[b].size()) return var_cons_[a].size() > var_cons_[b].size();
      return group.vars[a] < group.vars[b];
    });
  }

  GroupTally run(EnumerateStats& stats) {
    descend(0);
    stats.search_leaves = leaves_;
    stats.solutions = solutions_;
    tally_.exact = true;
    tally_.samples_used = 0;
    return std::move(tally_);
  }

 private:
  void descend(std::size_t depth) {
    if (depth == order_.size()) {
      ++solutions_;
      count_leaf();
      const std::size_t k = mines_.size();
      tally_.counts[k] += 1.0;
      for (const int v : mines_) tally_.cell_count(v, k) += 1.0;
      return;
    }
    const int v = order_[depth];
    for (int value = 0; value <= 1; ++value) {
      bool ok = true;
      for (const int c : var_cons_[v]) {
        --remaining_[c];
        sum_[c] += value;
        if (sum_[c] > rhs_[c] || sum_[c] + remaining_[c] < rhs_[c]) ok = false;
      }
      if (ok) {
        if (value == 1) mines_.push_back(v);
        descend(depth + 1);
        if (value == 1) mines_.pop_back();
      } else {
        count_leaf();
      }
      for (const int c : var_cons_[v]) {
        ++remaining_[c];
        sum_[c] -= value;
      }
    }
  }

  void count_leaf() {
    ++leaves_;
    if (deadline_ && (leaves_ & 0xFFF) == 0 && Clock::now() >= *deadline_) {
      throw DeadlineExpired("group enumeration ran past its deadline");
    }
  }

  GroupTally tally_;
  std::optional<Clock::time_point> deadline_;
  std::vector<std::vector<int>> var_cons_;
  std::vector<int> rhs_;
  std::vector<int> remaining_;
  std::vector<int> sum_;
  std::vector<int> order_;
  std::vector<int> mines_;
  std::uint64_t leaves_ = 0;
  std::uint64_t solutions_ = 0;
};

}  // namespace

GroupTally enumerate_group(const Group& group, const EnumerateOptions& options, EnumerateStats* stats) {
  if (group.vars.size() > options.threshold) {
    throw ThresholdExceeded("group of " + std::to_string(group.vars.size()) + " cells exceeds the exact limit of " +
                            std::to_string(options.threshold));
  }
  EnumerateStats local;
  Search search(group, options);
  GroupTally tally = search.run(local);
  if (local.solutions == 0) throw Unsatisfiable("group has no satisfying assignment");
  if (stats != nullptr) *stats = local;
  return tally;
}

}  // namespace minesolve
