#include "minesolve/sampler.hpp"

#include "minesolve/rng.hpp"

#include <cmath>
#include <map>
#include <numeric>

namespace minesolve {

namespace {

struct Compiled {
  std::vector<std::vector<int>> var_cons;
  std::vector<std::vector<int>> con_vars;
  std::vector<int> rhs;
};

Compiled compile(const Group& group) {
  Compiled out;
  std::map<Cell, int> id;
  for (std::size_t i = 0; i < group.vars.size(); ++i) id.emplace(group.vars[i], static_cast<int>(i));
  out.var_cons.resize(group.vars.size());
  for (const auto& c : group.constraints) {
    const int ci = static_cast<int>(out.rhs.size());
    out.rhs.push_back(c.rhs);
    auto& vars = out.con_vars.emplace_back();
    for (const Cell v : c.vars) {
      const auto it = id.find(v);
      if (it == id.end()) throw std::invalid_argument("constraint cell " + to_string(v) + " is not a group variable");
      out.var_cons[it->second].push_back(ci);
      vars.push_back(it->second);
    }
  }
  return out;
}

}  // namespace

GroupTally sample_group(const Group& group, const SamplerOptions& options, SampleStats* stats) {
  if (group.vars.empty()) throw std::invalid_argument("cannot sample an empty group");
  if (options.max_samples < 1) throw std::invalid_argument("max_samples must be at least 1");

  const Compiled model = compile(group);
  const std::size_t n = group.vars.size();
  const std::size_t m = model.rhs.size();

  GroupTally tally(options.group_id, group.vars);
  tally.exact = false;
  SampleStats local;
  Rng rng(options.seed);

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::vector<std::uint8_t> value(n, 0);
  std::vector<int> sum(m, 0);
  std::vector<int> remaining(m, 0);
  std::vector<int> mines;
  mines.reserve(n);

  const int n_int = static_cast<int>(n);
  for (std::uint64_t draw = 0; draw < options.max_samples; ++draw) {
    if (options.deadline && (draw & 0x3FF) == 0 && draw > 0 && Clock::now() >= *options.deadline) {
      local.hit_deadline = true;
      break;
    }
    ++local.draws;
    mines.clear();
    bool complete = true;
    int free_choices = 0;

    if (options.mode == SamplerMode::Importance) {
      for (std::size_t c = 0; c < m; ++c) {
        sum[c] = 0;
        remaining[c] = static_cast<int>(model.con_vars[c].size());
      }
      rng.shuffle(std::span<int>(order));
      for (const int v : order) {
        bool can_zero = true;
        bool can_one = true;
        for (const int c : model.var_cons[v]) {
          if (sum[c] + remaining[c] - 1 < model.rhs[c]) can_zero = false;
          if (sum[c] + 1 > model.rhs[c]) can_one = false;
        }
        std::uint8_t bit;
        if (can_zero && can_one) {
          bit = rng.bit() ? 1 : 0;
          ++free_choices;
        } else if (can_zero || can_one) {
          bit = can_one ? 1 : 0;
        } else {
          complete = false;
          break;
        }
        value[v] = bit;
        for (const int c : model.var_cons[v]) {
          --remaining[c];
          sum[c] += bit;
        }
        if (bit) mines.push_back(v);
      }
    } else {
      for (std::size_t v = 0; v < n; ++v) {
        value[v] = rng.bit() ? 1 : 0;
        if (value[v]) mines.push_back(static_cast<int>(v));
      }
      for (std::size_t c = 0; c < m && complete; ++c) {
        int s = 0;
        for (const int v : model.con_vars[c]) s += value[v];
        complete = s == model.rhs[c];
      }
    }
    if (!complete) continue;

    ++local.accepted;
    const double weight = options.mode == SamplerMode::Importance ? std::ldexp(1.0, free_choices - n_int) : 1.0;
    const std::size_t k = mines.size();
    tally.counts[k] += weight;
    for (const int v : mines) tally.cell_count(v, k) += weight;
    if (local.recorded.size() < options.record_limit) local.recorded.emplace_back(value.begin(), value.end());
  }

  tally.samples_used = local.draws;
  if (stats != nullptr) *stats = local;
  if (local.accepted == 0) throw NoAcceptedSamples("no satisfying assignment among " + std::to_string(local.draws) + " draws");
  return tally;
}

}  // namespace minesolve
