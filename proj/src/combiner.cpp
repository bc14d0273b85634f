#include "minesolve/combiner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace minesolve {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Log-weights indexed by total mine count.
using LogDist = std::vector<double>;

double log_add(double a, double b) {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  const double hi = std::max(a, b);
  return hi + std::log1p(std::exp(-std::fabs(a - b)));
}

LogDist convolve(const LogDist& a, const LogDist& b) {
  LogDist out(a.size() + b.size() - 1, kNegInf);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == kNegInf) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (b[j] == kNegInf) continue;
      out[i + j] = log_add(out[i + j], a[i] + b[j]);
    }
  }
  return out;
}

LogDist log_counts(const GroupTally& t) {
  LogDist out(t.counts.size(), kNegInf);
  for (std::size_t k = 0; k < t.counts.size(); ++k) {
    if (t.counts[k] > 0.0) out[k] = std::log(t.counts[k]);
  }
  return out;
}

void check_tally(const GroupTally& t) {
  if (t.counts.size() != t.vars.size() + 1 || t.cell_counts.size() != t.vars.size() * (t.vars.size() + 1)) {
    throw std::invalid_argument("malformed tally for group " + std::to_string(t.group_id));
  }
}

ProbabilityMap combine_independent(std::span<const GroupTally> tallies, const BoardContext& context) {
  ProbabilityMap map;
  double expected_group_mines = 0.0;
  for (const auto& t : tallies) {
    const double total = t.total();
    if (!(total > 0.0)) throw NoConsistentPlacement("group " + std::to_string(t.group_id) + " has an empty tally");
    for (std::size_t k = 0; k <= t.max_k(); ++k) expected_group_mines += static_cast<double>(k) * t.counts[k] / total;
    for (std::size_t v = 0; v < t.var_count(); ++v) map.probs[t.vars[v]] = std::clamp(t.local_marginal(v), 0.0, 1.0);
  }
  if (!context.unconstrained.empty()) {
    const double sea = (context.remaining_mines - expected_group_mines) / static_cast<double>(context.unconstrained.size());
    for (const Cell c : context.unconstrained) map.probs[c] = std::clamp(sea, 0.0, 1.0);
  }
  return map;
}

}  // namespace

double ProbabilityMap::sum() const {
  double s = 0.0;
  for (const auto& [cell, p] : probs) s += p;
  return s;
}

double log_binomial(int n, int r) {
  if (r < 0 || r > n || n < 0) return kNegInf;
  return std::lgamma(n + 1.0) - std::lgamma(r + 1.0) - std::lgamma(n - r + 1.0);
}

ProbabilityMap combine(std::span<const GroupTally> tallies, const BoardContext& context, const CombineOptions& options) {
  if (context.remaining_mines < 0) throw std::invalid_argument("remaining mine count is negative");
  for (const auto& t : tallies) check_tally(t);
  if (!options.sea_coupling) return combine_independent(tallies, context);

  const int sea = static_cast<int>(context.unconstrained.size());
  const int mines = context.remaining_mines;
  // sea_weight(s): log C(|U|, M - s) for s group mines in total
  auto sea_weight = [&](int s) { return log_binomial(sea, mines - s); };

  const std::size_t groups = tallies.size();
  std::vector<LogDist> counts(groups);
  for (std::size_t g = 0; g < groups; ++g) counts[g] = log_counts(tallies[g]);

  std::vector<LogDist> prefix(groups + 1);
  std::vector<LogDist> suffix(groups + 1);
  prefix[0] = {0.0};
  for (std::size_t g = 0; g < groups; ++g) prefix[g + 1] = convolve(prefix[g], counts[g]);
  suffix[groups] = {0.0};
  for (std::size_t g = groups; g-- > 0;) suffix[g] = convolve(counts[g], suffix[g + 1]);

  const LogDist& all = prefix[groups];
  double log_total = kNegInf;
  for (std::size_t s = 0; s < all.size(); ++s) {
    if (all[s] != kNegInf) log_total = log_add(log_total, all[s] + sea_weight(static_cast<int>(s)));
  }
  if (log_total == kNegInf) {
    throw NoConsistentPlacement("no group mine counts are compatible with " + std::to_string(mines) +
                                " remaining mines");
  }

  ProbabilityMap map;

  if (sea > 0) {
    double expected = 0.0;
    bool possible = false;
    for (std::size_t s = 0; s < all.size(); ++s) {
      const double w = all[s] + sea_weight(static_cast<int>(s));
      if (w == kNegInf) continue;
      const int left = mines - static_cast<int>(s);
      if (left > 0) possible = true;
      expected += std::exp(w - log_total) * left;
    }
    double p = std::clamp(expected / sea, 0.0, 1.0);
    if (p == 0.0 && possible) p = std::numeric_limits<double>::denorm_min();
    for (const Cell c : context.unconstrained) map.probs[c] = p;
  }

  for (std::size_t g = 0; g < groups; ++g) {
    const auto& t = tallies[g];
    const LogDist others = convolve(prefix[g], suffix[g + 1]);
    // rest[k]: log weight of everything outside group g given it holds k mines
    LogDist rest(t.max_k() + 1, kNegInf);
    for (std::size_t k = 0; k <= t.max_k(); ++k) {
      for (std::size_t s = 0; s < others.size(); ++s) {
        if (others[s] == kNegInf) continue;
        rest[k] = log_add(rest[k], others[s] + sea_weight(static_cast<int>(k + s)));
      }
    }
    for (std::size_t v = 0; v < t.var_count(); ++v) {
      double p = 0.0;
      bool possible = false;
      for (std::size_t k = 0; k <= t.max_k(); ++k) {
        const double c = t.cell_count(v, k);
        if (c <= 0.0 || rest[k] == kNegInf) continue;
        possible = true;
        p += c * std::exp(rest[k] - log_total);
      }
      p = std::clamp(p, 0.0, 1.0);
      if (p == 0.0 && possible) p = std::numeric_limits<double>::denorm_min();
      map.probs[t.vars[v]] = p;
    }
  }
  return map;
}

std::string dump_probability_grid(const ProbabilityMap& map, int width, int height, const Assignments& known) {
  std::string out;
  char buf[16];
  for (int r = 0; r < height; ++r) {
    for (int c = 0; c < width; ++c) {
      const Cell cell{r, c};
      if (c > 0) out += ' ';
      if (const auto it = map.probs.find(cell); it != map.probs.end()) {
        std::snprintf(buf, sizeof buf, "%.4f", it->second);
        out += buf;
      } else if (const auto k = known.find(cell); k != known.end()) {
        out += k->second == Assignment::Mine ? "1.0000" : "0.0000";
      } else {
        out += "  .   ";
      }
    }
    out += '\n';
  }
  return out;
}

}  // namespace minesolve
