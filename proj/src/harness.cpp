#include "minesolve/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <mutex>
#include <sstream>
#include <thread>

namespace minesolve {

unsigned worker_count(unsigned requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("MINESOLVE_THREADS")) {
    char* end = nullptr;
    const long n = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && n > 0) return static_cast<unsigned>(n);
  }
  return std::max(1U, std::thread::hardware_concurrency());
}

std::pair<double, double> wilson_interval(std::uint64_t successes, std::uint64_t trials, double z) {
  if (trials == 0) return {0.0, 1.0};
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double centre = (p + z2 / (2 * n)) / (1 + z2 / n);
  const double half = z * std::sqrt(p * (1 - p) / n + z2 / (4 * n * n)) / (1 + z2 / n);
  return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

double percentile(std::vector<double> values, double q) {
  if (values.empty()) return 0.0;
  std::sort(values.begin(), values.end());
  const auto rank = static_cast<std::size_t>(std::ceil(q * static_cast<double>(values.size())));
  return values[std::clamp<std::size_t>(rank, 1, values.size()) - 1];
}

BatchReport run_batch(const BatchOptions& options) {
  if (options.games < 1) throw std::invalid_argument("a batch needs at least one game");
  validate(options.spec);

  const auto start = Clock::now();
  std::vector<GameRecord> records(options.games);
  std::atomic<std::uint64_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto worker = [&] {
    for (;;) {
      const std::uint64_t i = next.fetch_add(1);
      if (i >= options.games) return;
      try {
        records[i] = play_game(options.spec, options.policy, options.base_seed + i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = options.games;
        return;
      }
    }
  };
  const unsigned threads = static_cast<unsigned>(std::min<std::uint64_t>(worker_count(options.threads), options.games));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);

  BatchReport report;
  report.spec = options.spec;
  report.mode = options.policy.mode;
  report.base_seed = options.base_seed;
  report.games = options.games;
  std::vector<double> times;
  for (const auto& r : records) {
    report.wins += r.won;
    report.first_move_losses += r.loss_on_first_move;
    report.forced_move_losses += static_cast<std::uint64_t>(r.forced_move_losses);
    for (const auto& m : r.moves) times.push_back(m.elapsed_ms);
  }
  report.moves = times.size();
  report.win_rate = static_cast<double>(report.wins) / static_cast<double>(report.games);
  report.wilson_95 = wilson_interval(report.wins, report.games);
  if (!times.empty()) {
    double total = 0.0;
    for (const double t : times) total += t;
    report.move_time_ms.mean = total / static_cast<double>(times.size());
    report.move_time_ms.max = *std::max_element(times.begin(), times.end());
    report.move_time_ms.p50 = percentile(times, 0.50);
    report.move_time_ms.p99 = percentile(std::move(times), 0.99);
  }
  report.wall_seconds = std::chrono::duration<double>(Clock::now() - start).count();
  if (options.keep_records) report.records = std::move(records);
  return report;
}

PairedDelta paired_delta(const BatchReport& a, const BatchReport& b) {
  if (a.records.size() != b.records.size() || a.base_seed != b.base_seed) {
    throw std::invalid_argument("paired comparison needs both batches on the same seeds with records");
  }
  PairedDelta d;
  d.a = a.mode;
  d.b = b.mode;
  d.pairs = a.records.size();
  for (std::size_t i = 0; i < a.records.size(); ++i) {
    if (a.records[i].won && !b.records[i].won) ++d.only_a_won;
    if (b.records[i].won && !a.records[i].won) ++d.only_b_won;
  }
  if (d.pairs == 0) return d;
  const double n = static_cast<double>(d.pairs);
  d.delta = (static_cast<double>(d.only_a_won) - static_cast<double>(d.only_b_won)) / n;
  // per-pair differences are -1, 0 or +1
  const double second_moment = static_cast<double>(d.only_a_won + d.only_b_won) / n;
  const double variance = d.pairs > 1 ? (second_moment - d.delta * d.delta) * n / (n - 1) : 0.0;
  const double half = 1.96 * std::sqrt(std::max(0.0, variance) / n);
  d.ci_low = d.delta - half;
  d.ci_high = d.delta + half;
  return d;
}

AblationReport run_ablation(const BoardSpec& spec, std::uint64_t games, std::uint64_t base_seed,
                            const PolicyConfig& base, const std::vector<Mode>& modes, unsigned threads) {
  AblationReport out;
  for (const Mode mode : modes) {
    PolicyConfig config = PolicyConfig::for_mode(mode);
    config.budget = base.budget;
    config.first_move = base.first_move;
    config.fixed_first_move = base.fixed_first_move;
    config.tie_break = base.tie_break;
    config.sampler_mode = base.sampler_mode;
    config.max_samples = base.max_samples;
    config.exact_threshold = base.exact_threshold;
    out.per_mode.push_back(run_batch({spec, games, base_seed, config, threads, true}));
  }
  for (std::size_t i = 0; i < out.per_mode.size(); ++i) {
    for (std::size_t j = i + 1; j < out.per_mode.size(); ++j) {
      out.deltas.push_back(paired_delta(out.per_mode[i], out.per_mode[j]));
    }
  }
  return out;
}

namespace {

nlohmann::json record_json(const GameRecord& r) {
  double max_ms = 0.0;
  for (const auto& m : r.moves) max_ms = std::max(max_ms, m.elapsed_ms);
  return {{"seed", r.seed},
          {"won", r.won},
          {"moves", r.moves.size()},
          {"first_move_loss", r.loss_on_first_move},
          {"forced_move_losses", r.forced_move_losses},
          {"max_move_ms", max_ms}};
}

std::string fixed(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

}  // namespace

nlohmann::json to_json(const BatchReport& report, bool include_records) {
  nlohmann::json j = {
      {"spec",
       {{"width", report.spec.width},
        {"height", report.spec.height},
        {"mines", report.spec.mine_count},
        {"first_click_safe", report.spec.first_click_safe}}},
      {"mode", std::string(to_string(report.mode))},
      {"base_seed", report.base_seed},
      {"games", report.games},
      {"wins", report.wins},
      {"win_rate", report.win_rate},
      {"wilson_95", {report.wilson_95.first, report.wilson_95.second}},
      {"move_time_ms",
       {{"mean", report.move_time_ms.mean},
        {"p50", report.move_time_ms.p50},
        {"p99", report.move_time_ms.p99},
        {"max", report.move_time_ms.max}}},
      {"moves", report.moves},
      {"first_move_losses", report.first_move_losses},
      {"forced_move_losses", report.forced_move_losses},
      {"wall_seconds", report.wall_seconds},
  };
  if (include_records) {
    auto& rows = j["records"] = nlohmann::json::array();
    for (const auto& r : report.records) rows.push_back(record_json(r));
  }
  return j;
}

nlohmann::json to_json(const AblationReport& report, bool include_records) {
  nlohmann::json j;
  auto& modes = j["modes"] = nlohmann::json::array();
  for (const auto& r : report.per_mode) modes.push_back(to_json(r, include_records));
  auto& deltas = j["deltas"] = nlohmann::json::array();
  for (const auto& d : report.deltas) {
    deltas.push_back({{"a", std::string(to_string(d.a))},
                      {"b", std::string(to_string(d.b))},
                      {"pairs", d.pairs},
                      {"only_a_won", d.only_a_won},
                      {"only_b_won", d.only_b_won},
                      {"delta", d.delta},
                      {"ci_low", d.ci_low},
                      {"ci_high", d.ci_high}});
  }
  return j;
}

std::string to_text(const BatchReport& report) {
  char line[256];
  std::string out;
  std::snprintf(line, sizeof line, "board      %dx%d, %d mines%s\n", report.spec.width, report.spec.height,
                report.spec.mine_count, report.spec.first_click_safe ? ", first click safe" : "");
  out += line;
  std::snprintf(line, sizeof line, "mode       %s\n", std::string(to_string(report.mode)).c_str());
  out += line;
  std::snprintf(line, sizeof line, "games      %llu (seeds %llu..%llu)\n", static_cast<unsigned long long>(report.games),
                static_cast<unsigned long long>(report.base_seed),
                static_cast<unsigned long long>(report.base_seed + report.games - 1));
  out += line;
  std::snprintf(line, sizeof line, "wins       %llu  win rate %.4f  95%% CI [%.4f, %.4f]\n",
                static_cast<unsigned long long>(report.wins), report.win_rate, report.wilson_95.first,
                report.wilson_95.second);
  out += line;
  std::snprintf(line, sizeof line, "first-move losses  %llu (%.4f)\n",
                static_cast<unsigned long long>(report.first_move_losses),
                static_cast<double>(report.first_move_losses) / static_cast<double>(report.games));
  out += line;
  std::snprintf(line, sizeof line, "forced-move losses %llu\n", static_cast<unsigned long long>(report.forced_move_losses));
  out += line;
  std::snprintf(line, sizeof line, "move ms    mean %.3f  p50 %.3f  p99 %.3f  max %.3f  (%llu moves)\n",
                report.move_time_ms.mean, report.move_time_ms.p50, report.move_time_ms.p99, report.move_time_ms.max,
                static_cast<unsigned long long>(report.moves));
  out += line;
  std::snprintf(line, sizeof line, "wall       %.2f s\n", report.wall_seconds);
  out += line;
  return out;
}

std::string to_text(const AblationReport& report) {
  std::string out;
  char line[256];
  std::snprintf(line, sizeof line, "%-6s %8s %8s %9s %9s %10s %10s\n", "mode", "games", "wins", "win_rate", "ci_low",
                "ci_high", "p99_ms");
  out += line;
  for (const auto& r : report.per_mode) {
    std::snprintf(line, sizeof line, "%-6s %8llu %8llu %9.4f %9.4f %10.4f %10.3f\n",
                  std::string(to_string(r.mode)).c_str(), static_cast<unsigned long long>(r.games),
                  static_cast<unsigned long long>(r.wins), r.win_rate, r.wilson_95.first, r.wilson_95.second,
                  r.move_time_ms.p99);
    out += line;
  }
  out += "\n";
  std::snprintf(line, sizeof line, "%-14s %8s %8s %9s %9s %9s\n", "pair", "a_only", "b_only", "delta", "ci_low", "ci_high");
  out += line;
  for (const auto& d : report.deltas) {
    const std::string name = std::string(to_string(d.a)) + "-" + std::string(to_string(d.b));
    std::snprintf(line, sizeof line, "%-14s %8llu %8llu %9.4f %9.4f %9.4f\n", name.c_str(),
                  static_cast<unsigned long long>(d.only_a_won), static_cast<unsigned long long>(d.only_b_won), d.delta,
                  d.ci_low, d.ci_high);
    out += line;
  }
  return out;
}

std::string to_csv(const BatchReport& report) {
  std::string out = "seed,won,moves,first_move_loss,forced_move_losses,max_move_ms\n";
  for (const auto& r : report.records) {
    double max_ms = 0.0;
    for (const auto& m : r.moves) max_ms = std::max(max_ms, m.elapsed_ms);
    out += std::to_string(r.seed) + "," + (r.won ? "1" : "0") + "," + std::to_string(r.moves.size()) + "," +
           (r.loss_on_first_move ? "1" : "0") + "," + std::to_string(r.forced_move_losses) + "," + fixed(max_ms, 3) +
           "\n";
  }
  return out;
}

std::string replay_log(const GameRecord& record) {
  std::ostringstream out;
  out << "# seed " << record.seed << (record.won ? " won" : " lost") << "\n";
  for (const auto& m : record.moves) {
    out << m.cell.row << ' ' << m.cell.col << ' ' << to_string(m.kind) << ' ' << to_string(m.depth) << ' '
        << fixed(m.prob, 6) << ' ' << fixed(m.elapsed_ms, 3) << ' ' << (m.boom ? "boom" : "ok") << '\n';
  }
  return out.str();
}

}  // namespace minesolve
