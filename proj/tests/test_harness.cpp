#include "minesolve/harness.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>

using namespace minesolve;
using nlohmann::json;

namespace {

// Checks the subset of JSON Schema used by docs/report.schema.json.
void validate_against(const json& value, const json& schema, const std::string& path = "$") {
  INFO(path);
  if (schema.contains("type")) {
    const std::string type = schema["type"];
    if (type == "object") REQUIRE(value.is_object());
    if (type == "array") REQUIRE(value.is_array());
    if (type == "string") REQUIRE(value.is_string());
    if (type == "boolean") REQUIRE(value.is_boolean());
    if (type == "integer") REQUIRE(value.is_number_integer());
    if (type == "number") REQUIRE(value.is_number());
  }
  if (schema.contains("enum")) {
    bool found = false;
    for (const auto& e : schema["enum"]) found |= e == value;
    REQUIRE(found);
  }
  if (schema.contains("minimum")) REQUIRE(value.get<double>() >= schema["minimum"].get<double>());
  if (schema.contains("maximum")) REQUIRE(value.get<double>() <= schema["maximum"].get<double>());
  if (schema.contains("minItems")) REQUIRE(value.size() >= schema["minItems"].get<std::size_t>());
  if (schema.contains("maxItems")) REQUIRE(value.size() <= schema["maxItems"].get<std::size_t>());
  if (schema.contains("required")) {
    for (const auto& key : schema["required"]) REQUIRE(value.contains(key.get<std::string>()));
  }
  if (schema.contains("properties")) {
    for (const auto& [key, sub] : schema["properties"].items()) {
      if (value.contains(key)) validate_against(value[key], sub, path + "." + key);
    }
  }
  if (schema.contains("items")) {
    for (std::size_t i = 0; i < value.size(); ++i) validate_against(value[i], schema["items"], path + "[" + std::to_string(i) + "]");
  }
}

BatchOptions batch(BoardSpec spec, std::uint64_t games, std::uint64_t seed = 0, unsigned threads = 1) {
  BatchOptions o;
  o.spec = spec;
  o.games = games;
  o.base_seed = seed;
  o.threads = threads;
  return o;
}

BatchReport with_outcomes(Mode mode, std::initializer_list<bool> wins) {
  BatchReport r;
  r.mode = mode;
  for (const bool w : wins) {
    GameRecord g;
    g.won = w;
    r.records.push_back(g);
  }
  r.games = r.records.size();
  return r;
}

}  // namespace

TEST_CASE("mine-free boards always win") {
  const BatchReport r = run_batch(batch(BoardSpec{2, 2, 0}, 100));
  CHECK(r.games == 100);
  CHECK(r.wins == 100);
  CHECK(r.win_rate == 1.0);
  CHECK(r.moves == 100);
  CHECK(r.first_move_losses == 0);
}

TEST_CASE("1x2 with one mine wins half the time") {
  const BatchReport r = run_batch(batch(BoardSpec{2, 1, 1}, 10000));
  CHECK(std::fabs(r.win_rate - 0.5) <= 0.02);
  CHECK(r.first_move_losses == r.games - r.wins);
}

TEST_CASE("outcomes do not depend on the worker count") {
  const BatchReport one = run_batch(batch(BoardSpec{8, 8, 10}, 40, 500, 1));
  const BatchReport three = run_batch(batch(BoardSpec{8, 8, 10}, 40, 500, 3));
  REQUIRE(one.records.size() == three.records.size());
  for (std::size_t i = 0; i < one.records.size(); ++i) {
    CHECK(one.records[i].seed == 500 + i);
    CHECK(one.records[i].seed == three.records[i].seed);
    CHECK(one.records[i].won == three.records[i].won);
    CHECK(one.records[i].moves.size() == three.records[i].moves.size());
  }
  CHECK(one.wins == three.wins);
}

TEST_CASE("batch errors") {
  CHECK_THROWS_AS(run_batch(batch(BoardSpec{8, 8, 10}, 0)), std::invalid_argument);
  CHECK_THROWS_AS(run_batch(batch(BoardSpec{2, 2, 5}, 1)), std::invalid_argument);
}

TEST_CASE("report JSON follows the schema") {
  std::ifstream in(std::string(MINESOLVE_SOURCE_DIR) + "/docs/report.schema.json");
  REQUIRE(in.good());
  const json schema = json::parse(in);
  const BatchReport r = run_batch(batch(BoardSpec{8, 8, 10}, 10, 3));
  validate_against(to_json(r), schema);
  const json with_records = to_json(r, true);
  validate_against(with_records, schema);
  CHECK(with_records["records"].size() == 10);
  CHECK(to_json(r)["mode"] == "full");
}

TEST_CASE("Wilson interval") {
  // closed forms at the edges: upper(0/n) = z^2/(n+z^2), lower(n/n) = n/(n+z^2)
  const double z2 = 1.96 * 1.96;
  auto [lo0, hi0] = wilson_interval(0, 10);
  CHECK(lo0 == 0.0);
  CHECK(hi0 == doctest::Approx(z2 / (10 + z2)));
  auto [lo1, hi1] = wilson_interval(10, 10);
  CHECK(lo1 == doctest::Approx(10 / (10 + z2)));
  CHECK(hi1 == 1.0);
  auto [lo, hi] = wilson_interval(50, 100);
  CHECK(lo == doctest::Approx(0.40383).epsilon(1e-4));
  CHECK(hi == doctest::Approx(0.59617).epsilon(1e-4));
}

TEST_CASE("nearest-rank percentile") {
  const std::vector<double> v{35, 20, 15, 50, 40};
  CHECK(percentile(v, 0.05) == 15);
  CHECK(percentile(v, 0.30) == 20);
  CHECK(percentile(v, 0.40) == 20);
  CHECK(percentile(v, 0.50) == 35);
  CHECK(percentile(v, 1.00) == 50);
  CHECK(percentile({}, 0.5) == 0.0);
}

TEST_CASE("paired difference") {
  const BatchReport a = with_outcomes(Mode::Full, {true, true, false, true});
  const BatchReport b = with_outcomes(Mode::Logic, {false, true, false, false});
  const PairedDelta d = paired_delta(a, b);
  CHECK(d.pairs == 4);
  CHECK(d.only_a_won == 2);
  CHECK(d.only_b_won == 0);
  CHECK(d.delta == doctest::Approx(0.5));
  // differences {1,0,0,1}: sample variance 1/3, standard error sqrt(1/12)
  const double half = 1.96 * std::sqrt(1.0 / 12);
  CHECK(d.ci_low == doctest::Approx(0.5 - half));
  CHECK(d.ci_high == doctest::Approx(0.5 + half));

  CHECK_THROWS_AS(paired_delta(a, with_outcomes(Mode::Logic, {true})), std::invalid_argument);
}

TEST_CASE("ablation runs every mode on the same seeds") {
  const AblationReport r = run_ablation(BoardSpec{2, 2, 0}, 20, 9, {}, {Mode::Full, Mode::Exact, Mode::Logic}, 1);
  REQUIRE(r.per_mode.size() == 3);
  for (const auto& m : r.per_mode) CHECK(m.win_rate == 1.0);
  REQUIRE(r.deltas.size() == 3);
  CHECK(r.deltas[0].a == Mode::Full);
  CHECK(r.deltas[0].b == Mode::Exact);
  CHECK(r.deltas[2].a == Mode::Exact);
  CHECK(r.deltas[2].b == Mode::Logic);
  for (const auto& d : r.deltas) CHECK(d.delta == 0.0);
  CHECK(to_text(r).find("full-logic") != std::string::npos);
  CHECK(to_json(r)["deltas"].size() == 3);
}

TEST_CASE("CSV and replay formats") {
  const BatchReport r = run_batch(batch(BoardSpec{2, 2, 0}, 2, 4));
  const std::string csv = to_csv(r);
  CHECK(csv.rfind("seed,won,moves,first_move_loss,forced_move_losses,max_move_ms\n", 0) == 0);
  CHECK(csv.find("\n4,1,1,0,0,") != std::string::npos);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);

  const std::string log = replay_log(r.records[0]);
  CHECK(log.rfind("# seed 4 won\n1 1 first_move fallback ", 0) == 0);
  CHECK(log.find(" ok\n") != std::string::npos);
  CHECK(to_text(r).find("win rate 1.0000") != std::string::npos);
}

TEST_CASE("worker count") {
  CHECK(worker_count(2) == 2);
  ::setenv("MINESOLVE_THREADS", "3", 1);
  CHECK(worker_count() == 3);
  CHECK(worker_count(5) == 5);
  ::setenv("MINESOLVE_THREADS", "lots", 1);
  CHECK(worker_count() >= 1);
  ::unsetenv("MINESOLVE_THREADS");
  CHECK(worker_count() >= 1);
}
