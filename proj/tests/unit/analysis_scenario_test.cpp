#include <gtest/gtest.h>

#include <boost/math/special_functions/lambert_w.hpp>
#include <cmath>
#include <random>

#include "lazylight/analysis.hpp"
#include "lazylight/attack_demo.hpp"
#include "lazylight/error.hpp"
#include "lazylight/scenario.hpp"

using namespace lazylight;

namespace {

std::uint64_t scan_best(const LinkParams& link, double ledger, std::uint64_t hi) {
  std::uint64_t best = 2;
  for (std::uint64_t m = 3; m <= hi; ++m)
    if (game_duration(ledger, double(m), link) < game_duration(ledger, double(best), link)) best = m;
  return best;
}

}  // namespace

TEST(Analysis, ReferenceDegree) {
  EXPECT_NEAR(double(optimal_degree(LinkParams{})), 7442.0, 1.0);
}

TEST(Analysis, RealRootMatchesLambertW) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 50; ++i) {
    LinkParams link;
    link.delta = 0.001 + unit_real(rng) * 0.2;
    link.bandwidth = 1e6 * std::pow(10.0, unit_real(rng) * 3);
    const double k = 4 * link.delta * link.bandwidth / link.hash_bits;
    const double expected = std::exp(boost::math::lambert_w0(k / std::exp(1.0)) + 1.0);
    EXPECT_NEAR(optimal_degree_real(link), expected, expected * 1e-9);
  }
}

TEST(Analysis, IntegerDegreeMatchesExhaustiveScan) {
  const LinkParams small{0.001, 1e6, 256};
  EXPECT_EQ(optimal_degree(small), scan_best(small, 1.5e9, 100000));
  std::mt19937_64 rng(9);
  for (int i = 0; i < 50; ++i) {
    LinkParams link;
    link.delta = 0.001 + unit_real(rng) * 0.05;
    link.bandwidth = 1e6 + unit_real(rng) * 5e7;
    const std::uint64_t m = optimal_degree(link);
    EXPECT_EQ(m, scan_best(link, 1.5e9, 3 * m + 10)) << link.delta << " " << link.bandwidth;
  }
}

TEST(Analysis, DurationShape) {
  const LinkParams link;
  const double at = game_duration(1.5e9, 7442, link);
  EXPECT_LT(at, game_duration(1.5e9, 1000, link));
  EXPECT_LT(at, game_duration(1.5e9, 50000, link));
  EXPECT_LT(game_duration(1e6, 7442, link), game_duration(1e9, 7442, link));
  LinkParams slow = link;
  slow.bandwidth /= 2;
  EXPECT_GT(game_duration(1.5e9, 7442, slow), at);
  EXPECT_NEAR(exchange_seconds(2, link), 4 * link.delta + (2 * 256 + 1) / link.bandwidth, 1e-15);
}

TEST(Attack, CeilLog) {
  EXPECT_EQ(ceil_log(1, 2), 0u);
  EXPECT_EQ(ceil_log(2, 2), 1u);
  EXPECT_EQ(ceil_log(1024, 2), 10u);
  EXPECT_EQ(ceil_log(1025, 2), 11u);
  EXPECT_EQ(ceil_log(100000, 300), 3u);
  EXPECT_EQ(ceil_log(90000, 300), 2u);
  EXPECT_EQ(ceil_log(90001, 300), 3u);
}

TEST(Attack, ParityDecidesFirstTransaction) {
  for (std::uint64_t n : {5u, 6u, 31u, 32u}) {
    const auto r = run_attack_demo(n, 2);
    EXPECT_EQ(r.tx1_valid, n % 2 == 1) << n;
    EXPECT_EQ(r.naive_reveals, n - 1) << n;
    EXPECT_TRUE(r.honest_won) << n;
    EXPECT_LE(r.game_messages, r.message_bound) << n;
    EXPECT_EQ(r.tx1_output.has_value(), r.tx1_valid) << n;
  }
}

TEST(Scenario, ParseErrors) {
  const auto code = [](const std::string& text) {
    try {
      parse_scenario(text);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode{};
  };
  EXPECT_EQ(code("{"), ErrorCode::InvalidScenario);
  EXPECT_EQ(code(R"({"provers":[{"id":"a","strategy":"bogus"}]})"), ErrorCode::InvalidScenario);
  EXPECT_EQ(code(R"({"network":{"arity":1},"provers":[{"id":"a","strategy":"honest"}]})"),
            ErrorCode::InvalidScenario);
  EXPECT_EQ(code(R"({"provers":[{"id":"a","strategy":"corrupt_leaf","params":{"index":3,"field":"x"}}]})"),
            ErrorCode::InvalidScenario);
}

TEST(Scenario, ParsesCountsAndParams) {
  const Scenario s = parse_scenario(R"({"id":"t","network":{"arity":4,"seed":3},
    "ledger":{"length":30,"model":"utxo","smt_depth":16},
    "provers":[{"id":"h","strategy":"honest"},
               {"id":"c","strategy":"corrupt_leaf","params":{"index":"random","field":"tx"},"count":3}]})");
  EXPECT_EQ(s.network.arity, 4u);
  EXPECT_EQ(s.ledger.model, LedgerModel::Utxo);
  ASSERT_EQ(s.provers.size(), 2u);
  EXPECT_TRUE(s.provers[1].random_index);
  EXPECT_EQ(s.provers[1].count, 3u);
  EXPECT_EQ(std::get<CorruptLeaf>(s.provers[1].behavior).field, LeafField::Tx);
  const auto run = run_scenario(s);
  EXPECT_EQ(run.n_provers, 4u);
  EXPECT_TRUE(run.honest_won);
}

TEST(Scenario, CsvIsDeterministic) {
  const Scenario s = load_scenario(std::string(LAZYLIGHT_SCENARIO_DIR) + "/small_account.json");
  const auto a = run_scenario(s);
  const auto b = run_scenario(s);
  EXPECT_EQ(csv_row(s, a), csv_row(s, b));
  EXPECT_EQ(game_csv_rows(s, a), game_csv_rows(s, b));
  EXPECT_EQ(a.transcript, b.transcript);
  EXPECT_EQ(csv_header(), "scenario_id,n_provers,ledger_len,m,games,rounds,bytes,sim_seconds,winner,honest_won\n");
}
