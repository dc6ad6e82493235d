#include <gtest/gtest.h>

#include "snowball/engine.hpp"
#include "snowball/metrics.hpp"
#include "support.hpp"

namespace snowball {
namespace {

std::set<ArticleId> range(int from, int to) {
  std::set<ArticleId> out;
  for (int i = from; i < to; ++i) out.insert("x" + std::to_string(i));
  return out;
}

TEST(PctDelta, TableFourValues) {
  EXPECT_EQ(pct_delta(33, 43), 30);
  EXPECT_EQ(pct_delta(29, 43), 48);
  EXPECT_EQ(pct_delta(24, 43), 79);
  EXPECT_EQ(pct_delta(22, 43), 95);
  EXPECT_EQ(pct_delta(19, 36), 89);
  EXPECT_EQ(pct_delta(43, 43), 0);
}

TEST(PctDelta, RoundsHalfAwayFromZero) {
  EXPECT_EQ(pct_delta(8, 9), 13);    // 12.5
  EXPECT_EQ(pct_delta(8, 7), -13);   // -12.5
  EXPECT_EQ(pct_delta(200, 201), 1);  // 0.5
  EXPECT_EQ(pct_delta(3, 1), -67);
  EXPECT_ERROR_KIND(pct_delta(0, 5), ErrorKind::ZeroBaseline);
}

TEST(PctDelta, Monotonicity) {
  for (long a = 1; a <= 60; ++a) {
    EXPECT_EQ(pct_delta(a, a), 0);
    for (long b = 0; b <= 60; ++b) {
      EXPECT_LE(pct_delta(a, b), pct_delta(a, b + 1));
      EXPECT_GE(pct_delta(a, b), pct_delta(a + 1, b));
    }
  }
}

TEST(Overlap, PaperCounts) {
  const auto a = range(0, 33);
  const auto b = range(13, 56);
  ASSERT_EQ(b.size(), 43u);
  EXPECT_EQ(overlap(a, b), (Overlap{20, 13, 23}));
}

TEST(Overlap, EdgeCasesAndSymmetry) {
  EXPECT_EQ(overlap(range(0, 3), range(5, 9)), (Overlap{0, 3, 4}));
  EXPECT_EQ(overlap(range(0, 5), range(0, 5)), (Overlap{5, 0, 0}));
  for (int k = 0; k < 10; ++k) {
    const auto a = range(k, 10 + 2 * k), b = range(2 * k, 12);
    const auto ab = overlap(a, b), ba = overlap(b, a);
    EXPECT_EQ(ab.both, ba.both);
    EXPECT_EQ(ab.only_a, ba.only_b);
    EXPECT_EQ(ab.only_b, ba.only_a);
  }
}

TEST(Recall, Values) {
  const auto gold = range(0, 7);
  EXPECT_DOUBLE_EQ(recall(gold, gold), 1.0);
  EXPECT_DOUBLE_EQ(recall({}, gold), 0.0);
  const double r = recall(range(0, 5), gold);
  EXPECT_NEAR(r, 5.0 / 7.0, 1e-12);
  EXPECT_FALSE(meets_quasi_sensitivity(r));
  EXPECT_TRUE(meets_quasi_sensitivity(0.8));
  EXPECT_ERROR_KIND(recall(gold, {}), ErrorKind::EmptyGold);
  EXPECT_DOUBLE_EQ(precision(range(0, 5), gold, 10), 0.5);
  EXPECT_DOUBLE_EQ(precision(range(0, 5), gold, 0), 0.0);
}

TEST(Recall, G1PartialStrategyAgainstFull) {
  const auto g = testing::g1();
  const auto oracle = testing::all_include(g);
  const auto s1 = run_strategy(g, {"s"}, StrategyId::S1_BS_FS_FULL, oracle, SearchConfig{});
  const auto s2 = run_strategy(g, {"s"}, StrategyId::S2_BS_PAR_FS, oracle, SearchConfig{});
  EXPECT_NEAR(recall(s2.result.included, s1.result.included), 5.0 / 7.0, 1e-12);
  EXPECT_EQ(effort(s1.trace), (Effort{7, 7}));
}

TEST(Recall, FullStrategyDominatesOnRandomGraphs) {
  for (std::uint64_t seed = 300; seed < 330; ++seed) {
    const auto c = testing::random_case(seed, 40);
    const auto s1 = run_strategy(c.graph, c.start, StrategyId::S1_BS_FS_FULL, c.oracle, SearchConfig{});
    const auto& gold = s1.result.included;
    for (StrategyId id : kAllStrategies) {
      const auto r = run_strategy(c.graph, c.start, id, c.oracle, SearchConfig{});
      EXPECT_LE(recall(r.result.included, gold), recall(gold, gold)) << seed;
    }
  }
}

TEST(Effort, EmptyTrace) { EXPECT_EQ(effort(SearchTrace{}), (Effort{0, 0})); }

TEST(Report, CsvShapes) {
  StrategyResult a{StrategyId::S1_BS_FS_FULL, range(0, 4), {"b1"}, {}, {10, 6}};
  StrategyResult b{StrategyId::S2_BS_PAR_FS, range(0, 3), {}, {}, {8, 5}};
  const auto report = build_report({b, a});
  EXPECT_EQ(rows_csv(report),
            "strategy,included,borderline,assessed,fulltext\n"
            "S1_BS_FS_FULL,4,1,10,6\n"
            "S2_BS_PAR_FS,3,0,8,5\n");
  EXPECT_EQ(overlap_csv(report),
            "a,b,both,only_a,only_b,delta_pct\n"
            "S1_BS_FS_FULL,S2_BS_PAR_FS,3,1,0,-25\n");
  EXPECT_NE(report_text(report).find("S2_BS_PAR_FS"), std::string::npos);
}

TEST(Report, EmptyBaselineHasNoDelta) {
  StrategyResult a{StrategyId::S1_BS_FS_FULL, {}, {}, {}, {}};
  StrategyResult b{StrategyId::S2_BS_PAR_FS, range(0, 2), {}, {}, {}};
  const auto report = build_report({a, b});
  ASSERT_EQ(report.pairs.size(), 1u);
  EXPECT_FALSE(report.pairs[0].delta_pct);
}

}  // namespace
}  // namespace snowball
