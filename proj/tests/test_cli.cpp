#include <gtest/gtest.h>
#include <unistd.h>

#include <sstream>

#include "snowball/cli.hpp"
#include "snowball/ingest.hpp"
#include "support.hpp"

namespace snowball {
namespace {

namespace fs = std::filesystem;

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("snowball_cli_" + std::to_string(::getpid()) + "_" +
                                        ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  int run(std::vector<std::string> args) {
    out_.str("");
    err_.str("");
    args.insert(args.begin(), "snowball");
    return cli::run(args, out_, err_);
  }

  std::string data(const char* name) const { return (testing::data_dir() / name).string(); }

  std::vector<std::string> simulate_g1(const fs::path& out) {
    return {"simulate", "--corpus", data("g1_corpus.json"), "--decisions", data("g1_decisions.json"),
            "--config", data("g1_config.json"), "--out", out.string()};
  }

  fs::path dir_;
  std::ostringstream out_, err_;
};

TEST_F(Cli, SimulateG1Rows) {
  ASSERT_EQ(run(simulate_g1(dir_ / "sim")), 0) << err_.str();
  const auto csv = read_text_file(dir_ / "sim" / "strategies.csv");
  EXPECT_NE(csv.find("S1_BS_FS_FULL,7,"), std::string::npos) << csv;
  EXPECT_NE(csv.find("S2_BS_PAR_FS,5,"), std::string::npos);
  EXPECT_NE(csv.find("S3_BS_THEN_FS,6,"), std::string::npos);
  EXPECT_NE(csv.find("S4_FS_THEN_BS,6,"), std::string::npos);
  EXPECT_TRUE(fs::exists(dir_ / "sim" / "overlap.csv"));
  EXPECT_TRUE(fs::exists(dir_ / "sim" / "report.txt"));
  EXPECT_TRUE(fs::exists(dir_ / "sim" / "traces" / "trace_S1_BS_FS_FULL.json"));
}

TEST_F(Cli, SimulateIsByteIdenticalAcrossRuns) {
  ASSERT_EQ(run(simulate_g1(dir_ / "a")), 0);
  ASSERT_EQ(run(simulate_g1(dir_ / "b")), 0);
  std::size_t compared = 0;
  for (const auto& e : fs::recursive_directory_iterator(dir_ / "a")) {
    if (!e.is_regular_file()) continue;
    const auto rel = fs::relative(e.path(), dir_ / "a");
    EXPECT_EQ(read_text_file(e.path()), read_text_file(dir_ / "b" / rel)) << rel;
    ++compared;
  }
  EXPECT_GE(compared, 10u);
}

TEST_F(Cli, UnknownStrategyIsUsageError) {
  const int code = run({"search", "--corpus", data("g1_corpus.json"), "--decisions", data("g1_decisions.json"),
                        "--config", data("g1_config.json"), "--strategy", "BOGUS", "--out", (dir_ / "x").string()});
  EXPECT_EQ(code, 1);
  EXPECT_NE(err_.str().find("S1_BS_FS_FULL"), std::string::npos) << err_.str();
  EXPECT_NE(err_.str().find("ADAPTIVE"), std::string::npos);
}

TEST_F(Cli, MissingArgumentsAreUsageErrors) {
  EXPECT_EQ(run({}), 1);
  EXPECT_EQ(run({"simulate"}), 1);
  EXPECT_EQ(run({"frobnicate"}), 1);
}

TEST_F(Cli, SearchWritesTraceAndResult) {
  ASSERT_EQ(run({"search", "--corpus", data("g1_corpus.json"), "--decisions", data("g1_decisions.json"), "--config",
                 data("g1_config.json"), "--strategy", "S3_BS_THEN_FS", "--out", (dir_ / "s").string()}),
            0)
      << err_.str();
  const auto trace = load_trace(dir_ / "s" / "trace_S3_BS_THEN_FS.json");
  EXPECT_EQ(trace.strategy, StrategyId::S3_BS_THEN_FS);
  const auto result = read_json_file(dir_ / "s" / "result_S3_BS_THEN_FS.json");
  EXPECT_EQ(result.at("included").size(), 6u);
}

TEST_F(Cli, CutoffFlagOverridesConfig) {
  ASSERT_EQ(run({"search", "--corpus", data("g1_corpus.json"), "--decisions", data("g1_decisions.json"), "--config",
                 data("g1_config.json"), "--strategy", "S1_BS_FS_FULL", "--cutoff", "2013", "--out",
                 (dir_ / "s").string()}),
            0);
  EXPECT_EQ(read_json_file(dir_ / "s" / "result_S1_BS_FS_FULL.json").at("included").size(), 5u);
}

TEST_F(Cli, ScreenReportsBorderline) {
  ASSERT_EQ(run({"screen", "--scores", data("sheet_borderline.json"), "--out", (dir_ / "d.json").string()}), 0)
      << err_.str();
  const auto j = read_json_file(dir_ / "d.json");
  EXPECT_EQ(j.at("borderline"), Json::array({"b"}));
  EXPECT_EQ(j.at("included"), Json::array({"a", "c"}));
  EXPECT_EQ(j.at("wildcards"), Json::array({"c"}));
  EXPECT_EQ(j.at("rejected_at_title"), Json::array({"d"}));
  EXPECT_EQ(j.at("excluded"), Json::array({"e"}));
}

TEST_F(Cli, ScreenArityMismatchIsDataError) {
  write_text_file(dir_ / "bad.json", R"({"reviewers": ["r1","r2","r3"], "scores": {"a": {"title": [2, 2]}}})");
  EXPECT_EQ(run({"screen", "--scores", (dir_ / "bad.json").string(), "--out", (dir_ / "d.json").string()}), 2);
}

TEST_F(Cli, IngestReportsStatsAndRejectsBrokenCorpus) {
  EXPECT_EQ(run({"ingest", "--corpus", data("g1_corpus.json")}), 0);
  EXPECT_NE(out_.str().find("articles: 7"), std::string::npos);
  EXPECT_NE(out_.str().find("edges: 6"), std::string::npos);
  write_text_file(dir_ / "broken.json", "{\"articles\": [");
  EXPECT_EQ(run({"ingest", "--corpus", (dir_ / "broken.json").string()}), 2);
  write_text_file(dir_ / "dangling.json",
                  R"({"articles": [{"id": "a", "title": "A", "year": 2000, "pub_type": "journal"}], "edges": [["a", "b"]]})");
  EXPECT_EQ(run({"ingest", "--corpus", (dir_ / "dangling.json").string()}), 3);
}

TEST_F(Cli, ReportComputesRecall) {
  ASSERT_EQ(run(simulate_g1(dir_ / "sim")), 0);
  write_text_file(dir_ / "gold.json", R"(["s", "p1", "p2", "q1", "q2", "r", "w"])");
  ASSERT_EQ(run({"report", "--traces", (dir_ / "sim" / "traces").string(), "--gold", (dir_ / "gold.json").string(),
                 "--out", (dir_ / "rep").string()}),
            0)
      << err_.str();
  const auto csv = read_text_file(dir_ / "rep" / "recall.csv");
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "strategy,included,recall,precision,quasi_sensitive");
  EXPECT_NE(csv.find("S1_BS_FS_FULL,7,1.0000"), std::string::npos) << csv;
  EXPECT_NE(csv.find("S2_BS_PAR_FS,5,0.7143"), std::string::npos) << csv;
}

TEST_F(Cli, GenerateThenSimulate) {
  write_text_file(dir_ / "params.json", R"({"n_articles": 120, "relevant_fraction": 0.2, "seed": 3})");
  ASSERT_EQ(run({"generate", "--params", (dir_ / "params.json").string(), "--out", (dir_ / "gen").string()}), 0)
      << err_.str();
  ASSERT_EQ(run({"simulate", "--corpus", (dir_ / "gen" / "corpus.json").string(), "--decisions",
                 (dir_ / "gen" / "decisions.json").string(), "--config", (dir_ / "gen" / "config.json").string(),
                 "--out", (dir_ / "sim").string()}),
            0)
      << err_.str();
  EXPECT_TRUE(fs::exists(dir_ / "sim" / "strategies.csv"));
}

TEST_F(Cli, CacheDirFollowsEnvironment) {
  ::setenv("SNOWBALL_CACHE_DIR", (dir_ / "cache").c_str(), 1);
  EXPECT_EQ(cli::cache_dir(), dir_ / "cache");
  ::unsetenv("SNOWBALL_CACHE_DIR");
  EXPECT_EQ(cli::cache_dir(), fs::path(".snowball-cache"));
}

}  // namespace
}  // namespace snowball
