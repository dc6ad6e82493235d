#pragma once

#include <cstdint>
#include <algorithm>
#include <filesystem>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "snowball/corpus.hpp"
#include "snowball/screening.hpp"
#include "snowball/strategy.hpp"

namespace snowball::testing {

inline std::filesystem::path data_dir() { return SNOWBALL_TEST_DATA; }

inline Article make_article(std::string id, int year, PubType type = PubType::Journal, std::string title = {}) {
  Article a;
  a.id = std::move(id);
  a.title = title.empty() ? "Article " + a.id : std::move(title);
  a.year = year;
  a.pub_type = type;
  return a;
}

// s(2012) cites p1(2010) cites p2(2008); q1(2013) cites s; q2(2014) cites q1
// and r(2007); w(2013) cites p2.
inline CitationGraph g1() {
  return build_graph({make_article("s", 2012), make_article("p1", 2010), make_article("p2", 2008),
                      make_article("q1", 2013), make_article("q2", 2014), make_article("r", 2007),
                      make_article("w", 2013)},
                     {{"s", "p1"}, {"p1", "p2"}, {"q1", "s"}, {"q2", "q1"}, {"q2", "r"}, {"w", "p2"}});
}

inline VerdictOracle all_include(const CitationGraph& g) {
  VerdictOracle v;
  for (const Article* a : g.articles()) v.emplace(a->id, Verdict::Include);
  return v;
}

// Naive S1 oracle: rescan the whole edge list until the included set stops
// growing. An admissible, includable endpoint of an edge touching an included
// article joins the set.
inline std::set<ArticleId> naive_full_closure(const CitationGraph& g, const std::set<ArticleId>& start,
                                              const VerdictOracle& oracle, const SearchConfig& config) {
  auto includable = [&](const ArticleId& id) {
    auto it = oracle.find(id);
    return it != oracle.end() && it->second == Verdict::Include && config.admits(g.article(id));
  };
  std::set<ArticleId> inc = start;
  for (bool grew = true; grew;) {
    grew = false;
    for (const auto& [citing, cited] : g.edges()) {
      if (inc.contains(citing) && !inc.contains(cited) && includable(cited)) grew |= inc.insert(cited).second;
      if (inc.contains(cited) && !inc.contains(citing) && includable(citing)) grew |= inc.insert(citing).second;
    }
  }
  return inc;
}

// Random graph that may contain cycles (the generator only makes DAGs).
struct RandomCase {
  CitationGraph graph;
  VerdictOracle oracle;
  std::vector<ArticleId> start;
};

inline RandomCase random_case(std::uint64_t seed, int max_nodes = 50) {
  std::mt19937_64 rng(seed);
  auto below = [&](int n) { return static_cast<int>(rng() % static_cast<std::uint64_t>(n)); };
  const int n = 2 + below(max_nodes - 1);
  RandomCase c;
  std::vector<Article> arts;
  for (int i = 0; i < n; ++i) {
    const PubType type = below(10) == 0 ? PubType::Book : PubType::Journal;
    arts.push_back(make_article("n" + std::to_string(i), 2000 + below(17), type));
    const int roll = below(10);
    c.oracle.emplace(arts.back().id, roll < 6 ? Verdict::Include : roll < 7 ? Verdict::Borderline : Verdict::Exclude);
  }
  std::vector<Edge> edges;
  const int m = below(3 * n + 1);
  for (int k = 0; k < m; ++k) {
    const int a = below(n), b = below(n);
    if (a != b) edges.emplace_back(arts[a].id, arts[b].id);
  }
  for (int i = 0; i < n && c.start.size() < 3; ++i) {
    const auto& a = arts[static_cast<std::size_t>(below(n))];
    if (c.oracle[a.id] == Verdict::Include && a.year <= 2014 &&
        std::find(c.start.begin(), c.start.end(), a.id) == c.start.end()) {
      c.start.push_back(a.id);
    }
  }
  if (c.start.empty()) {
    c.oracle[arts[0].id] = Verdict::Include;
    c.start.push_back(arts[0].id);
  }
  c.graph = build_graph(std::move(arts), edges);
  return c;
}

inline bool subset(const std::set<ArticleId>& a, const std::set<ArticleId>& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

}  // namespace snowball::testing

#include "snowball/error.hpp"

// Runs stmt and checks it throws snowball::Error of the given kind.
#define EXPECT_ERROR_KIND(stmt, expected_kind)                                       \
  do {                                                                               \
    try {                                                                            \
      stmt;                                                                          \
      ADD_FAILURE() << "expected " #expected_kind " from: " #stmt;                   \
    } catch (const ::snowball::Error& e) {                                           \
      EXPECT_EQ(e.kind(), expected_kind) << e.what();                                \
    }                                                                                \
  } while (0)
