#include <gtest/gtest.h>

#include "snowball/corpus.hpp"
#include "support.hpp"

namespace snowball {
namespace {

using testing::g1;
using testing::make_article;

TEST(CitationGraph, EmptyInputGivesEmptyGraph) {
  const CitationGraph g = build_graph({}, {});
  EXPECT_TRUE(g.empty());
  EXPECT_EQ(g.edge_count(), 0u);
  EXPECT_FALSE(g.min_year().has_value());
}

TEST(CitationGraph, G1Neighbourhoods) {
  const CitationGraph g = g1();
  EXPECT_EQ(g.article_count(), 7u);
  EXPECT_EQ(g.edge_count(), 6u);
  EXPECT_EQ(g.references("s"), (std::vector<ArticleId>{"p1"}));
  EXPECT_EQ(g.references("q2"), (std::vector<ArticleId>{"q1", "r"}));
  EXPECT_TRUE(g.references("r").empty());
  EXPECT_EQ(g.citations("p2"), (std::vector<ArticleId>{"p1", "w"}));
  EXPECT_TRUE(g.citations("q2").empty());
  EXPECT_EQ(g.citations("s"), (std::vector<ArticleId>{"q1"}));
  EXPECT_EQ(g.min_year(), 2007);
}

TEST(CitationGraph, DuplicateEdgesCollapse) {
  const CitationGraph g = build_graph({make_article("s", 2012), make_article("p1", 2010)}, {{"s", "p1"}, {"s", "p1"}});
  EXPECT_EQ(g.edge_count(), 1u);
  EXPECT_EQ(g.edges(), (std::vector<Edge>{{"s", "p1"}}));
}

TEST(CitationGraph, CyclesAreAllowed) {
  const CitationGraph g = build_graph({make_article("a", 2012), make_article("b", 2012)}, {{"a", "b"}, {"b", "a"}});
  EXPECT_EQ(g.references("a"), (std::vector<ArticleId>{"b"}));
  EXPECT_EQ(g.citations("a"), (std::vector<ArticleId>{"b"}));
}

TEST(CitationGraph, RejectsBadInput) {
  EXPECT_ERROR_KIND(build_graph({make_article("a", 2000), make_article("a", 2001)}, {}), ErrorKind::DuplicateArticleId);
  EXPECT_ERROR_KIND(build_graph({make_article("a", 2000)}, {{"a", "zz"}}), ErrorKind::UnknownEdgeEndpoint);
  EXPECT_ERROR_KIND(build_graph({make_article("a", 2000)}, {{"a", "a"}}), ErrorKind::SelfCitation);
  EXPECT_ERROR_KIND(build_graph({make_article("", 2000)}, {}), ErrorKind::InvalidArticle);
  EXPECT_ERROR_KIND(build_graph({make_article("a", 1800)}, {}), ErrorKind::InvalidArticle);
}

TEST(CitationGraph, UnknownIdLookupThrows) {
  const CitationGraph g = g1();
  EXPECT_EQ(g.find("nope"), nullptr);
  EXPECT_ERROR_KIND(g.references("nope"), ErrorKind::UnknownArticle);
  EXPECT_ERROR_KIND(g.citations("nope"), ErrorKind::UnknownArticle);
}

TEST(CitationGraph, ReferencesAndCitationsAreReciprocal) {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    const auto c = testing::random_case(seed);
    for (const Article* a : c.graph.articles()) {
      for (const auto& b : c.graph.references(a->id)) {
        const auto cites = c.graph.citations(b);
        EXPECT_TRUE(std::binary_search(cites.begin(), cites.end(), a->id)) << seed;
      }
      for (const auto& b : c.graph.citations(a->id)) {
        const auto refs = c.graph.references(b);
        EXPECT_TRUE(std::binary_search(refs.begin(), refs.end(), a->id)) << seed;
      }
    }
  }
}

TEST(NormalizeTitle, Examples) {
  EXPECT_EQ(normalize_title("  The Title! "), "the title");
  EXPECT_EQ(normalize_title("Hybrid Search"), normalize_title("hybrid   SEARCH"));
  EXPECT_EQ(normalize_title("A—B"), "a b");
  EXPECT_EQ(normalize_title("snowballing: a guide (2nd ed.)"), "snowballing a guide 2nd ed");
  EXPECT_EQ(normalize_title(""), "");
}

TEST(NormalizeTitle, IsIdempotent) {
  for (const char* t : {"  Mixed CASE -- title ", "“Quoted” – dash", "tabs\tand\nnewlines"}) {
    const auto once = normalize_title(t);
    EXPECT_EQ(normalize_title(once), once);
  }
}

TEST(DedupeVersions, RedirectsEdgesToSupersedingArticle) {
  Article conf = make_article("C", 2010, PubType::Conference);
  Article journal = make_article("J", 2012);
  journal.supersedes = "C";
  const CitationGraph g = build_graph({conf, journal, make_article("x", 2013)}, {{"x", "C"}});
  const CitationGraph d = dedupe_versions(g);
  EXPECT_FALSE(d.contains("C"));
  EXPECT_EQ(d.references("x"), (std::vector<ArticleId>{"J"}));
  EXPECT_EQ(d.article_count(), 2u);
}

TEST(DedupeVersions, IdentityWithoutSupersedes) {
  const CitationGraph g = g1();
  EXPECT_EQ(dedupe_versions(g), g);
}

TEST(DedupeVersions, ChainsResolveToFinalVersion) {
  Article a = make_article("a", 2008, PubType::Workshop);
  Article b = make_article("b", 2010, PubType::Conference);
  Article c = make_article("c", 2012);
  b.supersedes = "a";
  c.supersedes = "b";
  const CitationGraph d =
      dedupe_versions(build_graph({a, b, c, make_article("x", 2013), make_article("y", 2005)}, {{"x", "a"}, {"b", "y"}}));
  EXPECT_EQ(d.article_count(), 3u);
  EXPECT_EQ(d.references("x"), (std::vector<ArticleId>{"c"}));
  EXPECT_EQ(d.references("c"), (std::vector<ArticleId>{"y"}));
}

TEST(DedupeVersions, DropsEdgesThatWouldBecomeSelfCitations) {
  Article c = make_article("C", 2010, PubType::Conference);
  Article j = make_article("J", 2012);
  j.supersedes = "C";
  const CitationGraph d = dedupe_versions(build_graph({c, j}, {{"J", "C"}}));
  EXPECT_EQ(d.edge_count(), 0u);
}

TEST(DedupeVersions, CycleIsRejected) {
  Article c = make_article("C", 2010, PubType::Conference);
  Article j = make_article("J", 2012);
  j.supersedes = "C";
  c.supersedes = "J";
  EXPECT_ERROR_KIND(dedupe_versions(build_graph({c, j}, {})), ErrorKind::SupersedesCycle);
}

TEST(DedupeVersions, IsIdempotent) {
  Article a = make_article("a", 2008, PubType::Conference);
  Article b = make_article("b", 2010);
  b.supersedes = "a";
  Article twin = make_article("t", 2011);
  twin.supersedes = "a";
  const CitationGraph g = build_graph({a, b, twin, make_article("x", 2013)}, {{"x", "a"}, {"x", "t"}});
  const CitationGraph once = dedupe_versions(g);
  EXPECT_EQ(dedupe_versions(once), once);
}

TEST(DedupeVersions, UnknownTargetIsRejected) {
  Article orphan = make_article("o", 2011);
  orphan.supersedes = "missing";
  EXPECT_ERROR_KIND(dedupe_versions(build_graph({orphan}, {})), ErrorKind::SupersedesUnknownTarget);
}

TEST(DuplicateTitles, GroupsCollidingKeys) {
  const CitationGraph g = build_graph({make_article("a", 2010, PubType::Journal, "Hybrid Search"),
                                       make_article("b", 2011, PubType::Journal, "hybrid   SEARCH!"),
                                       make_article("c", 2011, PubType::Journal, "Something else")},
                                      {});
  EXPECT_EQ(duplicate_titles(g), (std::vector<std::vector<ArticleId>>{{"a", "b"}}));
}

}  // namespace
}  // namespace snowball
