#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace snowball {

enum class PubType {
  Journal,
  Conference,
  Workshop,
  BookChapter,
  Book,
  Keynote,
  Column,
  Thesis,
  Other,
};

std::string_view to_string(PubType type);
std::optional<PubType> parse_pub_type(std::string_view text);

inline constexpr int kMinYear = 1900;
inline constexpr int kMaxYear = 2100;

struct Article {
  std::string id;
  std::string title;
  std::optional<std::string> abstract;
  std::vector<std::string> keywords;
  std::optional<int> year;
  PubType pub_type = PubType::Journal;
  std::optional<std::string> venue;
  std::optional<std::string> supersedes;

  friend bool operator==(const Article&, const Article&) = default;
};

using ArticleId = std::string;
using Edge = std::pair<ArticleId, ArticleId>;  // (citing, cited)

// Read-only neighbourhood lookup. The engine only needs this much, which lets
// a remote citation provider stand in for a fully loaded graph.
class CitationSource {
 public:
  virtual ~CitationSource() = default;

  // nullptr when the id is unknown.
  virtual const Article* find(std::string_view id) const = 0;
  // Out-neighbours (articles cited by id), ascending id. Throws UnknownArticle.
  virtual std::vector<ArticleId> references(const ArticleId& id) const = 0;
  // In-neighbours (articles citing id), ascending id. Throws UnknownArticle.
  virtual std::vector<ArticleId> citations(const ArticleId& id) const = 0;
};

// Immutable directed citation graph. An edge (a, b) means "a cites b".
class CitationGraph final : public CitationSource {
 public:
  CitationGraph() = default;

  const Article* find(std::string_view id) const override;
  std::vector<ArticleId> references(const ArticleId& id) const override;
  std::vector<ArticleId> citations(const ArticleId& id) const override;

  // Zero-copy variants of the above.
  const std::vector<ArticleId>& out_edges(const ArticleId& id) const;
  const std::vector<ArticleId>& in_edges(const ArticleId& id) const;

  const Article& article(const ArticleId& id) const;
  bool contains(std::string_view id) const { return find(id) != nullptr; }

  std::size_t article_count() const { return nodes_.size(); }
  std::size_t edge_count() const { return edge_count_; }
  bool empty() const { return nodes_.empty(); }

  // Articles in ascending id order.
  std::vector<const Article*> articles() const;
  // Edges sorted by (citing, cited).
  std::vector<Edge> edges() const;

  std::optional<int> min_year() const;

  friend bool operator==(const CitationGraph& a, const CitationGraph& b);

 private:
  struct Node {
    Article article;
    std::vector<ArticleId> refs;
    std::vector<ArticleId> cited_by;
  };

  const Node& node(const ArticleId& id) const;

  std::map<ArticleId, Node, std::less<>> nodes_;
  std::size_t edge_count_ = 0;

  friend CitationGraph build_graph(std::vector<Article>, const std::vector<Edge>&);
};

// Validates articles and edges, collapses duplicate edges.
// Throws InvalidArticle, DuplicateArticleId, UnknownEdgeEndpoint, SelfCitation.
CitationGraph build_graph(std::vector<Article> articles, const std::vector<Edge>& edges);

// Case-folded, punctuation-stripped, whitespace-collapsed title key.
std::string normalize_title(std::string_view text);

// Removes every article superseded by a present article (e.g. a conference
// paper with a later journal version) and redirects its edges to the
// final superseding article.
CitationGraph dedupe_versions(const CitationGraph& graph);

// Groups of article ids whose normalised titles collide (ingestion warning aid).
std::vector<std::vector<ArticleId>> duplicate_titles(const CitationGraph& graph);

}  // namespace snowball
