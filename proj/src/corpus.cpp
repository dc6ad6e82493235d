#include "snowball/corpus.hpp"

#include <algorithm>
#include <set>

#include "snowball/error.hpp"

namespace snowball {

namespace {

constexpr std::pair<PubType, std::string_view> kPubTypeNames[] = {
    {PubType::Journal, "journal"},   {PubType::Conference, "conference"},
    {PubType::Workshop, "workshop"}, {PubType::BookChapter, "book_chapter"},
    {PubType::Book, "book"},         {PubType::Keynote, "keynote"},
    {PubType::Column, "column"},     {PubType::Thesis, "thesis"},
    {PubType::Other, "other"},
};

void validate_article(const Article& a) {
  if (a.id.empty()) throw Error(ErrorKind::InvalidArticle, "article with empty id");
  if (a.year && (*a.year < kMinYear || *a.year > kMaxYear)) {
    throw Error(ErrorKind::InvalidArticle,
                "year " + std::to_string(*a.year) + " out of range for '" + a.id + "'");
  }
  if (a.supersedes && *a.supersedes == a.id) {
    throw Error(ErrorKind::InvalidArticle, "'" + a.id + "' supersedes itself");
  }
}

// Decodes one UTF-8 code point starting at text[i]; advances i. Malformed
// bytes are returned as-is so the key stays deterministic.
char32_t next_code_point(std::string_view text, std::size_t& i) {
  const auto lead = static_cast<unsigned char>(text[i]);
  int extra = 0;
  char32_t cp = lead;
  if (lead >= 0xF0 && lead < 0xF8) {
    extra = 3;
    cp = lead & 0x07;
  } else if (lead >= 0xE0) {
    extra = 2;
    cp = lead & 0x0F;
  } else if (lead >= 0xC0) {
    extra = 1;
    cp = lead & 0x1F;
  }
  if (lead >= 0x80 && extra == 0) {
    ++i;
    return lead;
  }
  if (i + extra >= text.size()) {
    ++i;
    return lead;
  }
  for (int k = 1; k <= extra; ++k) {
    const auto cont = static_cast<unsigned char>(text[i + k]);
    if ((cont & 0xC0) != 0x80) {
      ++i;
      return lead;
    }
    cp = (cp << 6) | (cont & 0x3F);
  }
  i += 1 + extra;
  return cp;
}

bool is_separator(char32_t cp) {
  if (cp < 0x80) {
    const auto c = static_cast<unsigned char>(cp);
    return !((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9'));
  }
  // Latin-1 punctuation/symbols, general punctuation (dashes, quotes),
  // CJK punctuation and the BOM.
  return (cp >= 0x00A0 && cp <= 0x00BF) || cp == 0x00D7 || cp == 0x00F7 ||
         (cp >= 0x2000 && cp <= 0x206F) || (cp >= 0x3000 && cp <= 0x303F) || cp == 0xFEFF;
}

}  // namespace

std::string_view to_string(PubType type) {
  for (const auto& [t, name] : kPubTypeNames) {
    if (t == type) return name;
  }
  return "other";
}

std::optional<PubType> parse_pub_type(std::string_view text) {
  for (const auto& [t, name] : kPubTypeNames) {
    if (name == text) return t;
  }
  return std::nullopt;
}

const CitationGraph::Node& CitationGraph::node(const ArticleId& id) const {
  auto it = nodes_.find(id);
  if (it == nodes_.end()) throw Error(ErrorKind::UnknownArticle, "'" + id + "'");
  return it->second;
}

const Article* CitationGraph::find(std::string_view id) const {
  auto it = nodes_.find(id);
  return it == nodes_.end() ? nullptr : &it->second.article;
}

const Article& CitationGraph::article(const ArticleId& id) const { return node(id).article; }

std::vector<ArticleId> CitationGraph::references(const ArticleId& id) const { return node(id).refs; }

std::vector<ArticleId> CitationGraph::citations(const ArticleId& id) const { return node(id).cited_by; }

const std::vector<ArticleId>& CitationGraph::out_edges(const ArticleId& id) const { return node(id).refs; }

const std::vector<ArticleId>& CitationGraph::in_edges(const ArticleId& id) const { return node(id).cited_by; }

std::vector<const Article*> CitationGraph::articles() const {
  std::vector<const Article*> out;
  out.reserve(nodes_.size());
  for (const auto& [id, n] : nodes_) out.push_back(&n.article);
  return out;
}

std::vector<Edge> CitationGraph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count_);
  for (const auto& [id, n] : nodes_) {
    for (const auto& cited : n.refs) out.emplace_back(id, cited);
  }
  return out;
}

std::optional<int> CitationGraph::min_year() const {
  std::optional<int> best;
  for (const auto& [id, n] : nodes_) {
    if (n.article.year && (!best || *n.article.year < *best)) best = n.article.year;
  }
  return best;
}

bool operator==(const CitationGraph& a, const CitationGraph& b) {
  if (a.nodes_.size() != b.nodes_.size() || a.edge_count_ != b.edge_count_) return false;
  for (auto ia = a.nodes_.begin(), ib = b.nodes_.begin(); ia != a.nodes_.end(); ++ia, ++ib) {
    if (ia->first != ib->first || !(ia->second.article == ib->second.article) ||
        ia->second.refs != ib->second.refs) {
      return false;
    }
  }
  return true;
}

CitationGraph build_graph(std::vector<Article> articles, const std::vector<Edge>& edges) {
  CitationGraph g;
  for (auto& a : articles) {
    validate_article(a);
    const ArticleId id = a.id;
    auto [it, inserted] = g.nodes_.try_emplace(id, CitationGraph::Node{std::move(a), {}, {}});
    if (!inserted) throw Error(ErrorKind::DuplicateArticleId, "'" + id + "'");
  }

  std::set<Edge> unique;
  for (const auto& [citing, cited] : edges) {
    if (!g.nodes_.contains(citing)) {
      throw Error(ErrorKind::UnknownEdgeEndpoint, "'" + citing + "' (edge " + citing + " -> " + cited + ")");
    }
    if (!g.nodes_.contains(cited)) {
      throw Error(ErrorKind::UnknownEdgeEndpoint, "'" + cited + "' (edge " + citing + " -> " + cited + ")");
    }
    if (citing == cited) throw Error(ErrorKind::SelfCitation, "'" + citing + "'");
    unique.emplace(citing, cited);
  }
  // std::set iteration is sorted by (citing, cited), so both adjacency lists
  // come out in ascending order.
  for (const auto& [citing, cited] : unique) {
    g.nodes_.find(citing)->second.refs.push_back(cited);
    g.nodes_.find(cited)->second.cited_by.push_back(citing);
  }
  for (auto& [id, n] : g.nodes_) std::sort(n.cited_by.begin(), n.cited_by.end());
  g.edge_count_ = unique.size();
  return g;
}

std::string normalize_title(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  bool pending_space = false;
  std::size_t i = 0;
  while (i < text.size()) {
    const std::size_t start = i;
    const char32_t cp = next_code_point(text, i);
    if (is_separator(cp)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) {
      out.push_back(' ');
      pending_space = false;
    }
    if (cp < 0x80) {
      const char c = static_cast<char>(cp);
      out.push_back((c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c);
    } else {
      out.append(text.substr(start, i - start));
    }
  }
  return out;
}

CitationGraph dedupe_versions(const CitationGraph& graph) {
  // Map every superseded article to the end of its supersedes chain.
  std::map<ArticleId, ArticleId> successor;  // superseded -> superseding
  for (const Article* a : graph.articles()) {
    if (!a->supersedes) continue;
    const ArticleId& target = *a->supersedes;
    if (!graph.contains(target)) {
      throw Error(ErrorKind::SupersedesUnknownTarget, "'" + a->id + "' supersedes unknown '" + target + "'");
    }
    if (auto [it, ok] = successor.emplace(target, a->id); !ok) {
      // Two versions claiming the same predecessor; keep the smaller id.
      it->second = std::min(it->second, a->id);
    }
  }
  if (successor.empty()) return graph;

  auto resolve = [&](const ArticleId& id) {
    ArticleId cur = id;
    std::set<ArticleId> visited{cur};
    for (auto it = successor.find(cur); it != successor.end(); it = successor.find(cur)) {
      cur = it->second;
      if (!visited.insert(cur).second) {
        throw Error(ErrorKind::SupersedesCycle, "cycle through '" + id + "'");
      }
    }
    return cur;
  };

  std::vector<Article> kept;
  for (const Article* a : graph.articles()) {
    if (resolve(a->id) != a->id) continue;
    Article copy = *a;
    if (copy.supersedes && successor.contains(*copy.supersedes)) copy.supersedes.reset();
    kept.push_back(std::move(copy));
  }
  std::vector<Edge> edges;
  for (const auto& [citing, cited] : graph.edges()) {
    ArticleId from = resolve(citing);
    ArticleId to = resolve(cited);
    if (from != to) edges.emplace_back(std::move(from), std::move(to));
  }
  return build_graph(std::move(kept), edges);
}

std::vector<std::vector<ArticleId>> duplicate_titles(const CitationGraph& graph) {
  std::map<std::string, std::vector<ArticleId>> by_key;
  for (const Article* a : graph.articles()) {
    if (a->title.empty()) continue;
    by_key[normalize_title(a->title)].push_back(a->id);
  }
  std::vector<std::vector<ArticleId>> out;
  for (auto& [key, ids] : by_key) {
    if (ids.size() > 1) out.push_back(std::move(ids));
  }
  return out;
}

}  // namespace snowball
