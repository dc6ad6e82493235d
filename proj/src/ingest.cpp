#include "snowball/ingest.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "snowball/error.hpp"

namespace snowball {

namespace fs = std::filesystem;

namespace {

std::pair<std::size_t, std::size_t> line_col(std::string_view text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

[[noreturn]] void parse_fail(const std::string& origin, const std::string& what) {
  throw Error(ErrorKind::ParseError, origin + ": " + what);
}

void check_keys(const Json& j, std::initializer_list<std::string_view> allowed, bool strict,
                std::vector<std::string>* warnings, const std::string& where) {
  for (const auto& [key, value] : j.items()) {
    bool known = false;
    for (auto a : allowed) known = known || a == key;
    if (known) continue;
    if (strict) throw Error(ErrorKind::ParseError, where + ": unknown field '" + key + "'");
    if (warnings) warnings->push_back(where + ": ignoring unknown field '" + key + "'");
  }
}

void check_schema(const Json& j, bool required, const std::string& origin) {
  if (!j.contains("schema_version")) {
    if (required) throw Error(ErrorKind::SchemaVersionMismatch, origin + ": missing schema_version");
    return;
  }
  const auto& v = j.at("schema_version");
  if (!v.is_number_integer() || v.get<int>() != kSchemaVersion) {
    throw Error(ErrorKind::SchemaVersionMismatch,
                origin + ": schema_version " + v.dump() + ", expected " + std::to_string(kSchemaVersion));
  }
}

template <typename F>
auto guarded(const std::string& origin, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Json::exception& e) {
    parse_fail(origin, e.what());
  }
}

std::set<PubType> pub_types_from_json(const Json& j) {
  std::set<PubType> out;
  for (const auto& t : j) {
    auto p = parse_pub_type(t.get<std::string>());
    if (!p) throw Error(ErrorKind::ParseError, "unknown publication type '" + t.get<std::string>() + "'");
    out.insert(*p);
  }
  return out;
}

Json pub_types_to_json(const std::set<PubType>& types) {
  Json out = Json::array();
  for (auto t : types) out.push_back(std::string(to_string(t)));
  return out;
}

Json scores_to_json(const StageScores& s) {
  Json out = Json::array();
  for (auto v : s.scores) out.push_back(v.value());
  return out;
}

StageScores scores_from_json(const Json& j, Stage stage) {
  StageScores s{stage, {}};
  for (const auto& v : j) s.scores.emplace_back(v.get<int>());
  return s;
}

}  // namespace

std::string dump_stable(const Json& j) { return j.dump(2) + "\n"; }

Json parse_json(std::string_view text, const std::string& origin) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    const auto [line, col] = line_col(text, e.byte);
    parse_fail(origin + ":" + std::to_string(line) + ":" + std::to_string(col), e.what());
  }
}

std::string read_text_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const fs::path& path, std::string_view text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::Io, "cannot write " + path.string());
  out << text;
  if (!out) throw Error(ErrorKind::Io, "write failed for " + path.string());
}

Json read_json_file(const fs::path& path) { return parse_json(read_text_file(path), path.string()); }

// --- corpus ---------------------------------------------------------------

Json article_to_json(const Article& a) {
  Json j{{"id", a.id}, {"title", a.title}, {"keywords", a.keywords}, {"pub_type", std::string(to_string(a.pub_type))}};
  if (a.abstract) j["abstract"] = *a.abstract;
  if (a.year) j["year"] = *a.year;
  if (a.venue) j["venue"] = *a.venue;
  if (a.supersedes) j["supersedes"] = *a.supersedes;
  return j;
}

Article article_from_json(const Json& j, bool strict, std::vector<std::string>* warnings) {
  if (!j.is_object()) throw Error(ErrorKind::ParseError, "article entry is not an object");
  Article a;
  a.id = j.at("id").get<std::string>();
  check_keys(j, {"id", "title", "abstract", "keywords", "year", "pub_type", "venue", "supersedes"}, strict,
             warnings, "article '" + a.id + "'");
  a.title = j.value("title", "");
  if (j.contains("abstract") && !j["abstract"].is_null()) a.abstract = j["abstract"].get<std::string>();
  if (j.contains("keywords")) a.keywords = j["keywords"].get<std::vector<std::string>>();
  if (j.contains("year") && !j["year"].is_null()) a.year = j["year"].get<int>();
  if (j.contains("pub_type")) {
    const auto text = j["pub_type"].get<std::string>();
    auto t = parse_pub_type(text);
    if (!t) throw Error(ErrorKind::ParseError, "article '" + a.id + "': unknown pub_type '" + text + "'");
    a.pub_type = *t;
  }
  if (j.contains("venue") && !j["venue"].is_null()) a.venue = j["venue"].get<std::string>();
  if (j.contains("supersedes") && !j["supersedes"].is_null()) a.supersedes = j["supersedes"].get<std::string>();
  return a;
}

Json corpus_to_json(const CitationGraph& graph) {
  Json articles = Json::array();
  for (const Article* a : graph.articles()) articles.push_back(article_to_json(*a));
  Json edges = Json::array();
  for (const auto& [citing, cited] : graph.edges()) edges.push_back(Json::array({citing, cited}));
  return Json{{"schema_version", kSchemaVersion}, {"articles", articles}, {"edges", edges}};
}

CitationGraph corpus_from_json(const Json& j, bool strict, std::vector<std::string>* warnings,
                               const std::vector<Edge>* extra_edges) {
  const std::string origin = "corpus";
  std::vector<Article> articles;
  std::vector<Edge> edges;
  guarded(origin, [&] {
    if (!j.is_object()) parse_fail(origin, "top level must be an object");
    check_schema(j, false, origin);
    check_keys(j, {"schema_version", "articles", "edges"}, strict, warnings, origin);
    for (const auto& a : j.at("articles")) articles.push_back(article_from_json(a, strict, warnings));
    if (j.contains("edges")) {
      for (const auto& e : j["edges"]) {
        if (!e.is_array() || e.size() != 2) parse_fail(origin, "edge must be a [citing, cited] pair: " + e.dump());
        edges.emplace_back(e[0].get<std::string>(), e[1].get<std::string>());
      }
    }
    return 0;
  });
  if (extra_edges) edges.insert(edges.end(), extra_edges->begin(), extra_edges->end());
  try {
    return build_graph(std::move(articles), edges);
  } catch (const Error& e) {
    throw Error(ErrorKind::InvariantViolation, e.what());
  }
}

std::vector<Edge> parse_edges_csv(std::string_view text, const std::string& origin) {
  std::vector<Edge> out;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  bool header = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (!header) {
      if (line != "citing,cited") parse_fail(origin + ":" + std::to_string(lineno), "expected header 'citing,cited'");
      header = true;
      continue;
    }
    const auto comma = line.find(',');
    if (comma == std::string::npos || line.find(',', comma + 1) != std::string::npos || comma == 0 ||
        comma + 1 == line.size()) {
      parse_fail(origin + ":" + std::to_string(lineno), "expected two fields");
    }
    out.emplace_back(line.substr(0, comma), line.substr(comma + 1));
  }
  if (!header) parse_fail(origin, "missing header 'citing,cited'");
  return out;
}

LoadedCorpus load_corpus(const fs::path& path, const CorpusLoadOptions& options) {
  LoadedCorpus out;
  const Json j = read_json_file(path);
  std::vector<Edge> csv;
  if (!options.edges_csv.empty()) {
    csv = parse_edges_csv(read_text_file(options.edges_csv), options.edges_csv.string());
  }
  out.graph = corpus_from_json(j, options.strict, &out.warnings, options.edges_csv.empty() ? nullptr : &csv);
  for (const auto& group : duplicate_titles(out.graph)) {
    std::string ids;
    for (const auto& id : group) ids += (ids.empty() ? "" : ", ") + id;
    out.warnings.push_back("possible duplicate titles: " + ids);
  }
  for (const Article* a : out.graph.articles()) {
    if (!a->year) out.warnings.push_back("article '" + a->id + "' has no year; it fails every year filter");
  }
  return out;
}

void save_corpus(const CitationGraph& graph, const fs::path& path) {
  write_text_file(path, dump_stable(corpus_to_json(graph)));
}

// --- decisions ------------------------------------------------------------

Json decisions_to_json(const Decider& decider, const ReviewerPanel& panel) {
  Json j{{"schema_version", kSchemaVersion}};
  if (const auto* v = decider.verdicts()) {
    Json verdicts = Json::object();
    for (const auto& [id, verdict] : *v) verdicts[id] = std::string(to_string(verdict));
    j["verdicts"] = verdicts;
    return j;
  }
  Json scores = Json::object();
  for (const auto& [id, e] : *decider.scores()) {
    Json entry{{"title", scores_to_json(e.title)}};
    if (e.full_text) entry["fulltext"] = scores_to_json(*e.full_text);
    if (e.wildcard_by) entry["wildcard_by"] = *e.wildcard_by;
    scores[id] = entry;
  }
  j["reviewers"] = panel.ids();
  j["scores"] = scores;
  return j;
}

ScoreSheet score_sheet_from_json(const Json& j) {
  const std::string origin = "decisions";
  return guarded(origin, [&] {
    ScoreSheet sheet;
    check_schema(j, false, origin);
    if (j.contains("reviewers")) sheet.panel = ReviewerPanel(j["reviewers"].get<std::vector<std::string>>());
    const std::size_t n = sheet.panel.size();
    auto arity = [&](const std::string& id, const Json& list, const char* stage) {
      if (!list.is_array() || list.size() != n) {
        throw Error(ErrorKind::ScoreArityMismatch, "'" + id + "' " + stage + " has " +
                                                       std::to_string(list.is_array() ? list.size() : 0) +
                                                       " scores for " + std::to_string(n) + " reviewers");
      }
    };
    for (const auto& [id, entry] : j.at("scores").items()) {
      arity(id, entry.at("title"), "title");
      ScoreEntry e{scores_from_json(entry["title"], Stage::TitleAbstractKeywords), std::nullopt, std::nullopt};
      if (entry.contains("fulltext") && !entry["fulltext"].is_null()) {
        arity(id, entry["fulltext"], "fulltext");
        e.full_text = scores_from_json(entry["fulltext"], Stage::FullText);
      }
      if (entry.contains("wildcard_by") && !entry["wildcard_by"].is_null()) {
        e.wildcard_by = entry["wildcard_by"].get<std::string>();
        if (!sheet.panel.contains(*e.wildcard_by)) {
          throw Error(ErrorKind::UnknownReviewer, "'" + id + "' wild card by '" + *e.wildcard_by + "'");
        }
      }
      sheet.scores.emplace(id, std::move(e));
    }
    if (j.contains("wildcard_rounds")) {
      for (const auto& round : j["wildcard_rounds"]) {
        sheet.wildcard_rounds.push_back(round.get<NominationRound>());
      }
    }
    return sheet;
  });
}

Decider decisions_from_json(const Json& j, const ReviewerPanel& panel) {
  const std::string origin = "decisions";
  if (!j.is_object()) parse_fail(origin, "top level must be an object");
  if (j.contains("verdicts")) {
    return guarded(origin, [&] {
      check_schema(j, false, origin);
      VerdictOracle v;
      for (const auto& [id, text] : j["verdicts"].items()) {
        auto verdict = parse_verdict(text.get<std::string>());
        if (!verdict) parse_fail(origin, "'" + id + "': unknown verdict " + text.dump());
        v.emplace(id, *verdict);
      }
      return Decider(std::move(v));
    });
  }
  Json sheet_json = j;
  if (!j.contains("reviewers")) sheet_json["reviewers"] = panel.ids();
  ScoreSheet sheet = score_sheet_from_json(sheet_json);
  if (sheet.panel != panel) {
    throw Error(ErrorKind::InvalidPanel, "decision file reviewers do not match the configured panel");
  }
  return Decider(std::move(sheet.scores));
}

Decider load_decisions(const fs::path& path, const ReviewerPanel& panel) {
  return decisions_from_json(read_json_file(path), panel);
}

ScoreSheet load_score_sheet(const fs::path& path) { return score_sheet_from_json(read_json_file(path)); }

void save_decisions(const Decider& decider, const ReviewerPanel& panel, const fs::path& path) {
  write_text_file(path, dump_stable(decisions_to_json(decider, panel)));
}

// --- traces ---------------------------------------------------------------

Json config_to_json(const SearchConfig& c) {
  Json j{{"cutoff_year", c.cutoff_year},
         {"snowball_pub_types", pub_types_to_json(c.snowball_pub_types)},
         {"start_min", c.start_min},
         {"start_preferred", c.start_preferred},
         {"reviewers", c.policy.panel().ids()}};
  if (c.policy.explicit_thresholds()) {
    const auto& t = c.policy.thresholds();
    j["thresholds"] = {{"advance_min", t.advance_min}, {"include_min", t.include_min},
                       {"borderline_min", t.borderline_min}};
  }
  return j;
}

SearchConfig config_from_json(const Json& j) {
  return guarded("config", [&] {
    SearchConfig c;
    c.cutoff_year = j.value("cutoff_year", c.cutoff_year);
    if (j.contains("snowball_pub_types")) c.snowball_pub_types = pub_types_from_json(j["snowball_pub_types"]);
    c.start_min = j.value("start_min", c.start_min);
    c.start_preferred = j.value("start_preferred", c.start_preferred);
    ReviewerPanel panel = j.contains("reviewers") ? ReviewerPanel(j["reviewers"].get<std::vector<std::string>>())
                                                  : ReviewerPanel::default_panel();
    std::optional<Thresholds> thresholds;
    if (j.contains("thresholds")) {
      const auto& t = j["thresholds"];
      Thresholds th;
      th.advance_min = t.value("advance_min", th.advance_min);
      th.include_min = t.value("include_min", th.include_min);
      th.borderline_min = t.value("borderline_min", th.borderline_min);
      thresholds = th;
    }
    c.policy = ScreeningPolicy(std::move(panel), thresholds);
    return c;
  });
}

Json record_to_json(const ScreeningRecord& r) {
  Json j{{"title", scores_to_json(r.title_scores)}, {"decision", std::string(to_string(r.decision))}};
  if (r.full_text_scores) j["fulltext"] = scores_to_json(*r.full_text_scores);
  if (r.wildcard_nominated_by) j["wildcard_by"] = *r.wildcard_nominated_by;
  return j;
}

ScreeningRecord record_from_json(const ArticleId& id, const Json& j) {
  ScreeningRecord r;
  r.article = id;
  r.title_scores = scores_from_json(j.at("title"), Stage::TitleAbstractKeywords);
  if (j.contains("fulltext")) r.full_text_scores = scores_from_json(j["fulltext"], Stage::FullText);
  if (j.contains("wildcard_by")) r.wildcard_nominated_by = j["wildcard_by"].get<std::string>();
  const auto text = j.at("decision").get<std::string>();
  auto d = parse_decision(text);
  if (!d) throw Error(ErrorKind::ParseError, "'" + id + "': unknown decision '" + text + "'");
  r.decision = *d;
  return r;
}

Json trace_to_json(const SearchTrace& t) {
  Json config = config_to_json(t.snapshot.config);
  config["start_set"] = t.snapshot.start_set;
  Json events = Json::array();
  for (const auto& e : t.events) {
    events.push_back({{"ordinal", e.ordinal},
                      {"target", e.target},
                      {"source", e.source},
                      {"direction", std::string(to_string(e.direction))},
                      {"iteration", e.iteration},
                      {"filtered", e.filtered},
                      {"assessed", e.assessed}});
  }
  Json records = Json::object();
  for (const auto& [id, r] : t.records) records[id] = record_to_json(r);
  return Json{{"schema_version", kSchemaVersion},
              {"strategy", std::string(to_string(t.strategy))},
              {"config", config},
              {"events", events},
              {"records", records}};
}

SearchTrace trace_from_json(const Json& j) {
  const std::string origin = "trace";
  if (!j.is_object()) parse_fail(origin, "top level must be an object");
  check_schema(j, true, origin);
  return guarded(origin, [&] {
    SearchTrace t;
    const auto name = j.at("strategy").get<std::string>();
    auto id = parse_strategy(name);
    if (!id) parse_fail(origin, "unknown strategy '" + name + "'");
    t.strategy = *id;
    t.snapshot.config = config_from_json(j.at("config"));
    t.snapshot.start_set = j["config"].value("start_set", std::vector<std::string>{});
    std::optional<std::uint64_t> last;
    for (const auto& e : j.at("events")) {
      DiscoveryEvent ev;
      ev.ordinal = e.at("ordinal").get<std::uint64_t>();
      if (last && ev.ordinal <= *last) parse_fail(origin, "event ordinals must increase");
      last = ev.ordinal;
      ev.target = e.at("target").get<std::string>();
      ev.source = e.at("source").get<std::string>();
      const auto dir_text = e.at("direction").get<std::string>();
      auto dir = parse_direction(dir_text);
      if (!dir) parse_fail(origin, "unknown direction '" + dir_text + "'");
      ev.direction = *dir;
      ev.iteration = e.at("iteration").get<int>();
      ev.filtered = e.value("filtered", false);
      ev.assessed = e.value("assessed", false);
      if ((ev.direction == Direction::Search) != ev.source.empty() ||
          (ev.direction == Direction::Search) != (ev.iteration == 0)) {
        parse_fail(origin, "event " + std::to_string(ev.ordinal) + " breaks the search/source/iteration rule");
      }
      t.events.push_back(std::move(ev));
    }
    for (const auto& [rid, r] : j.at("records").items()) t.records.emplace(rid, record_from_json(rid, r));
    return t;
  });
}

void export_trace(const SearchTrace& trace, const fs::path& path) {
  write_text_file(path, dump_stable(trace_to_json(trace)));
}

SearchTrace load_trace(const fs::path& path) { return trace_from_json(read_json_file(path)); }

Json result_to_json(const StrategyResult& r) {
  Json iterations = Json::array();
  for (const auto& it : r.iterations) {
    Json dirs = Json::array();
    for (auto d : it.directions) dirs.push_back(std::string(to_string(d)));
    iterations.push_back({{"round", it.round}, {"directions", dirs}, {"newly_included", it.newly_included}});
  }
  return Json{{"strategy", std::string(to_string(r.strategy))},
              {"included", r.included},
              {"borderline", r.borderline},
              {"iterations", iterations},
              {"effort", {{"candidates_assessed", r.effort.candidates_assessed},
                          {"full_texts_read", r.effort.full_texts_read}}}};
}

}  // namespace snowball
