#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "snowball/corpus.hpp"
#include "snowball/screening.hpp"
#include "snowball/strategy.hpp"
#include "snowball/trace.hpp"

namespace snowball {

using Json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

// Pretty-printed with sorted keys and a trailing newline; byte-stable.
std::string dump_stable(const Json& j);

// Parses text, reporting syntax errors as ParseError with line:column.
Json parse_json(std::string_view text, const std::string& origin);
Json read_json_file(const std::filesystem::path& path);
std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

// --- corpus -------------------------------------------------------------

Json article_to_json(const Article& a);
Article article_from_json(const Json& j, bool strict, std::vector<std::string>* warnings);

Json corpus_to_json(const CitationGraph& graph);
// Invariant failures surface as InvariantViolation naming the rule and id.
CitationGraph corpus_from_json(const Json& j, bool strict, std::vector<std::string>* warnings,
                               const std::vector<Edge>* extra_edges = nullptr);

// `citing,cited` header, one edge per line.
std::vector<Edge> parse_edges_csv(std::string_view text, const std::string& origin);

struct CorpusLoadOptions {
  bool strict = false;
  std::filesystem::path edges_csv;  // optional alternative edge list
};

struct LoadedCorpus {
  CitationGraph graph;
  std::vector<std::string> warnings;
};

LoadedCorpus load_corpus(const std::filesystem::path& path, const CorpusLoadOptions& options = {});
void save_corpus(const CitationGraph& graph, const std::filesystem::path& path);

// --- decisions ----------------------------------------------------------

struct ScoreSheet {
  ReviewerPanel panel = ReviewerPanel::default_panel();
  ScoreOracle scores;
  std::vector<NominationRound> wildcard_rounds;
};

Json decisions_to_json(const Decider& decider, const ReviewerPanel& panel);
// Accepts the `verdicts` form or the `scores` + `reviewers` form.
Decider decisions_from_json(const Json& j, const ReviewerPanel& panel);
ScoreSheet score_sheet_from_json(const Json& j);

Decider load_decisions(const std::filesystem::path& path, const ReviewerPanel& panel);
ScoreSheet load_score_sheet(const std::filesystem::path& path);
void save_decisions(const Decider& decider, const ReviewerPanel& panel, const std::filesystem::path& path);

// --- traces and results -------------------------------------------------

Json config_to_json(const SearchConfig& config);
SearchConfig config_from_json(const Json& j);

Json record_to_json(const ScreeningRecord& r);
ScreeningRecord record_from_json(const ArticleId& id, const Json& j);

Json trace_to_json(const SearchTrace& trace);
// Throws SchemaVersionMismatch unless schema_version equals kSchemaVersion.
SearchTrace trace_from_json(const Json& j);

void export_trace(const SearchTrace& trace, const std::filesystem::path& path);
SearchTrace load_trace(const std::filesystem::path& path);

Json result_to_json(const StrategyResult& result);

}  // namespace snowball
