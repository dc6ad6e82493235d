#pragma once

#include <set>
#include <string>
#include <vector>

#include "snowball/corpus.hpp"
#include "snowball/metrics.hpp"
#include "snowball/screening.hpp"
#include "snowball/strategy.hpp"
#include "snowball/trace.hpp"

namespace snowball {

enum class MatchMode {
  Substring,  // each term occurs anywhere in the text
  Token,      // each term equals a whole alphanumeric token
};

// Conjunctive keyword query over title, abstract and keywords.
struct Query {
  std::vector<std::string> terms;  // lowercased by validate()
  int year_from = kMinYear;
  int year_to = kMaxYear;
  std::set<PubType> pub_types = {PubType::Journal, PubType::Conference};
  MatchMode match = MatchMode::Substring;

  // Lowercases terms; throws EmptyTermList or InvalidQuery.
  Query& validate();

  friend bool operator==(const Query&, const Query&) = default;
};

// Matching article ids, ascending. Articles without a year never match.
std::vector<ArticleId> database_search(const CitationGraph& graph, Query query);

struct StartSet {
  std::vector<ArticleId> included;      // ascending
  std::vector<ScreeningRecord> records;  // every candidate screened, in screening order
  Query final_query;                     // the possibly widened window
  int widenings = 0;
  bool exhausted = false;  // widened to the corpus' earliest year and still short
  std::vector<std::string> warnings;
};

// Database search plus screening. While fewer than start_min articles are
// included, the window grows one year into the past and only the new
// candidates are screened.
StartSet build_start_set(const CitationGraph& graph, const Query& query, const Decider& decider,
                         const SearchConfig& config);

// One snowballing step: references (Backward) or citations (Forward) of the
// frontier, minus `seen`, restricted by config.admits, ascending.
std::vector<ArticleId> snowball_step(const CitationSource& source, const std::set<ArticleId>& frontier,
                                     Direction direction, const std::set<ArticleId>& seen,
                                     const SearchConfig& config);

struct RunOutput {
  SearchTrace trace;
  StrategyResult result;
  std::vector<std::string> warnings;
};

// Runs one hybrid strategy from an already screened start set. Every start
// article must screen as Included (StartSetNotIncluded otherwise).
RunOutput run_strategy(const CitationSource& source, const std::vector<ArticleId>& start_set, StrategyId strategy,
                       const Decider& decider, const SearchConfig& config);

enum class AdaptiveChoice { Backward, Forward, Done };

// Picks the direction with more admissible neighbours among included
// articles not yet examined in that direction; ties go backward.
AdaptiveChoice adaptive_choose_direction(const CitationSource& source, const std::set<ArticleId>& included,
                                         const std::set<ArticleId>& examined_backward,
                                         const std::set<ArticleId>& examined_forward, const SearchConfig& config);

// Independent runs of each strategy (concurrently), in report order.
std::vector<RunOutput> run_strategies(const CitationSource& source, const std::vector<ArticleId>& start_set,
                                      const Decider& decider, const SearchConfig& config,
                                      const std::vector<StrategyId>& strategies);

ComparisonReport run_all(const CitationSource& source, const std::vector<ArticleId>& start_set,
                         const Decider& decider, const SearchConfig& config,
                         const std::vector<StrategyId>& strategies);

}  // namespace snowball
