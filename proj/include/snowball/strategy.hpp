#pragma once

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "snowball/corpus.hpp"
#include "snowball/screening.hpp"

namespace snowball {

enum class Direction { Search, Backward, Forward };

std::string_view to_string(Direction d);
std::optional<Direction> parse_direction(std::string_view text);

enum class StrategyId {
  S1_BS_FS_FULL,  // backward and forward from every included article
  S2_BS_PAR_FS,   // backward and forward as two separate processes
  S3_BS_THEN_FS,  // backward to fixpoint, then forward over everything
  S4_FS_THEN_BS,  // forward to fixpoint, then backward over everything
  ALT_BS_FIRST,
  ALT_FS_FIRST,
  ADAPTIVE,
};

// Report order: the four classic hybrids first, then the alternating and
// adaptive variants.
inline constexpr StrategyId kAllStrategies[] = {
    StrategyId::S1_BS_FS_FULL, StrategyId::S2_BS_PAR_FS, StrategyId::S3_BS_THEN_FS, StrategyId::S4_FS_THEN_BS,
    StrategyId::ALT_BS_FIRST,  StrategyId::ALT_FS_FIRST, StrategyId::ADAPTIVE,
};

std::string_view to_string(StrategyId id);
std::optional<StrategyId> parse_strategy(std::string_view text);
std::string strategy_names();  // comma-separated, for usage messages
int report_rank(StrategyId id);

struct SearchConfig {
  int cutoff_year = 2014;
  std::set<PubType> snowball_pub_types = {PubType::Journal, PubType::Conference, PubType::Workshop,
                                          PubType::BookChapter};
  int start_min = 5;
  int start_preferred = 10;
  ScreeningPolicy policy;

  // Throws InvalidConfig.
  void validate() const;
  // Cutoff year and publication type filter applied to every snowball candidate.
  bool admits(const Article& a) const;

  friend bool operator==(const SearchConfig&, const SearchConfig&) = default;
};

struct IterationRecord {
  int round = 0;  // 0 is the start set
  std::vector<Direction> directions;
  std::vector<ArticleId> newly_included;  // ascending

  friend bool operator==(const IterationRecord&, const IterationRecord&) = default;
};

struct Effort {
  long candidates_assessed = 0;
  long full_texts_read = 0;

  friend bool operator==(const Effort&, const Effort&) = default;
};

struct StrategyResult {
  StrategyId strategy = StrategyId::S1_BS_FS_FULL;
  std::set<ArticleId> included;
  std::set<ArticleId> borderline;
  std::vector<IterationRecord> iterations;
  Effort effort;

  friend bool operator==(const StrategyResult&, const StrategyResult&) = default;
};

}  // namespace snowball
