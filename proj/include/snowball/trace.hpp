#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "snowball/screening.hpp"
#include "snowball/strategy.hpp"

namespace snowball {

// One instance of an article being found. Rediscoveries are logged too;
// projecting other strategies from a full run needs every instance.
struct DiscoveryEvent {
  std::uint64_t ordinal = 0;
  ArticleId target;
  ArticleId source;  // empty for the database search
  Direction direction = Direction::Search;
  int iteration = 0;
  bool filtered = false;  // failed the cutoff year or publication type filter
  bool assessed = false;  // this event triggered a title-stage assessment

  bool from_search() const { return direction == Direction::Search; }

  friend bool operator==(const DiscoveryEvent&, const DiscoveryEvent&) = default;
};

struct ConfigSnapshot {
  SearchConfig config;
  std::vector<ArticleId> start_set;

  friend bool operator==(const ConfigSnapshot&, const ConfigSnapshot&) = default;
};

struct SearchTrace {
  StrategyId strategy = StrategyId::S1_BS_FS_FULL;
  ConfigSnapshot snapshot;
  std::vector<DiscoveryEvent> events;
  std::map<ArticleId, ScreeningRecord> records;

  friend bool operator==(const SearchTrace&, const SearchTrace&) = default;
};

}  // namespace snowball
