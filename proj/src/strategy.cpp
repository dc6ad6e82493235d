#include "snowball/strategy.hpp"

#include "snowball/error.hpp"

namespace snowball {

std::string_view to_string(Direction d) {
  switch (d) {
    case Direction::Search: return "search";
    case Direction::Backward: return "backward";
    case Direction::Forward: return "forward";
  }
  return "search";
}

std::optional<Direction> parse_direction(std::string_view text) {
  for (auto d : {Direction::Search, Direction::Backward, Direction::Forward}) {
    if (to_string(d) == text) return d;
  }
  return std::nullopt;
}

std::string_view to_string(StrategyId id) {
  switch (id) {
    case StrategyId::S1_BS_FS_FULL: return "S1_BS_FS_FULL";
    case StrategyId::S2_BS_PAR_FS: return "S2_BS_PAR_FS";
    case StrategyId::S3_BS_THEN_FS: return "S3_BS_THEN_FS";
    case StrategyId::S4_FS_THEN_BS: return "S4_FS_THEN_BS";
    case StrategyId::ALT_BS_FIRST: return "ALT_BS_FIRST";
    case StrategyId::ALT_FS_FIRST: return "ALT_FS_FIRST";
    case StrategyId::ADAPTIVE: return "ADAPTIVE";
  }
  return "S1_BS_FS_FULL";
}

std::optional<StrategyId> parse_strategy(std::string_view text) {
  for (auto id : kAllStrategies) {
    if (to_string(id) == text) return id;
  }
  return std::nullopt;
}

std::string strategy_names() {
  std::string out;
  for (auto id : kAllStrategies) {
    if (!out.empty()) out += ", ";
    out += to_string(id);
  }
  return out;
}

int report_rank(StrategyId id) {
  for (int i = 0; i < static_cast<int>(std::size(kAllStrategies)); ++i) {
    if (kAllStrategies[i] == id) return i;
  }
  return static_cast<int>(std::size(kAllStrategies));
}

void SearchConfig::validate() const {
  if (start_min < 1) throw Error(ErrorKind::InvalidConfig, "start_min must be at least 1");
  if (start_preferred < start_min) throw Error(ErrorKind::InvalidConfig, "start_preferred must be >= start_min");
  if (cutoff_year < kMinYear || cutoff_year > kMaxYear) {
    throw Error(ErrorKind::InvalidConfig, "cutoff_year out of range");
  }
}

bool SearchConfig::admits(const Article& a) const {
  return a.year && *a.year <= cutoff_year && snowball_pub_types.contains(a.pub_type);
}

}  // namespace snowball
