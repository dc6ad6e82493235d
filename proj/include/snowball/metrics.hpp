#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "snowball/strategy.hpp"
#include "snowball/trace.hpp"

namespace snowball {

// Conventional acceptability threshold for recall against a quasi-gold standard.
inline constexpr double kQuasiSensitivityThreshold = 0.8;

// Rounded percentage change from baseline a to b. Throws ZeroBaseline for a = 0.
int pct_delta(long a, long b);

struct Overlap {
  long both = 0;
  long only_a = 0;
  long only_b = 0;

  friend bool operator==(const Overlap&, const Overlap&) = default;
};

Overlap overlap(const std::set<ArticleId>& a, const std::set<ArticleId>& b);

// |result ∩ gold| / |gold|. Throws EmptyGold.
double recall(const std::set<ArticleId>& result, const std::set<ArticleId>& gold);
// |result ∩ gold| / assessed; 0 when nothing was assessed.
double precision(const std::set<ArticleId>& result, const std::set<ArticleId>& gold, long assessed);
bool meets_quasi_sensitivity(double recall_value);

// Title-stage assessments and full-text reads recorded in a trace.
Effort effort(const SearchTrace& trace);

struct ReportRow {
  StrategyId strategy;
  long included = 0;
  long borderline = 0;
  Effort effort;
};

struct PairComparison {
  StrategyId a;
  StrategyId b;
  Overlap counts;
  std::optional<int> delta_pct;  // empty when a included nothing
};

struct ComparisonReport {
  std::vector<ReportRow> rows;             // report order
  std::vector<PairComparison> pairs;       // every (a, b) with a before b
};

ComparisonReport build_report(std::vector<StrategyResult> results);

std::string report_text(const ComparisonReport& report);
// strategy,included,borderline,assessed,fulltext
std::string rows_csv(const ComparisonReport& report);
// a,b,both,only_a,only_b,delta_pct
std::string overlap_csv(const ComparisonReport& report);

}  // namespace snowball
