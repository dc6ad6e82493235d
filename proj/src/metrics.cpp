#include "snowball/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <iterator>
#include <sstream>

#include "snowball/error.hpp"

namespace snowball {

int pct_delta(long a, long b) {
  if (a <= 0) throw Error(ErrorKind::ZeroBaseline, "percentage change needs a positive baseline");
  // Round half away from zero in exact integer arithmetic.
  const long num = 100 * (b - a);
  const long q = (2 * std::labs(num) + a) / (2 * a);
  return static_cast<int>(num < 0 ? -q : q);
}

Overlap overlap(const std::set<ArticleId>& a, const std::set<ArticleId>& b) {
  std::vector<ArticleId> common;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(common));
  const long both = static_cast<long>(common.size());
  return {both, static_cast<long>(a.size()) - both, static_cast<long>(b.size()) - both};
}

double recall(const std::set<ArticleId>& result, const std::set<ArticleId>& gold) {
  if (gold.empty()) throw Error(ErrorKind::EmptyGold, "recall needs a non-empty gold set");
  return static_cast<double>(overlap(result, gold).both) / static_cast<double>(gold.size());
}

double precision(const std::set<ArticleId>& result, const std::set<ArticleId>& gold, long assessed) {
  if (assessed <= 0) return 0.0;
  return static_cast<double>(overlap(result, gold).both) / static_cast<double>(assessed);
}

bool meets_quasi_sensitivity(double recall_value) { return recall_value >= kQuasiSensitivityThreshold; }

Effort effort(const SearchTrace& trace) {
  Effort e;
  for (const auto& ev : trace.events) {
    if (!ev.assessed) continue;
    ++e.candidates_assessed;
    if (auto it = trace.records.find(ev.target); it != trace.records.end() && it->second.full_text_scores) {
      ++e.full_texts_read;
    }
  }
  return e;
}

ComparisonReport build_report(std::vector<StrategyResult> results) {
  std::stable_sort(results.begin(), results.end(),
                   [](const auto& x, const auto& y) { return report_rank(x.strategy) < report_rank(y.strategy); });
  ComparisonReport report;
  for (const auto& r : results) {
    report.rows.push_back({r.strategy, static_cast<long>(r.included.size()), static_cast<long>(r.borderline.size()),
                           r.effort});
  }
  for (std::size_t i = 0; i < results.size(); ++i) {
    for (std::size_t j = i + 1; j < results.size(); ++j) {
      const auto& a = results[i];
      const auto& b = results[j];
      PairComparison pc{a.strategy, b.strategy, overlap(a.included, b.included), std::nullopt};
      if (!a.included.empty()) {
        pc.delta_pct = pct_delta(static_cast<long>(a.included.size()), static_cast<long>(b.included.size()));
      }
      report.pairs.push_back(pc);
    }
  }
  return report;
}

std::string report_text(const ComparisonReport& report) {
  std::ostringstream os;
  os << std::left << std::setw(16) << "strategy" << std::right << std::setw(10) << "included" << std::setw(12)
     << "borderline" << std::setw(10) << "assessed" << std::setw(10) << "fulltext" << '\n';
  for (const auto& r : report.rows) {
    os << std::left << std::setw(16) << to_string(r.strategy) << std::right << std::setw(10) << r.included
       << std::setw(12) << r.borderline << std::setw(10) << r.effort.candidates_assessed << std::setw(10)
       << r.effort.full_texts_read << '\n';
  }
  if (!report.pairs.empty()) {
    os << '\n'
       << std::left << std::setw(16) << "a" << std::setw(16) << "b" << std::right << std::setw(6) << "both"
       << std::setw(8) << "only_a" << std::setw(8) << "only_b" << std::setw(8) << "delta" << '\n';
    for (const auto& p : report.pairs) {
      os << std::left << std::setw(16) << to_string(p.a) << std::setw(16) << to_string(p.b) << std::right
         << std::setw(6) << p.counts.both << std::setw(8) << p.counts.only_a << std::setw(8) << p.counts.only_b
         << std::setw(8) << (p.delta_pct ? std::to_string(*p.delta_pct) + "%" : "n/a") << '\n';
    }
  }
  return os.str();
}

std::string rows_csv(const ComparisonReport& report) {
  std::ostringstream os;
  os << "strategy,included,borderline,assessed,fulltext\n";
  for (const auto& r : report.rows) {
    os << to_string(r.strategy) << ',' << r.included << ',' << r.borderline << ',' << r.effort.candidates_assessed
       << ',' << r.effort.full_texts_read << '\n';
  }
  return os.str();
}

std::string overlap_csv(const ComparisonReport& report) {
  std::ostringstream os;
  os << "a,b,both,only_a,only_b,delta_pct\n";
  for (const auto& p : report.pairs) {
    os << to_string(p.a) << ',' << to_string(p.b) << ',' << p.counts.both << ',' << p.counts.only_a << ','
       << p.counts.only_b << ',' << (p.delta_pct ? std::to_string(*p.delta_pct) : "") << '\n';
  }
  return os.str();
}

}  // namespace snowball
