#include "snowball/screening.hpp"

#include <algorithm>
#include <numeric>

#include "snowball/error.hpp"

namespace snowball {

Score::Score(int value) : value_(static_cast<std::uint8_t>(value)) {
  if (value < 0 || value > 2) {
    throw Error(ErrorKind::InvalidScoreValue, "score " + std::to_string(value) + " not in {0,1,2}");
  }
}

ReviewerPanel::ReviewerPanel(std::vector<std::string> reviewer_ids) : ids_(std::move(reviewer_ids)) {
  if (ids_.empty()) throw Error(ErrorKind::InvalidPanel, "panel needs at least one reviewer");
  std::set<std::string> seen;
  for (const auto& id : ids_) {
    if (id.empty()) throw Error(ErrorKind::InvalidPanel, "empty reviewer id");
    if (!seen.insert(id).second) throw Error(ErrorKind::InvalidPanel, "reviewer '" + id + "' listed twice");
  }
}

ReviewerPanel ReviewerPanel::default_panel() { return ReviewerPanel({"r1", "r2", "r3"}); }

bool ReviewerPanel::contains(std::string_view reviewer) const {
  return std::find(ids_.begin(), ids_.end(), reviewer) != ids_.end();
}

ScreeningPolicy::ScreeningPolicy(ReviewerPanel panel, std::optional<Thresholds> thresholds)
    : panel_(std::move(panel)), thresholds_(thresholds.value_or(Thresholds{})), explicit_(thresholds.has_value()) {
  if (!thresholds && panel_.size() != 3) {
    throw Error(ErrorKind::ThresholdsRequired,
                "panel of " + std::to_string(panel_.size()) +
                    " reviewers needs explicit thresholds; defaults are defined for three reviewers only");
  }
  const int max_sum = 2 * static_cast<int>(panel_.size());
  const auto& t = thresholds_;
  if (t.advance_min < 0 || t.include_min < 0 || t.borderline_min < 0 || t.borderline_min > t.include_min ||
      t.include_min > max_sum || t.advance_min > max_sum) {
    throw Error(ErrorKind::InvalidConfig, "inconsistent screening thresholds");
  }
}

int StageScores::total() const {
  return std::accumulate(scores.begin(), scores.end(), 0, [](int acc, Score s) { return acc + s.value(); });
}

StageScores StageScores::title(std::initializer_list<int> values) {
  StageScores s{Stage::TitleAbstractKeywords, {}};
  for (int v : values) s.scores.emplace_back(v);
  return s;
}

StageScores StageScores::full_text(std::initializer_list<int> values) {
  StageScores s{Stage::FullText, {}};
  for (int v : values) s.scores.emplace_back(v);
  return s;
}

std::string_view to_string(Decision d) {
  switch (d) {
    case Decision::Included: return "included";
    case Decision::Borderline: return "borderline";
    case Decision::Excluded: return "excluded";
    case Decision::RejectedAtTitle: return "rejected_at_title";
  }
  return "excluded";
}

std::optional<Decision> parse_decision(std::string_view text) {
  for (auto d : {Decision::Included, Decision::Borderline, Decision::Excluded, Decision::RejectedAtTitle}) {
    if (to_string(d) == text) return d;
  }
  return std::nullopt;
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Include: return "include";
    case Verdict::Borderline: return "borderline";
    case Verdict::Exclude: return "exclude";
  }
  return "exclude";
}

std::optional<Verdict> parse_verdict(std::string_view text) {
  for (auto v : {Verdict::Include, Verdict::Borderline, Verdict::Exclude}) {
    if (to_string(v) == text) return v;
  }
  return std::nullopt;
}

TitleDecision title_stage_decision(const StageScores& scores, const Thresholds& t) {
  if (scores.stage != Stage::TitleAbstractKeywords) {
    throw Error(ErrorKind::WrongStage, "expected title/abstract/keyword scores");
  }
  return scores.total() >= t.advance_min ? TitleDecision::Advance : TitleDecision::Reject;
}

FullTextDecision full_text_decision(const StageScores& scores, const Thresholds& t) {
  if (scores.stage != Stage::FullText) throw Error(ErrorKind::WrongStage, "expected full-text scores");
  const int sum = scores.total();
  if (sum >= t.include_min) return FullTextDecision::Included;
  if (sum >= t.borderline_min) return FullTextDecision::Borderline;
  return FullTextDecision::Excluded;
}

bool Decider::covers(std::string_view id) const {
  return std::visit([&](const auto& m) { return m.find(id) != m.end(); }, oracle_);
}

WildcardOutcome apply_wildcards(const ReviewerPanel& panel, const std::vector<NominationRound>& rounds,
                                const std::set<ArticleId>& rejected_pool) {
  for (const auto& round : rounds) {
    for (const auto& [reviewer, article] : round) {
      if (!panel.contains(reviewer)) throw Error(ErrorKind::UnknownReviewer, "'" + reviewer + "'");
      if (!rejected_pool.contains(article)) {
        throw Error(ErrorKind::NominationOutsidePool,
                    "'" + article + "' nominated by " + reviewer + " did not fail the title stage");
      }
    }
  }

  WildcardOutcome out;
  std::set<std::string> eligible(panel.ids().begin(), panel.ids().end());
  for (const auto& round : rounds) {
    if (eligible.empty() || out.selected.size() >= panel.size()) break;
    ++out.rounds_used;

    std::map<ArticleId, int> picks;
    for (const auto& reviewer : panel.ids()) {
      if (!eligible.contains(reviewer)) continue;
      if (auto it = round.find(reviewer); it != round.end()) ++picks[it->second];
    }
    std::set<std::string> colliders;
    for (const auto& reviewer : panel.ids()) {
      if (!eligible.contains(reviewer)) continue;
      auto it = round.find(reviewer);
      if (it == round.end()) continue;
      const ArticleId& article = it->second;
      if (picks[article] > 1 || out.selected.contains(article)) colliders.insert(reviewer);
    }
    for (const auto& reviewer : panel.ids()) {
      if (!eligible.contains(reviewer)) continue;
      if (auto it = round.find(reviewer); it != round.end()) {
        out.selected.insert(it->second);
        out.nominated_by.try_emplace(it->second, reviewer);
      }
    }
    eligible = std::move(colliders);
  }
  out.pool_exhausted = out.selected.size() < panel.size();
  return out;
}

namespace {

void check_arity(const StageScores& s, const ScreeningPolicy& policy, const ArticleId& id) {
  if (s.scores.size() != policy.panel().size()) {
    throw Error(ErrorKind::ScoreArityMismatch, "'" + id + "' has " + std::to_string(s.scores.size()) +
                                                   " scores for " + std::to_string(policy.panel().size()) +
                                                   " reviewers");
  }
}

StageScores uniform(Stage stage, std::size_t n, int value) {
  StageScores s{stage, {}};
  s.scores.assign(n, Score(value));
  return s;
}

ScreeningRecord record_from_verdict(const ArticleId& id, Verdict v, const ScreeningPolicy& policy) {
  const std::size_t n = policy.panel().size();
  ScreeningRecord r{id, uniform(Stage::TitleAbstractKeywords, n, 2), std::nullopt, std::nullopt,
                    Decision::Included};
  switch (v) {
    case Verdict::Include:
      r.full_text_scores = uniform(Stage::FullText, n, 2);
      break;
    case Verdict::Borderline:
      r.full_text_scores = uniform(Stage::FullText, n, 1);
      r.decision = Decision::Borderline;
      break;
    case Verdict::Exclude:
      r.title_scores = uniform(Stage::TitleAbstractKeywords, n, 0);
      r.decision = Decision::RejectedAtTitle;
      break;
  }
  return r;
}

}  // namespace

ScreeningRecord screen(const ArticleId& id, const Decider& decider, const ScreeningPolicy& policy) {
  if (const auto* verdicts = decider.verdicts()) {
    auto it = verdicts->find(id);
    if (it == verdicts->end()) throw Error(ErrorKind::MissingDecision, "no verdict for '" + id + "'");
    return record_from_verdict(id, it->second, policy);
  }

  const auto& sheet = *decider.scores();
  auto it = sheet.find(id);
  if (it == sheet.end()) throw Error(ErrorKind::MissingDecision, "no scores for '" + id + "'");
  const ScoreEntry& entry = it->second;
  check_arity(entry.title, policy, id);

  ScreeningRecord r{id, entry.title, std::nullopt, std::nullopt, Decision::RejectedAtTitle};
  const bool advanced = title_stage_decision(entry.title, policy.thresholds()) == TitleDecision::Advance;
  if (!advanced && entry.wildcard_by) {
    if (!policy.panel().contains(*entry.wildcard_by)) {
      throw Error(ErrorKind::UnknownReviewer, "wild card for '" + id + "' by '" + *entry.wildcard_by + "'");
    }
    r.wildcard_nominated_by = entry.wildcard_by;
  }
  if (!advanced && !r.wildcard_nominated_by) return r;

  if (!entry.full_text) throw Error(ErrorKind::MissingDecision, "no full-text scores for '" + id + "'");
  check_arity(*entry.full_text, policy, id);
  r.full_text_scores = entry.full_text;
  switch (full_text_decision(*entry.full_text, policy.thresholds())) {
    case FullTextDecision::Included: r.decision = Decision::Included; break;
    case FullTextDecision::Borderline: r.decision = Decision::Borderline; break;
    case FullTextDecision::Excluded: r.decision = Decision::Excluded; break;
  }
  return r;
}

const ScreeningRecord& DecisionCache::get_or_screen(const ArticleId& id) {
  {
    std::lock_guard lock(mu_);
    if (auto it = records_.find(id); it != records_.end()) return it->second;
  }
  ScreeningRecord fresh = screen(id, *decider_, *policy_);
  std::lock_guard lock(mu_);
  // A concurrent writer may have won; the first insert stands.
  return records_.try_emplace(id, std::move(fresh)).first->second;
}

const ScreeningRecord* DecisionCache::find(const ArticleId& id) const {
  std::lock_guard lock(mu_);
  auto it = records_.find(id);
  return it == records_.end() ? nullptr : &it->second;
}

std::map<ArticleId, ScreeningRecord> DecisionCache::snapshot() const {
  std::lock_guard lock(mu_);
  return records_;
}

}  // namespace snowball
