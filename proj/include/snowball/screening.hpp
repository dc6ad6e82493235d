#pragma once

#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "snowball/corpus.hpp"

namespace snowball {

// A single reviewer's score: 0 exclude, 1 uncertain, 2 include.
class Score {
 public:
  // Throws InvalidScoreValue outside {0, 1, 2}.
  explicit Score(int value);

  int value() const noexcept { return value_; }
  friend bool operator==(Score, Score) = default;

 private:
  std::uint8_t value_;
};

class ReviewerPanel {
 public:
  // Throws InvalidPanel on an empty list or repeated ids.
  explicit ReviewerPanel(std::vector<std::string> reviewer_ids);
  static ReviewerPanel default_panel();  // r1, r2, r3

  std::size_t size() const noexcept { return ids_.size(); }
  const std::vector<std::string>& ids() const noexcept { return ids_; }
  bool contains(std::string_view reviewer) const;

  friend bool operator==(const ReviewerPanel&, const ReviewerPanel&) = default;

 private:
  std::vector<std::string> ids_;
};

// Sum thresholds. Defaults are the three-reviewer values: advance/include at
// 4 or more, borderline at exactly 3.
struct Thresholds {
  int advance_min = 4;
  int include_min = 4;
  int borderline_min = 3;

  friend bool operator==(const Thresholds&, const Thresholds&) = default;
};

// Panel plus thresholds. Panels other than three reviewers must bring
// explicit thresholds.
class ScreeningPolicy {
 public:
  explicit ScreeningPolicy(ReviewerPanel panel, std::optional<Thresholds> thresholds = std::nullopt);
  ScreeningPolicy() : ScreeningPolicy(ReviewerPanel::default_panel()) {}

  const ReviewerPanel& panel() const noexcept { return panel_; }
  const Thresholds& thresholds() const noexcept { return thresholds_; }
  bool explicit_thresholds() const noexcept { return explicit_; }

  friend bool operator==(const ScreeningPolicy&, const ScreeningPolicy&) = default;

 private:
  ReviewerPanel panel_;
  Thresholds thresholds_;
  bool explicit_ = false;
};

enum class Stage { TitleAbstractKeywords, FullText };

struct StageScores {
  Stage stage = Stage::TitleAbstractKeywords;
  std::vector<Score> scores;  // one per reviewer, in panel order

  int total() const;
  static StageScores title(std::initializer_list<int> values);
  static StageScores full_text(std::initializer_list<int> values);

  friend bool operator==(const StageScores&, const StageScores&) = default;
};

enum class TitleDecision { Advance, Reject };
enum class FullTextDecision { Included, Borderline, Excluded };
enum class Decision { Included, Borderline, Excluded, RejectedAtTitle };

std::string_view to_string(Decision d);
std::optional<Decision> parse_decision(std::string_view text);

// Throws WrongStage for full-text scores.
TitleDecision title_stage_decision(const StageScores& scores, const Thresholds& t = {});
// Throws WrongStage for title-stage scores.
FullTextDecision full_text_decision(const StageScores& scores, const Thresholds& t = {});

struct ScreeningRecord {
  ArticleId article;
  StageScores title_scores;
  std::optional<std::string> wildcard_nominated_by;
  std::optional<StageScores> full_text_scores;
  Decision decision = Decision::RejectedAtTitle;

  friend bool operator==(const ScreeningRecord&, const ScreeningRecord&) = default;
};

// Scores a panel gave one article; wildcard_by names the reviewer who
// promoted it past a failed title stage.
struct ScoreEntry {
  StageScores title;
  std::optional<StageScores> full_text;
  std::optional<std::string> wildcard_by;

  friend bool operator==(const ScoreEntry&, const ScoreEntry&) = default;
};

enum class Verdict { Include, Borderline, Exclude };

std::string_view to_string(Verdict v);
std::optional<Verdict> parse_verdict(std::string_view text);

using ScoreOracle = std::map<ArticleId, ScoreEntry, std::less<>>;
using VerdictOracle = std::map<ArticleId, Verdict, std::less<>>;

// Stand-in for the human reviewers: either full score sheets or final verdicts.
class Decider {
 public:
  Decider() = default;
  Decider(ScoreOracle scores) : oracle_(std::move(scores)) {}
  Decider(VerdictOracle verdicts) : oracle_(std::move(verdicts)) {}

  bool covers(std::string_view id) const;
  bool is_verdict() const { return std::holds_alternative<VerdictOracle>(oracle_); }
  const ScoreOracle* scores() const { return std::get_if<ScoreOracle>(&oracle_); }
  const VerdictOracle* verdicts() const { return std::get_if<VerdictOracle>(&oracle_); }

  friend bool operator==(const Decider&, const Decider&) = default;

 private:
  std::variant<ScoreOracle, VerdictOracle> oracle_;
};

// One wild-card round: reviewer id -> nominated article id. Reviewers who
// pass simply have no entry.
using NominationRound = std::map<std::string, ArticleId>;

struct WildcardOutcome {
  std::set<ArticleId> selected;
  std::map<ArticleId, std::string> nominated_by;  // first nominating reviewer
  int rounds_used = 0;
  bool pool_exhausted = false;  // ended below panel size
};

// Runs the wild-card nomination rounds over articles that failed the title
// stage. Reviewers whose nomination collided with another reviewer's pick
// nominate again until the distinct count reaches the panel size.
WildcardOutcome apply_wildcards(const ReviewerPanel& panel, const std::vector<NominationRound>& rounds,
                                const std::set<ArticleId>& rejected_pool);

// Screens one article through both stages. Throws MissingDecision when the
// decider has no entry (or lacks full-text scores the pipeline needs).
ScreeningRecord screen(const ArticleId& id, const Decider& decider, const ScreeningPolicy& policy);

// Insert-once decision table shared by every step of a run: an article is
// screened at most once no matter how often it is rediscovered.
class DecisionCache {
 public:
  DecisionCache(const Decider& decider, const ScreeningPolicy& policy) : decider_(&decider), policy_(&policy) {}

  const ScreeningRecord& get_or_screen(const ArticleId& id);
  const ScreeningRecord* find(const ArticleId& id) const;
  std::map<ArticleId, ScreeningRecord> snapshot() const;

 private:
  const Decider* decider_;
  const ScreeningPolicy* policy_;
  mutable std::mutex mu_;
  std::map<ArticleId, ScreeningRecord> records_;
};

}  // namespace snowball
