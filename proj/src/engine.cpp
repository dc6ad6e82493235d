#include "snowball/engine.hpp"

#include <algorithm>
#include <cctype>
#include <future>
#include <iterator>

#include "snowball/error.hpp"

namespace snowball {

namespace {

std::string lowercase(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

std::string haystack(const Article& a) {
  std::string text = a.title;
  if (a.abstract) text += " " + *a.abstract;
  for (const auto& k : a.keywords) text += " " + k;
  return lowercase(text);
}

std::set<std::string> tokens(const std::string& text) {
  std::set<std::string> out;
  std::string cur;
  for (unsigned char c : text) {
    if (std::isalnum(c)) {
      cur.push_back(static_cast<char>(c));
    } else if (!cur.empty()) {
      out.insert(std::move(cur));
      cur.clear();
    }
  }
  if (!cur.empty()) out.insert(std::move(cur));
  return out;
}

bool matches_terms(const Article& a, const Query& q) {
  const std::string text = haystack(a);
  if (q.match == MatchMode::Token) {
    const auto toks = tokens(text);
    return std::all_of(q.terms.begin(), q.terms.end(), [&](const auto& t) { return toks.contains(t); });
  }
  return std::all_of(q.terms.begin(), q.terms.end(),
                     [&](const auto& t) { return text.find(t) != std::string::npos; });
}

std::vector<ArticleId> sorted_unique(std::vector<ArticleId> ids) {
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  return ids;
}

std::vector<ArticleId> neighbours(const CitationSource& source, const ArticleId& id, Direction d) {
  return d == Direction::Backward ? source.references(id) : source.citations(id);
}

// State of one strategy run. A "process" owns its own seen-set; S2 runs two
// processes that share the decision cache but not the seen-sets.
class Runner {
 public:
  struct Process {
    std::set<ArticleId> seen;
  };

  Runner(const CitationSource& source, const Decider& decider, const SearchConfig& config, StrategyId strategy)
      : source_(source), config_(config), cache_(decider, config.policy) {
    trace_.strategy = strategy;
    trace_.snapshot.config = config;
    result_.strategy = strategy;
  }

  std::vector<ArticleId> seed(const std::vector<ArticleId>& start_set) {
    const auto start = sorted_unique(start_set);
    trace_.snapshot.start_set = start;
    for (const auto& id : start) {
      if (!source_.find(id)) throw Error(ErrorKind::UnknownArticle, "start-set article '" + id + "'");
      log(id, {}, Direction::Search, 0, false, true);
      if (assess(id).decision != Decision::Included) {
        throw Error(ErrorKind::StartSetNotIncluded, "'" + id + "' does not screen as included");
      }
    }
    record(0, {Direction::Search}, start);
    return start;
  }

  // Examines the frontier in one direction, screens every fresh candidate and
  // returns those included (ascending).
  std::vector<ArticleId> expand(const std::vector<ArticleId>& frontier, Direction dir, int iteration, Process& p) {
    std::set<ArticleId> fresh;
    for (const auto& src : frontier) {
      for (const auto& target : neighbours(source_, src, dir)) {
        const bool filtered = !admits(target);
        const bool is_fresh = !filtered && !p.seen.contains(target) && !fresh.contains(target);
        log(target, src, dir, iteration, filtered, is_fresh);
        if (is_fresh) fresh.insert(target);
      }
    }
    std::vector<ArticleId> newly;
    for (const auto& id : fresh) {
      p.seen.insert(id);
      if (assess(id).decision == Decision::Included) newly.push_back(id);
    }
    return newly;
  }

  // Repeats single-direction steps until one includes nothing new.
  int closure(std::vector<ArticleId> frontier, Direction dir, int round, Process& p) {
    while (!frontier.empty()) {
      auto newly = expand(frontier, dir, round, p);
      record(round, {dir}, newly);
      frontier = std::move(newly);
      ++round;
    }
    return round;
  }

  void record(int round, std::vector<Direction> dirs, const std::vector<ArticleId>& newly) {
    IterationRecord rec{round, std::move(dirs), {}};
    for (const auto& id : newly) {
      if (result_.included.insert(id).second) rec.newly_included.push_back(id);
    }
    result_.iterations.push_back(std::move(rec));
  }

  std::vector<ArticleId> unexamined(const std::set<ArticleId>& examined) const {
    std::vector<ArticleId> out;
    std::set_difference(result_.included.begin(), result_.included.end(), examined.begin(), examined.end(),
                        std::back_inserter(out));
    return out;
  }

  const std::set<ArticleId>& included() const { return result_.included; }

  RunOutput finish() && {
    trace_.records = cache_.snapshot();
    return RunOutput{std::move(trace_), std::move(result_), std::move(warnings_)};
  }

 private:
  bool admits(const ArticleId& id) {
    const Article* a = source_.find(id);
    if (!a) throw Error(ErrorKind::UnknownArticle, "'" + id + "'");
    if (!a->year && warned_.insert(id).second) {
      warnings_.push_back("article '" + id + "' has no year; excluded by the cutoff filter");
    }
    return config_.admits(*a);
  }

  const ScreeningRecord& assess(const ArticleId& id) {
    const ScreeningRecord& rec = cache_.get_or_screen(id);
    ++result_.effort.candidates_assessed;
    if (rec.full_text_scores) ++result_.effort.full_texts_read;
    if (rec.decision == Decision::Borderline) result_.borderline.insert(id);
    return rec;
  }

  void log(const ArticleId& target, const ArticleId& src, Direction dir, int iteration, bool filtered,
           bool assessed) {
    trace_.events.push_back(DiscoveryEvent{next_ordinal_++, target, src, dir, iteration, filtered, assessed});
  }

  const CitationSource& source_;
  const SearchConfig& config_;
  DecisionCache cache_;
  SearchTrace trace_;
  StrategyResult result_;
  std::vector<std::string> warnings_;
  std::set<ArticleId> warned_;
  std::uint64_t next_ordinal_ = 0;
};

Direction flip(Direction d) { return d == Direction::Backward ? Direction::Forward : Direction::Backward; }

long admissible_degree(const CitationSource& source, const std::vector<ArticleId>& ids, Direction dir,
                       const SearchConfig& config) {
  long total = 0;
  for (const auto& id : ids) {
    for (const auto& n : neighbours(source, id, dir)) {
      const Article* a = source.find(n);
      if (a && config.admits(*a)) ++total;
    }
  }
  return total;
}

std::vector<ArticleId> difference(const std::set<ArticleId>& a, const std::set<ArticleId>& b) {
  std::vector<ArticleId> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

}  // namespace

Query& Query::validate() {
  if (terms.empty()) throw Error(ErrorKind::EmptyTermList, "query has no terms");
  for (auto& t : terms) {
    t = lowercase(t);
    if (t.empty()) throw Error(ErrorKind::EmptyTermList, "query contains an empty term");
  }
  if (year_from > year_to) {
    throw Error(ErrorKind::InvalidQuery,
                "year range " + std::to_string(year_from) + ".." + std::to_string(year_to) + " is empty");
  }
  return *this;
}

std::vector<ArticleId> database_search(const CitationGraph& graph, Query query) {
  query.validate();
  std::vector<ArticleId> out;
  for (const Article* a : graph.articles()) {
    if (!a->year || *a->year < query.year_from || *a->year > query.year_to) continue;
    if (!query.pub_types.contains(a->pub_type)) continue;
    if (matches_terms(*a, query)) out.push_back(a->id);
  }
  return out;
}

StartSet build_start_set(const CitationGraph& graph, const Query& query, const Decider& decider,
                         const SearchConfig& config) {
  config.validate();
  StartSet out;
  out.final_query = query;
  out.final_query.validate();

  for (const Article* a : graph.articles()) {
    if (!a->year && out.final_query.pub_types.contains(a->pub_type) && matches_terms(*a, out.final_query)) {
      out.warnings.push_back("article '" + a->id + "' matches the query but has no year; not a candidate");
    }
  }

  const auto earliest = graph.min_year();
  std::set<ArticleId> screened;
  while (true) {
    for (const auto& id : database_search(graph, out.final_query)) {
      if (!screened.insert(id).second) continue;
      ScreeningRecord rec = screen(id, decider, config.policy);
      if (rec.decision == Decision::Included) out.included.push_back(id);
      out.records.push_back(std::move(rec));
    }
    if (static_cast<int>(out.included.size()) >= config.start_min) break;
    if (!earliest || out.final_query.year_from <= *earliest) {
      out.exhausted = true;
      out.warnings.push_back("start set exhausted: only " + std::to_string(out.included.size()) +
                             " included after widening to " + std::to_string(out.final_query.year_from));
      break;
    }
    --out.final_query.year_from;
    ++out.widenings;
  }
  std::sort(out.included.begin(), out.included.end());
  if (static_cast<int>(out.included.size()) < config.start_preferred) {
    out.warnings.push_back("start set has " + std::to_string(out.included.size()) + " articles; preferred is " +
                           std::to_string(config.start_preferred));
  }
  return out;
}

std::vector<ArticleId> snowball_step(const CitationSource& source, const std::set<ArticleId>& frontier,
                                     Direction direction, const std::set<ArticleId>& seen,
                                     const SearchConfig& config) {
  std::set<ArticleId> out;
  for (const auto& id : frontier) {
    for (const auto& n : neighbours(source, id, direction)) {
      if (seen.contains(n)) continue;
      const Article* a = source.find(n);
      if (!a) throw Error(ErrorKind::UnknownArticle, "'" + n + "'");
      if (config.admits(*a)) out.insert(n);
    }
  }
  return {out.begin(), out.end()};
}

AdaptiveChoice adaptive_choose_direction(const CitationSource& source, const std::set<ArticleId>& included,
                                         const std::set<ArticleId>& examined_backward,
                                         const std::set<ArticleId>& examined_forward, const SearchConfig& config) {
  const long rb = admissible_degree(source, difference(included, examined_backward), Direction::Backward, config);
  const long rf = admissible_degree(source, difference(included, examined_forward), Direction::Forward, config);
  if (rb == 0 && rf == 0) return AdaptiveChoice::Done;
  return rf > rb ? AdaptiveChoice::Forward : AdaptiveChoice::Backward;
}

RunOutput run_strategy(const CitationSource& source, const std::vector<ArticleId>& start_set, StrategyId strategy,
                       const Decider& decider, const SearchConfig& config) {
  config.validate();
  Runner run(source, decider, config, strategy);
  const auto start = run.seed(start_set);
  const std::set<ArticleId> start_seen(start.begin(), start.end());

  switch (strategy) {
    case StrategyId::S1_BS_FS_FULL: {
      Runner::Process p{start_seen};
      std::vector<ArticleId> frontier = start;
      for (int round = 1; !frontier.empty(); ++round) {
        auto back = run.expand(frontier, Direction::Backward, round, p);
        auto fwd = run.expand(frontier, Direction::Forward, round, p);
        back.insert(back.end(), fwd.begin(), fwd.end());
        frontier = sorted_unique(std::move(back));
        run.record(round, {Direction::Backward, Direction::Forward}, frontier);
      }
      break;
    }
    case StrategyId::S2_BS_PAR_FS: {
      Runner::Process backward{start_seen};
      run.closure(start, Direction::Backward, 1, backward);
      Runner::Process forward{start_seen};
      run.closure(start, Direction::Forward, 1, forward);
      break;
    }
    case StrategyId::S3_BS_THEN_FS:
    case StrategyId::S4_FS_THEN_BS: {
      const Direction first = strategy == StrategyId::S3_BS_THEN_FS ? Direction::Backward : Direction::Forward;
      Runner::Process p{start_seen};
      const int next = run.closure(start, first, 1, p);
      const auto& inc = run.included();
      run.closure({inc.begin(), inc.end()}, flip(first), next, p);
      break;
    }
    case StrategyId::ALT_BS_FIRST:
    case StrategyId::ALT_FS_FIRST:
    case StrategyId::ADAPTIVE: {
      Runner::Process p{start_seen};
      std::set<ArticleId> examined_b, examined_f;
      Direction dir = strategy == StrategyId::ALT_FS_FIRST ? Direction::Forward : Direction::Backward;
      for (int round = 1;; ++round) {
        if (strategy == StrategyId::ADAPTIVE) {
          const auto choice = adaptive_choose_direction(source, run.included(), examined_b, examined_f, config);
          if (choice == AdaptiveChoice::Done) break;
          dir = choice == AdaptiveChoice::Backward ? Direction::Backward : Direction::Forward;
        } else if (run.unexamined(examined_b).empty() && run.unexamined(examined_f).empty()) {
          break;
        }
        auto& examined = dir == Direction::Backward ? examined_b : examined_f;
        const auto frontier = run.unexamined(examined);
        examined.insert(frontier.begin(), frontier.end());
        run.record(round, {dir}, run.expand(frontier, dir, round, p));
        dir = flip(dir);
      }
      break;
    }
  }
  return std::move(run).finish();
}

std::vector<RunOutput> run_strategies(const CitationSource& source, const std::vector<ArticleId>& start_set,
                                      const Decider& decider, const SearchConfig& config,
                                      const std::vector<StrategyId>& strategies) {
  std::vector<StrategyId> order = strategies;
  std::sort(order.begin(), order.end(), [](auto a, auto b) { return report_rank(a) < report_rank(b); });
  order.erase(std::unique(order.begin(), order.end()), order.end());

  std::vector<std::future<RunOutput>> pending;
  pending.reserve(order.size());
  for (auto id : order) {
    pending.push_back(std::async(std::launch::async, [&, id] {
      return run_strategy(source, start_set, id, decider, config);
    }));
  }
  std::vector<RunOutput> out;
  out.reserve(order.size());
  for (auto& f : pending) out.push_back(f.get());
  return out;
}

ComparisonReport run_all(const CitationSource& source, const std::vector<ArticleId>& start_set,
                         const Decider& decider, const SearchConfig& config,
                         const std::vector<StrategyId>& strategies) {
  std::vector<StrategyResult> results;
  for (auto& run : run_strategies(source, start_set, decider, config, strategies)) {
    results.push_back(std::move(run.result));
  }
  return build_report(std::move(results));
}

}  // namespace snowball
