#include "snowball/provenance.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "snowball/error.hpp"
#include "snowball/metrics.hpp"

namespace snowball {

const DiscoveryEvent& first_discovery(const SearchTrace& trace, const ArticleId& id) {
  const DiscoveryEvent* best = nullptr;
  for (const auto& e : trace.events) {
    if (e.target == id && (!best || e.ordinal < best->ordinal)) best = &e;
  }
  if (!best) throw Error(ErrorKind::NotInTrace, "'" + id + "'");
  return *best;
}

namespace {

struct Neighbour {
  ArticleId id;
  bool filtered;
};

// Neighbourhoods recovered from the event log, keyed by (source, direction).
class LoggedGraph {
 public:
  explicit LoggedGraph(const SearchTrace& trace) : records_(trace.records) {
    for (const auto& e : trace.events) {
      if (e.from_search()) {
        start_.insert(e.target);
        continue;
      }
      auto& list = adjacency_[{e.source, e.direction}];
      const bool dup = std::any_of(list.begin(), list.end(), [&](const Neighbour& n) { return n.id == e.target; });
      if (!dup) list.push_back({e.target, e.filtered});
    }
    for (auto& [key, list] : adjacency_) {
      std::sort(list.begin(), list.end(), [](const Neighbour& a, const Neighbour& b) { return a.id < b.id; });
    }
  }

  const std::set<ArticleId>& start() const { return start_; }

  const std::vector<Neighbour>& around(const ArticleId& id, Direction d) const {
    static const std::vector<Neighbour> kNone;
    auto it = adjacency_.find({id, d});
    return it == adjacency_.end() ? kNone : it->second;
  }

  const ScreeningRecord& record(const ArticleId& id) const {
    auto it = records_.find(id);
    if (it == records_.end()) throw Error(ErrorKind::TraceNotFull, "no screening record for '" + id + "'");
    return it->second;
  }

  // A full run examined every included article in both directions, so any
  // included article is a valid expansion source.
  void require_examined(const ArticleId& id) const {
    if (record(id).decision != Decision::Included) {
      throw Error(ErrorKind::TraceNotFull, "'" + id + "' was never examined in the full run");
    }
  }

 private:
  std::map<std::pair<ArticleId, Direction>, std::vector<Neighbour>> adjacency_;
  const std::map<ArticleId, ScreeningRecord>& records_;
  std::set<ArticleId> start_;
};

class Replay {
 public:
  Replay(const LoggedGraph& g, StrategyId id) : g_(g) {
    out_.strategy = id;
    for (const auto& s : g_.start()) take(s);
    out_.included = g_.start();
    out_.iterations.push_back({0, {Direction::Search}, {g_.start().begin(), g_.start().end()}});
  }

  // Candidates newly included by examining `frontier` in direction d.
  std::set<ArticleId> step(const std::set<ArticleId>& frontier, Direction d, std::set<ArticleId>& seen) {
    std::set<ArticleId> candidates;
    for (const auto& a : frontier) {
      g_.require_examined(a);
      for (const auto& n : g_.around(a, d)) {
        if (!n.filtered && !seen.contains(n.id)) candidates.insert(n.id);
      }
    }
    std::set<ArticleId> hits;
    for (const auto& c : candidates) {
      seen.insert(c);
      if (take(c)) hits.insert(c);
    }
    return hits;
  }

  void note(int round, std::vector<Direction> dirs, const std::set<ArticleId>& hits) {
    IterationRecord it{round, std::move(dirs), {}};
    for (const auto& h : hits) {
      if (out_.included.insert(h).second) it.newly_included.push_back(h);
    }
    out_.iterations.push_back(std::move(it));
  }

  int one_way(std::set<ArticleId> frontier, Direction d, int round, std::set<ArticleId>& seen) {
    for (; !frontier.empty(); ++round) {
      auto hits = step(frontier, d, seen);
      note(round, {d}, hits);
      frontier = std::move(hits);
    }
    return round;
  }

  long admissible(const std::set<ArticleId>& ids, Direction d) const {
    long n = 0;
    for (const auto& a : ids) {
      for (const auto& nb : g_.around(a, d)) n += nb.filtered ? 0 : 1;
    }
    return n;
  }

  const std::set<ArticleId>& included() const { return out_.included; }
  StrategyResult done() && { return std::move(out_); }

 private:
  bool take(const ArticleId& id) {
    const auto& rec = g_.record(id);
    ++out_.effort.candidates_assessed;
    if (rec.full_text_scores) ++out_.effort.full_texts_read;
    if (rec.decision == Decision::Borderline) out_.borderline.insert(id);
    return rec.decision == Decision::Included;
  }

  const LoggedGraph& g_;
  StrategyResult out_;
};

std::set<ArticleId> minus(const std::set<ArticleId>& a, const std::set<ArticleId>& b) {
  std::set<ArticleId> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::inserter(out, out.end()));
  return out;
}

}  // namespace

StrategyResult project(const SearchTrace& full_trace, StrategyId strategy) {
  if (full_trace.strategy != StrategyId::S1_BS_FS_FULL) {
    throw Error(ErrorKind::TraceNotFull,
                "projection needs an S1_BS_FS_FULL trace, got " + std::string(to_string(full_trace.strategy)));
  }
  const LoggedGraph g(full_trace);
  Replay r(g, strategy);
  const std::set<ArticleId>& start = g.start();
  constexpr auto B = Direction::Backward;
  constexpr auto F = Direction::Forward;

  switch (strategy) {
    case StrategyId::S1_BS_FS_FULL: {
      std::set<ArticleId> seen = start;
      std::set<ArticleId> frontier = start;
      for (int round = 1; !frontier.empty(); ++round) {
        auto hits = r.step(frontier, B, seen);
        hits.merge(r.step(frontier, F, seen));
        r.note(round, {B, F}, hits);
        frontier = std::move(hits);
      }
      break;
    }
    case StrategyId::S2_BS_PAR_FS: {
      std::set<ArticleId> seen_b = start;
      r.one_way(start, B, 1, seen_b);
      std::set<ArticleId> seen_f = start;
      r.one_way(start, F, 1, seen_f);
      break;
    }
    case StrategyId::S3_BS_THEN_FS:
    case StrategyId::S4_FS_THEN_BS: {
      const auto first = strategy == StrategyId::S3_BS_THEN_FS ? B : F;
      const auto second = first == B ? F : B;
      std::set<ArticleId> seen = start;
      const int next = r.one_way(start, first, 1, seen);
      r.one_way(r.included(), second, next, seen);
      break;
    }
    case StrategyId::ALT_BS_FIRST:
    case StrategyId::ALT_FS_FIRST:
    case StrategyId::ADAPTIVE: {
      std::set<ArticleId> seen = start;
      std::map<Direction, std::set<ArticleId>> examined{{B, {}}, {F, {}}};
      auto d = strategy == StrategyId::ALT_FS_FIRST ? F : B;
      for (int round = 1;; ++round) {
        const auto open_b = minus(r.included(), examined[B]);
        const auto open_f = minus(r.included(), examined[F]);
        if (strategy == StrategyId::ADAPTIVE) {
          const long rb = r.admissible(open_b, B);
          const long rf = r.admissible(open_f, F);
          if (rb == 0 && rf == 0) break;
          d = rf > rb ? F : B;
        } else if (open_b.empty() && open_f.empty()) {
          break;
        }
        const auto frontier = d == B ? open_b : open_f;
        examined[d].insert(frontier.begin(), frontier.end());
        r.note(round, {d}, r.step(frontier, d, seen));
        d = d == B ? F : B;
      }
      break;
    }
  }
  return std::move(r).done();
}

StrategyResult summarize(const SearchTrace& trace) {
  StrategyResult out;
  out.strategy = trace.strategy;
  for (const auto& [id, rec] : trace.records) {
    if (rec.decision == Decision::Included) out.included.insert(id);
    if (rec.decision == Decision::Borderline) out.borderline.insert(id);
  }
  out.effort = effort(trace);
  return out;
}

}  // namespace snowball
