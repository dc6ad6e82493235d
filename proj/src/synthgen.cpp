#include "snowball/synthgen.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "snowball/error.hpp"

namespace snowball {

namespace {

// std:: distributions are implementation-defined; these conversions keep
// generated corpora identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  bool bernoulli(double p) { return uniform() < p; }
  int uniform_int(int lo, int hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<int>(engine_() % span);
  }
  int poisson(double mean) {
    const double limit = std::exp(-mean);
    int k = 0;
    for (double p = uniform(); p > limit; p *= uniform()) ++k;
    return k;
  }

 private:
  std::mt19937_64 engine_;
};

// Fenwick tree over article weights supporting prefix sampling.
class WeightTree {
 public:
  explicit WeightTree(std::size_t n) : tree_(n + 1, 0.0), weight_(n, 0.0) {}

  void set(std::size_t i, double w) {
    const double delta = w - weight_[i];
    weight_[i] = w;
    for (std::size_t k = i + 1; k < tree_.size(); k += k & (~k + 1)) tree_[k] += delta;
  }

  double prefix(std::size_t n) const {
    double s = 0;
    for (std::size_t k = n; k > 0; k -= k & (~k + 1)) s += tree_[k];
    return s;
  }

  // Index i < limit with probability proportional to its weight, or -1.
  long sample(std::size_t limit, double u) const {
    const double total = prefix(limit);
    if (total <= 0) return -1;
    double target = u * total;
    std::size_t pos = 0;
    std::size_t step = 1;
    while (step * 2 < tree_.size()) step *= 2;
    for (; step > 0; step /= 2) {
      if (pos + step < tree_.size() && tree_[pos + step] <= target) {
        pos += step;
        target -= tree_[pos];
      }
    }
    // Guard against rounding at the top edge or landing on a zero weight.
    std::size_t idx = std::min(pos, limit - 1);
    while (idx > 0 && weight_[idx] <= 0) --idx;
    return weight_[idx] > 0 ? static_cast<long>(idx) : -1;
  }

 private:
  std::vector<double> tree_;
  std::vector<double> weight_;
};

PubType draw_pub_type(Rng& rng) {
  const double u = rng.uniform();
  if (u < 0.45) return PubType::Journal;
  if (u < 0.85) return PubType::Conference;
  if (u < 0.92) return PubType::Workshop;
  if (u < 0.97) return PubType::BookChapter;
  return PubType::Book;
}

std::string join(const std::vector<std::string>& words) {
  std::string out;
  for (const auto& w : words) out += (out.empty() ? "" : " ") + w;
  return out;
}

}  // namespace

void GenParams::validate() const {
  auto fail = [](const std::string& what) { throw Error(ErrorKind::InvalidParams, what); };
  if (year_from > year_to) fail("year_from > year_to");
  if (year_from < kMinYear || year_to > kMaxYear) fail("year range outside [1900, 2100]");
  if (!(relevant_fraction >= 0 && relevant_fraction <= 1)) fail("relevant_fraction not in [0,1]");
  if (!(homophily >= 0 && homophily <= 1)) fail("homophily not in [0,1]");
  if (!(borderline_fraction >= 0 && borderline_fraction <= 1)) fail("borderline_fraction not in [0,1]");
  if (!(off_topic_match_fraction >= 0 && off_topic_match_fraction <= 1)) fail("off_topic_match_fraction not in [0,1]");
  if (!(mean_out_degree > 0) || mean_out_degree > 500) fail("mean_out_degree must be in (0, 500]");
  if (!(preferential_exponent >= 0)) fail("preferential_exponent must be >= 0");
}

GeneratedCorpus generate(const GenParams& params) {
  params.validate();
  Rng rng(params.seed);
  const std::size_t n = params.n_articles;

  std::vector<int> years(n);
  for (auto& y : years) y = rng.uniform_int(params.year_from, params.year_to);
  std::sort(years.begin(), years.end());

  const int width = std::max<int>(4, static_cast<int>(std::to_string(n).size()));
  auto make_id = [&](std::size_t i) {
    std::string digits = std::to_string(i);
    return "a" + std::string(width - digits.size(), '0') + digits;
  };

  std::vector<bool> relevant(n);
  std::vector<Article> articles(n);
  GeneratedCorpus out;
  for (std::size_t i = 0; i < n; ++i) {
    relevant[i] = rng.bernoulli(params.relevant_fraction);
    Article& a = articles[i];
    a.id = make_id(i);
    a.year = years[i];
    a.pub_type = draw_pub_type(rng);
    const bool on_topic = relevant[i] || rng.bernoulli(params.off_topic_match_fraction);
    a.title = "Synthetic study " + std::to_string(i);
    if (on_topic && !params.topic_terms.empty()) {
      a.title += " on " + join(params.topic_terms);
      a.keywords = params.topic_terms;
    }
    Verdict v = Verdict::Exclude;
    if (relevant[i]) {
      v = Verdict::Include;
    } else if (rng.bernoulli(params.borderline_fraction)) {
      v = Verdict::Borderline;
    }
    out.oracle.emplace(a.id, v);
  }

  // Two trees so a relevant citer can aim at relevant targets only.
  WeightTree rel_tree(n), other_tree(n);
  std::vector<int> in_degree(n, 0);
  auto weight = [&](std::size_t i) { return std::pow(in_degree[i] + 1.0, params.preferential_exponent); };
  for (std::size_t i = 0; i < n; ++i) (relevant[i] ? rel_tree : other_tree).set(i, weight(i));

  std::vector<Edge> edges;
  std::size_t older = 0;  // articles [0, older) are strictly older than article i
  for (std::size_t i = 0; i < n; ++i) {
    while (years[older] < years[i]) ++older;
    if (older == 0) continue;
    const int want = std::min<int>(rng.poisson(params.mean_out_degree), static_cast<int>(older));
    std::set<std::size_t> chosen;
    for (int attempts = 0; static_cast<int>(chosen.size()) < want && attempts < want * 20; ++attempts) {
      long pick;
      if (relevant[i]) {
        const bool same = rng.bernoulli(params.homophily);
        const WeightTree& primary = same ? rel_tree : other_tree;
        const WeightTree& fallback = same ? other_tree : rel_tree;
        pick = primary.sample(older, rng.uniform());
        if (pick < 0) pick = fallback.sample(older, rng.uniform());
      } else {
        const double both = rel_tree.prefix(older) + other_tree.prefix(older);
        const bool rel = rng.uniform() * both < rel_tree.prefix(older);
        pick = (rel ? rel_tree : other_tree).sample(older, rng.uniform());
      }
      if (pick < 0 || !chosen.insert(static_cast<std::size_t>(pick)).second) continue;
      const auto t = static_cast<std::size_t>(pick);
      ++in_degree[t];
      (relevant[t] ? rel_tree : other_tree).set(t, weight(t));
      edges.emplace_back(articles[i].id, articles[t].id);
    }
  }
  out.graph = build_graph(std::move(articles), edges);
  return out;
}

Scenario paper_shape_scenario() {
  Scenario s;
  s.params.n_articles = 600;
  s.params.year_from = 1990;
  s.params.year_to = 2014;
  s.params.relevant_fraction = 0.2;
  s.params.mean_out_degree = 3.0;
  s.params.homophily = 0.5;
  s.params.preferential_exponent = 1.0;
  s.params.borderline_fraction = 0.03;
  s.params.off_topic_match_fraction = 0.05;
  s.params.topic_terms = {"industry", "academia", "collaboration", "software", "engineering"};
  s.params.seed = 20;
  s.corpus = generate(s.params);

  s.query.terms = s.params.topic_terms;
  s.query.year_from = 2010;
  s.query.year_to = 2014;
  s.query.pub_types = {PubType::Journal, PubType::Conference};
  s.config.cutoff_year = 2014;
  return s;
}

}  // namespace snowball
