#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "snowball/corpus.hpp"
#include "snowball/engine.hpp"
#include "snowball/screening.hpp"

namespace snowball {

struct GenParams {
  std::size_t n_articles = 200;
  int year_from = 1995;
  int year_to = 2014;
  double relevant_fraction = 0.1;
  double mean_out_degree = 5.0;
  // Probability that a citation from a relevant article targets a relevant one.
  double homophily = 0.5;
  double preferential_exponent = 1.0;
  std::uint64_t seed = 1;
  // Share of non-relevant articles the oracle marks borderline.
  double borderline_fraction = 0.0;
  // Terms attached to relevant articles (and to a share of the others) so a
  // database search can find them.
  std::vector<std::string> topic_terms = {"snowballing", "search"};
  double off_topic_match_fraction = 0.0;

  // Throws InvalidParams.
  void validate() const;
};

struct GeneratedCorpus {
  CitationGraph graph;
  VerdictOracle oracle;
};

// Seeded citation graph. Articles cite only strictly older articles, so the
// result is acyclic; targets are drawn by preferential attachment on
// (in-degree + 1)^exponent.
GeneratedCorpus generate(const GenParams& params);

struct Scenario {
  GenParams params;
  GeneratedCorpus corpus;
  Query query;
  SearchConfig config;
};

// Fixed-seed scenario whose start set holds only recent articles and whose
// strategy counts order as S1 > S3 > S2 and S1 > S4.
Scenario paper_shape_scenario();

}  // namespace snowball
