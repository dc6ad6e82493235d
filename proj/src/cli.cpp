#include "snowball/cli.hpp"

#include <cstdlib>
#include <iostream>
#include <map>
#include <set>

#include "CLI11.hpp"
#include "snowball/error.hpp"
#include "snowball/ingest.hpp"
#include "snowball/metrics.hpp"
#include "snowball/provenance.hpp"
#include "snowball/provider.hpp"
#include "snowball/synthgen.hpp"

namespace snowball::cli {

namespace fs = std::filesystem;

namespace {

StrategyId strategy_or_usage(const std::string& name) {
  auto id = parse_strategy(name);
  if (!id) throw UsageError("unknown strategy '" + name + "'; expected one of: " + strategy_names());
  return *id;
}

Query query_from_json(const Json& j) {
  Query q;
  q.terms = j.at("terms").get<std::vector<std::string>>();
  q.year_from = j.value("year_from", q.year_from);
  q.year_to = j.value("year_to", q.year_to);
  if (j.contains("pub_types")) {
    q.pub_types.clear();
    for (const auto& t : j["pub_types"]) {
      auto p = parse_pub_type(t.get<std::string>());
      if (!p) throw Error(ErrorKind::ParseError, "query: unknown publication type " + t.dump());
      q.pub_types.insert(*p);
    }
  }
  const auto match = j.value("match", std::string("substring"));
  if (match == "token") {
    q.match = MatchMode::Token;
  } else if (match != "substring") {
    throw Error(ErrorKind::ParseError, "query: match must be 'substring' or 'token'");
  }
  return q.validate();
}

Json query_to_json(const Query& q) {
  Json types = Json::array();
  for (auto t : q.pub_types) types.push_back(std::string(to_string(t)));
  return Json{{"terms", q.terms},
              {"year_from", q.year_from},
              {"year_to", q.year_to},
              {"pub_types", types},
              {"match", q.match == MatchMode::Token ? "token" : "substring"}};
}

GenParams params_from_json(const Json& j) {
  GenParams p;
  p.n_articles = j.value("n_articles", p.n_articles);
  p.year_from = j.value("year_from", p.year_from);
  p.year_to = j.value("year_to", p.year_to);
  p.relevant_fraction = j.value("relevant_fraction", p.relevant_fraction);
  p.mean_out_degree = j.value("mean_out_degree", p.mean_out_degree);
  p.homophily = j.value("homophily", p.homophily);
  p.preferential_exponent = j.value("preferential_exponent", p.preferential_exponent);
  p.seed = j.value("seed", p.seed);
  p.borderline_fraction = j.value("borderline_fraction", p.borderline_fraction);
  p.topic_terms = j.value("topic_terms", p.topic_terms);
  p.off_topic_match_fraction = j.value("off_topic_match_fraction", p.off_topic_match_fraction);
  return p;
}

void print_warnings(const std::vector<std::string>& warnings, std::ostream& err) {
  for (const auto& w : warnings) err << "warning: " << w << '\n';
}

Json start_set_to_json(const StartSet& s) {
  Json records = Json::object();
  for (const auto& r : s.records) records[r.article] = record_to_json(r);
  return Json{{"schema_version", kSchemaVersion}, {"included", s.included},   {"records", records},
              {"query", query_to_json(s.final_query)},  {"widenings", s.widenings}, {"exhausted", s.exhausted},
              {"warnings", s.warnings}};
}

struct Inputs {
  LoadedCorpus corpus;
  RunConfig config;
  Decider decider;
};

Inputs load_inputs(const std::string& corpus, const std::string& edges, bool strict, const std::string& decisions,
                   const std::string& config_path) {
  Inputs in;
  in.corpus = load_corpus(corpus, {strict, edges});
  in.config = config_path.empty() ? RunConfig{} : load_run_config(config_path);
  in.decider = load_decisions(decisions, in.config.search.policy.panel());
  return in;
}

// Explicit start set from the config, or database search plus screening.
std::vector<ArticleId> resolve_start(const Inputs& in, const fs::path& out_dir, std::ostream& err) {
  if (in.config.start_set) return *in.config.start_set;
  if (!in.config.query) throw Error(ErrorKind::InvalidConfig, "config needs either 'query' or 'start_set'");
  StartSet s = build_start_set(in.corpus.graph, *in.config.query, in.decider, in.config.search);
  print_warnings(s.warnings, err);
  write_text_file(out_dir / "start_set.json", dump_stable(start_set_to_json(s)));
  return s.included;
}

int cmd_generate(const std::string& params_path, std::optional<std::uint64_t> seed, bool paper_shape,
                 const fs::path& out_dir, std::ostream& out) {
  Scenario s;
  if (paper_shape) {
    s = paper_shape_scenario();
  } else {
    if (params_path.empty()) throw UsageError("generate needs --params or --paper-shape");
    s.params = params_from_json(read_json_file(params_path));
    if (seed) s.params.seed = *seed;
    s.corpus = generate(s.params);
    s.query.terms = s.params.topic_terms;
    s.query.year_to = s.params.year_to;
    s.query.year_from = std::max(s.params.year_from, s.params.year_to - 4);
    s.config.cutoff_year = s.params.year_to;
  }
  save_corpus(s.corpus.graph, out_dir / "corpus.json");
  save_decisions(Decider(s.corpus.oracle), s.config.policy.panel(), out_dir / "decisions.json");
  Json config = config_to_json(s.config);
  if (!s.query.terms.empty()) config["query"] = query_to_json(s.query);
  config["schema_version"] = kSchemaVersion;
  write_text_file(out_dir / "config.json", dump_stable(config));
  out << "generated " << s.corpus.graph.article_count() << " articles, " << s.corpus.graph.edge_count()
      << " edges (seed " << s.params.seed << ") into " << out_dir.string() << '\n';
  return kOk;
}

int cmd_ingest(const std::string& corpus, const std::string& edges, bool strict, bool dedupe,
               const std::string& out_path, std::ostream& out, std::ostream& err) {
  LoadedCorpus c = load_corpus(corpus, {strict, edges});
  print_warnings(c.warnings, err);
  CitationGraph g = dedupe ? dedupe_versions(c.graph) : std::move(c.graph);

  std::map<PubType, long> by_type;
  long missing_year = 0;
  std::optional<int> max_year;
  for (const Article* a : g.articles()) {
    ++by_type[a->pub_type];
    if (!a->year) ++missing_year;
    if (a->year && (!max_year || *a->year > *max_year)) max_year = a->year;
  }
  out << "articles: " << g.article_count() << '\n' << "edges: " << g.edge_count() << '\n';
  if (auto lo = g.min_year()) out << "years: " << *lo << ".." << *max_year << '\n';
  out << "missing_year: " << missing_year << '\n';
  for (const auto& [t, n] : by_type) out << "type." << to_string(t) << ": " << n << '\n';
  out << "duplicate_title_groups: " << duplicate_titles(g).size() << '\n';
  if (!out_path.empty()) save_corpus(g, out_path);
  return kOk;
}

std::unique_ptr<CitationProvider> remote_provider(const std::string& url) {
  RemoteOptions opts;
  opts.cache_dir = cache_dir();
  return std::make_unique<RemoteProvider>(make_http_transport(url), opts);
}

int cmd_search(const Inputs& in, StrategyId strategy, const std::string& remote, const fs::path& out_dir,
               std::ostream& out, std::ostream& err) {
  const auto start = resolve_start(in, out_dir, err);
  std::unique_ptr<CitationProvider> provider;
  std::unique_ptr<ProviderSource> remote_source;
  const CitationSource* source = &in.corpus.graph;
  if (!remote.empty()) {
    provider = remote_provider(remote);
    remote_source = std::make_unique<ProviderSource>(*provider, in.corpus.graph);
    source = remote_source.get();
  }
  RunOutput run = run_strategy(*source, start, strategy, in.decider, in.config.search);
  print_warnings(run.warnings, err);
  const std::string name(to_string(strategy));
  export_trace(run.trace, out_dir / ("trace_" + name + ".json"));
  write_text_file(out_dir / ("result_" + name + ".json"), dump_stable(result_to_json(run.result)));
  const auto report = build_report({run.result});
  out << report_text(report);
  return kOk;
}

int cmd_simulate(const Inputs& in, const fs::path& out_dir, std::ostream& out, std::ostream& err) {
  const auto start = resolve_start(in, out_dir, err);
  std::vector<StrategyId> strategies = in.config.strategies;
  if (strategies.empty()) strategies.assign(std::begin(kAllStrategies), std::end(kAllStrategies));
  if (std::find(strategies.begin(), strategies.end(), StrategyId::S1_BS_FS_FULL) == strategies.end()) {
    strategies.push_back(StrategyId::S1_BS_FS_FULL);
  }

  auto runs = run_strategies(in.corpus.graph, start, in.decider, in.config.search, strategies);
  const SearchTrace* full = nullptr;
  for (const auto& r : runs) {
    if (r.result.strategy == StrategyId::S1_BS_FS_FULL) full = &r.trace;
  }

  std::vector<StrategyResult> results;
  std::vector<std::string> mismatches;
  std::set<std::string> warned;
  for (const auto& r : runs) {
    for (const auto& w : r.warnings) {
      if (warned.insert(w).second) err << "warning: " << w << '\n';
    }
    const StrategyResult projected = project(*full, r.result.strategy);
    if (projected.included != r.result.included) {
      mismatches.push_back(std::string(to_string(r.result.strategy)) + ": projected " +
                           std::to_string(projected.included.size()) + " vs direct " +
                           std::to_string(r.result.included.size()));
    }
    export_trace(r.trace, out_dir / "traces" / ("trace_" + std::string(to_string(r.result.strategy)) + ".json"));
    results.push_back(r.result);
  }
  const auto report = build_report(results);
  write_text_file(out_dir / "report.txt", report_text(report));
  write_text_file(out_dir / "strategies.csv", rows_csv(report));
  write_text_file(out_dir / "overlap.csv", overlap_csv(report));
  out << report_text(report);
  if (!mismatches.empty()) {
    for (const auto& m : mismatches) err << "projection mismatch: " << m << '\n';
    return kInvariantFailure;
  }
  out << "projection check: all " << runs.size() << " strategies match the S1 trace\n";
  return kOk;
}

int cmd_screen(const std::string& scores_path, const fs::path& out_path, std::ostream& out, std::ostream& err) {
  ScoreSheet sheet = load_score_sheet(scores_path);
  const ScreeningPolicy policy(sheet.panel);

  std::set<ArticleId> rejected;
  for (const auto& [id, e] : sheet.scores) {
    if (title_stage_decision(e.title, policy.thresholds()) == TitleDecision::Reject) rejected.insert(id);
  }
  if (!sheet.wildcard_rounds.empty()) {
    const WildcardOutcome w = apply_wildcards(sheet.panel, sheet.wildcard_rounds, rejected);
    if (w.pool_exhausted) {
      err << "warning: only " << w.selected.size() << " wild cards for a panel of " << sheet.panel.size() << '\n';
    }
    for (auto& [id, e] : sheet.scores) {
      auto it = w.nominated_by.find(id);
      e.wildcard_by = it == w.nominated_by.end() ? std::nullopt : std::optional<std::string>(it->second);
    }
  }

  Json records = Json::object();
  std::map<std::string, Json> lists;
  for (const char* k : {"included", "borderline", "excluded", "rejected_at_title", "wildcards", "awaiting_full_text"}) {
    lists[k] = Json::array();
  }
  const Decider decider(sheet.scores);
  for (const auto& [id, e] : sheet.scores) {
    const bool advances = title_stage_decision(e.title, policy.thresholds()) == TitleDecision::Advance;
    if ((advances || e.wildcard_by) && !e.full_text) {
      lists["awaiting_full_text"].push_back(id);
      continue;
    }
    const ScreeningRecord r = screen(id, decider, policy);
    records[id] = record_to_json(r);
    lists[std::string(to_string(r.decision))].push_back(id);
    if (r.wildcard_nominated_by) lists["wildcards"].push_back(id);
  }
  Json result{{"schema_version", kSchemaVersion}, {"records", records}};
  for (auto& [k, v] : lists) result[k] = v;
  write_text_file(out_path, dump_stable(result));
  for (const auto& [k, v] : lists) out << k << ": " << v.size() << '\n';
  return kOk;
}

std::set<ArticleId> load_gold(const fs::path& path) {
  const Json j = read_json_file(path);
  std::set<ArticleId> gold;
  if (j.is_array()) {
    for (const auto& id : j) gold.insert(id.get<std::string>());
  } else if (j.contains("gold")) {
    for (const auto& id : j["gold"]) gold.insert(id.get<std::string>());
  } else if (j.contains("verdicts")) {
    for (const auto& [id, v] : j["verdicts"].items()) {
      if (v == "include") gold.insert(id);
    }
  } else {
    throw Error(ErrorKind::ParseError, path.string() + ": expected an id array, {\"gold\": [...]} or verdicts");
  }
  return gold;
}

int cmd_report(const fs::path& traces_dir, const fs::path& gold_path, const fs::path& out_dir, std::ostream& out) {
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(traces_dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  if (files.empty()) throw Error(ErrorKind::Io, "no trace files in " + traces_dir.string());

  const auto gold = load_gold(gold_path);
  std::vector<StrategyResult> results;
  for (const auto& f : files) results.push_back(summarize(load_trace(f)));
  const auto report = build_report(results);

  std::ostringstream csv;
  csv << "strategy,included,recall,precision,quasi_sensitive\n";
  std::ostringstream text;
  text << report_text(report) << '\n';
  auto sorted = results;
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const auto& a, const auto& b) { return report_rank(a.strategy) < report_rank(b.strategy); });
  for (const auto& r : sorted) {
    const double rec = recall(r.included, gold);
    const double prec = precision(r.included, gold, r.effort.candidates_assessed);
    char line[160];
    std::snprintf(line, sizeof line, "%s,%zu,%.4f,%.4f,%s\n", std::string(to_string(r.strategy)).c_str(),
                  r.included.size(), rec, prec, meets_quasi_sensitivity(rec) ? "yes" : "no");
    csv << line;
    std::snprintf(line, sizeof line, "%-16s recall %.3f  precision %.3f%s\n",
                  std::string(to_string(r.strategy)).c_str(), rec, prec,
                  meets_quasi_sensitivity(rec) ? "" : "  (below 0.8)");
    text << line;
  }
  write_text_file(out_dir / "recall.csv", csv.str());
  write_text_file(out_dir / "strategies.csv", rows_csv(report));
  write_text_file(out_dir / "overlap.csv", overlap_csv(report));
  write_text_file(out_dir / "report.txt", text.str());
  out << text.str();
  return kOk;
}

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvariantViolation:
    case ErrorKind::TraceNotFull:
      return kInvariantFailure;
    case ErrorKind::EmptyTermList:
    case ErrorKind::InvalidQuery:
    case ErrorKind::InvalidConfig:
    case ErrorKind::InvalidParams:
    case ErrorKind::ThresholdsRequired:
      return kUsage;
    default:
      return kDataError;
  }
}

}  // namespace

fs::path cache_dir() {
  if (const char* env = std::getenv("SNOWBALL_CACHE_DIR"); env && *env) return env;
  return ".snowball-cache";
}

RunConfig load_run_config(const fs::path& path) {
  const Json j = read_json_file(path);
  RunConfig rc;
  try {
    if (!j.is_object()) throw Error(ErrorKind::ParseError, path.string() + ": config must be an object");
    if (j.contains("schema_version") && j["schema_version"] != kSchemaVersion) {
      throw Error(ErrorKind::SchemaVersionMismatch, path.string());
    }
    rc.search = config_from_json(j);
    if (j.contains("query")) rc.query = query_from_json(j["query"]);
    if (j.contains("start_set")) rc.start_set = j["start_set"].get<std::vector<std::string>>();
    if (j.contains("strategies")) {
      for (const auto& s : j["strategies"]) rc.strategies.push_back(strategy_or_usage(s.get<std::string>()));
    }
  } catch (const Json::exception& e) {
    throw Error(ErrorKind::ParseError, path.string() + ": " + e.what());
  }
  rc.search.validate();
  return rc;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Hybrid literature-search engine: database search plus backward/forward snowballing"};
  app.require_subcommand(1);

  std::string corpus, edges, decisions, config, out_dir, strategy, params, scores, traces, gold, remote, out_file;
  bool strict = false, dedupe = false, paper_shape = false;
  std::optional<std::uint64_t> seed;
  std::optional<int> cutoff;

  auto* gen = app.add_subcommand("generate", "write a synthetic corpus, verdict oracle and config");
  gen->add_option("--params", params, "generator parameters (JSON)")->check(CLI::ExistingFile);
  gen->add_option("--seed", seed, "override the parameter file's seed");
  gen->add_flag("--paper-shape", paper_shape, "write the fixed recent-start-set scenario instead");
  gen->add_option("--out", out_dir, "output directory")->required();

  auto* ing = app.add_subcommand("ingest", "validate a corpus and print statistics");
  ing->add_option("--corpus", corpus, "corpus file")->required()->check(CLI::ExistingFile);
  ing->add_option("--edges", edges, "alternative citing,cited CSV edge list")->check(CLI::ExistingFile);
  ing->add_flag("--strict", strict, "reject unknown fields");
  ing->add_flag("--dedupe", dedupe, "drop superseded versions");
  ing->add_option("--out", out_file, "write the canonical corpus here");

  auto add_run_options = [&](CLI::App* cmd) {
    cmd->add_option("--corpus", corpus, "corpus file")->required()->check(CLI::ExistingFile);
    cmd->add_option("--edges", edges, "alternative citing,cited CSV edge list")->check(CLI::ExistingFile);
    cmd->add_option("--decisions", decisions, "decision file")->required()->check(CLI::ExistingFile);
    cmd->add_option("--config", config, "run configuration")->check(CLI::ExistingFile);
    cmd->add_option("--out", out_dir, "output directory")->required();
    cmd->add_option("--cutoff", cutoff, "override cutoff_year");
    cmd->add_flag("--strict", strict, "reject unknown corpus fields");
  };
  auto* search = app.add_subcommand("search", "run one strategy and write its trace and result");
  add_run_options(search);
  search->add_option("--strategy", strategy, "strategy id: " + strategy_names())->required();
  search->add_option("--remote", remote, "fetch neighbourhoods from this provider URL");

  auto* sim = app.add_subcommand("simulate", "run every strategy, check projections, write the comparison");
  add_run_options(sim);

  auto* scr = app.add_subcommand("screen", "aggregate a score sheet into decisions");
  scr->add_option("--scores", scores, "score sheet")->required()->check(CLI::ExistingFile);
  scr->add_option("--out", out_file, "decision output file")->required();

  auto* rep = app.add_subcommand("report", "recall/precision/overlap tables from stored traces");
  rep->add_option("--traces", traces, "directory of trace files")->required()->check(CLI::ExistingDirectory);
  rep->add_option("--gold", gold, "gold-standard id list")->required()->check(CLI::ExistingFile);
  rep->add_option("--out", out_dir, "output directory")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  if (!reversed.empty()) reversed.pop_back();  // program name
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*gen) return cmd_generate(params, seed, paper_shape, out_dir, out);
    if (*ing) return cmd_ingest(corpus, edges, strict, dedupe, out_file, out, err);
    if (*scr) return cmd_screen(scores, out_file, out, err);
    if (*rep) return cmd_report(traces, gold, out_dir, out);

    std::optional<StrategyId> chosen;
    if (*search) chosen = strategy_or_usage(strategy);
    Inputs in = load_inputs(corpus, edges, strict, decisions, config);
    print_warnings(in.corpus.warnings, err);
    if (cutoff) in.config.search.cutoff_year = *cutoff;
    in.config.search.validate();
    if (*search) return cmd_search(in, *chosen, remote, out_dir, out, err);
    return cmd_simulate(in, out_dir, out, err);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e.kind());
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kDataError;
  } catch (const Json::exception& e) {
    err << "error: " << e.what() << '\n';
    return kDataError;
  }
}

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  return run(std::vector<std::string>(argv, argv + argc), out, err);
}

}  // namespace snowball::cli
