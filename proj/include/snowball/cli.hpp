#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "snowball/engine.hpp"
#include "snowball/strategy.hpp"

namespace snowball::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kDataError = 2,
  kInvariantFailure = 3,
};

// Parsed run configuration file; command-line flags override its values.
struct RunConfig {
  std::optional<Query> query;
  std::optional<std::vector<ArticleId>> start_set;
  SearchConfig search;
  std::vector<StrategyId> strategies;
};

// Unknown strategy names throw CLI-level usage errors (UsageError).
RunConfig load_run_config(const std::filesystem::path& path);

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Cache directory for remote lookups; SNOWBALL_CACHE_DIR overrides the default.
std::filesystem::path cache_dir();

int run(int argc, char** argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace snowball::cli
