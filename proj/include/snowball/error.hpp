#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace snowball {

// Every failure the library reports carries one of these kinds so callers
// (and the CLI exit-code mapping) can branch without parsing messages.
enum class ErrorKind {
  // corpus
  InvalidArticle,
  DuplicateArticleId,
  UnknownEdgeEndpoint,
  SelfCitation,
  UnknownArticle,
  SupersedesCycle,
  SupersedesUnknownTarget,
  // screening
  InvalidScoreValue,
  WrongStage,
  InvalidPanel,
  ThresholdsRequired,
  UnknownReviewer,
  NominationOutsidePool,
  MissingDecision,
  ScoreArityMismatch,
  // engine
  EmptyTermList,
  InvalidQuery,
  InvalidConfig,
  StartSetNotIncluded,
  // provenance
  NotInTrace,
  TraceNotFull,
  // metrics
  ZeroBaseline,
  EmptyGold,
  // synthgen
  InvalidParams,
  // ingest
  ParseError,
  InvariantViolation,
  SchemaVersionMismatch,
  RemoteUnavailable,
  MalformedResponse,
  Io,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message),
        kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace snowball
