#include "snowball/error.hpp"

namespace snowball {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArticle: return "InvalidArticle";
    case ErrorKind::DuplicateArticleId: return "DuplicateArticleId";
    case ErrorKind::UnknownEdgeEndpoint: return "UnknownEdgeEndpoint";
    case ErrorKind::SelfCitation: return "SelfCitation";
    case ErrorKind::UnknownArticle: return "UnknownArticle";
    case ErrorKind::SupersedesCycle: return "SupersedesCycle";
    case ErrorKind::SupersedesUnknownTarget: return "SupersedesUnknownTarget";
    case ErrorKind::InvalidScoreValue: return "InvalidScoreValue";
    case ErrorKind::WrongStage: return "WrongStage";
    case ErrorKind::InvalidPanel: return "InvalidPanel";
    case ErrorKind::ThresholdsRequired: return "ThresholdsRequired";
    case ErrorKind::UnknownReviewer: return "UnknownReviewer";
    case ErrorKind::NominationOutsidePool: return "NominationOutsidePool";
    case ErrorKind::MissingDecision: return "MissingDecision";
    case ErrorKind::ScoreArityMismatch: return "ScoreArityMismatch";
    case ErrorKind::EmptyTermList: return "EmptyTermList";
    case ErrorKind::InvalidQuery: return "InvalidQuery";
    case ErrorKind::InvalidConfig: return "InvalidConfig";
    case ErrorKind::StartSetNotIncluded: return "StartSetNotIncluded";
    case ErrorKind::NotInTrace: return "NotInTrace";
    case ErrorKind::TraceNotFull: return "TraceNotFull";
    case ErrorKind::ZeroBaseline: return "ZeroBaseline";
    case ErrorKind::EmptyGold: return "EmptyGold";
    case ErrorKind::InvalidParams: return "InvalidParams";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::InvariantViolation: return "InvariantViolation";
    case ErrorKind::SchemaVersionMismatch: return "SchemaVersionMismatch";
    case ErrorKind::RemoteUnavailable: return "RemoteUnavailable";
    case ErrorKind::MalformedResponse: return "MalformedResponse";
    case ErrorKind::Io: return "Io";
  }
  return "Unknown";
}

}  // namespace snowball
