#include "avor3/error.hpp"

namespace avor3 {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotUnimodular: return "NotUnimodular";
    case ErrorKind::NotRankOneVector: return "NotRankOneVector";
    case ErrorKind::DimOutOfRange: return "DimOutOfRange";
    case ErrorKind::InconclusiveAtBound: return "InconclusiveAtBound";
    case ErrorKind::SpanDeficient: return "SpanDeficient";
    case ErrorKind::NotAFace: return "NotAFace";
    case ErrorKind::NotClosedWithinCap: return "NotClosedWithinCap";
    case ErrorKind::CharacterNotMultiplicative: return "CharacterNotMultiplicative";
    case ErrorKind::NonIntegralInvariant: return "NonIntegralInvariant";
    case ErrorKind::UnsupportedTwist: return "UnsupportedTwist";
    case ErrorKind::NegativeTwist: return "NegativeTwist";
    case ErrorKind::NoConsistentAssignment: return "NoConsistentAssignment";
    case ErrorKind::Ambiguous: return "Ambiguous";
    case ErrorKind::AssignmentCapExceeded: return "AssignmentCapExceeded";
    case ErrorKind::SplitNotJustified: return "SplitNotJustified";
    case ErrorKind::MissingTag: return "MissingTag";
    case ErrorKind::InvariantNotConcentrated: return "InvariantNotConcentrated";
    case ErrorKind::MismatchWithTable: return "MismatchWithTable";
    case ErrorKind::InvalidInput: return "InvalidInput";
  }
  return "Unknown";
}

}  // namespace avor3
