#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace avor3 {

enum class ErrorKind {
  NotUnimodular,
  NotRankOneVector,
  DimOutOfRange,
  InconclusiveAtBound,
  SpanDeficient,
  NotAFace,
  NotClosedWithinCap,
  CharacterNotMultiplicative,
  NonIntegralInvariant,
  UnsupportedTwist,
  NegativeTwist,
  NoConsistentAssignment,
  Ambiguous,
  AssignmentCapExceeded,
  SplitNotJustified,
  MissingTag,
  InvariantNotConcentrated,
  MismatchWithTable,
  InvalidInput,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace avor3
