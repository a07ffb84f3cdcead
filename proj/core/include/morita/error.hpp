#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace morita {

enum class ErrorKind {
  NonUnitalFusion,
  NumericalFailure,
  InconsistentAction,
  MissingBlock,
  ShapeMismatch,
  AlgebraMismatch,
  DecompositionFailure,
  DegenerateSpectrum,
  RankAmbiguous,
  GradingMismatch,
  PipelineInconsistent,
  MismatchedRank,
  InvalidInput,
  ParseError,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library carries a machine-readable kind so that
/// callers (and the CLI) can map it to a diagnostic without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace morita
