#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace piranha {

enum class ErrorCode {
  InvalidArgument,
  InvalidShape,
  NotSymmetric,
  DiagonalNotUnit,
  EntryOutOfRange,
  NotPositiveSemiDefinite,
  ConvergenceFailure,
  RhoOutOfRange,
  SingularMatrix,
  DimensionMismatch,
  EmptySubset,
  IndexOutOfRange,
  OverlappingSubsets,
  InvalidPermutation,
  InvalidDistribution,
  JointTooLarge,
  ConstantVector,
  ParseError,
  MissingValue,
  TooFewRows,
  RaggedRow,
  UnknownColumn,
  ConstantColumn,
  ShapeError,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Base exception for every failure raised by the library. The code is
/// stable and suitable for programmatic dispatch; the message is for humans.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace piranha
