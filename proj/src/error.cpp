#include "piranha/error.hpp"

namespace piranha {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::InvalidShape: return "InvalidShape";
    case ErrorCode::NotSymmetric: return "NotSymmetric";
    case ErrorCode::DiagonalNotUnit: return "DiagonalNotUnit";
    case ErrorCode::EntryOutOfRange: return "EntryOutOfRange";
    case ErrorCode::NotPositiveSemiDefinite: return "NotPositiveSemiDefinite";
    case ErrorCode::ConvergenceFailure: return "ConvergenceFailure";
    case ErrorCode::RhoOutOfRange: return "RhoOutOfRange";
    case ErrorCode::SingularMatrix: return "SingularMatrix";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::EmptySubset: return "EmptySubset";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::OverlappingSubsets: return "OverlappingSubsets";
    case ErrorCode::InvalidPermutation: return "InvalidPermutation";
    case ErrorCode::InvalidDistribution: return "InvalidDistribution";
    case ErrorCode::JointTooLarge: return "JointTooLarge";
    case ErrorCode::ConstantVector: return "ConstantVector";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::MissingValue: return "MissingValue";
    case ErrorCode::TooFewRows: return "TooFewRows";
    case ErrorCode::RaggedRow: return "RaggedRow";
    case ErrorCode::UnknownColumn: return "UnknownColumn";
    case ErrorCode::ConstantColumn: return "ConstantColumn";
    case ErrorCode::ShapeError: return "ShapeError";
  }
  return "Unknown";
}

}  // namespace piranha
