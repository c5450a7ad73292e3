#include "bilinear/errors.hpp"

namespace bilinear {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kParse: return "ParseError";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kRankExceeded: return "RankExceeded";
    case ErrorCode::kMalformedProgram: return "MalformedProgram";
    case ErrorCode::kNotOptimal: return "NotOptimal";
    case ErrorCode::kNonCompactStrategySet: return "NonCompactStrategySet";
    case ErrorCode::kEmptyStrategySet: return "EmptyStrategySet";
    case ErrorCode::kInfeasibleStrategy: return "InfeasibleStrategy";
    case ErrorCode::kPointNotInPolytope: return "PointNotInPolytope";
    case ErrorCode::kInvalidPrior: return "InvalidPrior";
    case ErrorCode::kNotPerfectRecall: return "NotPerfectRecall";
    case ErrorCode::kMalformedTree: return "MalformedTree";
    case ErrorCode::kNotSymmetric: return "NotSymmetric";
    case ErrorCode::kNotZeroSum: return "NotZeroSum";
    case ErrorCode::kNotRankOne: return "NotRankOne";
    case ErrorCode::kDegenerateFace: return "DegenerateFace";
    case ErrorCode::kDegenerateGame: return "DegenerateGame";
    case ErrorCode::kNonPositiveDecomposition: return "NonPositiveDecomposition";
    case ErrorCode::kTooLarge: return "TooLarge";
    case ErrorCode::kNoApplicableAlgorithm: return "NoApplicableAlgorithm";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
  }
  return "Error";
}

}  // namespace bilinear
