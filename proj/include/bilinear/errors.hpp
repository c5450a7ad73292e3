#pragma once

#include <stdexcept>
#include <string>

namespace bilinear {

enum class ErrorCode {
  kParse,
  kDimensionMismatch,
  kRankExceeded,
  kMalformedProgram,
  kNotOptimal,
  kNonCompactStrategySet,
  kEmptyStrategySet,
  kInfeasibleStrategy,
  kPointNotInPolytope,
  kInvalidPrior,
  kNotPerfectRecall,
  kMalformedTree,
  kNotSymmetric,
  kNotZeroSum,
  kNotRankOne,
  kDegenerateFace,
  kDegenerateGame,
  kNonPositiveDecomposition,
  kTooLarge,
  kNoApplicableAlgorithm,
  kInvalidArgument,
};

const char* error_code_name(ErrorCode code);

// Single exception type for the library; callers switch on code().
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace bilinear
