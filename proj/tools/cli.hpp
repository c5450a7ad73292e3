#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace bilinear::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kParseError = 1;
inline constexpr int kValidationError = 2;
inline constexpr int kNoAlgorithm = 3;

// args[0] is the program name. JSON goes to out, diagnostics to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bilinear::cli
