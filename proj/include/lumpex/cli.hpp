#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace lumpex {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 1;
inline constexpr int kExitVacuous = 2;

/// Command-line entry point; `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lumpex
