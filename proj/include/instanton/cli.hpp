#pragma once

#include <ostream>
#include <string>

namespace instanton::cli {

inline constexpr const char* kVersion = "0.1.0";

// exit codes: 0 verified, 1 verification failed or inconclusive, 2 usage or configuration error
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace instanton::cli
