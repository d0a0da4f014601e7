#pragma once

#include <string>
#include <vector>

namespace sfdd {

inline constexpr const char* kToolVersion = "sfdd 0.1.0";

/** Entry point of the command-line tool; args are argv[1..argc-1].
 * Exit codes: 0 success, 1 verification failure, 2 configuration or
 * geometry error, 3 non-convergence. */
int run_cli(const std::vector<std::string>& args);

}  // namespace sfdd
