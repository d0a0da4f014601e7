#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace sfdd {

struct CheckResult {
  std::string name;
  bool pass;
  std::string detail;
};

/** Run the invariant checks of one module ("kernels", "fourier", "dtd",
 * "schwarz") or "all". Randomized test vectors are drawn from the given
 * seed, so results are reproducible. Throws std::invalid_argument for an
 * unknown suite name. */
std::vector<CheckResult> verify_suite(const std::string& suite, std::uint64_t seed);

}  // namespace sfdd
