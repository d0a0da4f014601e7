#pragma once

#include <stdexcept>
#include <string>

namespace sfdd {

/** A quadrature or evaluation could not reach its accuracy target. */
struct accuracy_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/** A scan grid is too coarse to resolve the feature it is looking for. */
struct resolution_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/** No admissible discrete configuration exists for the request. */
struct infeasible_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/** Not enough usable data to compute the requested statistic. */
struct insufficient_data_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace sfdd
