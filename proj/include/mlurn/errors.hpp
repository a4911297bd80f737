#pragma once

#include <stdexcept>

namespace mlurn {

// Work refused because it would exceed a configured size/time cap.
struct ResourceGuardError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// An iterative method failed to reach its tolerance within its budget.
struct NonConvergenceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace mlurn
