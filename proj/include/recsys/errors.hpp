#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace recsys {

// Error taxonomy; the CLI maps each category to a fixed exit code.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ValidateError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ComputeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Training blew up (NaN/Inf in the factors). Carries the offending step.
struct DivergedError : ComputeError {
  std::size_t step;
  DivergedError(std::size_t step_, const std::string& message)
      : ComputeError(message), step(step_) {}
};

}  // namespace recsys
