#pragma once

#include <stdexcept>
#include <string>

namespace contract {

struct InvalidSetError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Raised when an exponential oracle is asked to run above its size cap.
struct ScaleError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ParameterError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Algorithm and instance kind do not match.
struct IncompatibleError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct SeparationDivergence : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace contract
