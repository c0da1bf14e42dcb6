#pragma once

#include <stdexcept>

namespace degwalk {

// Degree sequence admits no simple graph.
struct InfeasibleError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Rejection sampling hit its retry limit without producing a simple graph.
struct ExhaustedError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace degwalk
