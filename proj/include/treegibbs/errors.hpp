#pragma once

#include <stdexcept>
#include <string>

namespace treegibbs {

// Bad user input: malformed tree files, out-of-domain parameters, unsupported combinations.
struct input_error : std::runtime_error {
  explicit input_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Numerics gave up: non-convergent quadrature, positivity loss, normalization drift.
struct numerical_error : std::runtime_error {
  explicit numerical_error(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace treegibbs
