#pragma once

#include <stdexcept>
#include <string>

namespace robustsched {

// Malformed input text (instance files, suite configs).
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Data or argument violates a documented precondition.
struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Problem size exceeds an exact method's cap.
struct SizeCapError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace robustsched
