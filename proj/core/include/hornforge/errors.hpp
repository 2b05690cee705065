#pragma once

#include <stdexcept>
#include <string>

namespace hornforge {

// Malformed or inconsistent input (bad file, foreign label, precondition
// violated by the caller). CLI exit status 2.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A configured limit (variable count, node budget, closure cap) was hit.
// CLI exit status 3.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An internal invariant failed; indicates a builder bug rather than bad input.
class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace hornforge
