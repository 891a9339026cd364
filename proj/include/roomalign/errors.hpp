#pragma once

#include <stdexcept>
#include <string>

namespace roomalign {

/// Input failed schema or invariant checks. Maps to CLI exit code 2.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A scenario template admits no feasible placement. Maps to exit code 3.
class UnsatisfiableError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An embedding provider could not produce a vector. Maps to exit code 4.
class ProviderError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace roomalign
