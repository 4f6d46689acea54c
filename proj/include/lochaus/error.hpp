#pragma once

#include <stdexcept>
#include <string>

namespace lochaus {

/// Input or invariant violation. The message names the violated invariant.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

/// A computation that cannot proceed with the given parameters
/// (size guards, missing brackets, degenerate profiles).
class ComputeError : public std::runtime_error {
 public:
  explicit ComputeError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace lochaus
