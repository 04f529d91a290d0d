#pragma once

#include <stdexcept>
#include <string>

namespace nonholonomy {

/// Malformed caller input: dimension mismatches, out-of-range indices,
/// violated dimension bounds, parse errors.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A frame or coframe whose pointwise rank drops below its count.
class DegeneratePresentation : public InputError {
 public:
  DegeneratePresentation(const std::string& what, std::string point)
      : InputError(what + " at " + point), point_(std::move(point)) {}

  const std::string& point() const noexcept { return point_; }

 private:
  std::string point_;
};

/// An internal invariant failed, or a frame and coframe given for the same
/// distribution disagree. Surfaced as exit code 3.
class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace nonholonomy
