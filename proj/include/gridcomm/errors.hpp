#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace gridcomm {

/// Malformed case file (bad JSON, missing or mistyped fields).
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A grid that breaks one or more model invariants. Carries every violation
/// found, not just the first.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(std::vector<std::string> violations);

  const std::vector<std::string>& violations() const noexcept { return violations_; }

 private:
  std::vector<std::string> violations_;
};

/// The reduced susceptance matrix could not be inverted.
class SingularMatrixError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A graph with no usable edge weight (M = 0), or a transaction no branch responds to.
class DegenerateGraphError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Exhaustive enumeration refused because the search space exceeds the cap.
class InstanceTooLargeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace gridcomm
