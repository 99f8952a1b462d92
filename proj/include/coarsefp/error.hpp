#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace coarsefp {

/// Malformed or out-of-contract input (CLI exit code 2).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A configured size cap would be exceeded (CLI exit code 3).
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An iterative solver stopped before meeting its tolerance; carries its best iterate.
class ConvergenceError : public std::runtime_error {
 public:
  explicit ConvergenceError(const std::string& what, std::vector<double> best_iterate = {})
      : std::runtime_error(what), best_iterate_(std::move(best_iterate)) {}

  const std::vector<double>& best_iterate() const { return best_iterate_; }

 private:
  std::vector<double> best_iterate_;
};

/// A checked mathematical invariant failed at runtime (CLI exit code 1).
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Floating point trouble, e.g. a Gram matrix that is not PSD within tolerance.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace coarsefp
