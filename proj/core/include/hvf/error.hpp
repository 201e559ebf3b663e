#pragma once

#include <stdexcept>
#include <string>

namespace hvf {

/// Input violates an operation's precondition (non-tangent vector, bad level, ...).
class PreconditionError : public std::invalid_argument {
 public:
  explicit PreconditionError(const std::string& what) : std::invalid_argument(what) {}
};

/// A data invariant failed at evaluation time (e.g. alpha*delta - sigma^2 != 1).
class InvariantError : public std::runtime_error {
 public:
  explicit InvariantError(const std::string& what) : std::runtime_error(what) {}
};

/// Requested configuration is outside what the library supports.
class UnsupportedError : public std::runtime_error {
 public:
  explicit UnsupportedError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace hvf
