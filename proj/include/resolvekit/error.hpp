#pragma once

#include <stdexcept>
#include <string>

namespace resolvekit {

// Malformed or inconsistent input data (unknown ids, invalid tables, ...).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Well-formed input that does not satisfy the hypotheses of an operation,
// or a rule rejected as degenerate.
class PreconditionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A property that holds by construction was found violated.
class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

inline void ensure(bool cond, const std::string& what) {
  if (!cond) throw InvariantError(what);
}

}  // namespace resolvekit
