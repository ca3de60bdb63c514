#pragma once

#include <stdexcept>
#include <string>

namespace zetacount {

// Error categories map one-to-one onto the CLI exit codes.

/// Malformed input text or JSON (exit code 2).
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A node or evaluation ceiling was hit; results would be incomplete (exit code 3).
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A mathematical precondition does not hold for the given input (exit code 4).
class PreconditionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace zetacount
