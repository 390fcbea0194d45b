#pragma once

#include <stdexcept>
#include <string>

namespace gqn {

/// Static scoping or shape violation detected before evaluation starts.
class ValidationError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// An operation was called with inputs violating its stated precondition.
class PreconditionError : public std::logic_error {
  using std::logic_error::logic_error;
};

/// An internal engine invariant broke (rewrite-engine bug, not a user error).
class EngineError : public std::logic_error {
  using std::logic_error::logic_error;
};

enum class EvalErrorKind { Type, DivisionByZero, EmptyAggregate, UnboundVariable };

const char* to_string(EvalErrorKind kind);

/// Per-row evaluation failure. Carried as a value so lenient mode can drop
/// the offending row instead of aborting.
struct EvalErrorInfo {
  EvalErrorKind kind;
  std::string message;

  bool operator==(const EvalErrorInfo& other) const { return kind == other.kind; }
};

/// Strict-mode expression failure, thrown by the algebra operations.
class EvalException : public std::runtime_error {
 public:
  explicit EvalException(EvalErrorInfo info)
      : std::runtime_error(std::string(to_string(info.kind)) + ": " + info.message),
        info_(std::move(info)) {}

  const EvalErrorInfo& info() const { return info_; }

 private:
  EvalErrorInfo info_;
};

}  // namespace gqn
