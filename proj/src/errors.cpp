#include "gqn/errors.hpp"

namespace gqn {

const char* to_string(EvalErrorKind kind) {
  switch (kind) {
    case EvalErrorKind::Type: return "type error";
    case EvalErrorKind::DivisionByZero: return "division by zero";
    case EvalErrorKind::EmptyAggregate: return "empty aggregate";
    case EvalErrorKind::UnboundVariable: return "unbound variable";
  }
  return "unknown error";
}

}  // namespace gqn
