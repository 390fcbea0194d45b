#pragma once

#include "gqn/expr.hpp"
#include "gqn/match.hpp"

namespace gqn {

/// Strict mode aborts an operation on the first per-row evaluation error;
/// lenient mode drops the offending row in Filter and Bind instead.
struct EvalPolicy {
  bool lenient = false;
};

/// The six query-algebra operations over homogeneous match sets. All are
/// pure except op_build, which consumes fresh names in canonical row order.

MatchSet op_match(GraphPtr l, GraphPtr g);

/// Joins of all compatible pairs; source and target are the unions.
MatchSet op_join(const MatchSet& a, const MatchSet& b);

/// For fresh x: extends every row with x -> value and adds the value labels
/// as target nodes. For in-scope x: keeps exactly the rows whose binding of
/// x equals the evaluated value.
MatchSet op_bind(const MatchSet& a, const Expr& e, const Variable& x,
                 const EvalPolicy& policy = {});

/// Keeps the rows whose value is boolean true.
MatchSet op_filter(const MatchSet& a, const Expr& e, const EvalPolicy& policy = {});

/// Per-row instantiation of the construction graph r; the result's source is
/// r and its target also collects every row's image.
MatchSet op_build(const MatchSet& a, GraphPtr r, FreshVarGen& gen);

/// Set union of members over the union target. Requires equal sources.
MatchSet op_union(const MatchSet& a, const MatchSet& b);

}  // namespace gqn
