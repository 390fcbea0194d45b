#pragma once

#include <optional>
#include <utility>

#include "gqn/term.hpp"

namespace gqn {

/// Rewriting rules: r0..r13 solve patterns, r14..r19 handle the three query
/// forms and their display steps.
enum class RuleId {
  R0, R1, R2, R3, R4, R5, R6, R7, R8, R9,
  R10, R11, R12, R13, R14, R15, R16, R17, R18, R19,
};

const char* rule_name(RuleId r);  // "r0" .. "r19"

struct TraceStep {
  Term before;
  Position position;
  RuleId rule;
  Term after;
};

/// A full derivation: the initial term and every rewriting step in order.
struct Trace {
  Term initial;
  std::vector<TraceStep> steps;

  const Term& final_term() const { return steps.empty() ? initial : steps.back().after; }
};

struct NarrowContext {
  FreshVarGen& gen;
  EvalPolicy policy{};
};

/// Termination measure: the multiset of pattern heights occurring in the
/// term (descending), then the term height. Every rewriting step strictly
/// decreases it lexicographically.
struct TermMeasure {
  std::vector<int> pattern_heights;  // sorted descending
  int term_height = 0;
};

TermMeasure measure(const Term& t);
bool measure_less(const TermMeasure& a, const TermMeasure& b);

/// Solve(⟨P | i_G⟩). Throws ValidationError when the pattern does not
/// validate.
Term initial_term(GraphPtr g, const Pattern& p);

/// Solve_Q(Q, G) for the query-level rules.
Term initial_query_term(const Query& q, GraphPtr g);

/// Exhaustive position scan. Returns the unique redex, or nothing for a
/// normal form. Throws EngineError if more than one position is reducible:
/// that would contradict the determinism property and means an engine bug.
std::optional<std::pair<Position, RuleId>> find_redex(const Term& t);

/// One rewriting step: rewrites at the unique redex, evaluating the algebra
/// calls of the instantiated right-hand side before splicing.
Term step(const Term& t, NarrowContext& ctx);

/// Exact number of steps a pattern derivation takes: 1 for empty and basic
/// patterns, 2 plus the subpattern cost for bind/filter/build, 3 plus both
/// subpattern costs for join/union.
int step_bound(const Pattern& p);
int step_bound(const Query& q);

/// Runs the derivation from Solve(⟨P | i_G⟩) to its normal form, asserting
/// single-redex determinism, strict measure decrease, and the step bound at
/// every step. The normal form must be a terminal configuration.
std::pair<MatchSet, Trace> derive(GraphPtr g, const Pattern& p, NarrowContext& ctx);

/// Query-level derivation ending in a result literal.
std::pair<QueryResult, Trace> solve_query(const Query& q, GraphPtr g, NarrowContext& ctx);

}  // namespace gqn
