#pragma once

#include <string>

#include <json.hpp>

#include "gqn/narrowing.hpp"

namespace gqn {

/// Canonical triple text: `s p o .` lines in canonical order, then
/// `node n .` lines for the isolated nodes. parse_graph round-trips it.
std::string print_graph(const Graph& g);
std::string print_graph_inline(const Graph& g);  // single-line `{ ... }` block

std::string print_expr(const Expr& e);
std::string print_pattern(const Pattern& p);
std::string print_query(const Query& q);

/// ASCII grid with the `?` prefixes in the header. Rows print in canonical
/// order; duplicates are preserved.
std::string print_table(const SolutionTable& t);
std::string print_assignment_table(const AssignmentTable& t);

std::string print_result(const QueryResult& r);

/// Compact one-line rendering of a solver term; match sets shrink to their
/// row count unless `expand` is set.
std::string term_summary(const Term& t, bool expand = false);

/// One line per step: `(n) ⇝_{rK} @ <position> : <term summary>`, terminated
/// by the final result in the formats above.
std::string print_trace(const Trace& trace, bool expand = false);

nlohmann::json to_json(const Graph& g);
nlohmann::json to_json(const SolutionTable& t);
nlohmann::json to_json(const QueryResult& r);
nlohmann::json to_json(const Trace& trace);

}  // namespace gqn
