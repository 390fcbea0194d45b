#pragma once

#include <utility>
#include <vector>

#include "gqn/pattern.hpp"

namespace gqn {

/// The three query forms. `construct_graph` is meaningful for Construct and
/// Conselect; `select_vars` for Select and Conselect (declared order).
struct Query {
  enum class Kind { Construct, Select, Conselect };

  Kind kind;
  std::vector<Variable> select_vars;
  Graph construct_graph;
  Pattern where = Pattern::empty();

  bool operator==(const Query&) const = default;
};

/// Solution rows are a multiset: duplicates are preserved. Columns follow the
/// declared select order, not the canonical one.
struct SolutionTable {
  std::vector<Variable> columns;
  std::vector<std::vector<Label>> rows;

  bool operator==(const SolutionTable&) const = default;
};

struct QueryResult {
  enum class Kind { Graph, Table, Pair };

  Kind kind;
  Graph graph;
  SolutionTable table;

  bool operator==(const QueryResult&) const = default;
};

std::vector<ValidationIssue> validate(const Query& q);

/// Star-shaped encoding of a variable list: triples (?row, col_j, s_j) around
/// one fresh row variable. The row variable and the column constants are
/// derived from the variable names and collision-checked against the query's
/// own labels, so they are deterministic per query.
Graph graph_of_vars(const std::vector<Variable>& s);
Graph graph_of_vars_for_query(const Query& q);

/// The pattern a query solves: P BUILD R, P BUILD Graph(S), or
/// P BUILD (Graph(S) ∪ R).
Pattern wrapped_pattern(const Query& q);

/// Reads the query result out of the final match set of the wrapped pattern.
QueryResult extract_result(const Query& q, const MatchSet& final_set);

/// Reference-evaluator routes for the three query forms.
Graph result_construct(const Query& q, GraphPtr g, EvalContext& ctx);
SolutionTable result_select(const Query& q, GraphPtr g, EvalContext& ctx);
std::pair<Graph, SolutionTable> result_conselect(const Query& q, GraphPtr g, EvalContext& ctx);
QueryResult result_oracle(const Query& q, GraphPtr g, EvalContext& ctx);

/// Variables appearing anywhere in the query text.
std::set<Variable> query_text_vars(const Query& q);

/// Result comparison up to renaming of generated variables (tables compare
/// as multisets; pair results compare both parts under one protect set).
bool results_equal_up_to_renaming(const QueryResult& a, const QueryResult& b,
                                  const std::set<Variable>& protect = {});

}  // namespace gqn
