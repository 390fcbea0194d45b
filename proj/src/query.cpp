#include "gqn/query.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <string>

#include "gqn/errors.hpp"

namespace gqn {

namespace {

std::set<std::string> query_string_constants(const Query& q) {
  std::set<std::string> out;
  auto scan_graph = [&](const Graph& g) {
    for (const ConstValue& c : g.constants())
      if (c.kind() == ConstKind::Str) out.insert(c.as_string());
  };
  scan_graph(q.construct_graph);
  std::function<void(const Pattern&)> walk = [&](const Pattern& p) {
    switch (p.kind()) {
      case Pattern::Kind::Empty: break;
      case Pattern::Kind::Basic: scan_graph(p.graph()); break;
      case Pattern::Kind::Build:
        scan_graph(p.graph());
        walk(p.sub());
        break;
      case Pattern::Kind::Join:
      case Pattern::Kind::Union:
        walk(p.left());
        walk(p.right());
        break;
      case Pattern::Kind::Bind:
      case Pattern::Kind::Filter:
        walk(p.sub());
        break;
    }
  };
  walk(q.where);
  return out;
}

std::string unclashed(const std::string& base, const std::set<std::string>& taken) {
  if (!taken.contains(base)) return base;
  for (int i = 2;; ++i) {
    std::string candidate = base + "_" + std::to_string(i);
    if (!taken.contains(candidate)) return candidate;
  }
}

Graph graph_of_vars_impl(const std::vector<Variable>& s,
                         const std::set<std::string>& taken_vars,
                         const std::set<std::string>& taken_strings) {
  if (s.empty()) throw PreconditionError("empty select list");
  Variable row{unclashed("__row", taken_vars)};
  Graph g;
  for (const Variable& v : s) {
    ConstValue column = ConstValue::of_string(unclashed("__col_" + v.name, taken_strings));
    g.add_triple(Triple{Label(row), Label(column), Label(v)});
  }
  return g;
}

}  // namespace

std::vector<ValidationIssue> validate(const Query& q) {
  std::vector<ValidationIssue> out = validate(q.where);
  if (q.kind != Query::Kind::Construct) {
    if (q.select_vars.empty()) out.push_back({"select list must not be empty"});
    std::set<Variable> seen;
    for (const Variable& v : q.select_vars)
      if (!seen.insert(v).second)
        out.push_back({"duplicate select variable " + v.to_string()});
  }
  return out;
}

Graph graph_of_vars(const std::vector<Variable>& s) {
  return graph_of_vars_impl(s, {}, {});
}

Graph graph_of_vars_for_query(const Query& q) {
  std::set<std::string> var_names;
  for (const Variable& v : query_text_vars(q)) var_names.insert(v.name);
  return graph_of_vars_impl(q.select_vars, var_names, query_string_constants(q));
}

Pattern wrapped_pattern(const Query& q) {
  switch (q.kind) {
    case Query::Kind::Construct:
      return Pattern::build(q.where, q.construct_graph);
    case Query::Kind::Select:
      return Pattern::build(q.where, graph_of_vars_for_query(q));
    case Query::Kind::Conselect:
      return Pattern::build(
          q.where, graph_union(graph_of_vars_for_query(q), q.construct_graph));
  }
  throw EngineError("unreachable query kind");
}

QueryResult extract_result(const Query& q, const MatchSet& final_set) {
  QueryResult out{};
  if (q.kind == Query::Kind::Construct || q.kind == Query::Kind::Conselect)
    out.graph = final_set.image_of(q.construct_graph);
  if (q.kind == Query::Kind::Select || q.kind == Query::Kind::Conselect) {
    out.table.columns = q.select_vars;
    for (const Assignment& row : final_set.rows()) {
      std::vector<Label> cells;
      cells.reserve(q.select_vars.size());
      for (const Variable& v : q.select_vars) cells.push_back(row.at(v));
      out.table.rows.push_back(std::move(cells));
    }
  }
  switch (q.kind) {
    case Query::Kind::Construct: out.kind = QueryResult::Kind::Graph; break;
    case Query::Kind::Select: out.kind = QueryResult::Kind::Table; break;
    case Query::Kind::Conselect: out.kind = QueryResult::Kind::Pair; break;
  }
  return out;
}

namespace {

MatchSet solve_wrapped(const Query& q, GraphPtr g, EvalContext& ctx) {
  Pattern p = wrapped_pattern(q);
  auto issues = validate(p);
  if (!issues.empty()) throw ValidationError(issues.front().message);
  EvalResult r = eval_pattern(p, std::move(g), ctx);
  return std::move(r.matches);
}

}  // namespace

Graph result_construct(const Query& q, GraphPtr g, EvalContext& ctx) {
  return extract_result(q, solve_wrapped(q, std::move(g), ctx)).graph;
}

SolutionTable result_select(const Query& q, GraphPtr g, EvalContext& ctx) {
  return extract_result(q, solve_wrapped(q, std::move(g), ctx)).table;
}

std::pair<Graph, SolutionTable> result_conselect(const Query& q, GraphPtr g,
                                                 EvalContext& ctx) {
  QueryResult r = extract_result(q, solve_wrapped(q, std::move(g), ctx));
  return {std::move(r.graph), std::move(r.table)};
}

QueryResult result_oracle(const Query& q, GraphPtr g, EvalContext& ctx) {
  return extract_result(q, solve_wrapped(q, std::move(g), ctx));
}

std::set<Variable> query_text_vars(const Query& q) {
  std::set<Variable> out = pattern_text_vars(q.where);
  for (const Variable& v : q.construct_graph.variables()) out.insert(v);
  for (const Variable& v : q.select_vars) out.insert(v);
  return out;
}

bool results_equal_up_to_renaming(const QueryResult& a, const QueryResult& b,
                                  const std::set<Variable>& protect) {
  if (a.kind != b.kind) return false;
  if (a.table.columns != b.table.columns) return false;
  if (a.kind == QueryResult::Kind::Graph)
    return graphs_equal_up_to_renaming(a.graph, b.graph, protect);
  if (a.kind == QueryResult::Kind::Table)
    return rows_equal_up_to_renaming(a.table.rows, b.table.rows, protect);
  // Pair results compare part by part. Generated row variables never reach
  // the table, so a joint renaming across both parts is not required.
  return graphs_equal_up_to_renaming(a.graph, b.graph, protect) &&
         rows_equal_up_to_renaming(a.table.rows, b.table.rows, protect);
}

}  // namespace gqn
