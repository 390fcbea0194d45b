#include "gqn/narrowing.hpp"

#include <algorithm>
#include <functional>

#include "gqn/algebra.hpp"
#include "gqn/errors.hpp"

namespace gqn {

const char* rule_name(RuleId r) {
  static const char* names[] = {"r0",  "r1",  "r2",  "r3",  "r4",  "r5",  "r6",
                                "r7",  "r8",  "r9",  "r10", "r11", "r12", "r13",
                                "r14", "r15", "r16", "r17", "r18", "r19"};
  return names[static_cast<int>(r)];
}

namespace {

bool is_terminal_config_term(const Term& t) { return t.is_terminal_config(); }

/// The rule (if any) whose left-hand side matches at this node.
std::optional<RuleId> rule_at(const Term& t) {
  switch (t.head()) {
    case Term::Head::Solve: {
      const Term& c = t.children().at(0);
      if (!c.is_config()) return std::nullopt;
      switch (c.config_pattern().kind()) {
        case Pattern::Kind::Empty: return RuleId::R0;
        case Pattern::Kind::Basic: return RuleId::R1;
        case Pattern::Kind::Join: return RuleId::R2;
        case Pattern::Kind::Bind: return RuleId::R5;
        case Pattern::Kind::Filter: return RuleId::R7;
        case Pattern::Kind::Build: return RuleId::R9;
        case Pattern::Kind::Union: return RuleId::R11;
      }
      return std::nullopt;
    }
    case Term::Head::SolveJoinLeft:
      return is_terminal_config_term(t.children().at(0)) ? std::optional(RuleId::R3)
                                                         : std::nullopt;
    case Term::Head::SolveJoinRight:
      return is_terminal_config_term(t.children().at(1)) ? std::optional(RuleId::R4)
                                                         : std::nullopt;
    case Term::Head::SolveBind:
      return is_terminal_config_term(t.children().at(0)) ? std::optional(RuleId::R6)
                                                         : std::nullopt;
    case Term::Head::SolveFilter:
      return is_terminal_config_term(t.children().at(0)) ? std::optional(RuleId::R8)
                                                         : std::nullopt;
    case Term::Head::SolveBuild:
      return is_terminal_config_term(t.children().at(0)) ? std::optional(RuleId::R10)
                                                         : std::nullopt;
    case Term::Head::SolveUnionLeft:
      return is_terminal_config_term(t.children().at(0)) ? std::optional(RuleId::R12)
                                                         : std::nullopt;
    case Term::Head::SolveUnionRight:
      return is_terminal_config_term(t.children().at(1)) ? std::optional(RuleId::R13)
                                                         : std::nullopt;
    case Term::Head::SolveQuery:
      switch (t.children().at(0).query().kind) {
        case Query::Kind::Construct: return RuleId::R14;
        case Query::Kind::Select: return RuleId::R16;
        case Query::Kind::Conselect: return RuleId::R18;
      }
      return std::nullopt;
    case Term::Head::DisplayConstruct:
      return is_terminal_config_term(t.children().at(1)) ? std::optional(RuleId::R15)
                                                         : std::nullopt;
    case Term::Head::DisplaySelect:
      return is_terminal_config_term(t.children().back()) ? std::optional(RuleId::R17)
                                                          : std::nullopt;
    case Term::Head::DisplayConselect:
      return is_terminal_config_term(t.children().back()) ? std::optional(RuleId::R19)
                                                          : std::nullopt;
    default:
      return std::nullopt;
  }
}

Term solve_term(Pattern p, MatchSet m) {
  return Term::make(Term::Head::Solve, {Term::config(std::move(p), std::move(m))});
}

std::vector<Term> select_var_lits(const std::vector<Variable>& vars) {
  std::vector<Term> out;
  out.reserve(vars.size());
  for (const Variable& v : vars) out.push_back(Term::var_lit(v));
  return out;
}

SolutionTable table_from(const std::vector<Variable>& columns, const MatchSet& m) {
  SolutionTable t;
  t.columns = columns;
  for (const Assignment& row : m.rows()) {
    std::vector<Label> cells;
    cells.reserve(columns.size());
    for (const Variable& v : columns) cells.push_back(row.at(v));
    t.rows.push_back(std::move(cells));
  }
  return t;
}

/// Instantiated right-hand side with the built-in algebra calls already
/// evaluated away.
Term apply_rule(const Term& t, RuleId rule, NarrowContext& ctx) {
  switch (rule) {
    case RuleId::R0: {
      const MatchSet& m = t.children().at(0).config_matches();
      return Term::config(Pattern::empty(), MatchSet::none_over(m.target_ptr()));
    }
    case RuleId::R1: {
      const Term& c = t.children().at(0);
      const MatchSet& m = c.config_matches();
      MatchSet found = op_match(make_graph(c.config_pattern().graph()), m.target_ptr());
      return Term::config(Pattern::empty(), std::move(found));
    }
    case RuleId::R2: {
      const Term& c = t.children().at(0);
      const Pattern& p = c.config_pattern();
      return Term::make(Term::Head::SolveJoinLeft,
                        {solve_term(p.left(), c.config_matches()),
                         Term::pattern_lit(p.right())});
    }
    case RuleId::R3: {
      const MatchSet& m = t.children().at(0).config_matches();
      const Pattern& p = t.children().at(1).pattern();
      return Term::make(Term::Head::SolveJoinRight,
                        {Term::match_set_lit(m), solve_term(p, m)});
    }
    case RuleId::R4: {
      const MatchSet& m = t.children().at(0).match_set();
      const MatchSet& m2 = t.children().at(1).config_matches();
      return Term::config(Pattern::empty(), op_join(m, m2));
    }
    case RuleId::R5: {
      const Term& c = t.children().at(0);
      const Pattern& p = c.config_pattern();
      return Term::make(Term::Head::SolveBind,
                        {solve_term(p.sub(), c.config_matches()), Term::expr_lit(p.expr()),
                         Term::var_lit(p.var())});
    }
    case RuleId::R6: {
      const MatchSet& m = t.children().at(0).config_matches();
      const Expr& e = t.children().at(1).expr();
      const Variable& x = t.children().at(2).var();
      return Term::config(Pattern::empty(), op_bind(m, e, x, ctx.policy));
    }
    case RuleId::R7: {
      const Term& c = t.children().at(0);
      const Pattern& p = c.config_pattern();
      return Term::make(Term::Head::SolveFilter,
                        {solve_term(p.sub(), c.config_matches()), Term::expr_lit(p.expr())});
    }
    case RuleId::R8: {
      const MatchSet& m = t.children().at(0).config_matches();
      const Expr& e = t.children().at(1).expr();
      return Term::config(Pattern::empty(), op_filter(m, e, ctx.policy));
    }
    case RuleId::R9: {
      const Term& c = t.children().at(0);
      const Pattern& p = c.config_pattern();
      return Term::make(Term::Head::SolveBuild,
                        {solve_term(p.sub(), c.config_matches()), Term::graph_lit(p.graph())});
    }
    case RuleId::R10: {
      const MatchSet& m = t.children().at(0).config_matches();
      const Graph& r = t.children().at(1).graph();
      return Term::config(Pattern::empty(), op_build(m, make_graph(r), ctx.gen));
    }
    case RuleId::R11: {
      const Term& c = t.children().at(0);
      const Pattern& p = c.config_pattern();
      return Term::make(Term::Head::SolveUnionLeft,
                        {solve_term(p.left(), c.config_matches()),
                         Term::pattern_lit(p.right())});
    }
    case RuleId::R12: {
      const MatchSet& m = t.children().at(0).config_matches();
      const Pattern& p = t.children().at(1).pattern();
      return Term::make(Term::Head::SolveUnionRight,
                        {Term::match_set_lit(m), solve_term(p, m)});
    }
    case RuleId::R13: {
      const MatchSet& m = t.children().at(0).match_set();
      const MatchSet& m2 = t.children().at(1).config_matches();
      return Term::config(Pattern::empty(), op_union(m, m2));
    }
    case RuleId::R14: {
      const Query& q = t.children().at(0).query();
      GraphPtr g = make_graph(t.children().at(1).graph());
      Pattern wrapped = Pattern::build(q.where, q.construct_graph);
      return Term::make(Term::Head::DisplayConstruct,
                        {Term::graph_lit(q.construct_graph),
                         solve_term(std::move(wrapped), MatchSet::inclusion_of_empty(g))});
    }
    case RuleId::R15: {
      const Graph& r = t.children().at(0).graph();
      const MatchSet& m = t.children().at(1).config_matches();
      QueryResult result{QueryResult::Kind::Graph, m.image_of(r), {}};
      return Term::result_lit(std::move(result));
    }
    case RuleId::R16: {
      const Query& q = t.children().at(0).query();
      GraphPtr g = make_graph(t.children().at(1).graph());
      Pattern wrapped = Pattern::build(q.where, graph_of_vars_for_query(q));
      std::vector<Term> kids = select_var_lits(q.select_vars);
      kids.push_back(solve_term(std::move(wrapped), MatchSet::inclusion_of_empty(g)));
      return Term::make(Term::Head::DisplaySelect, std::move(kids));
    }
    case RuleId::R17: {
      std::vector<Variable> columns;
      for (std::size_t i = 0; i + 1 < t.children().size(); ++i)
        columns.push_back(t.children()[i].var());
      const MatchSet& m = t.children().back().config_matches();
      QueryResult result{QueryResult::Kind::Table, {}, table_from(columns, m)};
      return Term::result_lit(std::move(result));
    }
    case RuleId::R18: {
      const Query& q = t.children().at(0).query();
      GraphPtr g = make_graph(t.children().at(1).graph());
      Graph combined = graph_union(graph_of_vars_for_query(q), q.construct_graph);
      Pattern wrapped = Pattern::build(q.where, std::move(combined));
      std::vector<Term> kids = select_var_lits(q.select_vars);
      kids.push_back(Term::graph_lit(q.construct_graph));
      kids.push_back(solve_term(std::move(wrapped), MatchSet::inclusion_of_empty(g)));
      return Term::make(Term::Head::DisplayConselect, std::move(kids));
    }
    case RuleId::R19: {
      std::vector<Variable> columns;
      for (std::size_t i = 0; i + 2 < t.children().size(); ++i)
        columns.push_back(t.children()[i].var());
      const Graph& r = t.children()[t.children().size() - 2].graph();
      const MatchSet& m = t.children().back().config_matches();
      QueryResult result{QueryResult::Kind::Pair, m.image_of(r), table_from(columns, m)};
      return Term::result_lit(std::move(result));
    }
  }
  throw EngineError("unreachable rule");
}

void collect_pattern_heights(const Pattern& p, std::vector<int>& out) {
  out.push_back(pattern_height(p));
  switch (p.kind()) {
    case Pattern::Kind::Empty:
    case Pattern::Kind::Basic:
      break;
    case Pattern::Kind::Join:
    case Pattern::Kind::Union:
      collect_pattern_heights(p.left(), out);
      collect_pattern_heights(p.right(), out);
      break;
    case Pattern::Kind::Bind:
    case Pattern::Kind::Filter:
    case Pattern::Kind::Build:
      collect_pattern_heights(p.sub(), out);
      break;
  }
}

void collect_measure(const Term& t, std::vector<int>& heights) {
  if (t.head() == Term::Head::PatternLit) {
    collect_pattern_heights(t.pattern(), heights);
    return;
  }
  if (t.head() == Term::Head::QueryLit) {
    // A query literal stands for the solve of its build-wrapped pattern; the
    // extra +1 on the root makes the query-introduction rules decrease too.
    std::size_t root = heights.size();
    collect_pattern_heights(wrapped_pattern(t.query()), heights);
    heights[root] += 1;
    return;
  }
  for (const Term& c : t.children()) collect_measure(c, heights);
}

}  // namespace

TermMeasure measure(const Term& t) {
  TermMeasure m;
  collect_measure(t, m.pattern_heights);
  std::sort(m.pattern_heights.begin(), m.pattern_heights.end(), std::greater<int>());
  m.term_height = t.height();
  return m;
}

bool measure_less(const TermMeasure& a, const TermMeasure& b) {
  // Multiset order over naturals: lexicographic on the descending listings.
  if (a.pattern_heights != b.pattern_heights)
    return std::lexicographical_compare(a.pattern_heights.begin(), a.pattern_heights.end(),
                                        b.pattern_heights.begin(), b.pattern_heights.end());
  return a.term_height < b.term_height;
}

Term initial_term(GraphPtr g, const Pattern& p) {
  auto issues = validate(p);
  if (!issues.empty()) throw ValidationError(issues.front().message);
  return solve_term(p, MatchSet::inclusion_of_empty(std::move(g)));
}

Term initial_query_term(const Query& q, GraphPtr g) {
  auto issues = validate(q);
  if (!issues.empty()) throw ValidationError(issues.front().message);
  return Term::make(Term::Head::SolveQuery, {Term::query_lit(q), Term::graph_lit(*g)});
}

std::optional<std::pair<Position, RuleId>> find_redex(const Term& t) {
  std::vector<std::pair<Position, RuleId>> found;
  Position current;
  std::function<void(const Term&)> scan = [&](const Term& node) {
    for (std::size_t i = 0; i < node.children().size(); ++i) {
      current.push_back(static_cast<int>(i + 1));
      scan(node.children()[i]);
      current.pop_back();
    }
    if (auto rule = rule_at(node)) found.emplace_back(current, *rule);
  };
  scan(t);
  if (found.size() > 1)
    throw EngineError("determinism violated: " + std::to_string(found.size()) +
                      " redex positions found");
  if (found.empty()) return std::nullopt;
  return found.front();
}

Term step(const Term& t, NarrowContext& ctx) {
  auto redex = find_redex(t);
  if (!redex) throw PreconditionError("step on a normal form");
  const auto& [pos, rule] = *redex;
  Term replacement = apply_rule(t.at(pos), rule, ctx);
  return t.replaced(pos, std::move(replacement));
}

int step_bound(const Pattern& p) {
  switch (p.kind()) {
    case Pattern::Kind::Empty:
    case Pattern::Kind::Basic:
      return 1;
    case Pattern::Kind::Bind:
    case Pattern::Kind::Filter:
    case Pattern::Kind::Build:
      return 2 + step_bound(p.sub());
    case Pattern::Kind::Join:
    case Pattern::Kind::Union:
      return 3 + step_bound(p.left()) + step_bound(p.right());
  }
  return 1;
}

int step_bound(const Query& q) { return step_bound(wrapped_pattern(q)) + 2; }

namespace {

Trace run_to_normal_form(Term t, int bound, NarrowContext& ctx) {
  Trace trace{t, {}};
  TermMeasure prev = measure(t);
  for (;;) {
    auto redex = find_redex(t);
    if (!redex) break;
    const auto& [pos, rule] = *redex;
    Term after = t.replaced(pos, apply_rule(t.at(pos), rule, ctx));
    TermMeasure next = measure(after);
    if (!measure_less(next, prev))
      throw EngineError("termination measure did not decrease at rule " +
                        std::string(rule_name(rule)));
    trace.steps.push_back({t, pos, rule, after});
    if (static_cast<int>(trace.steps.size()) > bound)
      throw EngineError("derivation exceeded its step bound of " + std::to_string(bound));
    t = std::move(after);
    prev = std::move(next);
  }
  return trace;
}

}  // namespace

std::pair<MatchSet, Trace> derive(GraphPtr g, const Pattern& p, NarrowContext& ctx) {
  ctx.gen.reserve_labels(*g);
  for (const Variable& v : pattern_text_vars(p)) ctx.gen.reserve(v);
  Term t0 = initial_term(std::move(g), p);
  Trace trace = run_to_normal_form(t0, step_bound(p), ctx);
  const Term& final_term = trace.final_term();
  if (!final_term.is_terminal_config())
    throw EngineError("derivation stuck on a non-terminal normal form");
  MatchSet result = final_term.config_matches();
  return {std::move(result), std::move(trace)};
}

std::pair<QueryResult, Trace> solve_query(const Query& q, GraphPtr g, NarrowContext& ctx) {
  ctx.gen.reserve_labels(*g);
  for (const Variable& v : query_text_vars(q)) ctx.gen.reserve(v);
  if (q.kind != Query::Kind::Construct)
    for (const Variable& v : graph_of_vars_for_query(q).variables()) ctx.gen.reserve(v);
  Term t0 = initial_query_term(q, std::move(g));
  Trace trace = run_to_normal_form(t0, step_bound(q), ctx);
  const Term& final_term = trace.final_term();
  if (final_term.head() != Term::Head::ResultLit)
    throw EngineError("query derivation stuck on a non-result normal form");
  QueryResult result = final_term.result();
  return {std::move(result), std::move(trace)};
}

}  // namespace gqn
