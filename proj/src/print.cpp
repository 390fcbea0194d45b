#include "gqn/print.hpp"

#include <algorithm>
#include <sstream>

namespace gqn {

namespace {

std::string item_text(const Triple& t) {
  return t.subject.to_string() + " " + t.predicate.to_string() + " " +
         t.object.to_string() + " .";
}

}  // namespace

std::string print_graph(const Graph& g) {
  std::string out;
  for (const Triple& t : g.triples()) out += item_text(t) + "\n";
  for (const Label& n : g.isolated_nodes()) out += "node " + n.to_string() + " .\n";
  return out;
}

std::string print_graph_inline(const Graph& g) {
  std::string out = "{";
  for (const Triple& t : g.triples()) out += " " + item_text(t);
  for (const Label& n : g.isolated_nodes()) out += " node " + n.to_string() + " .";
  out += out.size() == 1 ? "}" : " }";
  return out;
}

namespace {

// Operator tiers, loosest first: OR, AND, comparisons, additive,
// multiplicative, unary, atoms.
int binary_prec(BinaryOp op) {
  switch (op) {
    case BinaryOp::Or: return 1;
    case BinaryOp::And: return 2;
    case BinaryOp::Equal:
    case BinaryOp::Less:
    case BinaryOp::Greater: return 3;
    case BinaryOp::Add:
    case BinaryOp::Subtract: return 4;
    case BinaryOp::Multiply:
    case BinaryOp::Divide: return 5;
  }
  return 0;
}

int expr_prec(const Expr& e) {
  switch (e.kind()) {
    case Expr::Kind::Binary: return binary_prec(e.binary_op());
    case Expr::Kind::Unary: return 6;
    default: return 7;
  }
}

std::string print_expr_prec(const Expr& e, int min_prec) {
  std::string out;
  switch (e.kind()) {
    case Expr::Kind::Const: out = e.const_value().to_string(); break;
    case Expr::Kind::Var: out = e.var().to_string(); break;
    case Expr::Kind::Unary: {
      const char* op = to_string(e.unary_op());
      std::string operand = print_expr_prec(e.operand(), 6);
      out = e.unary_op() == UnaryOp::Not ? std::string(op) + " " + operand : op + operand;
      break;
    }
    case Expr::Kind::Binary: {
      int p = binary_prec(e.binary_op());
      out = print_expr_prec(e.lhs(), p) + " " + to_string(e.binary_op()) + " " +
            print_expr_prec(e.rhs(), p + 1);
      break;
    }
    case Expr::Kind::Aggregate: {
      out = std::string(to_string(e.agg_op())) + "(";
      if (e.agg_distinct()) out += "DISTINCT ";
      out += print_expr_prec(e.operand(), 1);
      if (!e.group().empty()) {
        out += " BY ";
        for (std::size_t i = 0; i < e.group().size(); ++i) {
          if (i) out += ", ";
          out += print_expr_prec(e.group()[i], 1);
        }
      }
      out += ")";
      break;
    }
  }
  if (expr_prec(e) < min_prec) return "(" + out + ")";
  return out;
}

// Pattern tiers: JOIN/UNION chains, postfix operators, primaries.
int pattern_level(const Pattern& p) {
  switch (p.kind()) {
    case Pattern::Kind::Join:
    case Pattern::Kind::Union: return 1;
    case Pattern::Kind::Bind:
    case Pattern::Kind::Filter:
    case Pattern::Kind::Build: return 2;
    default: return 3;
  }
}

std::string print_pattern_inner(const Pattern& p);

std::string wrap_pattern(const Pattern& p, int min_level, Pattern::Kind chain) {
  std::string text = print_pattern_inner(p);
  int level = pattern_level(p);
  if (level > min_level) return text;
  if (level == min_level) {
    if (level == 2) return text;                     // postfix chains are left-associative
    if (level == 1 && p.kind() == chain) return text;  // same-kind JOIN/UNION chain
  }
  return "(" + text + ")";
}

std::string print_pattern_inner(const Pattern& p) {
  switch (p.kind()) {
    case Pattern::Kind::Empty: return "EMPTY";
    case Pattern::Kind::Basic: return "BASIC " + print_graph_inline(p.graph());
    case Pattern::Kind::Join:
      return wrap_pattern(p.left(), 1, Pattern::Kind::Join) + " JOIN " +
             wrap_pattern(p.right(), 2, Pattern::Kind::Join);
    case Pattern::Kind::Union:
      return wrap_pattern(p.left(), 1, Pattern::Kind::Union) + " UNION " +
             wrap_pattern(p.right(), 2, Pattern::Kind::Union);
    case Pattern::Kind::Bind:
      return wrap_pattern(p.sub(), 2, p.kind()) + " BIND " + print_expr(p.expr()) +
             " AS " + p.var().to_string();
    case Pattern::Kind::Filter:
      return wrap_pattern(p.sub(), 2, p.kind()) + " FILTER " + print_expr(p.expr());
    case Pattern::Kind::Build:
      return wrap_pattern(p.sub(), 2, p.kind()) + " BUILD " + print_graph_inline(p.graph());
  }
  return {};
}

}  // namespace

std::string print_expr(const Expr& e) { return print_expr_prec(e, 1); }

std::string print_pattern(const Pattern& p) { return print_pattern_inner(p); }

std::string print_query(const Query& q) {
  std::string out;
  switch (q.kind) {
    case Query::Kind::Construct:
      return "CONSTRUCT " + print_graph_inline(q.construct_graph) + " WHERE " +
             print_pattern(q.where);
    case Query::Kind::Select: {
      out = "SELECT ";
      for (std::size_t i = 0; i < q.select_vars.size(); ++i) {
        if (i) out += ", ";
        out += q.select_vars[i].to_string();
      }
      return out + " WHERE " + print_pattern(q.where);
    }
    case Query::Kind::Conselect: {
      out = "CONSELECT ";
      for (std::size_t i = 0; i < q.select_vars.size(); ++i) {
        if (i) out += ", ";
        out += q.select_vars[i].to_string();
      }
      return out + " " + print_graph_inline(q.construct_graph) + " WHERE " +
             print_pattern(q.where);
    }
  }
  return out;
}

namespace {

std::string render_grid(const std::vector<std::string>& header,
                        std::vector<std::vector<std::string>> rows) {
  std::sort(rows.begin(), rows.end());
  std::vector<std::size_t> width(header.size());
  for (std::size_t i = 0; i < header.size(); ++i) width[i] = header[i].size();
  for (const auto& row : rows)
    for (std::size_t i = 0; i < row.size(); ++i) width[i] = std::max(width[i], row[i].size());

  auto line = [&](const std::vector<std::string>& cells) {
    std::string out = "|";
    for (std::size_t i = 0; i < cells.size(); ++i) {
      out += " " + cells[i] + std::string(width[i] - cells[i].size(), ' ') + " |";
    }
    return out + "\n";
  };
  std::string out = line(header);
  std::string sep = "|";
  for (std::size_t w : width) sep += std::string(w + 2, '-') + "|";
  out += sep + "\n";
  for (const auto& row : rows) out += line(row);
  return out;
}

std::vector<std::vector<std::string>> printed_rows(
    const std::vector<std::vector<Label>>& rows) {
  std::vector<std::vector<std::string>> out;
  out.reserve(rows.size());
  for (const auto& row : rows) {
    std::vector<std::string> cells;
    cells.reserve(row.size());
    for (const Label& l : row) cells.push_back(l.to_string());
    out.push_back(std::move(cells));
  }
  return out;
}

}  // namespace

std::string print_table(const SolutionTable& t) {
  std::vector<std::string> header;
  for (const Variable& v : t.columns) header.push_back(v.to_string());
  return render_grid(header, printed_rows(t.rows));
}

std::string print_assignment_table(const AssignmentTable& t) {
  std::vector<std::string> header;
  for (const Variable& v : t.columns) header.push_back(v.to_string());
  return render_grid(header, printed_rows(t.rows));
}

std::string print_result(const QueryResult& r) {
  switch (r.kind) {
    case QueryResult::Kind::Graph: return print_graph(r.graph);
    case QueryResult::Kind::Table: return print_table(r.table);
    case QueryResult::Kind::Pair:
      return "graph:\n" + print_graph(r.graph) + "table:\n" + print_table(r.table);
  }
  return {};
}

namespace {

std::string match_set_summary(const MatchSet& m, bool expand) {
  if (!expand) return "{" + std::to_string(m.size()) + " rows}";
  std::string out = "{";
  bool first_row = true;
  for (const auto& row : m.rows()) {
    if (!first_row) out += ", ";
    first_row = false;
    out += "(";
    bool first_cell = true;
    for (const auto& [var, value] : row) {
      if (!first_cell) out += ", ";
      first_cell = false;
      out += value.to_string();
    }
    out += ")";
  }
  return out + "}";
}

}  // namespace

std::string term_summary(const Term& t, bool expand) {
  switch (t.head()) {
    case Term::Head::Config:
      return "⟨" + print_pattern(t.config_pattern()) + " | " +
             match_set_summary(t.config_matches(), expand) + "⟩";
    case Term::Head::PatternLit: return print_pattern(t.pattern());
    case Term::Head::MatchSetLit: return match_set_summary(t.match_set(), expand);
    case Term::Head::ExprLit: return print_expr(t.expr());
    case Term::Head::VarLit: return t.var().to_string();
    case Term::Head::GraphLit:
      return expand ? print_graph_inline(t.graph())
                    : "{" + std::to_string(t.graph().triples().size()) + " triples}";
    case Term::Head::QueryLit: return print_query(t.query());
    case Term::Head::ResultLit: return "result";
    default: {
      std::string out = std::string(to_string(t.head())) + "(";
      for (std::size_t i = 0; i < t.children().size(); ++i) {
        if (i) out += ", ";
        out += term_summary(t.children()[i], expand);
      }
      return out + ")";
    }
  }
}

std::string print_trace(const Trace& trace, bool expand) {
  std::string out;
  for (std::size_t i = 0; i < trace.steps.size(); ++i) {
    const TraceStep& s = trace.steps[i];
    out += "(" + std::to_string(i + 1) + ") ⇝_{" + rule_name(s.rule) + "} @ " +
           position_to_string(s.position) + " : " + term_summary(s.after, expand) + "\n";
  }
  const Term& last = trace.final_term();
  if (last.head() == Term::Head::ResultLit) {
    out += print_result(last.result());
  } else if (last.is_terminal_config()) {
    out += print_assignment_table(last.config_matches().table());
  }
  return out;
}

nlohmann::json to_json(const Graph& g) {
  nlohmann::json nodes = nlohmann::json::array();
  for (const Label& n : g.nodes()) nodes.push_back(n.to_string());
  nlohmann::json triples = nlohmann::json::array();
  for (const Triple& t : g.triples())
    triples.push_back({t.subject.to_string(), t.predicate.to_string(), t.object.to_string()});
  return {{"nodes", std::move(nodes)}, {"triples", std::move(triples)}};
}

nlohmann::json to_json(const SolutionTable& t) {
  nlohmann::json columns = nlohmann::json::array();
  for (const Variable& v : t.columns) columns.push_back(v.to_string());
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : t.rows) {
    nlohmann::json cells = nlohmann::json::array();
    for (const Label& l : row) cells.push_back(l.to_string());
    rows.push_back(std::move(cells));
  }
  return {{"columns", std::move(columns)}, {"rows", std::move(rows)}};
}

nlohmann::json to_json(const QueryResult& r) {
  switch (r.kind) {
    case QueryResult::Kind::Graph: return to_json(r.graph);
    case QueryResult::Kind::Table: return to_json(r.table);
    case QueryResult::Kind::Pair:
      return {{"graph", to_json(r.graph)}, {"table", to_json(r.table)}};
  }
  return {};
}

nlohmann::json to_json(const Trace& trace) {
  nlohmann::json steps = nlohmann::json::array();
  for (const TraceStep& s : trace.steps) {
    nlohmann::json pos = nlohmann::json::array();
    for (int i : s.position) pos.push_back(i);
    steps.push_back({{"rule", rule_name(s.rule)}, {"position", std::move(pos)}});
  }
  return {{"steps", std::move(steps)}};
}

}  // namespace gqn
