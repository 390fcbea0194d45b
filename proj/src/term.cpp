#include "gqn/term.hpp"

#include <algorithm>

#include "gqn/errors.hpp"

namespace gqn {

std::string position_to_string(const Position& p) {
  if (p.empty()) return "Λ";  // Λ
  std::string out;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) out += '.';
    out += std::to_string(p[i]);
  }
  return out;
}

Term Term::make(Head head, std::vector<Term> children) {
  auto n = std::make_shared<Node>();
  n->head = head;
  n->children = std::move(children);
  return Term(std::move(n));
}

Term Term::pattern_lit(Pattern p) {
  auto n = std::make_shared<Node>();
  n->head = Head::PatternLit;
  n->payload = std::move(p);
  return Term(std::move(n));
}

Term Term::match_set_lit(MatchSet m) {
  auto n = std::make_shared<Node>();
  n->head = Head::MatchSetLit;
  n->payload = std::move(m);
  return Term(std::move(n));
}

Term Term::expr_lit(Expr e) {
  auto n = std::make_shared<Node>();
  n->head = Head::ExprLit;
  n->payload = std::move(e);
  return Term(std::move(n));
}

Term Term::var_lit(Variable v) {
  auto n = std::make_shared<Node>();
  n->head = Head::VarLit;
  n->payload = std::move(v);
  return Term(std::move(n));
}

Term Term::graph_lit(Graph g) {
  auto n = std::make_shared<Node>();
  n->head = Head::GraphLit;
  n->payload = std::move(g);
  return Term(std::move(n));
}

Term Term::query_lit(Query q) {
  auto n = std::make_shared<Node>();
  n->head = Head::QueryLit;
  n->payload = std::move(q);
  return Term(std::move(n));
}

Term Term::result_lit(QueryResult r) {
  auto n = std::make_shared<Node>();
  n->head = Head::ResultLit;
  n->payload = std::move(r);
  return Term(std::move(n));
}

Term Term::config(Pattern p, MatchSet m) {
  return make(Head::Config, {pattern_lit(std::move(p)), match_set_lit(std::move(m))});
}

bool Term::is_config() const { return head() == Head::Config; }

const Pattern& Term::config_pattern() const { return children().at(0).pattern(); }

const MatchSet& Term::config_matches() const { return children().at(1).match_set(); }

bool Term::is_terminal_config() const {
  return is_config() && config_pattern().kind() == Pattern::Kind::Empty;
}

const Term& Term::at(const Position& p) const {
  const Term* t = this;
  for (int i : p) {
    if (i < 1 || static_cast<std::size_t>(i) > t->children().size())
      throw PreconditionError("invalid position " + position_to_string(p));
    t = &t->children()[static_cast<std::size_t>(i - 1)];
  }
  return *t;
}

Term Term::replaced(const Position& p, Term replacement) const {
  if (p.empty()) return replacement;
  int i = p.front();
  if (i < 1 || static_cast<std::size_t>(i) > children().size())
    throw PreconditionError("invalid position " + position_to_string(p));
  std::vector<Term> kids = children();
  Position rest(p.begin() + 1, p.end());
  kids[static_cast<std::size_t>(i - 1)] =
      kids[static_cast<std::size_t>(i - 1)].replaced(rest, std::move(replacement));
  auto n = std::make_shared<Node>();
  n->head = head();
  n->payload = node_->payload;
  n->children = std::move(kids);
  return Term(std::move(n));
}

int Term::height() const {
  int h = 0;
  for (const Term& c : children()) h = std::max(h, c.height());
  return 1 + h;
}

bool Term::operator==(const Term& other) const {
  if (node_ == other.node_) return true;
  if (head() != other.head()) return false;
  if (!(node_->payload == other.node_->payload)) return false;
  if (children().size() != other.children().size()) return false;
  for (std::size_t i = 0; i < children().size(); ++i)
    if (!(children()[i] == other.children()[i])) return false;
  return true;
}

const char* to_string(Term::Head head) {
  switch (head) {
    case Term::Head::Solve: return "Solve";
    case Term::Head::SolveJoinLeft: return "Solve_JL";
    case Term::Head::SolveJoinRight: return "Solve_JR";
    case Term::Head::SolveBind: return "Solve_BI";
    case Term::Head::SolveFilter: return "Solve_FR";
    case Term::Head::SolveBuild: return "Solve_BU";
    case Term::Head::SolveUnionLeft: return "Solve_UL";
    case Term::Head::SolveUnionRight: return "Solve_UR";
    case Term::Head::SolveQuery: return "Solve_Q";
    case Term::Head::DisplayConstruct: return "Display_C";
    case Term::Head::DisplaySelect: return "Display_S";
    case Term::Head::DisplayConselect: return "Display_CS";
    case Term::Head::Config: return "Config";
    case Term::Head::PatternLit: return "PatternLit";
    case Term::Head::MatchSetLit: return "MatchSetLit";
    case Term::Head::ExprLit: return "ExprLit";
    case Term::Head::VarLit: return "VarLit";
    case Term::Head::GraphLit: return "GraphLit";
    case Term::Head::QueryLit: return "QueryLit";
    case Term::Head::ResultLit: return "ResultLit";
  }
  return "?";
}

}  // namespace gqn
