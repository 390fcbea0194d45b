#pragma once

#include <memory>
#include <variant>
#include <vector>

#include "gqn/query.hpp"

namespace gqn {

/// Path into a term: empty addresses the term itself, otherwise 1-based
/// child indices.
using Position = std::vector<int>;

std::string position_to_string(const Position& p);

/// First-order terms of the rewrite system. Solver states are interior
/// nodes; domain values (patterns, match sets, graphs, expressions, queries,
/// results) enter as literal leaves, so positions and redex search see a
/// plain tree.
class Term {
 public:
  enum class Head {
    Solve,
    SolveJoinLeft,
    SolveJoinRight,
    SolveBind,
    SolveFilter,
    SolveBuild,
    SolveUnionLeft,
    SolveUnionRight,
    SolveQuery,
    DisplayConstruct,
    DisplaySelect,
    DisplayConselect,
    Config,
    PatternLit,
    MatchSetLit,
    ExprLit,
    VarLit,
    GraphLit,
    QueryLit,
    ResultLit,
  };

  using Payload = std::variant<std::monostate, Pattern, MatchSet, Expr, Variable,
                               Graph, Query, QueryResult>;

  static Term make(Head head, std::vector<Term> children);
  static Term pattern_lit(Pattern p);
  static Term match_set_lit(MatchSet m);
  static Term expr_lit(Expr e);
  static Term var_lit(Variable v);
  static Term graph_lit(Graph g);
  static Term query_lit(Query q);
  static Term result_lit(QueryResult r);

  /// Configuration ⟨P | m⟩ as a Config node over two literal children.
  static Term config(Pattern p, MatchSet m);

  Head head() const { return node_->head; }
  const std::vector<Term>& children() const { return node_->children; }
  bool is_leaf() const { return node_->children.empty(); }

  const Pattern& pattern() const { return std::get<Pattern>(node_->payload); }
  const MatchSet& match_set() const { return std::get<MatchSet>(node_->payload); }
  const Expr& expr() const { return std::get<Expr>(node_->payload); }
  const Variable& var() const { return std::get<Variable>(node_->payload); }
  const Graph& graph() const { return std::get<Graph>(node_->payload); }
  const Query& query() const { return std::get<Query>(node_->payload); }
  const QueryResult& result() const { return std::get<QueryResult>(node_->payload); }

  /// True for Config nodes; the two accessors read through the literal
  /// children.
  bool is_config() const;
  const Pattern& config_pattern() const;
  const MatchSet& config_matches() const;
  /// Terminal configuration: ⟨□ | m⟩.
  bool is_terminal_config() const;

  const Term& at(const Position& p) const;
  Term replaced(const Position& p, Term replacement) const;

  int height() const;

  bool operator==(const Term& other) const;

 private:
  struct Node {
    Head head;
    Payload payload;
    std::vector<Term> children;
  };

  explicit Term(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

const char* to_string(Term::Head head);

}  // namespace gqn
