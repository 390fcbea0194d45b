#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gqn/algebra.hpp"
#include "gqn/expr.hpp"

namespace gqn {

/// Immutable pattern tree: the empty pattern, basic graph patterns, and the
/// five composite constructors.
class Pattern {
 public:
  enum class Kind { Empty, Basic, Join, Bind, Filter, Build, Union };

  static Pattern empty();
  static Pattern basic(Graph l);
  static Pattern join(Pattern left, Pattern right);
  static Pattern bind(Pattern sub, Expr e, Variable x);
  static Pattern filter(Pattern sub, Expr e);
  static Pattern build(Pattern sub, Graph r);
  static Pattern union_of(Pattern left, Pattern right);

  Kind kind() const { return node_->kind; }
  const Graph& graph() const { return node_->graph; }  // Basic: L, Build: R
  const Pattern& left() const { return node_->children[0]; }
  const Pattern& right() const { return node_->children[1]; }
  const Pattern& sub() const { return node_->children[0]; }
  const Expr& expr() const { return *node_->expr; }
  const Variable& var() const { return *node_->var; }

  bool operator==(const Pattern& other) const;

 private:
  struct Node {
    Kind kind;
    Graph graph;
    std::vector<Pattern> children;
    std::optional<Expr> expr;
    std::optional<Variable> var;
  };

  explicit Pattern(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

/// The graph of variables and triples a pattern exposes; the source of its
/// solution matches.
Graph scope_graph(const Pattern& p);

/// Height used by the termination measure: empty 0, basic 1, otherwise
/// 1 + the maximum subpattern height.
int pattern_height(const Pattern& p);

struct ValidationIssue {
  std::string message;
};

/// Static checks: bind/filter expressions stay inside the subpattern scope,
/// union operands expose identical scope graphs, BY groups are disjoint from
/// their aggregated expressions.
std::vector<ValidationIssue> validate(const Pattern& p);

/// Variables occurring anywhere in the pattern text (graphs and expressions,
/// BY groups included). These must never be confused with generated names.
std::set<Variable> pattern_text_vars(const Pattern& p);

struct EvalContext {
  FreshVarGen& gen;
  EvalPolicy policy{};
};

struct EvalResult {
  MatchSet matches;
  GraphPtr extended_graph;  // always the target of `matches`
};

/// Reference evaluator: structural recursion over the pattern. The right
/// operand of JOIN and UNION is evaluated over the left operand's extended
/// graph.
EvalResult eval_pattern(const Pattern& p, GraphPtr g, EvalContext& ctx);

}  // namespace gqn
