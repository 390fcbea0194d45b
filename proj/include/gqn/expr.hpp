#pragma once

#include <memory>
#include <optional>
#include <set>
#include <span>
#include <variant>
#include <vector>

#include "gqn/errors.hpp"
#include "gqn/match.hpp"

namespace gqn {

enum class UnaryOp { Negate, Not };
enum class BinaryOp { Add, Subtract, Multiply, Divide, Equal, Less, Greater, And, Or };
enum class AggOp { Max, Min, Sum, Avg, Count };

/// Immutable expression tree. Aggregates carry an optional DISTINCT flag and
/// an optional BY group (a nonempty list of expressions).
class Expr {
 public:
  enum class Kind { Const, Var, Unary, Binary, Aggregate };

  static Expr constant(ConstValue v);
  static Expr variable(Variable v);
  static Expr unary(UnaryOp op, Expr operand);
  static Expr binary(Expr lhs, BinaryOp op, Expr rhs);
  static Expr aggregate(AggOp op, bool distinct, Expr operand,
                        std::vector<Expr> group = {});

  Kind kind() const { return node_->kind; }
  const ConstValue& const_value() const { return *node_->value; }
  const Variable& var() const { return *node_->var; }
  UnaryOp unary_op() const { return node_->uop; }
  BinaryOp binary_op() const { return node_->bop; }
  AggOp agg_op() const { return node_->agg; }
  bool agg_distinct() const { return node_->distinct; }
  const Expr& lhs() const { return node_->children[0]; }
  const Expr& rhs() const { return node_->children[1]; }
  const Expr& operand() const { return node_->children[0]; }
  const std::vector<Expr>& group() const { return node_->group; }  // empty = no BY

  bool operator==(const Expr& other) const;

 private:
  struct Node {
    Kind kind;
    std::optional<ConstValue> value;
    std::optional<Variable> var;
    UnaryOp uop{};
    BinaryOp bop{};
    AggOp agg{};
    bool distinct = false;
    std::vector<Expr> children;
    std::vector<Expr> group;
  };

  explicit Expr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

/// In-scope variables. Group variables of a BY clause are excluded.
std::set<Variable> expr_vars(const Expr& e);

/// Variables appearing anywhere, groups included (for freshness bookkeeping).
std::set<Variable> expr_all_vars(const Expr& e);

/// Checks every BY clause: group variables must be disjoint from the
/// aggregated expression's variables. Returns problem descriptions.
std::vector<std::string> check_group_disjointness(const Expr& e);

/// One value (or failure) per member of the match set it was evaluated over.
using EvalOutcome = std::variant<Label, EvalErrorInfo>;

struct ValueFamily {
  std::vector<EvalOutcome> values;  // aligned with MatchSet row order

  bool all_ok() const;
  const EvalErrorInfo* first_error() const;
};

/// Evaluates e against every member of ms. Never throws: scope and typing
/// problems surface as per-row errors so callers can apply strict or lenient
/// policy.
ValueFamily eval_family(const MatchSet& ms, const Expr& e);

/// Partitions ms by equality of the evaluated group tuple; classes appear in
/// the order of their first member row. Throws EvalException when evaluating
/// a group item fails.
std::vector<std::vector<std::size_t>> group_classes(const MatchSet& ms,
                                                    const std::vector<Expr>& group);

/// Applies an aggregation operator to a multiset of labels.
/// Throws EvalException (EmptyAggregate for AVG/MAX/MIN over the empty
/// multiset; Type for non-numeric SUM/AVG or mixed-kind MAX/MIN).
Label apply_aggregate(AggOp op, bool distinct, std::span<const Label> values);

const char* to_string(UnaryOp op);
const char* to_string(BinaryOp op);
const char* to_string(AggOp op);

}  // namespace gqn
