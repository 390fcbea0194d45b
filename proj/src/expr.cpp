#include "gqn/expr.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace gqn {

Expr Expr::constant(ConstValue v) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Const;
  n->value = std::move(v);
  return Expr(std::move(n));
}

Expr Expr::variable(Variable v) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Var;
  n->var = std::move(v);
  return Expr(std::move(n));
}

Expr Expr::unary(UnaryOp op, Expr operand) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Unary;
  n->uop = op;
  n->children.push_back(std::move(operand));
  return Expr(std::move(n));
}

Expr Expr::binary(Expr lhs, BinaryOp op, Expr rhs) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Binary;
  n->bop = op;
  n->children.push_back(std::move(lhs));
  n->children.push_back(std::move(rhs));
  return Expr(std::move(n));
}

Expr Expr::aggregate(AggOp op, bool distinct, Expr operand, std::vector<Expr> group) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Aggregate;
  n->agg = op;
  n->distinct = distinct;
  n->children.push_back(std::move(operand));
  n->group = std::move(group);
  return Expr(std::move(n));
}

bool Expr::operator==(const Expr& other) const {
  if (node_ == other.node_) return true;
  if (kind() != other.kind()) return false;
  switch (kind()) {
    case Kind::Const: return const_value() == other.const_value();
    case Kind::Var: return var() == other.var();
    case Kind::Unary: return unary_op() == other.unary_op() && operand() == other.operand();
    case Kind::Binary:
      return binary_op() == other.binary_op() && lhs() == other.lhs() && rhs() == other.rhs();
    case Kind::Aggregate:
      return agg_op() == other.agg_op() && agg_distinct() == other.agg_distinct() &&
             operand() == other.operand() && group() == other.group();
  }
  return false;
}

std::set<Variable> expr_vars(const Expr& e) {
  std::set<Variable> out;
  switch (e.kind()) {
    case Expr::Kind::Const: break;
    case Expr::Kind::Var: out.insert(e.var()); break;
    case Expr::Kind::Unary: out = expr_vars(e.operand()); break;
    case Expr::Kind::Binary: {
      out = expr_vars(e.lhs());
      auto r = expr_vars(e.rhs());
      out.insert(r.begin(), r.end());
      break;
    }
    case Expr::Kind::Aggregate:
      out = expr_vars(e.operand());  // the BY group is out of scope here
      break;
  }
  return out;
}

std::set<Variable> expr_all_vars(const Expr& e) {
  std::set<Variable> out = expr_vars(e);
  if (e.kind() == Expr::Kind::Aggregate)
    for (const Expr& item : e.group()) {
      auto g = expr_all_vars(item);
      out.insert(g.begin(), g.end());
    }
  if (e.kind() == Expr::Kind::Unary || e.kind() == Expr::Kind::Aggregate) {
    auto sub = expr_all_vars(e.operand());
    out.insert(sub.begin(), sub.end());
  }
  if (e.kind() == Expr::Kind::Binary) {
    auto l = expr_all_vars(e.lhs());
    auto r = expr_all_vars(e.rhs());
    out.insert(l.begin(), l.end());
    out.insert(r.begin(), r.end());
  }
  return out;
}

std::vector<std::string> check_group_disjointness(const Expr& e) {
  std::vector<std::string> issues;
  std::function<void(const Expr&)> walk = [&](const Expr& x) {
    switch (x.kind()) {
      case Expr::Kind::Const:
      case Expr::Kind::Var: break;
      case Expr::Kind::Unary: walk(x.operand()); break;
      case Expr::Kind::Binary:
        walk(x.lhs());
        walk(x.rhs());
        break;
      case Expr::Kind::Aggregate: {
        walk(x.operand());
        std::set<Variable> inner = expr_vars(x.operand());
        for (const Expr& item : x.group()) {
          walk(item);
          for (const Variable& v : expr_vars(item))
            if (inner.contains(v))
              issues.push_back("group variable " + v.to_string() +
                               " also occurs in the aggregated expression");
        }
        break;
      }
    }
  };
  walk(e);
  return issues;
}

bool ValueFamily::all_ok() const {
  return std::all_of(values.begin(), values.end(),
                     [](const EvalOutcome& v) { return v.index() == 0; });
}

const EvalErrorInfo* ValueFamily::first_error() const {
  for (const EvalOutcome& v : values)
    if (v.index() == 1) return &std::get<EvalErrorInfo>(v);
  return nullptr;
}

namespace {

EvalOutcome type_error(std::string msg) {
  return EvalErrorInfo{EvalErrorKind::Type, std::move(msg)};
}

bool is_numeric(const Label& l) {
  return l.is_constant() && (l.constant().kind() == ConstKind::Int ||
                             l.constant().kind() == ConstKind::Float);
}

double as_double(const Label& l) {
  return l.constant().kind() == ConstKind::Int
             ? static_cast<double>(l.constant().as_int())
             : l.constant().as_float();
}

EvalOutcome check_finite(double v) {
  if (!std::isfinite(v)) return type_error("non-finite arithmetic result");
  return Label(ConstValue::of_float(v));
}

EvalOutcome eval_unary(UnaryOp op, const Label& v) {
  switch (op) {
    case UnaryOp::Negate: {
      if (!is_numeric(v)) return type_error("operand of - must be numeric");
      if (v.constant().kind() == ConstKind::Int) {
        std::int64_t x = v.constant().as_int();
        std::int64_t r;
        if (__builtin_sub_overflow(std::int64_t{0}, x, &r))
          return type_error("integer overflow");
        return Label(ConstValue::of_int(r));
      }
      return Label(ConstValue::of_float(-v.constant().as_float()));
    }
    case UnaryOp::Not:
      if (!v.is_constant() || v.constant().kind() != ConstKind::Bool)
        return type_error("operand of NOT must be boolean");
      return Label(ConstValue::of_bool(!v.constant().as_bool()));
  }
  return type_error("unknown unary operator");
}

EvalOutcome eval_arith(BinaryOp op, const Label& a, const Label& b) {
  if (!is_numeric(a) || !is_numeric(b))
    return type_error(std::string("operands of ") + to_string(op) + " must be numeric");
  bool both_int = a.constant().kind() == ConstKind::Int &&
                  b.constant().kind() == ConstKind::Int;
  if (op == BinaryOp::Divide) {
    double denom = as_double(b);
    if (denom == 0.0)
      return EvalErrorInfo{EvalErrorKind::DivisionByZero, "division by zero"};
    return check_finite(as_double(a) / denom);
  }
  if (both_int) {
    std::int64_t x = a.constant().as_int(), y = b.constant().as_int(), r = 0;
    bool overflow = false;
    switch (op) {
      case BinaryOp::Add: overflow = __builtin_add_overflow(x, y, &r); break;
      case BinaryOp::Subtract: overflow = __builtin_sub_overflow(x, y, &r); break;
      case BinaryOp::Multiply: overflow = __builtin_mul_overflow(x, y, &r); break;
      default: return type_error("unexpected operator");
    }
    if (overflow) return type_error("integer overflow");
    return Label(ConstValue::of_int(r));
  }
  double x = as_double(a), y = as_double(b);
  switch (op) {
    case BinaryOp::Add: return check_finite(x + y);
    case BinaryOp::Subtract: return check_finite(x - y);
    case BinaryOp::Multiply: return check_finite(x * y);
    default: return type_error("unexpected operator");
  }
}

EvalOutcome eval_binary(BinaryOp op, const Label& a, const Label& b) {
  switch (op) {
    case BinaryOp::Add:
    case BinaryOp::Subtract:
    case BinaryOp::Multiply:
    case BinaryOp::Divide:
      return eval_arith(op, a, b);
    case BinaryOp::Equal:
      // Syntactic label equality; fresh variables are legitimate data here.
      return Label(ConstValue::of_bool(a == b));
    case BinaryOp::Less:
    case BinaryOp::Greater: {
      if (is_numeric(a) && is_numeric(b)) {
        double x = as_double(a), y = as_double(b);
        return Label(ConstValue::of_bool(op == BinaryOp::Less ? x < y : x > y));
      }
      if (a.is_constant() && b.is_constant() &&
          a.constant().kind() == ConstKind::Str &&
          b.constant().kind() == ConstKind::Str) {
        const std::string& x = a.constant().as_string();
        const std::string& y = b.constant().as_string();
        return Label(ConstValue::of_bool(op == BinaryOp::Less ? x < y : x > y));
      }
      return type_error("operands of </> must be both numeric or both strings");
    }
    case BinaryOp::And:
    case BinaryOp::Or: {
      if (!a.is_constant() || a.constant().kind() != ConstKind::Bool ||
          !b.is_constant() || b.constant().kind() != ConstKind::Bool)
        return type_error("operands of AND/OR must be boolean");
      bool x = a.constant().as_bool(), y = b.constant().as_bool();
      return Label(ConstValue::of_bool(op == BinaryOp::And ? x && y : x || y));
    }
  }
  return type_error("unknown binary operator");
}

}  // namespace

Label apply_aggregate(AggOp op, bool distinct, std::span<const Label> values) {
  std::vector<Label> pool(values.begin(), values.end());
  if (distinct) {
    std::sort(pool.begin(), pool.end(), label_less);
    pool.erase(std::unique(pool.begin(), pool.end()), pool.end());
  }

  if (op == AggOp::Count)
    return Label(ConstValue::of_int(static_cast<std::int64_t>(pool.size())));

  if (pool.empty()) {
    if (op == AggOp::Sum) return Label(ConstValue::of_int(0));
    throw EvalException({EvalErrorKind::EmptyAggregate,
                         std::string(to_string(op)) + " over an empty multiset"});
  }

  if (op == AggOp::Sum || op == AggOp::Avg) {
    bool all_int = true;
    for (const Label& v : pool) {
      if (!is_numeric(v))
        throw EvalException({EvalErrorKind::Type,
                             std::string(to_string(op)) + " requires numeric values"});
      if (v.constant().kind() != ConstKind::Int) all_int = false;
    }
    if (op == AggOp::Sum && all_int) {
      std::int64_t total = 0;
      for (const Label& v : pool) {
        if (__builtin_add_overflow(total, v.constant().as_int(), &total))
          throw EvalException({EvalErrorKind::Type, "integer overflow in SUM"});
      }
      return Label(ConstValue::of_int(total));
    }
    double total = 0;
    for (const Label& v : pool) total += as_double(v);
    if (op == AggOp::Sum) return Label(ConstValue::of_float(total));
    return Label(ConstValue::of_float(total / static_cast<double>(pool.size())));
  }

  // MAX / MIN: insensitive to multiplicities; kinds must be homogeneous.
  ConstKind kind{};
  bool first = true;
  for (const Label& v : pool) {
    if (!v.is_constant())
      throw EvalException({EvalErrorKind::Type, "MAX/MIN over variable labels"});
    ConstKind k = v.constant().kind();
    if (k == ConstKind::Bool)
      throw EvalException({EvalErrorKind::Type, "MAX/MIN over booleans"});
    if (first) {
      kind = k;
      first = false;
    } else if (k != kind) {
      throw EvalException({EvalErrorKind::Type, "MAX/MIN over mixed value kinds"});
    }
  }
  auto value_less = [&](const Label& a, const Label& b) {
    switch (kind) {
      case ConstKind::Int: return a.constant().as_int() < b.constant().as_int();
      case ConstKind::Float: return a.constant().as_float() < b.constant().as_float();
      default: return a.constant().as_string() < b.constant().as_string();
    }
  };
  auto it = op == AggOp::Max ? std::max_element(pool.begin(), pool.end(), value_less)
                             : std::min_element(pool.begin(), pool.end(), value_less);
  return *it;
}

namespace {

// Value of a group tuple for one row: either the printed key or an error.
struct GroupKey {
  bool ok = true;
  std::vector<std::string> key;
  EvalErrorInfo error{EvalErrorKind::Type, ""};
};

std::vector<GroupKey> group_keys(const MatchSet& ms, const std::vector<Expr>& group) {
  std::vector<GroupKey> keys(ms.size());
  for (const Expr& item : group) {
    ValueFamily vals = eval_family(ms, item);
    for (std::size_t i = 0; i < ms.size(); ++i) {
      if (!keys[i].ok) continue;
      if (vals.values[i].index() == 1) {
        keys[i].ok = false;
        keys[i].error = std::get<EvalErrorInfo>(vals.values[i]);
      } else {
        keys[i].key.push_back(std::get<Label>(vals.values[i]).to_string());
      }
    }
  }
  return keys;
}

}  // namespace

ValueFamily eval_family(const MatchSet& ms, const Expr& e) {
  ValueFamily out;
  out.values.reserve(ms.size());

  switch (e.kind()) {
    case Expr::Kind::Const: {
      for (std::size_t i = 0; i < ms.size(); ++i)
        out.values.emplace_back(Label(e.const_value()));
      return out;
    }
    case Expr::Kind::Var: {
      for (const Assignment& row : ms.rows()) {
        auto it = row.find(e.var());
        if (it == row.end())
          out.values.emplace_back(EvalErrorInfo{
              EvalErrorKind::UnboundVariable, e.var().to_string() + " is not in scope"});
        else
          out.values.emplace_back(it->second);
      }
      return out;
    }
    case Expr::Kind::Unary: {
      ValueFamily sub = eval_family(ms, e.operand());
      for (const EvalOutcome& v : sub.values)
        out.values.push_back(v.index() == 1 ? v : eval_unary(e.unary_op(), std::get<Label>(v)));
      return out;
    }
    case Expr::Kind::Binary: {
      ValueFamily l = eval_family(ms, e.lhs());
      ValueFamily r = eval_family(ms, e.rhs());
      for (std::size_t i = 0; i < ms.size(); ++i) {
        if (l.values[i].index() == 1)
          out.values.push_back(l.values[i]);
        else if (r.values[i].index() == 1)
          out.values.push_back(r.values[i]);
        else
          out.values.push_back(eval_binary(e.binary_op(), std::get<Label>(l.values[i]),
                                           std::get<Label>(r.values[i])));
      }
      return out;
    }
    case Expr::Kind::Aggregate: {
      out.values.assign(ms.size(), EvalOutcome(EvalErrorInfo{EvalErrorKind::Type, "unset"}));

      // Partition the rows; without a BY clause there is a single class.
      std::vector<std::vector<std::size_t>> classes;
      if (e.group().empty()) {
        std::vector<std::size_t> all(ms.size());
        for (std::size_t i = 0; i < ms.size(); ++i) all[i] = i;
        classes.push_back(std::move(all));
      } else {
        std::vector<GroupKey> keys = group_keys(ms, e.group());
        std::vector<std::vector<std::string>> seen;
        for (std::size_t i = 0; i < ms.size(); ++i) {
          if (!keys[i].ok) {
            out.values[i] = keys[i].error;
            continue;
          }
          auto it = std::find(seen.begin(), seen.end(), keys[i].key);
          if (it == seen.end()) {
            seen.push_back(keys[i].key);
            classes.push_back({i});
          } else {
            classes[static_cast<std::size_t>(it - seen.begin())].push_back(i);
          }
        }
      }

      for (const std::vector<std::size_t>& cls : classes) {
        // Nested aggregates inside the operand see only this class.
        MatchSet restricted = ms.subset(cls);
        ValueFamily vals = eval_family(restricted, e.operand());
        EvalOutcome result = Label(ConstValue::of_int(0));
        if (const EvalErrorInfo* err = vals.first_error()) {
          result = *err;
        } else {
          std::vector<Label> pool;
          pool.reserve(vals.values.size());
          for (const EvalOutcome& v : vals.values) pool.push_back(std::get<Label>(v));
          try {
            result = apply_aggregate(e.agg_op(), e.agg_distinct(), pool);
          } catch (const EvalException& ex) {
            result = ex.info();
          }
        }
        for (std::size_t i : cls) out.values[i] = result;
      }
      return out;
    }
  }
  return out;
}

std::vector<std::vector<std::size_t>> group_classes(const MatchSet& ms,
                                                    const std::vector<Expr>& group) {
  std::vector<GroupKey> keys = group_keys(ms, group);
  for (const GroupKey& k : keys)
    if (!k.ok) throw EvalException(k.error);
  std::vector<std::vector<std::size_t>> classes;
  std::vector<std::vector<std::string>> seen;
  for (std::size_t i = 0; i < ms.size(); ++i) {
    auto it = std::find(seen.begin(), seen.end(), keys[i].key);
    if (it == seen.end()) {
      seen.push_back(keys[i].key);
      classes.push_back({i});
    } else {
      classes[static_cast<std::size_t>(it - seen.begin())].push_back(i);
    }
  }
  return classes;
}

const char* to_string(UnaryOp op) {
  switch (op) {
    case UnaryOp::Negate: return "-";
    case UnaryOp::Not: return "NOT";
  }
  return "?";
}

const char* to_string(BinaryOp op) {
  switch (op) {
    case BinaryOp::Add: return "+";
    case BinaryOp::Subtract: return "-";
    case BinaryOp::Multiply: return "*";
    case BinaryOp::Divide: return "/";
    case BinaryOp::Equal: return "=";
    case BinaryOp::Less: return "<";
    case BinaryOp::Greater: return ">";
    case BinaryOp::And: return "AND";
    case BinaryOp::Or: return "OR";
  }
  return "?";
}

const char* to_string(AggOp op) {
  switch (op) {
    case AggOp::Max: return "MAX";
    case AggOp::Min: return "MIN";
    case AggOp::Sum: return "SUM";
    case AggOp::Avg: return "AVG";
    case AggOp::Count: return "COUNT";
  }
  return "?";
}

}  // namespace gqn
