#include "gqn/instance_gen.hpp"

#include <array>

namespace gqn {

namespace {

const std::array<const char*, 7> kNames = {"alpha", "beta",  "gamma", "delta",
                                           "omega", "lab",   "unit"};
const std::array<const char*, 4> kPredicates = {"rel", "linksto", "is", "has"};
const std::array<const char*, 4> kVarNames = {"x", "y", "z", "w"};

}  // namespace

InstanceGen::InstanceGen(std::uint64_t seed, GenOptions opts)
    : rng_(seed), opts_(opts) {}

std::uint64_t InstanceGen::below(std::uint64_t n) { return n == 0 ? 0 : rng_() % n; }

Variable InstanceGen::random_var() {
  return Variable{kVarNames[below(static_cast<std::uint64_t>(opts_.max_vars))]};
}

Label InstanceGen::random_node_label() {
  switch (below(5)) {
    case 0: return Label(random_var());
    case 1: return Label(ConstValue::of_int(static_cast<std::int64_t>(below(3)) + 1));
    default: return Label(ConstValue::of_string(kNames[below(kNames.size())]));
  }
}

Label InstanceGen::random_predicate() {
  if (below(10) == 0) return Label(random_var());
  return Label(ConstValue::of_string(kPredicates[below(kPredicates.size())]));
}

Graph InstanceGen::random_graph() {
  Graph g;
  std::uint64_t n = below(static_cast<std::uint64_t>(opts_.max_triples)) + 1;
  for (std::uint64_t i = 0; i < n; ++i) {
    Label s = random_node_label();
    Label p = random_predicate();
    Label o = random_node_label();
    // Data graphs stay variable-light: most labels are constants.
    auto deflate = [&](Label l) {
      if (l.is_variable() && below(3) != 0)
        return Label(ConstValue::of_string(kNames[below(kNames.size())]));
      return l;
    };
    g.add_triple(Triple{deflate(s), deflate(p), deflate(o)});
  }
  if (below(4) == 0) g.add_node(Label(ConstValue::of_string(kNames[below(kNames.size())])));
  return g;
}

Graph InstanceGen::abstracted_query_graph(const Graph& data) {
  Graph g;
  if (data.triples().empty()) {
    g.add_node(Label(random_var()));
    return g;
  }
  std::uint64_t n = below(2) + 1;
  for (std::uint64_t i = 0; i < n; ++i) {
    const Triple& t = data.triples()[below(data.triples().size())];
    auto abstract_node = [&](const Label& l) {
      return below(2) == 0 ? Label(random_var()) : l;
    };
    Label p = below(8) == 0 ? Label(random_var()) : t.predicate;
    g.add_triple(Triple{abstract_node(t.subject), p, abstract_node(t.object)});
  }
  if (below(8) == 0) g.add_node(Label(random_var()));
  return g;
}

Graph InstanceGen::random_basic_graph() {
  // Mostly abstracted from the data graph so solutions exist; now and then
  // fully random to keep no-match cases in the mix.
  if (data_ && below(6) != 0) return abstracted_query_graph(*data_);
  Graph g;
  std::uint64_t n = below(3) + 1;
  for (std::uint64_t i = 0; i < n; ++i)
    g.add_triple(Triple{random_node_label(), random_predicate(), random_node_label()});
  if (below(6) == 0) g.add_node(Label(random_var()));
  return g;
}

Graph InstanceGen::random_query_graph() { return random_basic_graph(); }

Graph InstanceGen::random_build_graph(const std::vector<Variable>& scope) {
  Graph g;
  std::uint64_t n = below(2) + 1;
  auto pick = [&]() -> Label {
    std::uint64_t roll = below(4);
    if (roll == 0 && !scope.empty()) return Label(scope[below(scope.size())]);
    if (roll == 1) return Label(Variable{"n" + std::to_string(below(2))});  // fresh in builds
    return Label(ConstValue::of_string(kNames[below(kNames.size())]));
  };
  for (std::uint64_t i = 0; i < n; ++i)
    g.add_triple(Triple{pick(), Label(ConstValue::of_string(kPredicates[below(2)])), pick()});
  return g;
}

Expr InstanceGen::random_bool_expr(const std::vector<Variable>& scope) {
  auto leaf = [&]() -> Expr {
    std::uint64_t roll = below(6);
    if (scope.empty() || roll >= 4) {
      if (below(4) == 0) return Expr::constant(ConstValue::of_bool(below(2) == 0));
      return Expr::binary(Expr::constant(ConstValue::of_int(static_cast<std::int64_t>(below(3)))),
                          below(2) ? BinaryOp::Less : BinaryOp::Greater,
                          Expr::constant(ConstValue::of_int(static_cast<std::int64_t>(below(3)))));
    }
    const Variable& v = scope[below(scope.size())];
    switch (roll) {
      case 0:
        return Expr::binary(Expr::variable(v), BinaryOp::Equal,
                            Expr::variable(scope[below(scope.size())]));
      case 1:
        return Expr::binary(Expr::variable(v), BinaryOp::Equal,
                            Expr::constant(ConstValue::of_string(kNames[below(kNames.size())])));
      case 2: {
        Expr count = Expr::aggregate(AggOp::Count, below(2) == 0, Expr::variable(v));
        return Expr::binary(std::move(count), below(2) ? BinaryOp::Greater : BinaryOp::Less,
                            Expr::constant(ConstValue::of_int(static_cast<std::int64_t>(below(4)))));
      }
      default: {
        // COUNT ... BY over a different variable, when one exists.
        for (const Variable& g : scope)
          if (!(g == v)) {
            Expr agg = Expr::aggregate(AggOp::Count, false, Expr::variable(v),
                                       {Expr::variable(g)});
            return Expr::binary(std::move(agg), BinaryOp::Greater,
                                Expr::constant(ConstValue::of_int(0)));
          }
        return Expr::binary(Expr::variable(v), BinaryOp::Equal, Expr::variable(v));
      }
    }
  };
  Expr e = leaf();
  if (below(4) == 0) e = Expr::binary(std::move(e), below(2) ? BinaryOp::And : BinaryOp::Or, leaf());
  if (below(8) == 0) e = Expr::unary(UnaryOp::Not, std::move(e));
  return e;
}

Expr InstanceGen::random_value_expr(const std::vector<Variable>& scope) {
  std::uint64_t roll = below(5);
  if (scope.empty() || roll == 0)
    return Expr::constant(ConstValue::of_int(static_cast<std::int64_t>(below(5))));
  const Variable& v = scope[below(scope.size())];
  switch (roll) {
    case 1: return Expr::variable(v);
    case 2: return Expr::aggregate(AggOp::Count, below(2) == 0, Expr::variable(v));
    default: {
      for (const Variable& g : scope)
        if (!(g == v))
          return Expr::aggregate(AggOp::Count, false, Expr::variable(v), {Expr::variable(g)});
      return Expr::aggregate(AggOp::Count, false, Expr::variable(v));
    }
  }
}

Pattern InstanceGen::same_scope_mate(const Pattern& left, int depth) {
  switch (below(3)) {
    case 0: return left;  // identical operand
    case 1: {
      auto scope = scope_graph(left).variables();
      return Pattern::filter(left, random_bool_expr(scope));
    }
    default:
      return Pattern::build(gen_pattern(depth > 0 ? depth - 1 : 0), scope_graph(left));
  }
}

Pattern InstanceGen::gen_pattern(int depth) {
  if (depth <= 0) {
    if (below(12) == 0) return Pattern::empty();
    return Pattern::basic(random_basic_graph());
  }
  switch (below(8)) {
    case 0: return Pattern::basic(random_basic_graph());
    case 1: {
      Pattern sub = gen_pattern(depth - 1);
      auto scope = scope_graph(sub).variables();
      return Pattern::filter(std::move(sub), random_bool_expr(scope));
    }
    case 2: {
      Pattern sub = gen_pattern(depth - 1);
      auto scope = scope_graph(sub).variables();
      Expr value = random_value_expr(scope);
      Variable x = (!scope.empty() && below(4) == 0)
                       ? scope[below(scope.size())]
                       : Variable{"b" + std::to_string(bind_counter_++)};
      return Pattern::bind(std::move(sub), std::move(value), std::move(x));
    }
    case 3:
    case 4: {
      Pattern sub = gen_pattern(depth - 1);
      auto scope = scope_graph(sub).variables();
      return Pattern::build(std::move(sub), random_build_graph(scope));
    }
    case 5: {
      Pattern left = gen_pattern(depth - 1);
      return Pattern::union_of(left, same_scope_mate(left, depth - 1));
    }
    default:
      return Pattern::join(gen_pattern(depth - 1), gen_pattern(depth - 1));
  }
}

Pattern InstanceGen::random_pattern() {
  bind_counter_ = 0;
  return gen_pattern(static_cast<int>(below(static_cast<std::uint64_t>(opts_.max_depth))) + 1);
}

Pattern InstanceGen::random_pattern(const Graph& data) {
  data_ = &data;
  Pattern p = random_pattern();
  data_ = nullptr;
  return p;
}

Query InstanceGen::random_query() {
  Query q;
  q.where = random_pattern();
  auto scope = scope_graph(q.where).variables();
  switch (below(3)) {
    case 0: {
      q.kind = Query::Kind::Construct;
      q.construct_graph = random_build_graph(scope);
      break;
    }
    case 1: {
      q.kind = Query::Kind::Select;
      break;
    }
    default: {
      q.kind = Query::Kind::Conselect;
      q.construct_graph = random_build_graph(scope);
      break;
    }
  }
  if (q.kind != Query::Kind::Construct) {
    std::uint64_t n = below(2) + 1;
    for (std::uint64_t i = 0; i < n; ++i) {
      Variable v = scope.empty() || below(4) == 0 ? Variable{"s" + std::to_string(i)}
                                                  : scope[below(scope.size())];
      bool dup = false;
      for (const Variable& existing : q.select_vars)
        if (existing == v) dup = true;
      if (!dup) q.select_vars.push_back(std::move(v));
    }
    if (q.select_vars.empty()) q.select_vars.push_back(Variable{"s0"});
  }
  return q;
}

}  // namespace gqn
