#include "gqn/algebra.hpp"

#include <algorithm>

#include "gqn/errors.hpp"

namespace gqn {

namespace {

bool rows_compatible(const Assignment& a, const Assignment& b) {
  for (const auto& [var, value] : a) {
    auto it = b.find(var);
    if (it != b.end() && !(it->second == value)) return false;
  }
  return true;
}

[[noreturn]] void raise(const EvalErrorInfo& info) { throw EvalException(info); }

}  // namespace

MatchSet op_match(GraphPtr l, GraphPtr g) { return enumerate_matches(std::move(l), std::move(g)); }

MatchSet op_join(const MatchSet& a, const MatchSet& b) {
  GraphPtr source = make_graph(graph_union(a.source(), b.source()));
  GraphPtr target = make_graph(graph_union(a.target(), b.target()));
  MatchSet out(source, target);
  for (const Assignment& ra : a.rows()) {
    for (const Assignment& rb : b.rows()) {
      if (!rows_compatible(ra, rb)) continue;
      Assignment merged = ra;
      for (const auto& [var, value] : rb) merged.emplace(var, value);
      out.insert(std::move(merged));
    }
  }
  return out;
}

MatchSet op_bind(const MatchSet& a, const Expr& e, const Variable& x,
                 const EvalPolicy& policy) {
  const std::vector<Variable> scope = a.source().variables();
  auto in_scope_of_source = [&](const Variable& v) {
    return std::binary_search(scope.begin(), scope.end(), v);
  };
  for (const Variable& v : expr_vars(e))
    if (!in_scope_of_source(v))
      raise({EvalErrorKind::UnboundVariable,
             v.to_string() + " is not in scope of the bind expression"});

  ValueFamily family = eval_family(a, e);
  const bool in_scope = in_scope_of_source(x);

  // The result is typed L ∪ {x} ⇒ G ∪ {values} in both branches. When x is
  // already a node of L and its values are nodes of G (the usual case) that
  // changes nothing; when x occurred only as a predicate, the source still
  // gains the node x, keeping it equal to the scope graph.
  Graph source = a.source();
  source.add_node(Label(x));
  Graph target = a.target();
  std::vector<std::pair<std::size_t, Label>> kept;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const EvalOutcome& v = family.values[i];
    if (v.index() == 1) {
      if (policy.lenient) continue;
      raise(std::get<EvalErrorInfo>(v));
    }
    const Label& value = std::get<Label>(v);
    target.add_node(value);
    if (in_scope && !(a.rows()[i].at(x) == value)) continue;
    kept.emplace_back(i, value);
  }
  MatchSet out(make_graph(std::move(source)), make_graph(std::move(target)));
  for (const auto& [i, value] : kept) {
    Assignment row = a.rows()[i];
    row.emplace(x, value);
    out.insert(std::move(row));
  }
  return out;
}

MatchSet op_filter(const MatchSet& a, const Expr& e, const EvalPolicy& policy) {
  ValueFamily family = eval_family(a, e);
  MatchSet out(a.source_ptr(), a.target_ptr());
  for (std::size_t i = 0; i < a.size(); ++i) {
    const EvalOutcome& v = family.values[i];
    if (v.index() == 1) {
      if (policy.lenient) continue;
      raise(std::get<EvalErrorInfo>(v));
    }
    const Label& value = std::get<Label>(v);
    if (!value.is_constant() || value.constant().kind() != ConstKind::Bool) {
      if (policy.lenient) continue;
      raise({EvalErrorKind::Type, "filter condition evaluated to a non-boolean"});
    }
    if (value.constant().as_bool()) out.insert(a.rows()[i]);
  }
  return out;
}

MatchSet op_build(const MatchSet& a, GraphPtr r, FreshVarGen& gen) {
  Graph target = a.target();
  std::vector<Assignment> built;
  for (std::size_t i = 0; i < a.size(); ++i) {
    auto [assignment, image] = build_assignment(a.match_at(i), *r, gen);
    for (const Label& n : image.nodes()) target.add_node(n);
    for (const Triple& t : image.triples()) target.add_triple(t);
    built.push_back(std::move(assignment));
  }
  MatchSet out(std::move(r), make_graph(std::move(target)));
  for (Assignment& row : built) out.insert(std::move(row));
  return out;
}

MatchSet op_union(const MatchSet& a, const MatchSet& b) {
  if (!(a.source() == b.source()))
    throw PreconditionError("union requires equal sources");
  GraphPtr target = make_graph(graph_union(a.target(), b.target()));
  MatchSet out(a.source_ptr(), target);
  for (const Assignment& row : a.rows()) out.insert(row);
  for (const Assignment& row : b.rows()) out.insert(row);
  return out;
}

}  // namespace gqn
