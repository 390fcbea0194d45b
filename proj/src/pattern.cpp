#include "gqn/pattern.hpp"

#include <algorithm>
#include <functional>

#include "gqn/errors.hpp"

namespace gqn {

Pattern Pattern::empty() {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Empty;
  return Pattern(std::move(n));
}

Pattern Pattern::basic(Graph l) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Basic;
  n->graph = std::move(l);
  return Pattern(std::move(n));
}

Pattern Pattern::join(Pattern left, Pattern right) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Join;
  n->children = {std::move(left), std::move(right)};
  return Pattern(std::move(n));
}

Pattern Pattern::bind(Pattern sub, Expr e, Variable x) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Bind;
  n->children = {std::move(sub)};
  n->expr = std::move(e);
  n->var = std::move(x);
  return Pattern(std::move(n));
}

Pattern Pattern::filter(Pattern sub, Expr e) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Filter;
  n->children = {std::move(sub)};
  n->expr = std::move(e);
  return Pattern(std::move(n));
}

Pattern Pattern::build(Pattern sub, Graph r) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Build;
  n->children = {std::move(sub)};
  n->graph = std::move(r);
  return Pattern(std::move(n));
}

Pattern Pattern::union_of(Pattern left, Pattern right) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Union;
  n->children = {std::move(left), std::move(right)};
  return Pattern(std::move(n));
}

bool Pattern::operator==(const Pattern& other) const {
  if (node_ == other.node_) return true;
  if (kind() != other.kind()) return false;
  switch (kind()) {
    case Kind::Empty: return true;
    case Kind::Basic: return graph() == other.graph();
    case Kind::Join:
    case Kind::Union:
      return left() == other.left() && right() == other.right();
    case Kind::Bind:
      return sub() == other.sub() && expr() == other.expr() && var() == other.var();
    case Kind::Filter: return sub() == other.sub() && expr() == other.expr();
    case Kind::Build: return sub() == other.sub() && graph() == other.graph();
  }
  return false;
}

Graph scope_graph(const Pattern& p) {
  switch (p.kind()) {
    case Pattern::Kind::Empty: return Graph{};
    case Pattern::Kind::Basic: return p.graph();
    case Pattern::Kind::Join: return graph_union(scope_graph(p.left()), scope_graph(p.right()));
    case Pattern::Kind::Bind: {
      Graph g = scope_graph(p.sub());
      g.add_node(Label(p.var()));
      return g;
    }
    case Pattern::Kind::Filter: return scope_graph(p.sub());
    case Pattern::Kind::Build: return p.graph();
    case Pattern::Kind::Union: return scope_graph(p.left());
  }
  return Graph{};
}

int pattern_height(const Pattern& p) {
  switch (p.kind()) {
    case Pattern::Kind::Empty: return 0;
    case Pattern::Kind::Basic: return 1;
    case Pattern::Kind::Join:
    case Pattern::Kind::Union:
      return 1 + std::max(pattern_height(p.left()), pattern_height(p.right()));
    case Pattern::Kind::Bind:
    case Pattern::Kind::Filter:
    case Pattern::Kind::Build:
      return 1 + pattern_height(p.sub());
  }
  return 0;
}

namespace {

void collect_issues(const Pattern& p, std::vector<ValidationIssue>& out) {
  auto check_expr_scope = [&](const Expr& e, const Pattern& sub, const char* what) {
    auto scope = scope_graph(sub).variables();
    for (const Variable& v : expr_vars(e))
      if (!std::binary_search(scope.begin(), scope.end(), v))
        out.push_back({std::string(what) + " uses " + v.to_string() +
                       " which is not in scope"});
    for (std::string& msg : check_group_disjointness(e)) out.push_back({std::move(msg)});
  };

  switch (p.kind()) {
    case Pattern::Kind::Empty:
    case Pattern::Kind::Basic:
      break;
    case Pattern::Kind::Join:
      collect_issues(p.left(), out);
      collect_issues(p.right(), out);
      break;
    case Pattern::Kind::Bind:
      collect_issues(p.sub(), out);
      check_expr_scope(p.expr(), p.sub(), "bind expression");
      break;
    case Pattern::Kind::Filter:
      collect_issues(p.sub(), out);
      check_expr_scope(p.expr(), p.sub(), "filter expression");
      break;
    case Pattern::Kind::Build:
      collect_issues(p.sub(), out);
      break;
    case Pattern::Kind::Union:
      collect_issues(p.left(), out);
      collect_issues(p.right(), out);
      if (!(scope_graph(p.left()) == scope_graph(p.right())))
        out.push_back({"union operands have different scope graphs"});
      break;
  }
}

}  // namespace

std::vector<ValidationIssue> validate(const Pattern& p) {
  std::vector<ValidationIssue> out;
  collect_issues(p, out);
  return out;
}

std::set<Variable> pattern_text_vars(const Pattern& p) {
  std::set<Variable> out;
  std::function<void(const Pattern&)> walk = [&](const Pattern& q) {
    switch (q.kind()) {
      case Pattern::Kind::Empty: break;
      case Pattern::Kind::Basic:
      case Pattern::Kind::Build: {
        for (const Variable& v : q.graph().variables()) out.insert(v);
        if (q.kind() == Pattern::Kind::Build) walk(q.sub());
        break;
      }
      case Pattern::Kind::Join:
      case Pattern::Kind::Union:
        walk(q.left());
        walk(q.right());
        break;
      case Pattern::Kind::Bind: {
        walk(q.sub());
        auto vs = expr_all_vars(q.expr());
        out.insert(vs.begin(), vs.end());
        out.insert(q.var());
        break;
      }
      case Pattern::Kind::Filter: {
        walk(q.sub());
        auto vs = expr_all_vars(q.expr());
        out.insert(vs.begin(), vs.end());
        break;
      }
    }
  };
  walk(p);
  return out;
}

EvalResult eval_pattern(const Pattern& p, GraphPtr g, EvalContext& ctx) {
  switch (p.kind()) {
    case Pattern::Kind::Empty: {
      MatchSet none = MatchSet::none_over(g);
      return {std::move(none), std::move(g)};
    }
    case Pattern::Kind::Basic: {
      MatchSet found = op_match(make_graph(p.graph()), g);
      return {std::move(found), std::move(g)};
    }
    case Pattern::Kind::Join: {
      EvalResult l = eval_pattern(p.left(), g, ctx);
      EvalResult r = eval_pattern(p.right(), l.extended_graph, ctx);
      MatchSet joined = op_join(l.matches, r.matches);
      GraphPtr extended = joined.target_ptr();
      return {std::move(joined), std::move(extended)};
    }
    case Pattern::Kind::Bind: {
      EvalResult s = eval_pattern(p.sub(), g, ctx);
      MatchSet bound = op_bind(s.matches, p.expr(), p.var(), ctx.policy);
      GraphPtr extended = bound.target_ptr();
      return {std::move(bound), std::move(extended)};
    }
    case Pattern::Kind::Filter: {
      EvalResult s = eval_pattern(p.sub(), g, ctx);
      MatchSet kept = op_filter(s.matches, p.expr(), ctx.policy);
      GraphPtr extended = kept.target_ptr();
      return {std::move(kept), std::move(extended)};
    }
    case Pattern::Kind::Build: {
      EvalResult s = eval_pattern(p.sub(), g, ctx);
      MatchSet built = op_build(s.matches, make_graph(p.graph()), ctx.gen);
      GraphPtr extended = built.target_ptr();
      return {std::move(built), std::move(extended)};
    }
    case Pattern::Kind::Union: {
      EvalResult l = eval_pattern(p.left(), g, ctx);
      EvalResult r = eval_pattern(p.right(), l.extended_graph, ctx);
      MatchSet merged = op_union(l.matches, r.matches);
      GraphPtr extended = merged.target_ptr();
      return {std::move(merged), std::move(extended)};
    }
  }
  throw EngineError("unreachable pattern kind");
}

}  // namespace gqn
