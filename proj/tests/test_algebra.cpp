#include <doctest.h>

#include "gqn/algebra.hpp"
#include "gqn/errors.hpp"
#include "testlib/fixtures.hpp"

using namespace gqn;
using namespace gqn::testfix;

namespace {

Expr var(const char* name) { return Expr::variable(Variable{name}); }

}  // namespace

TEST_CASE("the two build stages compose into the intern result") {
  FreshVarGen gen;
  MatchSet p1 = op_match(make_graph(member_query_graph()), make_graph(lab_db()));
  REQUIRE(p1.size() == 2);

  MatchSet p2 = op_build(p1, make_graph(member_build_graph()), gen);
  CHECK(p2.source() == member_build_graph());
  CHECK(p2.target() == lab_db_with_members());
  CHECK(p2.contains(row({{"x", C("David")}, {"l", C("Lab1")}})));
  CHECK(p2.contains(row({{"x", C("Eric")}, {"l", C("Lab2")}})));

  MatchSet p3 = op_match(make_graph(intern_query_graph()), p2.target_ptr());
  REQUIRE(p3.size() == 2);

  MatchSet p4 = op_build(p3, make_graph(intern_build_graph()), gen);
  CHECK(p4.target() == lab_db_with_interns());

  MatchSet p5 = op_join(p2, p4);
  CHECK(p5.source() == graph_union(member_build_graph(), intern_build_graph()));
  CHECK(p5.target() == lab_db_with_interns());
  REQUIRE(p5.size() == 2);
  CHECK(p5.contains(row({{"x", C("David")}, {"l", C("Lab1")}})));
  CHECK(p5.contains(row({{"x", C("Eric")}, {"l", C("Lab2")}})));
}

TEST_CASE("join with the empty-source singleton only enlarges the target") {
  MatchSet ms = op_match(make_graph(topic_query_graph()), make_graph(teaching_db()));
  MatchSet inclusion = MatchSet::inclusion_of_empty(make_graph(lab_db()));
  MatchSet joined = op_join(ms, inclusion);
  CHECK(joined.source() == ms.source());
  CHECK(joined.target() == lab_db());
  CHECK(joined.rows() == ms.rows());

  MatchSet none = MatchSet::none_over(make_graph(teaching_db()));
  CHECK(op_join(ms, none).empty());
}

TEST_CASE("join keeps only compatible pairs") {
  FreshVarGen gen;
  MatchSet p1 = op_match(make_graph(member_query_graph()), make_graph(lab_db()));
  MatchSet p2 = op_build(p1, make_graph(member_build_graph()), gen);
  MatchSet p3 = op_match(make_graph(intern_query_graph()), p2.target_ptr());
  MatchSet p4 = op_build(p3, make_graph(intern_build_graph()), gen);
  MatchSet p5 = op_join(p2, p4);

  // projecting a joined row to either operand recovers one of its rows
  for (const Assignment& joined : p5.rows()) {
    Assignment left;
    for (const Variable& v : p2.source().variables()) left.emplace(v, joined.at(v));
    CHECK(p2.contains(left));
    Assignment right;
    for (const Variable& v : p4.source().variables()) right.emplace(v, joined.at(v));
    CHECK(p4.contains(right));
  }
}

TEST_CASE("binding a per-professor count extends every row") {
  MatchSet ms = op_match(make_graph(supervision_query_graph()), make_graph(teaching_db()));
  REQUIRE(ms.size() == 3);
  Expr counted = Expr::aggregate(AggOp::Count, false, var("s"), {var("p")});
  MatchSet bound = op_bind(ms, counted, Variable{"nbstudents"});
  REQUIRE(bound.size() == 3);
  CHECK(bound.source().contains_node(V("nbstudents")));
  for (const Assignment& r : bound.rows()) {
    std::int64_t expected = r.at(Variable{"p"}) == C("Alice") ? 2 : 1;
    CHECK(r.at(Variable{"nbstudents"}) == Label(ConstValue::of_int(expected)));
  }
  // the bound values became target nodes
  CHECK(bound.target().contains_node(Label(ConstValue::of_int(2))));
  CHECK(bound.target().contains_node(Label(ConstValue::of_int(1))));
}

TEST_CASE("binding a constant extends all rows with that value") {
  MatchSet ms = op_match(make_graph(topic_query_graph()), make_graph(teaching_db()));
  MatchSet bound = op_bind(ms, Expr::constant(ConstValue::of_int(7)), Variable{"k"});
  REQUIRE(bound.size() == ms.size());
  for (const Assignment& r : bound.rows())
    CHECK(r.at(Variable{"k"}) == Label(ConstValue::of_int(7)));
  CHECK(bound.target().contains_node(Label(ConstValue::of_int(7))));
}

TEST_CASE("binding an in-scope variable to itself filters nothing") {
  MatchSet ms = op_match(make_graph(topic_query_graph()), make_graph(teaching_db()));
  MatchSet bound = op_bind(ms, var("p"), Variable{"p"});
  CHECK(bound == ms);
}

TEST_CASE("binding an in-scope variable keeps only agreeing rows") {
  MatchSet ms = op_match(make_graph(topic_query_graph()), make_graph(teaching_db()));
  MatchSet bound = op_bind(ms, Expr::constant(ConstValue::of_string("Alice")), Variable{"p"});
  CHECK(bound.size() == 2);
  CHECK(bound.source() == ms.source());
  CHECK(bound.target() == ms.target());
}

TEST_CASE("binding a variable that was only a predicate still yields the scope graph") {
  // ?p occurs in the source solely as a predicate; the bind result's source
  // must still gain the node ?p, or a later union over the scope graph
  // breaks
  Graph data = graph_of({T(C("a"), Label(ConstValue::of_int(1)), C("b"))});
  Graph query = graph_of({T(C("a"), V("p"), C("b"))});
  MatchSet ms = op_match(make_graph(query), make_graph(data));
  REQUIRE(ms.size() == 1);

  MatchSet bound = op_bind(ms, Expr::constant(ConstValue::of_int(1)), Variable{"p"});
  CHECK(bound.size() == 1);
  CHECK(bound.source().contains_node(V("p")));

  Pattern left = Pattern::bind(Pattern::basic(query), Expr::constant(ConstValue::of_int(1)),
                               Variable{"p"});
  Pattern right = Pattern::build(Pattern::empty(), scope_graph(left));
  Pattern both = Pattern::union_of(left, right);
  REQUIRE(validate(both).empty());
  FreshVarGen gen;
  EvalContext ctx{gen};
  EvalResult r = eval_pattern(both, make_graph(data), ctx);
  CHECK(r.matches.source() == scope_graph(both));
}

TEST_CASE("filter keeps exactly the rows whose condition holds") {
  MatchSet ms = op_match(make_graph(topic_query_graph()), make_graph(teaching_db()));

  CHECK(op_filter(ms, Expr::constant(ConstValue::of_bool(true))) == ms);

  MatchSet rejected = op_filter(ms, Expr::constant(ConstValue::of_bool(false)));
  CHECK(rejected.empty());
  CHECK(rejected.source() == ms.source());
  CHECK(rejected.target() == ms.target());

  Expr is_alice = Expr::binary(var("p"), BinaryOp::Equal,
                               Expr::constant(ConstValue::of_string("Alice")));
  MatchSet alice = op_filter(ms, is_alice);
  REQUIRE(alice.size() == 2);
  CHECK(alice.contains(row({{"p", C("Alice")}, {"t", C("Mathematics")}, {"s", C("Charlie")}})));
  CHECK(alice.contains(row({{"p", C("Alice")}, {"t", C("Mathematics")}, {"s", C("David")}})));
}

TEST_CASE("strict filters abort on type errors, lenient ones drop the row") {
  MatchSet ms = op_match(make_graph(topic_query_graph()), make_graph(teaching_db()));
  CHECK_THROWS_AS(op_filter(ms, var("p")), EvalException);  // non-boolean
  EvalPolicy lenient{true};
  CHECK(op_filter(ms, var("p"), lenient).empty());
}

TEST_CASE("building over the empty set keeps the target untouched") {
  FreshVarGen gen;
  MatchSet none = MatchSet::none_over(make_graph(teaching_db()));
  MatchSet built = op_build(none, make_graph(topic_build_graph()), gen);
  CHECK(built.empty());
  CHECK(built.source() == topic_build_graph());
  CHECK(built.target() == teaching_db());
}

TEST_CASE("building the topic graph grows the target by six triples") {
  FreshVarGen gen;
  MatchSet ms = op_match(make_graph(topic_query_graph()), make_graph(teaching_db()));
  MatchSet built = op_build(ms, make_graph(topic_build_graph()), gen);
  CHECK(is_subgraph(teaching_db(), built.target()));
  CHECK(built.target().triples().size() == teaching_db().triples().size() + 6);
}

TEST_CASE("union of match sets") {
  MatchSet ms = op_match(make_graph(topic_query_graph()), make_graph(teaching_db()));

  MatchSet same = op_union(ms, ms);
  CHECK(same.rows() == ms.rows());

  MatchSet none(ms.source_ptr(), make_graph(teaching_db()));
  CHECK(op_union(ms, none).rows() == ms.rows());

  MatchSet other(ms.source_ptr(), ms.target_ptr());
  other.insert(row({{"p", C("Alice")}, {"t", C("Mathematics")}, {"s", C("Eric")}}));
  MatchSet merged = op_union(ms, other);
  CHECK(merged.size() == ms.size() + 1);

  MatchSet wrong_source = op_match(make_graph(member_query_graph()), make_graph(lab_db()));
  CHECK_THROWS_AS(op_union(ms, wrong_source), PreconditionError);
}

TEST_CASE("targets only ever grow") {
  FreshVarGen gen;
  MatchSet ms = op_match(make_graph(supervision_query_graph()), make_graph(teaching_db()));
  Expr counted = Expr::aggregate(AggOp::Count, false, var("s"), {var("p")});
  MatchSet bound = op_bind(ms, counted, Variable{"nbstudents"});
  CHECK(is_subgraph(ms.target(), bound.target()));
  MatchSet built = op_build(bound, make_graph(member_build_graph()), gen);
  CHECK(is_subgraph(bound.target(), built.target()));
}

TEST_CASE("binding a fresh variable and projecting it away recovers the input") {
  MatchSet ms = op_match(make_graph(topic_query_graph()), make_graph(teaching_db()));
  MatchSet bound = op_bind(ms, Expr::constant(ConstValue::of_int(1)), Variable{"k"});
  std::vector<Assignment> projected;
  for (const Assignment& r : bound.rows()) {
    Assignment copy = r;
    copy.erase(Variable{"k"});
    projected.push_back(std::move(copy));
  }
  CHECK(projected == ms.rows());
}
