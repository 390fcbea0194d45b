#include <doctest.h>

#include "gqn/instance_gen.hpp"
#include "gqn/parse.hpp"
#include "gqn/print.hpp"
#include "testlib/fixtures.hpp"

using namespace gqn;
using namespace gqn::testfix;

TEST_CASE("parsing the teaching database text") {
  std::string text =
      "# comment line\n"
      "Alice is Professor .\n"
      "Alice teaches Mathematics .\n"
      "Bob is Professor .\n"
      "Bob teaches Informatics .\n"
      "Charlie is Student .\n"
      "Charlie studies Mathematics .\n"
      "David is Student .\n"
      "David studies Mathematics .\n"
      "Eric is Student .\n"
      "Eric studies Informatics .\n";
  Graph g = parse_graph(text);
  CHECK(g == teaching_db());
  CHECK(g.triples().size() == 10);
}

TEST_CASE("graph items cover isolated nodes, numbers, strings, and variables") {
  Graph g = parse_graph("node n1 .\n?x rel -3 .\na weight 2.5 .\nb title \"a b\" .\n");
  CHECK(g.contains_node(C("n1")));
  CHECK(g.contains_node(V("x")));
  CHECK(g.contains_node(Label(ConstValue::of_int(-3))));
  CHECK(g.contains_node(Label(ConstValue::of_float(2.5))));
  CHECK(g.contains_node(Label(ConstValue::of_string("a b"))));
}

TEST_CASE("parse errors carry positions") {
  try {
    parse_graph("Alice is .\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 1);
    CHECK(e.col() == 10);
  }

  CHECK_THROWS_AS(parse_graph("SELECT p o .\n"), ParseError);  // reserved word
  CHECK_THROWS_AS(parse_graph("a b \"open .\n"), ParseError);
}

TEST_CASE("parsing the construct query text") {
  Query q = parse_query(
      "CONSTRUCT { ?p teaches ?z . ?s studies ?z . } "
      "WHERE BASIC { ?p teaches ?t . ?s studies ?t . }");
  CHECK(q == topic_construct_query());
}

TEST_CASE("parsing the select and conselect forms") {
  Query s = parse_query("SELECT ?p, ?s WHERE BASIC { ?p teaches ?t . ?s studies ?t . }");
  CHECK(s == student_select_query());

  Query cs = parse_query(
      "CONSELECT ?p, ?nbstudents { ?s supervisedby ?p . } "
      "WHERE BASIC { ?p is Professor . ?p teaches ?c . ?s is Student . ?s studies ?c . } "
      "BIND COUNT(?s BY ?p) AS ?nbstudents");
  CHECK(cs == supervision_query());
}

TEST_CASE("the empty pattern keyword") {
  CHECK(parse_pattern("EMPTY") == Pattern::empty());
  Query q = parse_query("SELECT ?x WHERE EMPTY");
  CHECK(q.where == Pattern::empty());
}

TEST_CASE("expression precedence and associativity") {
  Expr e = parse_expr("?x + ?y * ?z");
  REQUIRE(e.kind() == Expr::Kind::Binary);
  CHECK(e.binary_op() == BinaryOp::Add);
  CHECK(e.rhs().binary_op() == BinaryOp::Multiply);

  Expr logic = parse_expr("NOT ?b AND ?c");
  CHECK(logic.binary_op() == BinaryOp::And);
  CHECK(logic.lhs().kind() == Expr::Kind::Unary);

  Expr cmp = parse_expr("COUNT(DISTINCT ?x) > 1 OR ?y = beta");
  CHECK(cmp.binary_op() == BinaryOp::Or);
  CHECK(cmp.lhs().binary_op() == BinaryOp::Greater);
  CHECK(cmp.lhs().lhs().agg_distinct());

  Expr grouped = parse_expr("COUNT(?s BY ?p, ?q)");
  REQUIRE(grouped.group().size() == 2);
}

TEST_CASE("mixing JOIN and UNION requires parentheses") {
  CHECK_THROWS_AS(parse_pattern("EMPTY JOIN EMPTY UNION EMPTY"), ParseError);
  Pattern ok = parse_pattern("(EMPTY JOIN EMPTY) UNION EMPTY");
  CHECK(ok.kind() == Pattern::Kind::Union);
}

TEST_CASE("postfix operators bind tighter than JOIN") {
  Pattern p = parse_pattern(
      "BASIC { ?a rel ?b . } BUILD { ?a rel ?b . } JOIN BASIC { ?b rel ?c . }");
  REQUIRE(p.kind() == Pattern::Kind::Join);
  CHECK(p.left().kind() == Pattern::Kind::Build);
}

TEST_CASE("printed graphs parse back to themselves") {
  Graph g = teaching_db();
  g.add_node(Label(ConstValue::of_int(42)));
  g.add_triple(T(C("Alice"), C("scored"), Label(ConstValue::of_float(9.5))));
  std::string text = print_graph(g);
  CHECK(parse_graph(text) == g);
  CHECK(print_graph(parse_graph(text)) == text);
}

TEST_CASE("random graphs and queries round-trip through print and parse") {
  InstanceGen gen(31);
  for (int i = 0; i < 120; ++i) {
    Graph g = gen.random_graph();
    CHECK(parse_graph(print_graph(g)) == g);

    Query q = gen.random_query();
    std::string text = print_query(q);
    CAPTURE(text);
    Query back = parse_query(text);
    CHECK(back == q);
    CHECK(print_query(back) == text);
  }
}

TEST_CASE("tables print as aligned grids") {
  SolutionTable t;
  t.columns = {Variable{"p"}, Variable{"s"}};
  t.rows = {{C("Alice"), C("Charlie")}, {C("Alice"), C("David")}, {C("Bob"), C("Eric")}};
  std::string text = print_table(t);
  CHECK(text.find("| ?p    | ?s      |") != std::string::npos);
  CHECK(text.find("| Alice | Charlie |") != std::string::npos);
  CHECK(text.find("| Bob   | Eric    |") != std::string::npos);

  SolutionTable empty;
  empty.columns = {Variable{"x"}};
  std::string header_only = print_table(empty);
  CHECK(header_only.find("| ?x |") != std::string::npos);
}

TEST_CASE("quoted strings keep reserved words and spaces intact") {
  Graph g;
  g.add_triple(T(C("a"), C("says"), Label(ConstValue::of_string("true"))));
  g.add_triple(T(C("a"), C("says2"), Label(ConstValue::of_string("two words"))));
  std::string text = print_graph(g);
  CHECK(parse_graph(text) == g);
}
