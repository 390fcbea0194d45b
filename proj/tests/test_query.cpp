#include <doctest.h>

#include "gqn/narrowing.hpp"
#include "gqn/query.hpp"
#include "testlib/fixtures.hpp"

using namespace gqn;
using namespace gqn::testfix;

namespace {

QueryResult oracle(const Query& q, const Graph& g) {
  FreshVarGen gen(500000);
  gen.reserve_labels(g);
  for (const Variable& v : query_text_vars(q)) gen.reserve(v);
  EvalContext ctx{gen};
  return result_oracle(q, make_graph(g), ctx);
}

}  // namespace

TEST_CASE("the star encoding of a select list") {
  Graph g = graph_of_vars({Variable{"p"}, Variable{"s"}});
  REQUIRE(g.triples().size() == 2);
  // both triples share one row variable
  CHECK(g.triples()[0].subject == g.triples()[1].subject);
  CHECK(g.triples()[0].subject.is_variable());
  CHECK(g.variables().size() == 3);

  CHECK(graph_of_vars({Variable{"x"}}).triples().size() == 1);
  CHECK_THROWS(graph_of_vars({}));
}

TEST_CASE("star encodings avoid clashing with query labels") {
  Query q = student_select_query();
  // poison the default names
  q.where = Pattern::join(
      q.where, Pattern::basic(graph_of({T(V("__row"), C("__col_p"), V("p"))})));
  Graph s = graph_of_vars_for_query(q);
  for (const Variable& v : s.variables()) CHECK_FALSE(v == Variable{"__row"});
  bool clashed = false;
  for (const ConstValue& c : s.constants())
    if (c.kind() == ConstKind::Str && c.as_string() == "__col_p") clashed = true;
  CHECK_FALSE(clashed);
}

TEST_CASE("select results are the assignment table minus the row column") {
  SolutionTable t = oracle(student_select_query(), teaching_db()).table;
  REQUIRE(t.columns == std::vector<Variable>{Variable{"p"}, Variable{"s"}});
  std::vector<std::vector<Label>> expected = {
      {C("Alice"), C("Charlie")}, {C("Alice"), C("David")}, {C("Bob"), C("Eric")}};
  CHECK(t.rows == expected);
}

TEST_CASE("select keeps duplicate solutions") {
  Query q;
  q.kind = Query::Kind::Select;
  q.select_vars = {Variable{"t"}};
  q.where = Pattern::basic(graph_of({T(V("s"), C("studies"), V("t"))}));
  SolutionTable t = oracle(q, teaching_db()).table;
  REQUIRE(t.rows.size() == 3);  // one row per match, Mathematics twice
  int math = 0;
  for (const auto& r : t.rows)
    if (r[0] == C("Mathematics")) ++math;
  CHECK(math == 2);
}

TEST_CASE("construct results are the image of the construction graph") {
  Graph g = oracle(topic_construct_query(), teaching_db()).graph;
  CHECK(g.triples().size() == 6);
  int fresh_topics = 0;
  for (const Label& n : g.nodes())
    if (n.is_variable()) ++fresh_topics;
  CHECK(fresh_topics == 3);
}

TEST_CASE("conselect returns the construction image and the select table") {
  QueryResult r = oracle(supervision_query(), teaching_db());
  REQUIRE(r.kind == QueryResult::Kind::Pair);
  CHECK(r.graph.triples().size() == 3);
  CHECK(r.table.columns ==
        std::vector<Variable>{Variable{"p"}, Variable{"nbstudents"}});
  CHECK(r.table.rows.size() == 3);
}

TEST_CASE("both engines agree on the shipped queries") {
  auto check_agreement = [](const Query& q, const Graph& data) {
    FreshVarGen gen;
    NarrowContext ctx{gen};
    auto [engine_result, trace] = solve_query(q, make_graph(data), ctx);
    (void)trace;
    QueryResult reference = oracle(q, data);
    std::set<Variable> protect = query_text_vars(q);
    for (const Variable& v : data.variables()) protect.insert(v);
    CHECK(results_equal_up_to_renaming(engine_result, reference, protect));
  };
  check_agreement(student_select_query(), teaching_db());
  check_agreement(topic_construct_query(), teaching_db());
  check_agreement(supervision_query(), teaching_db());

  Query interns;
  interns.kind = Query::Kind::Select;
  interns.select_vars = {Variable{"x"}, Variable{"l"}};
  interns.where = intern_pattern();
  check_agreement(interns, lab_db());
}

TEST_CASE("select over the empty pattern yields a header-only table") {
  Query q;
  q.kind = Query::Kind::Select;
  q.select_vars = {Variable{"x"}};
  q.where = Pattern::empty();
  SolutionTable t = oracle(q, teaching_db()).table;
  CHECK(t.columns == std::vector<Variable>{Variable{"x"}});
  CHECK(t.rows.empty());
}

TEST_CASE("result comparison distinguishes genuinely different answers") {
  QueryResult a = oracle(student_select_query(), teaching_db());
  QueryResult b = a;
  CHECK(results_equal_up_to_renaming(a, b));
  b.table.rows.pop_back();
  CHECK_FALSE(results_equal_up_to_renaming(a, b));

  QueryResult g1 = oracle(topic_construct_query(), teaching_db());
  QueryResult g2 = g1;
  CHECK(results_equal_up_to_renaming(g1, g2));
  g2.graph.add_triple(T(C("Alice"), C("teaches"), C("Music")));
  CHECK_FALSE(results_equal_up_to_renaming(g1, g2));
}

TEST_CASE("query validation") {
  Query q;
  q.kind = Query::Kind::Select;
  q.where = Pattern::basic(topic_query_graph());
  CHECK_FALSE(validate(q).empty());  // empty select list

  q.select_vars = {Variable{"p"}, Variable{"p"}};
  CHECK_FALSE(validate(q).empty());  // duplicate

  q.select_vars = {Variable{"p"}};
  CHECK(validate(q).empty());
}
