#pragma once

#include <initializer_list>
#include <string>

#include "gqn/pattern.hpp"
#include "gqn/query.hpp"

namespace gqn::testfix {

inline Label C(const std::string& s) { return Label(ConstValue::of_string(s)); }
inline Label V(const std::string& name) { return Label(Variable{name}); }
inline Triple T(Label s, Label p, Label o) {
  return Triple{std::move(s), std::move(p), std::move(o)};
}

inline Graph graph_of(std::initializer_list<Triple> triples,
                      std::initializer_list<Label> extra_nodes = {}) {
  Graph g;
  for (const Triple& t : triples) g.add_triple(t);
  for (const Label& n : extra_nodes) g.add_node(n);
  return g;
}

/// The running teaching database: two professors, three students, two topics.
inline Graph teaching_db() {
  return graph_of({
      T(C("Alice"), C("is"), C("Professor")),
      T(C("Alice"), C("teaches"), C("Mathematics")),
      T(C("Bob"), C("is"), C("Professor")),
      T(C("Bob"), C("teaches"), C("Informatics")),
      T(C("Charlie"), C("is"), C("Student")),
      T(C("Charlie"), C("studies"), C("Mathematics")),
      T(C("David"), C("is"), C("Student")),
      T(C("David"), C("studies"), C("Mathematics")),
      T(C("Eric"), C("is"), C("Student")),
      T(C("Eric"), C("studies"), C("Informatics")),
  });
}

/// Who teaches a topic that someone studies.
inline Graph topic_query_graph() {
  return graph_of({
      T(V("p"), C("teaches"), V("t")),
      T(V("s"), C("studies"), V("t")),
  });
}

/// Same shape around a construction variable.
inline Graph topic_build_graph() {
  return graph_of({
      T(V("p"), C("teaches"), V("z")),
      T(V("s"), C("studies"), V("z")),
  });
}

inline Pattern topic_rebuild_pattern() {
  return Pattern::build(Pattern::basic(topic_query_graph()), topic_build_graph());
}

/// The teaching database extended with lab membership and supervision.
inline Graph lab_db() {
  Graph g = teaching_db();
  g.add_triple(T(C("Alice"), C("member"), C("Lab1")));
  g.add_triple(T(C("Bob"), C("member"), C("Lab2")));
  g.add_triple(T(C("David"), C("supervisedby"), C("Alice")));
  g.add_triple(T(C("Eric"), C("supervisedby"), C("Bob")));
  return g;
}

inline Graph member_query_graph() {  // students and their supervisor's lab
  return graph_of({
      T(V("x"), C("supervisedby"), V("p")),
      T(V("p"), C("member"), V("l")),
  });
}

inline Graph member_build_graph() { return graph_of({T(V("x"), C("member"), V("l"))}); }

inline Graph intern_query_graph() {
  return graph_of({
      T(V("x"), C("member"), V("t")),
      T(V("x"), C("is"), C("Student")),
  });
}

inline Graph intern_build_graph() { return graph_of({T(V("x"), C("is"), C("Intern"))}); }

/// Two member/intern build stages joined on the student variable.
inline Pattern intern_pattern() {
  Pattern stage1 = Pattern::build(Pattern::basic(member_query_graph()), member_build_graph());
  Pattern stage2 = Pattern::build(Pattern::basic(intern_query_graph()), intern_build_graph());
  return Pattern::join(std::move(stage1), std::move(stage2));
}

/// lab_db plus the two derived member triples.
inline Graph lab_db_with_members() {
  Graph g = lab_db();
  g.add_triple(T(C("David"), C("member"), C("Lab1")));
  g.add_triple(T(C("Eric"), C("member"), C("Lab2")));
  return g;
}

/// lab_db_with_members plus the two intern triples.
inline Graph lab_db_with_interns() {
  Graph g = lab_db_with_members();
  g.add_triple(T(C("David"), C("is"), C("Intern")));
  g.add_triple(T(C("Eric"), C("is"), C("Intern")));
  return g;
}

/// The supervision-count query: professors with the number of their students.
inline Graph supervision_query_graph() {
  return graph_of({
      T(V("p"), C("is"), C("Professor")),
      T(V("p"), C("teaches"), V("c")),
      T(V("s"), C("is"), C("Student")),
      T(V("s"), C("studies"), V("c")),
  });
}

inline Pattern supervision_pattern() {
  Expr count = Expr::aggregate(AggOp::Count, false, Expr::variable(Variable{"s"}),
                               {Expr::variable(Variable{"p"})});
  return Pattern::bind(Pattern::basic(supervision_query_graph()), std::move(count),
                       Variable{"nbstudents"});
}

inline Query supervision_query() {
  Query q;
  q.kind = Query::Kind::Conselect;
  q.select_vars = {Variable{"p"}, Variable{"nbstudents"}};
  q.construct_graph = graph_of({T(V("s"), C("supervisedby"), V("p"))});
  q.where = supervision_pattern();
  return q;
}

inline Query topic_construct_query() {
  Query q;
  q.kind = Query::Kind::Construct;
  q.construct_graph = topic_build_graph();
  q.where = Pattern::basic(topic_query_graph());
  return q;
}

inline Query student_select_query() {
  Query q;
  q.kind = Query::Kind::Select;
  q.select_vars = {Variable{"p"}, Variable{"s"}};
  q.where = Pattern::basic(topic_query_graph());
  return q;
}

inline Assignment row(std::initializer_list<std::pair<std::string, Label>> cells) {
  Assignment a;
  for (const auto& [name, value] : cells) a.emplace(Variable{name}, value);
  return a;
}

}  // namespace gqn::testfix
