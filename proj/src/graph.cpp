#include "gqn/graph.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cstring>

namespace gqn {

namespace {

const std::array<const char*, 25> kReservedWords = {
    "CONSTRUCT", "SELECT", "CONSELECT", "WHERE", "BASIC", "JOIN", "UNION",
    "BIND",      "AS",     "FILTER",    "BUILD", "EMPTY", "NOT",  "AND",
    "OR",        "MAX",    "MIN",       "SUM",   "AVG",   "COUNT",
    "DISTINCT",  "BY",     "node",      "true",  "false"};

std::string format_float(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  std::string s(buf, ptr);
  // Keep a float marker so the token never re-parses as an integer.
  if (s.find_first_of(".eEni") == std::string::npos) s += ".0";
  return s;
}

std::string quote_string(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default: out += c;
    }
  }
  out += '"';
  return out;
}

template <typename T, typename Less>
void sorted_insert(std::vector<T>& v, const T& item, Less less) {
  auto it = std::lower_bound(v.begin(), v.end(), item, less);
  if (it != v.end() && *it == item) return;
  v.insert(it, item);
}

}  // namespace

bool is_reserved_word(const std::string& s) {
  for (const char* w : kReservedWords)
    if (s == w) return true;
  return false;
}

bool is_bare_identifier(const std::string& s) {
  if (s.empty()) return false;
  if (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_') return false;
  for (char c : s)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  return !is_reserved_word(s);
}

std::string ConstValue::to_string() const {
  switch (kind()) {
    case ConstKind::Int: return std::to_string(as_int());
    case ConstKind::Float: return format_float(as_float());
    case ConstKind::Str:
      return is_bare_identifier(as_string()) ? as_string() : quote_string(as_string());
    case ConstKind::Bool: return as_bool() ? "true" : "false";
  }
  return {};
}

bool ConstValue::operator==(const ConstValue& other) const {
  if (v_.index() != other.v_.index()) return false;
  if (kind() == ConstKind::Float) {
    // Bit-pattern identity, so 0.0 and -0.0 stay distinct labels.
    double a = as_float(), b = other.as_float();
    return std::memcmp(&a, &b, sizeof(double)) == 0;
  }
  return v_ == other.v_;
}

std::string Label::to_string() const {
  return is_constant() ? constant().to_string() : variable().to_string();
}

bool Label::operator==(const Label& other) const {
  if (v_.index() != other.v_.index()) return false;
  if (is_constant()) return constant() == other.constant();
  return variable() == other.variable();
}

bool label_less(const Label& a, const Label& b) {
  if (a.is_constant() != b.is_constant()) return a.is_constant();
  return a.to_string() < b.to_string();
}

std::string Triple::to_string() const {
  return "(" + subject.to_string() + ", " + predicate.to_string() + ", " +
         object.to_string() + ")";
}

bool triple_less(const Triple& a, const Triple& b) {
  if (!(a.subject == b.subject)) return label_less(a.subject, b.subject);
  if (!(a.predicate == b.predicate)) return label_less(a.predicate, b.predicate);
  return label_less(a.object, b.object);
}

void Graph::add_node(const Label& node) {
  sorted_insert(nodes_, node, label_less);
}

void Graph::add_triple(const Triple& t) {
  add_node(t.subject);
  add_node(t.object);
  sorted_insert(triples_, t, triple_less);
}

bool Graph::contains_node(const Label& l) const {
  return std::binary_search(nodes_.begin(), nodes_.end(), l, label_less);
}

bool Graph::contains_triple(const Triple& t) const {
  return std::binary_search(triples_.begin(), triples_.end(), t, triple_less);
}

std::vector<Label> Graph::labels() const {
  std::vector<Label> out = nodes_;
  for (const Triple& t : triples_) sorted_insert(out, t.predicate, label_less);
  return out;
}

std::vector<Variable> Graph::variables() const {
  std::vector<Variable> out;
  for (const Label& l : labels())
    if (l.is_variable()) out.push_back(l.variable());
  return out;
}

std::vector<ConstValue> Graph::constants() const {
  std::vector<ConstValue> out;
  for (const Label& l : labels())
    if (l.is_constant()) out.push_back(l.constant());
  return out;
}

std::vector<Label> Graph::isolated_nodes() const {
  std::vector<Label> out;
  for (const Label& n : nodes_) {
    bool used = false;
    for (const Triple& t : triples_) {
      if (t.subject == n || t.object == n) {
        used = true;
        break;
      }
    }
    if (!used) out.push_back(n);
  }
  return out;
}

Graph graph_union(const Graph& g1, const Graph& g2) {
  Graph out = g1;
  for (const Label& n : g2.nodes()) out.add_node(n);
  for (const Triple& t : g2.triples()) out.add_triple(t);
  return out;
}

bool is_subgraph(const Graph& g1, const Graph& g2) {
  for (const Label& n : g1.nodes())
    if (!g2.contains_node(n)) return false;
  for (const Triple& t : g1.triples())
    if (!g2.contains_triple(t)) return false;
  return true;
}

}  // namespace gqn
