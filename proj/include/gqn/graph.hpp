#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace gqn {

enum class ConstKind { Int, Float, Str, Bool };

/// A constant value usable as a graph label. Identity is syntactic: Int 3 and
/// Float 3.0 are distinct labels, floats compare by bit pattern.
class ConstValue {
 public:
  static ConstValue of_int(std::int64_t v) { return ConstValue(v); }
  static ConstValue of_float(double v) { return ConstValue(v); }
  static ConstValue of_string(std::string v) { return ConstValue(std::move(v)); }
  static ConstValue of_bool(bool v) { return ConstValue(v); }

  ConstKind kind() const { return static_cast<ConstKind>(v_.index()); }
  std::int64_t as_int() const { return std::get<std::int64_t>(v_); }
  double as_float() const { return std::get<double>(v_); }
  const std::string& as_string() const { return std::get<std::string>(v_); }
  bool as_bool() const { return std::get<bool>(v_); }

  /// Canonical token form; injective over all constants.
  std::string to_string() const;

  bool operator==(const ConstValue& other) const;

 private:
  explicit ConstValue(std::int64_t v) : v_(v) {}
  explicit ConstValue(double v) : v_(v) {}
  explicit ConstValue(std::string v) : v_(std::move(v)) {}
  explicit ConstValue(bool v) : v_(v) {}

  std::variant<std::int64_t, double, std::string, bool> v_;
};

struct Variable {
  std::string name;  // without the '?' sigil

  std::string to_string() const { return "?" + name; }
  auto operator<=>(const Variable&) const = default;
};

/// A label is exactly one of: a constant or a variable.
class Label {
 public:
  Label(ConstValue c) : v_(std::move(c)) {}
  Label(Variable v) : v_(std::move(v)) {}

  bool is_constant() const { return v_.index() == 0; }
  bool is_variable() const { return v_.index() == 1; }
  const ConstValue& constant() const { return std::get<ConstValue>(v_); }
  const Variable& variable() const { return std::get<Variable>(v_); }

  std::string to_string() const;

  bool operator==(const Label& other) const;

 private:
  std::variant<ConstValue, Variable> v_;
};

/// Canonical total order: constants before variables, then lexicographic on
/// the printed form. Keeps every set iteration and printed table deterministic.
bool label_less(const Label& a, const Label& b);

struct LabelLess {
  bool operator()(const Label& a, const Label& b) const { return label_less(a, b); }
};

struct Triple {
  Label subject;
  Label predicate;
  Label object;

  std::string to_string() const;  // "(s, p, o)" diagnostic form
  bool operator==(const Triple&) const = default;
};

bool triple_less(const Triple& a, const Triple& b);

/// A graph: a set of nodes and a set of triples whose subjects and objects
/// are nodes. Predicates need not be nodes. Immutable once built; the add_*
/// members are for construction only.
class Graph {
 public:
  Graph() = default;

  /// Inserts the triple; its subject and object are auto-inserted as nodes.
  void add_node(const Label& node);
  void add_triple(const Triple& t);

  const std::vector<Label>& nodes() const { return nodes_; }      // canonical order
  const std::vector<Triple>& triples() const { return triples_; }  // canonical order

  bool contains_node(const Label& l) const;
  bool contains_triple(const Triple& t) const;
  bool empty() const { return nodes_.empty() && triples_.empty(); }

  /// Nodes plus predicates, canonical order.
  std::vector<Label> labels() const;
  std::vector<Variable> variables() const;
  std::vector<ConstValue> constants() const;

  /// Nodes occurring in no triple as subject or object.
  std::vector<Label> isolated_nodes() const;

  bool operator==(const Graph&) const = default;

 private:
  std::vector<Label> nodes_;
  std::vector<Triple> triples_;
};

Graph graph_union(const Graph& g1, const Graph& g2);
bool is_subgraph(const Graph& g1, const Graph& g2);

/// True for tokens that may be printed bare: [A-Za-z_][A-Za-z0-9_]* and not a
/// reserved word of the surface syntax.
bool is_bare_identifier(const std::string& s);
bool is_reserved_word(const std::string& s);

}  // namespace gqn
