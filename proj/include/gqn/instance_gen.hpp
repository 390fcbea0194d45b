#pragma once

#include <cstdint>
#include <random>

#include "gqn/query.hpp"

namespace gqn {

struct GenOptions {
  int max_triples = 8;
  int max_vars = 4;
  int max_depth = 3;
};

/// Seeded generator of small graphs, scope-valid patterns and queries.
/// Identical seeds produce identical instances, so property runs are
/// reproducible byte for byte.
class InstanceGen {
 public:
  explicit InstanceGen(std::uint64_t seed, GenOptions opts = {});

  Graph random_graph();
  /// Variable-rich graph of the kind used on the left of a match. When a
  /// data graph is given, triples are abstracted from it so matches exist.
  Graph random_query_graph();
  Graph abstracted_query_graph(const Graph& data);
  /// Always passes validate(): bind/filter expressions use in-scope
  /// variables, union operands share one scope graph. The overload taking a
  /// data graph abstracts its basic patterns from that graph.
  Pattern random_pattern();
  Pattern random_pattern(const Graph& data);
  Query random_query();

  std::uint64_t below(std::uint64_t n);  // uniform in [0, n)

 private:
  Label random_node_label();
  Label random_predicate();
  Graph random_basic_graph();
  Graph random_build_graph(const std::vector<Variable>& scope);
  Pattern gen_pattern(int depth);
  Pattern same_scope_mate(const Pattern& left, int depth);
  Expr random_bool_expr(const std::vector<Variable>& scope);
  Expr random_value_expr(const std::vector<Variable>& scope);
  Variable random_var();

  std::mt19937_64 rng_;
  GenOptions opts_;
  int bind_counter_ = 0;
  const Graph* data_ = nullptr;  // abstraction source during random_pattern(data)
};

}  // namespace gqn
