#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "gqn/graph.hpp"

namespace gqn {

using GraphPtr = std::shared_ptr<const Graph>;

GraphPtr make_graph(Graph g);
GraphPtr empty_graph();

/// A match maps every variable of its source graph to a label of its target;
/// constants are fixed implicitly. Only the variable assignment is stored.
using Assignment = std::map<Variable, Label>;

class Match {
 public:
  Match(GraphPtr source, GraphPtr target, Assignment assignment);

  const Graph& source() const { return *source_; }
  const Graph& target() const { return *target_; }
  const GraphPtr& source_ptr() const { return source_; }
  const GraphPtr& target_ptr() const { return target_; }
  const Assignment& assignment() const { return assignment_; }

  Label apply(const Label& l) const;
  Triple apply(const Triple& t) const;

  /// Pointwise image of a subgraph of the source (nodes and triples).
  Graph image_of(const Graph& sub) const;

  /// Same assignment viewed into an enlarged target.
  Match retargeted(GraphPtr bigger) const;

  bool operator==(const Match& other) const;

 private:
  GraphPtr source_;
  GraphPtr target_;
  Assignment assignment_;
};

/// Checks the homomorphism conditions: constants fixed, node images are
/// target nodes, triple images are target triples.
bool is_valid_match(const Match& m);

struct AssignmentTable {
  std::vector<Variable> columns;          // canonical order
  std::vector<std::vector<Label>> rows;   // canonical order
};

/// A homogeneous set of matches: every member shares one source and one
/// target. Rows are kept sorted by their printed tuple and deduplicated.
class MatchSet {
 public:
  MatchSet(GraphPtr source, GraphPtr target);

  /// The one-element set containing the inclusion of the empty graph into g.
  static MatchSet inclusion_of_empty(GraphPtr g);
  /// The empty subset of matches from the empty graph into g.
  static MatchSet none_over(GraphPtr g);

  const Graph& source() const { return *source_; }
  const Graph& target() const { return *target_; }
  const GraphPtr& source_ptr() const { return source_; }
  const GraphPtr& target_ptr() const { return target_; }

  std::size_t size() const { return rows_.size(); }
  bool empty() const { return rows_.empty(); }
  const std::vector<Assignment>& rows() const { return rows_; }
  Match match_at(std::size_t i) const;
  bool contains(const Assignment& row) const;

  void insert(Assignment row);

  MatchSet retargeted(GraphPtr bigger) const;
  MatchSet subset(const std::vector<std::size_t>& indices) const;

  AssignmentTable table() const;

  /// Union over all members of the pointwise image of `sub` (a subgraph of
  /// the source). Throws PreconditionError on source mismatch.
  Graph image_of(const Graph& sub) const;

  bool operator==(const MatchSet& other) const;

 private:
  GraphPtr source_;
  GraphPtr target_;
  std::vector<Assignment> rows_;
};

/// Deterministic fresh-variable source. Never emits a name that was reserved
/// (labels of the graphs taking part in the evaluation); the counter only
/// grows, so a rerun from the same start reproduces the same names.
class FreshVarGen {
 public:
  explicit FreshVarGen(long start = 0) : counter_(start) {}

  void reserve(const Variable& v) { reserved_.insert(v.name); }
  void reserve_labels(const Graph& g);

  Variable fresh();
  long counter() const { return counter_; }

 private:
  long counter_;
  std::set<std::string> reserved_;
};

// --- matching operations ---

/// All constant-fixing homomorphisms from l into g, enumerated by
/// backtracking over the source triples (most-constrained triple first).
MatchSet enumerate_matches(GraphPtr l, GraphPtr g);
MatchSet enumerate_matches(const Graph& l, const Graph& g);

/// True iff the two matches agree on their shared source variables.
bool compatible(const Match& m1, const Match& m2);

/// The unique common extension of two compatible matches.
/// Throws PreconditionError when they are not compatible.
Match join_match(const Match& m1, const Match& m2);

/// Instantiates construction graph r through m: shared variables map through
/// m, the remaining ones get fresh variables (one per (m, variable) pair).
/// Returns the new match r -> target(m) ∪ H and its image H.
std::pair<Match, Graph> build_match(const Match& m, const Graph& r, FreshVarGen& gen);

/// Row-level core of build_match: the instantiated assignment over the
/// variables of r plus the image graph, without materializing the enlarged
/// target.
std::pair<Assignment, Graph> build_assignment(const Match& m, const Graph& r,
                                              FreshVarGen& gen);

// --- equality up to renaming of fresh variables ---
//
// `protect` lists variables that must not be renamed (typically the variables
// of the original input graph and of the pattern text). Source variables are
// never renamed. The fast path applies the canonical first-appearance
// renaming over the sorted table; an exact bijection search decides the rare
// cases where the two sets sort their fresh names differently.

bool sets_equal_up_to_renaming(const MatchSet& a, const MatchSet& b,
                               const std::set<Variable>& protect = {});
bool graphs_equal_up_to_renaming(const Graph& a, const Graph& b,
                                 const std::set<Variable>& protect = {});
bool rows_equal_up_to_renaming(const std::vector<std::vector<Label>>& a,
                               const std::vector<std::vector<Label>>& b,
                               const std::set<Variable>& protect = {});

}  // namespace gqn
