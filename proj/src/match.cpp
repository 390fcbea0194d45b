#include "gqn/match.hpp"

#include <algorithm>
#include <functional>

#include "gqn/errors.hpp"

namespace gqn {

namespace {

std::vector<std::string> row_key(const Assignment& row) {
  std::vector<std::string> key;
  key.reserve(row.size());
  for (const auto& [var, value] : row) key.push_back(value.to_string());
  return key;
}

bool row_less(const Assignment& a, const Assignment& b) {
  return row_key(a) < row_key(b);
}

}  // namespace

GraphPtr make_graph(Graph g) { return std::make_shared<const Graph>(std::move(g)); }

GraphPtr empty_graph() {
  static const GraphPtr empty = std::make_shared<const Graph>();
  return empty;
}

Match::Match(GraphPtr source, GraphPtr target, Assignment assignment)
    : source_(std::move(source)), target_(std::move(target)), assignment_(std::move(assignment)) {
  auto vars = source_->variables();
  if (vars.size() != assignment_.size())
    throw PreconditionError("match assignment must cover exactly the source variables");
  for (const Variable& v : vars)
    if (!assignment_.contains(v))
      throw PreconditionError("match assignment missing source variable " + v.to_string());
}

Label Match::apply(const Label& l) const {
  if (l.is_constant()) return l;
  auto it = assignment_.find(l.variable());
  if (it == assignment_.end())
    throw PreconditionError("label " + l.to_string() + " is outside the match source");
  return it->second;
}

Triple Match::apply(const Triple& t) const {
  return Triple{apply(t.subject), apply(t.predicate), apply(t.object)};
}

Graph Match::image_of(const Graph& sub) const {
  Graph out;
  for (const Label& n : sub.nodes()) out.add_node(apply(n));
  for (const Triple& t : sub.triples()) out.add_triple(apply(t));
  return out;
}

Match Match::retargeted(GraphPtr bigger) const {
  if (!is_subgraph(*target_, *bigger))
    throw PreconditionError("retarget requires an enlarged target");
  return Match(source_, std::move(bigger), assignment_);
}

bool Match::operator==(const Match& other) const {
  return *source_ == *other.source_ && *target_ == *other.target_ &&
         assignment_ == other.assignment_;
}

bool is_valid_match(const Match& m) {
  const Graph& src = m.source();
  const Graph& tgt = m.target();
  for (const Label& n : src.nodes())
    if (!tgt.contains_node(m.apply(n))) return false;
  for (const Triple& t : src.triples())
    if (!tgt.contains_triple(m.apply(t))) return false;
  return true;  // constants are fixed by construction
}

MatchSet::MatchSet(GraphPtr source, GraphPtr target)
    : source_(std::move(source)), target_(std::move(target)) {}

MatchSet MatchSet::inclusion_of_empty(GraphPtr g) {
  MatchSet out(empty_graph(), std::move(g));
  out.insert({});
  return out;
}

MatchSet MatchSet::none_over(GraphPtr g) { return MatchSet(empty_graph(), std::move(g)); }

Match MatchSet::match_at(std::size_t i) const {
  return Match(source_, target_, rows_.at(i));
}

bool MatchSet::contains(const Assignment& row) const {
  return std::binary_search(rows_.begin(), rows_.end(), row, row_less);
}

void MatchSet::insert(Assignment row) {
  auto vars = source_->variables();
  if (vars.size() != row.size())
    throw PreconditionError("row does not cover the source variables");
  for (const Variable& v : vars)
    if (!row.contains(v))
      throw PreconditionError("row missing source variable " + v.to_string());
  auto it = std::lower_bound(rows_.begin(), rows_.end(), row, row_less);
  if (it != rows_.end() && *it == row) return;
  rows_.insert(it, std::move(row));
}

MatchSet MatchSet::retargeted(GraphPtr bigger) const {
  if (!is_subgraph(*target_, *bigger))
    throw PreconditionError("retarget requires an enlarged target");
  MatchSet out(source_, std::move(bigger));
  out.rows_ = rows_;
  return out;
}

MatchSet MatchSet::subset(const std::vector<std::size_t>& indices) const {
  MatchSet out(source_, target_);
  for (std::size_t i : indices) out.insert(rows_.at(i));
  return out;
}

AssignmentTable MatchSet::table() const {
  AssignmentTable t;
  t.columns = source_->variables();
  for (const Assignment& row : rows_) {
    std::vector<Label> cells;
    cells.reserve(t.columns.size());
    for (const auto& [var, value] : row) cells.push_back(value);
    t.rows.push_back(std::move(cells));
  }
  return t;
}

Graph MatchSet::image_of(const Graph& sub) const {
  if (!is_subgraph(sub, *source_))
    throw PreconditionError("image requires a subgraph of the match-set source");
  Graph out;
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    Graph img = match_at(i).image_of(sub);
    for (const Label& n : img.nodes()) out.add_node(n);
    for (const Triple& t : img.triples()) out.add_triple(t);
  }
  return out;
}

bool MatchSet::operator==(const MatchSet& other) const {
  return *source_ == *other.source_ && *target_ == *other.target_ && rows_ == other.rows_;
}

void FreshVarGen::reserve_labels(const Graph& g) {
  for (const Variable& v : g.variables()) reserve(v);
}

Variable FreshVarGen::fresh() {
  for (;;) {
    // Length-graded spelling: one 'z' per extra digit, so the printed order
    // of fresh names always equals their allocation order ("_f9" < "_fz10").
    std::string digits = std::to_string(counter_++);
    Variable v{"_f" + std::string(digits.size() - 1, 'z') + digits};
    if (!reserved_.contains(v.name)) return v;
  }
}

// --- enumeration ---

MatchSet enumerate_matches(GraphPtr lp, GraphPtr gp) {
  const Graph& l = *lp;
  const Graph& g = *gp;
  MatchSet out(lp, gp);

  for (const Label& n : l.nodes())
    if (n.is_constant() && !g.contains_node(n)) return out;

  // Bind variables early: repeatedly pick the triple with the fewest
  // still-unbound variables, ties broken by canonical order.
  std::vector<Triple> ordered;
  {
    std::vector<Triple> remaining = l.triples();
    std::set<Variable> bound;
    auto unbound_count = [&](const Triple& t) {
      std::set<Variable> seen;
      for (const Label* x : {&t.subject, &t.predicate, &t.object})
        if (x->is_variable() && !bound.contains(x->variable())) seen.insert(x->variable());
      return seen.size();
    };
    while (!remaining.empty()) {
      std::size_t best = 0;
      for (std::size_t i = 1; i < remaining.size(); ++i)
        if (unbound_count(remaining[i]) < unbound_count(remaining[best])) best = i;
      Triple t = remaining[best];
      remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(best));
      for (const Label* x : {&t.subject, &t.predicate, &t.object})
        if (x->is_variable()) bound.insert(x->variable());
      ordered.push_back(t);
    }
  }

  // Variables with no triple occurrence are isolated nodes; they may map to
  // any node of the target.
  std::vector<Variable> free_vars;
  {
    std::set<Variable> in_triples;
    for (const Triple& t : l.triples())
      for (const Label* x : {&t.subject, &t.predicate, &t.object})
        if (x->is_variable()) in_triples.insert(x->variable());
    for (const Variable& v : l.variables())
      if (!in_triples.contains(v)) free_vars.push_back(v);
  }

  Assignment current;

  std::function<void()> extend_free = [&]() {
    std::function<void(std::size_t)> rec = [&](std::size_t j) {
      if (j == free_vars.size()) {
        Match m(lp, gp, current);
        if (is_valid_match(m)) out.insert(current);
        return;
      }
      for (const Label& n : g.nodes()) {
        current.emplace(free_vars[j], n);
        rec(j + 1);
        current.erase(free_vars[j]);
      }
    };
    rec(0);
  };

  std::function<void(std::size_t)> search = [&](std::size_t k) {
    if (k == ordered.size()) {
      extend_free();
      return;
    }
    const Triple& t = ordered[k];
    for (const Triple& cand : g.triples()) {
      std::vector<Variable> newly_bound;
      auto unify = [&](const Label& pat, const Label& value) {
        if (pat.is_constant()) return pat == value;
        auto it = current.find(pat.variable());
        if (it != current.end()) return it->second == value;
        current.emplace(pat.variable(), value);
        newly_bound.push_back(pat.variable());
        return true;
      };
      bool ok = unify(t.subject, cand.subject) && unify(t.predicate, cand.predicate) &&
                unify(t.object, cand.object);
      if (ok) search(k + 1);
      for (const Variable& v : newly_bound) current.erase(v);
    }
  };

  search(0);
  return out;
}

MatchSet enumerate_matches(const Graph& l, const Graph& g) {
  return enumerate_matches(make_graph(l), make_graph(g));
}

bool compatible(const Match& m1, const Match& m2) {
  for (const auto& [var, value] : m1.assignment()) {
    auto it = m2.assignment().find(var);
    if (it != m2.assignment().end() && !(it->second == value)) return false;
  }
  return true;
}

Match join_match(const Match& m1, const Match& m2) {
  if (!compatible(m1, m2))
    throw PreconditionError("incompatible matches cannot be joined");
  Graph source = graph_union(m1.source(), m2.source());
  Graph target = graph_union(m1.target(), m2.target());
  Assignment merged = m1.assignment();
  for (const auto& [var, value] : m2.assignment()) merged.emplace(var, value);
  return Match(make_graph(std::move(source)), make_graph(std::move(target)), std::move(merged));
}

std::pair<Assignment, Graph> build_assignment(const Match& m, const Graph& r,
                                              FreshVarGen& gen) {
  Assignment assignment;
  for (const Variable& v : r.variables()) {
    auto it = m.assignment().find(v);
    if (it != m.assignment().end())
      assignment.emplace(v, it->second);
    else
      assignment.emplace(v, Label(gen.fresh()));
  }
  auto apply = [&](const Label& l) -> Label {
    return l.is_constant() ? l : assignment.at(l.variable());
  };
  Graph image;
  for (const Label& n : r.nodes()) image.add_node(apply(n));
  for (const Triple& t : r.triples())
    image.add_triple(Triple{apply(t.subject), apply(t.predicate), apply(t.object)});
  return {std::move(assignment), std::move(image)};
}

std::pair<Match, Graph> build_match(const Match& m, const Graph& r, FreshVarGen& gen) {
  auto [assignment, image] = build_assignment(m, r, gen);
  Graph target = graph_union(m.target(), image);
  Match built(make_graph(r), make_graph(std::move(target)), std::move(assignment));
  return {std::move(built), std::move(image)};
}

// --- equality up to renaming ---

namespace {

// Tagged tuple groups with multiset semantics; one renaming must explain all
// groups at once (table rows and target together).
using Structure = std::vector<std::vector<std::vector<Label>>>;

std::vector<std::string> tuple_key(const std::vector<Label>& tuple) {
  std::vector<std::string> key;
  key.reserve(tuple.size());
  for (const Label& l : tuple) key.push_back(l.to_string());
  return key;
}

void sort_structure(Structure& s) {
  for (auto& group : s)
    std::sort(group.begin(), group.end(),
              [](const auto& a, const auto& b) { return tuple_key(a) < tuple_key(b); });
}

std::vector<Variable> renameable_vars(const Structure& s, const std::set<Variable>& protect) {
  std::set<Variable> vars;
  for (const auto& group : s)
    for (const auto& tuple : group)
      for (const Label& l : tuple)
        if (l.is_variable() && !protect.contains(l.variable())) vars.insert(l.variable());
  return {vars.begin(), vars.end()};
}

Structure apply_renaming(const Structure& s, const std::map<Variable, Variable>& sigma) {
  Structure out = s;
  for (auto& group : out)
    for (auto& tuple : group)
      for (Label& l : tuple)
        if (l.is_variable()) {
          auto it = sigma.find(l.variable());
          if (it != sigma.end()) l = Label(it->second);
        }
  sort_structure(out);
  return out;
}

// Placeholder names longer than every variable in sight, so a user variable
// can never collide with them and fake an equality.
std::size_t longest_var_name(const Structure& s, const std::set<Variable>& protect) {
  std::size_t longest = 0;
  for (const Variable& v : protect) longest = std::max(longest, v.name.size());
  for (const auto& group : s)
    for (const auto& tuple : group)
      for (const Label& l : tuple)
        if (l.is_variable()) longest = std::max(longest, l.variable().name.size());
  return longest;
}

Structure canonicalize(const Structure& s, const std::set<Variable>& protect,
                       const std::string& prefix) {
  Structure sorted = s;
  sort_structure(sorted);
  std::map<Variable, Variable> sigma;
  int next = 0;
  for (const auto& group : sorted)
    for (const auto& tuple : group)
      for (const Label& l : tuple)
        if (l.is_variable() && !protect.contains(l.variable()) &&
            !sigma.contains(l.variable()))
          sigma.emplace(l.variable(), Variable{prefix + std::to_string(next++)});
  return apply_renaming(sorted, sigma);
}

// Tuple-matching search: pair every tuple of `a` with a distinct tuple of
// `b` carrying the same blinded key (renameable variables blinded out),
// growing one injective variable renaming along the way. Constants and
// protected variables are pinned by the key, so unification touches only the
// renameable positions.
struct FlatTuple {
  std::size_t group;
  std::vector<Label> labels;
  std::string blinded_key;
  int renameable_positions = 0;
};

std::string blinded_key_of(std::size_t group, const std::vector<Label>& tuple,
                           const std::set<Variable>& protect, int& renameable) {
  std::string key = std::to_string(group) + "|";
  for (const Label& l : tuple) {
    if (l.is_variable() && !protect.contains(l.variable())) {
      key += "?;";
      ++renameable;
    } else {
      key += l.to_string() + ";";
    }
  }
  return key;
}

std::vector<FlatTuple> flatten(const Structure& s, const std::set<Variable>& protect) {
  std::vector<FlatTuple> out;
  for (std::size_t gi = 0; gi < s.size(); ++gi)
    for (const auto& tuple : s[gi]) {
      FlatTuple ft{gi, tuple, "", 0};
      ft.blinded_key = blinded_key_of(gi, tuple, protect, ft.renameable_positions);
      out.push_back(std::move(ft));
    }
  return out;
}

bool bijection_exists(const Structure& a, const Structure& b,
                      const std::set<Variable>& protect) {
  if (renameable_vars(a, protect).size() != renameable_vars(b, protect).size())
    return false;

  std::vector<FlatTuple> ta = flatten(a, protect);
  std::vector<FlatTuple> tb = flatten(b, protect);
  if (ta.size() != tb.size()) return false;

  std::map<std::string, std::vector<std::size_t>> b_by_key;
  for (std::size_t i = 0; i < tb.size(); ++i) b_by_key[tb[i].blinded_key].push_back(i);
  for (const FlatTuple& t : ta) {
    auto it = b_by_key.find(t.blinded_key);
    if (it == b_by_key.end()) return false;
  }

  std::map<Variable, Variable> forward;
  std::map<Variable, Variable> backward;
  std::vector<bool> a_matched(ta.size(), false);
  std::vector<bool> b_used(tb.size(), false);
  long budget = 5000000;

  // Position-wise compatibility under the current renaming; only spots a
  // conflict, the commit itself may still fail on intra-tuple clashes.
  auto consistent = [&](const FlatTuple& x, const FlatTuple& y) {
    for (std::size_t p = 0; p < x.labels.size(); ++p) {
      const Label& la = x.labels[p];
      if (!la.is_variable() || protect.contains(la.variable())) continue;
      const Variable& va = la.variable();
      const Variable& vb = y.labels[p].variable();
      auto fit = forward.find(va);
      if (fit != forward.end() && !(fit->second == vb)) return false;
      auto bit = backward.find(vb);
      if (bit != backward.end() && !(bit->second == va)) return false;
    }
    return true;
  };

  auto try_unify = [&](const FlatTuple& x, const FlatTuple& y,
                       std::vector<std::pair<Variable, Variable>>& added) {
    for (std::size_t p = 0; p < x.labels.size(); ++p) {
      const Label& la = x.labels[p];
      if (!la.is_variable() || protect.contains(la.variable())) continue;
      const Variable& va = la.variable();
      const Variable& vb = y.labels[p].variable();
      auto fit = forward.find(va);
      auto bit = backward.find(vb);
      if (fit != forward.end()) {
        if (!(fit->second == vb)) return false;
        continue;
      }
      if (bit != backward.end()) return false;  // vb already taken
      forward.emplace(va, vb);
      backward.emplace(vb, va);
      added.emplace_back(va, vb);
    }
    return true;
  };

  // Fail-first: always extend the pairing at the tuple with the fewest
  // consistent candidates left.
  std::function<bool(std::size_t)> rec = [&](std::size_t remaining) -> bool {
    if (remaining == 0) return true;
    std::size_t best = ta.size();
    std::vector<std::size_t> best_candidates;
    for (std::size_t i = 0; i < ta.size(); ++i) {
      if (a_matched[i]) continue;
      std::vector<std::size_t> candidates;
      for (std::size_t j : b_by_key[ta[i].blinded_key]) {
        if (--budget < 0)
          throw EngineError("renaming-equality search exceeded its budget");
        if (!b_used[j] && consistent(ta[i], tb[j])) candidates.push_back(j);
      }
      if (candidates.empty()) return false;
      if (best == ta.size() || candidates.size() < best_candidates.size()) {
        best = i;
        best_candidates = std::move(candidates);
        if (best_candidates.size() == 1) break;  // forced
      }
    }
    for (std::size_t j : best_candidates) {
      if (--budget < 0)
        throw EngineError("renaming-equality search exceeded its budget");
      std::vector<std::pair<Variable, Variable>> added;
      if (try_unify(ta[best], tb[j], added)) {
        a_matched[best] = true;
        b_used[j] = true;
        if (rec(remaining - 1)) return true;
        a_matched[best] = false;
        b_used[j] = false;
      }
      for (const auto& [va, vb] : added) {
        forward.erase(va);
        backward.erase(vb);
      }
    }
    return false;
  };
  return rec(ta.size());
}

bool structure_equal_up_to_renaming(const Structure& a, const Structure& b,
                                    const std::set<Variable>& protect) {
  std::size_t longest =
      std::max(longest_var_name(a, protect), longest_var_name(b, protect));
  std::string prefix = std::string(longest + 1, '_') + "r";
  if (canonicalize(a, protect, prefix) == canonicalize(b, protect, prefix)) return true;
  return bijection_exists(a, b, protect);
}

Structure graph_structure(const Graph& g) {
  Structure s(2);
  for (const Triple& t : g.triples()) s[0].push_back({t.subject, t.predicate, t.object});
  for (const Label& n : g.nodes()) s[1].push_back({n});
  return s;
}

}  // namespace

bool sets_equal_up_to_renaming(const MatchSet& a, const MatchSet& b,
                               const std::set<Variable>& protect) {
  if (!(a.source() == b.source())) return false;
  std::set<Variable> prot = protect;
  for (const Variable& v : a.source().variables()) prot.insert(v);

  auto to_structure = [](const MatchSet& ms) {
    Structure s(3);
    for (const auto& row : ms.rows()) {
      std::vector<Label> tuple;
      for (const auto& [var, value] : row) tuple.push_back(value);
      s[0].push_back(std::move(tuple));
    }
    Structure g = graph_structure(ms.target());
    s[1] = std::move(g[0]);
    s[2] = std::move(g[1]);
    return s;
  };
  return structure_equal_up_to_renaming(to_structure(a), to_structure(b), prot);
}

bool graphs_equal_up_to_renaming(const Graph& a, const Graph& b,
                                 const std::set<Variable>& protect) {
  return structure_equal_up_to_renaming(graph_structure(a), graph_structure(b), protect);
}

bool rows_equal_up_to_renaming(const std::vector<std::vector<Label>>& a,
                               const std::vector<std::vector<Label>>& b,
                               const std::set<Variable>& protect) {
  if (a.size() != b.size()) return false;
  Structure sa(1), sb(1);
  sa[0] = a;
  sb[0] = b;
  return structure_equal_up_to_renaming(sa, sb, protect);
}

}  // namespace gqn
