#include "gqn/propcheck.hpp"

#include <sstream>

#include "gqn/errors.hpp"
#include "gqn/print.hpp"

namespace gqn {

bool PropReport::ok() const {
  return cases > 0 && passed == cases && equivalence_failures == 0 &&
         determinism_violations == 0 && bound_violations == 0 &&
         measure_violations == 0 && replay_mismatches == 0 && unexpected_errors == 0;
}

std::string PropReport::to_text() const {
  std::ostringstream out;
  out << "property suite: seed=" << seed << " cases=" << cases << "\n";
  out << "engine/oracle equivalence: " << passed << "/" << cases << "\n";
  out << "determinism violations: " << determinism_violations << "\n";
  out << "step-bound violations: " << bound_violations << "\n";
  out << "measure violations: " << measure_violations << "\n";
  out << "replay mismatches: " << replay_mismatches << "\n";
  out << "unexpected errors: " << unexpected_errors << "\n";
  out << "total rewriting steps: " << total_steps << "\n";
  for (const std::string& n : notes) out << "note: " << n << "\n";
  out << "result: " << (ok() ? "PASS" : "FAIL") << "\n";
  return out.str();
}

namespace {

constexpr long kOracleFreshBase = 1000000;

void note(PropReport& report, std::string text) {
  if (report.notes.size() < 5) report.notes.push_back(std::move(text));
}

std::set<Variable> protected_vars(const Graph& g, const Pattern& p) {
  std::set<Variable> prot = pattern_text_vars(p);
  for (const Variable& v : g.variables()) prot.insert(v);
  return prot;
}

}  // namespace

PropReport run_property_suite(std::uint64_t seed, int cases, GenOptions opts) {
  PropReport report;
  report.seed = seed;
  report.cases = cases;
  InstanceGen gen(seed, opts);

  for (int i = 0; i < cases; ++i) {
    Graph data = gen.random_graph();
    Pattern pattern = gen.random_pattern(data);
    GraphPtr g = make_graph(data);

    MatchSet engine_result = MatchSet::none_over(g);
    bool engine_failed = false;
    EvalErrorKind engine_error{};
    long steps = 0;

    try {
      FreshVarGen fresh;
      NarrowContext ctx{fresh};
      auto [result, trace] = derive(g, pattern, ctx);
      engine_result = std::move(result);
      steps = static_cast<long>(trace.steps.size());
      report.total_steps += steps;
    } catch (const EvalException& ex) {
      engine_failed = true;
      engine_error = ex.info().kind;
    } catch (const EngineError& ex) {
      std::string what = ex.what();
      if (what.find("determinism") != std::string::npos)
        report.determinism_violations++;
      else if (what.find("step bound") != std::string::npos)
        report.bound_violations++;
      else if (what.find("measure") != std::string::npos)
        report.measure_violations++;
      else
        report.unexpected_errors++;
      note(report, "case " + std::to_string(i) + ": " + what);
      continue;
    } catch (const std::exception& ex) {
      report.unexpected_errors++;
      note(report, "case " + std::to_string(i) + ": " + ex.what());
      continue;
    }

    bool oracle_failed = false;
    EvalErrorKind oracle_error{};
    MatchSet oracle_result = MatchSet::none_over(g);
    try {
      FreshVarGen fresh(kOracleFreshBase);
      fresh.reserve_labels(data);
      for (const Variable& v : pattern_text_vars(pattern)) fresh.reserve(v);
      EvalContext ctx{fresh};
      oracle_result = eval_pattern(pattern, g, ctx).matches;
    } catch (const EvalException& ex) {
      oracle_failed = true;
      oracle_error = ex.info().kind;
    } catch (const std::exception& ex) {
      report.unexpected_errors++;
      note(report, "case " + std::to_string(i) + " (oracle): " + ex.what());
      continue;
    }

    if (engine_failed || oracle_failed) {
      if (engine_failed && oracle_failed && engine_error == oracle_error) {
        report.passed++;
      } else {
        report.equivalence_failures++;
        note(report, "case " + std::to_string(i) + ": engines disagree on failure");
      }
      continue;
    }

    try {
      if (!sets_equal_up_to_renaming(engine_result, oracle_result,
                                     protected_vars(data, pattern))) {
        report.equivalence_failures++;
        note(report, "case " + std::to_string(i) + ": engine and oracle differ on\n" +
                         print_pattern(pattern) + "\nover\n" + print_graph(data));
        continue;
      }
    } catch (const EngineError& ex) {
      report.unexpected_errors++;
      note(report, "case " + std::to_string(i) + " (comparison): " + ex.what());
      continue;
    }

    // A rerun with a reset generator must reproduce the engine output
    // exactly, fresh names included.
    try {
      FreshVarGen fresh;
      NarrowContext ctx{fresh};
      auto [again, trace2] = derive(g, pattern, ctx);
      (void)trace2;
      if (!(again == engine_result)) {
        report.replay_mismatches++;
        note(report, "case " + std::to_string(i) + ": replay differs");
        continue;
      }
    } catch (const std::exception& ex) {
      report.unexpected_errors++;
      note(report, "case " + std::to_string(i) + " (replay): " + ex.what());
      continue;
    }

    report.passed++;
  }
  return report;
}

}  // namespace gqn
