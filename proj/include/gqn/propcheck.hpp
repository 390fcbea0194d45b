#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gqn/instance_gen.hpp"
#include "gqn/narrowing.hpp"

namespace gqn {

/// Outcome of a randomized equivalence run between the rewriting engine and
/// the reference evaluator. All counters are deterministic under a fixed
/// seed; the report never contains timings.
struct PropReport {
  std::uint64_t seed = 0;
  int cases = 0;
  int passed = 0;
  int equivalence_failures = 0;
  int determinism_violations = 0;
  int bound_violations = 0;
  int measure_violations = 0;
  int replay_mismatches = 0;
  int unexpected_errors = 0;
  long total_steps = 0;
  std::vector<std::string> notes;  // first few failure descriptions

  bool ok() const;
  std::string to_text() const;
};

/// Per case: derive via the rewriting engine, evaluate via the reference
/// evaluator (with a distant fresh-name base so renaming is exercised), and
/// require equality up to renaming of generated variables. Determinism, the
/// step bound, and the strictly decreasing measure are asserted inside every
/// derivation step.
PropReport run_property_suite(std::uint64_t seed, int cases, GenOptions opts = {});

}  // namespace gqn
