#pragma once

#include <string>
#include <vector>

#include "thiim/mwd.hpp"
#include "thiim/state.hpp"

namespace thiim {

struct StateDiff {
  double max_abs_diff = 0.0;
  bool bitwise_equal = true;
  std::uint64_t differing_values = 0;
  Component first_component = Component::Exy;
  int x = -1, y = -1, z = -1;
};

// Exact interior scan of all 12 field arrays. bitwise_equal is the
// contract between engines; max_abs_diff (largest |re| or |im| deviation)
// exists for diagnosing toolchain differences.
StateDiff compare_states(const ProblemState& a, const ProblemState& b);

struct TraceViolation {
  enum class Kind { Multiplicity, DependencyOrder, ReadBeforeWrite, BadTrace };
  Kind kind;
  int tile;
  std::string detail;
};

struct TraceCheckResult {
  std::vector<TraceViolation> violations;
  std::uint64_t updates_h = 0;  // (cell, timestep) updates replayed per family
  std::uint64_t updates_e = 0;
  bool ok() const { return violations.empty(); }
};

// Brute-force replay of a scheduler trace against its plan on the virtual
// (y, z, timestep, half-step) lattice. Flags cells updated more than once,
// tiles starting before a dependency ended, and any neighbor read whose
// producing update is neither earlier in the same tile nor inside a tile
// that finished before this one started. A truncated trace (missing or
// duplicated tiles, digest mismatch) is reported as BadTrace.
TraceCheckResult check_schedule_trace(const TilingPlan& plan,
                                      const std::vector<TileTrace>& trace);

// Deterministic scheduler simulation used by fault-injection tests and the
// CLI: `groups` virtual groups pop ready tiles FIFO; a tile takes time
// proportional to its update count.
std::vector<TileTrace> synthesize_trace(const TilingPlan& plan, int groups);

}  // namespace thiim
