#pragma once

#include "thiim/kernels.hpp"
#include "thiim/report.hpp"
#include "thiim/tiling.hpp"

namespace thiim {

// One tile execution as recorded by the scheduler.
struct TileTrace {
  int tile = -1;
  int group = -1;
  std::uint64_t start_ns = 0;
  std::uint64_t end_ns = 0;
  std::uint64_t digest = 0;
};

struct MwdOptions {
  bool collect_trace = false;
  UpdateLog* log = nullptr;
};

struct MwdResult {
  RunReport report;
  std::vector<TileTrace> trace;
};

// Raised when all groups go idle with tiles still pending (a plan bug or a
// tampered dependency graph).
struct SchedulerStuck : std::runtime_error {
  std::vector<int> stuck_tiles;
  explicit SchedulerStuck(std::vector<int> tiles);
};

// Multicore wavefront-diamond engine. Workers are split into
// total_threads / shape.group_size() groups; each group claims tiles from
// a shared FIFO queue and executes them cooperatively: tgz workers own
// static z slabs (the wavefront sweeps over them), tgx workers own static
// x chunks, tgc workers own fixed component subsets. Workers of a group
// synchronize at every wavefront step; groups interact only through the
// queue. With one thread and shape (1,1,1) this is the single-threaded
// wavefront-diamond engine.
MwdResult run_mwd(ProblemState& state, const TilingPlan& plan,
                  const ThreadGroupShape& shape, int total_threads,
                  const MwdOptions& opts = {});

// Convenience wrapper that builds the plan for (dims, steps, dw, bz).
MwdResult run_mwd(ProblemState& state, int steps, int dw, int bz,
                  const ThreadGroupShape& shape, int total_threads,
                  const MwdOptions& opts = {});

void write_trace_jsonl(const TilingPlan& plan, const std::vector<TileTrace>& trace,
                       const std::string& path);

}  // namespace thiim
