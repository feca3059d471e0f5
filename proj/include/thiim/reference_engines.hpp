#pragma once

#include "thiim/kernels.hpp"
#include "thiim/perf_models.hpp"
#include "thiim/report.hpp"

namespace thiim {

// Full-grid sweep, H half-step then E half-step per timestep. With more
// than one thread, each component sweep is split into static z slabs with
// a barrier between half-steps.
RunReport run_naive(ProblemState& state, int steps, int threads = 1,
                    UpdateLog* log = nullptr);

// Spatially blocked sweep: per component, y (and optionally x) is tiled
// and z streams innermost of the block loops, establishing the layer
// condition for the outer-shift operands. block_x = 0 leaves x untiled.
// Numerically identical to run_naive. Warns to stderr when two successive
// operand layers do not fit the profile's usable cache.
RunReport run_spatial_blocked(ProblemState& state, int steps, int block_y,
                              int block_x = 0, int threads = 1,
                              const MachineProfile* profile = nullptr,
                              UpdateLog* log = nullptr);

}  // namespace thiim
