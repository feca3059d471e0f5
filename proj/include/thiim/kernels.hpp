#pragma once

#include <cstdint>
#include <mutex>
#include <vector>

#include "thiim/state.hpp"

namespace thiim {

// Half-open interior sub-box updated as one unit, tagged with the half-step
// it belongs to.
struct Region {
  int x0, x1;
  int y0, y1;
  int z0, z1;
  Family halfstep;
  int step;

  std::uint64_t cells() const {
    return std::uint64_t(x1 - x0) * std::uint64_t(y1 - y0) * std::uint64_t(z1 - z0);
  }
  bool empty() const { return x0 >= x1 || y0 >= y1 || z0 >= z1; }
};

inline Region full_interior(const GridDims& d, Family f, int step) {
  return Region{0, d.nx, 0, d.ny, 0, d.nz, f, step};
}

inline int flops_per_cell(const ComponentDescriptor& desc) {
  return desc.has_source ? 22 : 20;
}
inline constexpr int kFlopsPerLup = 4 * 22 + 8 * 20;  // 248

// Main-memory traffic per cell in 64-bit reals, no-cache streaming model.
// A component whose shift runs along the outer (z) dimension re-reads its
// two operand arrays at a shifted z layer; those extra four reals hit
// memory unless two successive x-y layers fit in cache (the layer
// condition). Middle- and inner-dimension shifts always coalesce.
struct TrafficPerCell {
  int reads;
  int writes;
  int total() const { return reads + writes; }
};

inline TrafficPerCell traffic_per_cell(const ComponentDescriptor& desc,
                                       bool layer_condition_holds) {
  if (desc.shift_axis == Axis::Z) {
    const int shifted = layer_condition_holds ? 0 : 4;
    return {12 + shifted, 2};  // t,c,src + F + operands (+ shifted layer)
  }
  return {10, 2};  // t,c + F + operands, shifted reads coalesce
}

// Distinct (array, element) touches of one component update over a region,
// in 64-bit reals. Shifted operand reads coalesce with the unshifted ones
// except for the extra boundary layer, which is the counting the layer
// condition relies on; the no-cache streaming numbers of traffic_per_cell
// additionally charge the z-shifted re-reads once per cell.
struct RegionTraffic {
  std::uint64_t reals_read;
  std::uint64_t reals_written;
};

RegionTraffic count_distinct_touches(const GridDims& dims,
                                     const ComponentDescriptor& desc,
                                     const Region& region);

// Optional per-region instrumentation. Engines call add() once per region
// they update; the log is never consulted from kernel inner loops.
class UpdateLog {
 public:
  struct Record {
    Component comp;
    Region region;
  };

  void add(Component comp, const Region& r) {
    std::lock_guard<std::mutex> g(mu_);
    records_.push_back({comp, r});
  }

  const std::vector<Record>& records() const { return records_; }

  std::uint64_t total_flops() const {
    std::uint64_t n = 0;
    for (const auto& rec : records_)
      n += rec.region.cells() * flops_per_cell(descriptor(rec.comp));
    return n;
  }

 private:
  mutable std::mutex mu_;
  std::vector<Record> records_;
};

// Apply the split-field update to every cell of `region`:
//   F[i] = t[i]*F[i] + c[i]*((A[i+s] + B[i+s]) - (A[i] + B[i])) (+ src[i])
// with s the signed stride of the component's shift axis. 22 real flops per
// cell for sourced components, 20 otherwise. Reentrant; callers keep
// concurrent write regions disjoint and sequence half-steps.
void update_component_region(ProblemState& state, const ComponentDescriptor& desc,
                             const Region& region);

// One full timestep over the whole interior: the six H components in fixed
// order, then the six E components. Ghosts are never written.
void step_reference(ProblemState& state, int step, UpdateLog* log = nullptr);

}  // namespace thiim
