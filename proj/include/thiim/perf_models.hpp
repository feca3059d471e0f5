#pragma once

#include <cstdint>

#include "thiim/kernels.hpp"

namespace thiim {

struct MachineProfile {
  std::uint64_t cache_bytes = 45ull << 20;  // last-level cache capacity
  double usable_fraction = 0.5;             // fraction assumed free for tile data
  double bandwidth_gbs = 50.0;              // sustained memory bandwidth

  std::uint64_t usable_cache_bytes() const {
    return std::uint64_t(double(cache_bytes) * usable_fraction);
  }
};

inline int wavefront_width(int dw, int bz) { return dw + bz - 1; }

// Code balance in bytes per lattice-site update. The naive sweep pays for
// the shifted outer-dimension operand layers of the four z-shift loops;
// spatial blocking removes those four reals per loop; the diamond variant
// amortizes one load and one store of the working set over the diamond
// area.
double code_balance_naive();
double code_balance_spatial();
double code_balance_diamond(int dw);

inline double arithmetic_intensity(double balance) { return kFlopsPerLup / balance; }

// Working-set bytes of one wavefront-diamond tile: the tile area times all
// 40 arrays plus a one-cell neighbor fringe of the 12 field components
// along the diamond and wavefront extents, all spanning the full x line.
std::uint64_t cache_block_bytes(int nx, int dw, int bz);

inline std::uint64_t aggregate_cache_bytes(int nx, int dw, int bz, int num_groups) {
  return cache_block_bytes(nx, dw, bz) * std::uint64_t(num_groups);
}

// Bandwidth-bottleneck throughput in MLUP/s.
inline double predict_mlups(double bandwidth_gbs, double balance) {
  return bandwidth_gbs * 1e9 / balance / 1e6;
}

}  // namespace thiim
