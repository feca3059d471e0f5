#pragma once

#include <set>
#include <stdexcept>
#include <utility>

#include "thiim/tiling.hpp"

namespace thiim::testing {

// Rebuild the cache-block model from the geometry of a real plan: walk an
// interior tile's rows, mark the (y, z-offset) cells a steady-state
// wavefront window holds resident (each full-step footprint is the H row,
// extruded bz deep at the row's lag), and measure the diamond and
// wavefront extents from the same bitmap. The neighbor fringe follows the
// model's convention of one extra cell line per field component along each
// of the two tiled directions.
inline std::uint64_t brute_force_tile_bytes(int nx, int dw, int bz) {
  const GridDims d(nx, 8 * dw, 8);
  const TilingPlan plan = build_tiling_plan(d, 2 * dw, dw, bz);
  const Tile* interior = nullptr;
  for (const Tile& t : plan.tiles) {
    if (t.rows.size() != std::size_t(2 * dw - 1)) continue;
    bool clipped = false;
    for (const TileRow& r : t.rows)
      if (r.y0 == 0 || r.y1 == d.ny) clipped = true;
    if (!clipped) {
      interior = &t;
      break;
    }
  }
  if (!interior) throw std::logic_error("no interior tile in oracle plan");

  std::set<std::pair<int, int>> resident;  // (y, z offset)
  int lag_min = 1 << 30, lag_max = -1, y_min = 1 << 30, y_max = -1;
  for (const TileRow& r : interior->rows) {
    lag_min = std::min(lag_min, r.lag);
    lag_max = std::max(lag_max, r.lag);
    if (r.family != Family::H) continue;
    y_min = std::min(y_min, r.y0);
    y_max = std::max(y_max, r.y1);
    for (int y = r.y0; y < r.y1; ++y)
      for (int zo = -r.lag - bz; zo < -r.lag; ++zo) resident.insert({y, zo});
  }
  const std::uint64_t area = resident.size();
  const int diamond_extent = y_max - y_min;               // dw
  const int wavefront_extent = (lag_max - lag_min) + bz;  // ww
  return 16ull * nx * (40ull * area + 12ull * (diamond_extent + wavefront_extent));
}

}  // namespace thiim::testing
