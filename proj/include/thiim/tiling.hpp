#pragma once

#include <cstdint>
#include <vector>

#include "thiim/grid.hpp"
#include "thiim/components.hpp"

namespace thiim {

// One half-step of a tile: update family `family` of timestep `step` over
// y in [y0, y1), all x, with the row's z sweep trailing the tile's first
// row by `lag` cells (the wavefront skew).
struct TileRow {
  Family family;
  int step;
  int y0, y1;
  int lag;
};

// A wavefront-diamond tile. The diamond lives in the (y, t) plane between
// the line families y - t = a*dw and y + t = b*dw; H updates of step t are
// assigned by (floor((y-t)/dw), floor((y+t)/dw)) and E updates by the same
// map evaluated half a step later, which makes every full tile begin and
// end on an E half-step. The wavefront extrudes each row over all of z.
struct Tile {
  int a, b;
  int row_index;  // a + b: spatial position, in units of dw/2
  int slab;       // b - a: temporal slab, tile is centered at t = slab*dw/2
  std::vector<TileRow> rows;
  std::vector<int> deps;   // tiles that must complete first
  std::vector<int> succs;  // inverse of deps
  std::uint64_t cell_updates = 0;  // per family-phase cells x nx, both phases summed
  std::uint64_t digest = 0;        // FNV-1a over the row geometry
};

struct TilingPlan {
  GridDims dims;
  int dw = 0;
  int bz = 0;
  int ww = 0;              // dw + bz - 1
  int steps = 0;           // as requested
  int steps_padded = 0;    // rounded up to a whole number of diamond passes
  int diamond_rows = 0;    // ny / dw
  int slabs = 0;           // steps_padded / (dw/2)
  std::vector<Tile> tiles;

  int max_lag() const;
  int wavefront_iterations() const;  // per tile, covering all of z
  // Recompute succs from deps (used after tests tamper with the DAG).
  void rebuild_succs();
};

inline int pad_steps(int steps, int dw) {
  const int pass = dw / 2;
  return (steps + pass - 1) / pass * pass;
}

// Decompose the space-time iteration domain [0,ny) x [0,steps) into
// diamond tiles of width dw with wavefront block extent bz. Every
// (cell, timestep, half-step) lands in exactly one tile; a tile becomes
// ready once the two y-adjacent tiles of the previous temporal slab are
// complete. steps is padded up to a multiple of dw/2.
TilingPlan build_tiling_plan(const GridDims& dims, int steps, int dw, int bz);

}  // namespace thiim
