#include "thiim/tiling.hpp"

#include <algorithm>
#include <map>
#include <tuple>

namespace thiim {

namespace {

struct Interval {
  int lo, hi;  // half-open
  bool empty() const { return lo >= hi; }
};

// H updates of step t inside diamond (a,b), clipped to [0, ny).
Interval h_interval(int a, int b, int dw, int t, int ny) {
  return {std::max({a * dw + t, b * dw - t, 0}),
          std::min({(a + 1) * dw + t, (b + 1) * dw - t, ny})};
}

// E updates of step t: the same diamond shifted half a step up in time.
Interval e_interval(int a, int b, int dw, int t, int ny) {
  return {std::max({a * dw + t + 1, b * dw - t, 0}),
          std::min({(a + 1) * dw + t + 1, (b + 1) * dw - t, ny})};
}

std::uint64_t fnv1a(std::uint64_t h, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) {
    h ^= (v >> (8 * i)) & 0xff;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace

int TilingPlan::max_lag() const {
  int m = 0;
  for (const auto& t : tiles)
    for (const auto& r : t.rows) m = std::max(m, r.lag);
  return m;
}

int TilingPlan::wavefront_iterations() const {
  return (dims.nz + max_lag() + bz - 1) / bz;
}

void TilingPlan::rebuild_succs() {
  for (auto& t : tiles) t.succs.clear();
  for (int i = 0; i < int(tiles.size()); ++i)
    for (int d : tiles[i].deps) tiles[d].succs.push_back(i);
}

TilingPlan build_tiling_plan(const GridDims& dims, int steps, int dw, int bz) {
  if (dw < 4 || dw % 4 != 0) throw PlanError("dw must be a positive multiple of 4");
  if (dims.ny % dw != 0) throw PlanError("dw must divide ny");
  if (bz < 1) throw PlanError("bz must be >= 1");
  if (steps < 1) throw PlanError("steps must be >= 1");

  TilingPlan plan;
  plan.dims = dims;
  plan.dw = dw;
  plan.bz = bz;
  plan.ww = dw + bz - 1;
  plan.steps = steps;
  plan.steps_padded = pad_steps(steps, dw);
  plan.diamond_rows = dims.ny / dw;
  plan.slabs = plan.steps_padded / (dw / 2);

  const int T = plan.steps_padded;
  const int ny = dims.ny;

  // Candidate index ranges: a decreases with t, b increases with y + t.
  const int a_min = -(T + dw) / dw - 2;
  const int a_max = ny / dw + 1;
  const int b_min = 0;
  const int b_max = (ny + T) / dw + 2;

  for (int b = b_min; b <= b_max; ++b) {
    for (int a = a_max; a >= a_min; --a) {
      Tile tile;
      tile.a = a;
      tile.b = b;
      tile.row_index = a + b;
      tile.slab = b - a;
      for (int t = 0; t < T; ++t) {
        const Interval h = h_interval(a, b, dw, t, ny);
        const Interval e = e_interval(a, b, dw, t, ny);
        if (!h.empty()) tile.rows.push_back({Family::H, t, h.lo, h.hi, 0});
        if (!e.empty()) tile.rows.push_back({Family::E, t, e.lo, e.hi, 0});
      }
      if (tile.rows.empty()) continue;
      // The z sweep of an E row must trail the preceding H row by one cell;
      // an H row can run level with the E row before it.
      int lag = 0;
      for (std::size_t i = 0; i < tile.rows.size(); ++i) {
        if (i > 0 && tile.rows[i].family == Family::E) ++lag;
        tile.rows[i].lag = lag;
      }
      std::uint64_t digest = 1469598103934665603ull;
      for (const auto& r : tile.rows) {
        digest = fnv1a(digest, (std::uint64_t(r.step) << 2) |
                                   (r.family == Family::E ? 1 : 0));
        digest = fnv1a(digest, (std::uint64_t(std::uint32_t(r.y0)) << 32) |
                                   std::uint32_t(r.y1));
        tile.cell_updates += std::uint64_t(r.y1 - r.y0) * dims.nz * dims.nx;
      }
      tile.digest = digest;
      plan.tiles.push_back(std::move(tile));
    }
  }

  // Deterministic execution-friendly order: temporal slab first, then
  // spatial row.
  std::sort(plan.tiles.begin(), plan.tiles.end(), [](const Tile& x, const Tile& y) {
    return std::tie(x.slab, x.row_index) < std::tie(y.slab, y.row_index);
  });
  std::map<std::pair<int, int>, int> id_of;
  for (int i = 0; i < int(plan.tiles.size()); ++i)
    id_of[{plan.tiles[i].a, plan.tiles[i].b}] = i;

  // Dependencies: the two diamonds sharing the lower edges. If neither
  // exists (clipped away) but the diamond directly below does, depend on
  // that one so the own-old-value reads stay ordered.
  for (auto& tile : plan.tiles) {
    const auto find = [&](int a, int b) {
      auto it = id_of.find({a, b});
      return it == id_of.end() ? -1 : it->second;
    };
    const int left = find(tile.a, tile.b - 1);
    const int right = find(tile.a + 1, tile.b);
    if (left >= 0) tile.deps.push_back(left);
    if (right >= 0) tile.deps.push_back(right);
    if (left < 0 && right < 0) {
      const int below = find(tile.a + 1, tile.b - 1);
      if (below >= 0) tile.deps.push_back(below);
    }
  }
  plan.rebuild_succs();
  return plan;
}

}  // namespace thiim
