#include "thiim/verifier.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <deque>
#include <queue>
#include <sstream>
#include <tuple>

namespace thiim {

StateDiff compare_states(const ProblemState& a, const ProblemState& b) {
  if (!(a.dims == b.dims)) throw ConfigError("compare_states: dimension mismatch");
  StateDiff diff;
  const GridDims& d = a.dims;
  for (int ci = 0; ci < kNumComponents; ++ci) {
    const ComplexScalar* pa = a.fields[ci].data();
    const ComplexScalar* pb = b.fields[ci].data();
    for (int z = 0; z < d.nz; ++z) {
      for (int y = 0; y < d.ny; ++y) {
        const std::size_t row = d.linear_index(0, y, z);
        for (int x = 0; x < d.nx; ++x) {
          const ComplexScalar& va = pa[row + x];
          const ComplexScalar& vb = pb[row + x];
          if (std::memcmp(&va, &vb, sizeof va) != 0) {
            if (diff.bitwise_equal) {
              diff.bitwise_equal = false;
              diff.first_component = Component(ci);
              diff.x = x;
              diff.y = y;
              diff.z = z;
            }
            ++diff.differing_values;
            const double dr = std::abs(va.re - vb.re);
            const double di = std::abs(va.im - vb.im);
            diff.max_abs_diff = std::max({diff.max_abs_diff, dr, di});
          }
        }
      }
    }
  }
  return diff;
}

namespace {

struct Replay {
  const TilingPlan& plan;
  const std::vector<TileTrace>& trace;
  TraceCheckResult& out;
  std::vector<std::uint64_t> start, end;  // by tile id
  std::vector<int> producer;              // tile id per (phase, step, y, z), -1 unset
  int ny, nz, T;

  std::size_t idx(Family f, int t, int y, int z) const {
    return ((std::size_t(t) * 2 + (f == Family::E ? 1 : 0)) * ny + y) * nz + z;
  }

  void flag(TraceViolation::Kind kind, int tile, std::string detail) {
    if (out.violations.size() < 200)
      out.violations.push_back({kind, tile, std::move(detail)});
    else if (out.violations.size() == 200)
      out.violations.push_back({kind, tile, "further violations suppressed"});
  }

  void check_read(int tile, Family f, int t, int y, int z, const char* what) {
    if (t < 0) return;  // initial values
    if (y < 0 || y >= ny || z < 0 || z >= nz) return;  // Dirichlet ghosts
    const int p = producer[idx(f, t, y, z)];
    if (p == tile) return;
    if (p < 0) {
      std::ostringstream os;
      os << what << " read of (" << (f == Family::E ? 'E' : 'H') << ",t=" << t
         << ",y=" << y << ",z=" << z << ") before it was produced";
      flag(TraceViolation::Kind::ReadBeforeWrite, tile, os.str());
      return;
    }
    if (end[p] > start[tile]) {
      std::ostringstream os;
      os << what << " read of (" << (f == Family::E ? 'E' : 'H') << ",t=" << t
         << ",y=" << y << ",z=" << z << ") from tile " << p
         << " which had not finished";
      flag(TraceViolation::Kind::ReadBeforeWrite, tile, os.str());
    }
  }

  void run_tile(int tile_id) {
    const Tile& tile = plan.tiles[tile_id];
    const int iterations = plan.wavefront_iterations();
    for (int it = 0; it < iterations; ++it) {
      for (const TileRow& row : tile.rows) {
        const auto frontier = [&](int i) {
          const long c = long(nz) - long(i + 1) * plan.bz + row.lag;
          return int(std::clamp(c, 0l, long(nz)));
        };
        const int zb0 = frontier(it);
        const int zb1 = it == 0 ? nz : frontier(it - 1);
        for (int z = zb0; z < zb1; ++z) {
          for (int y = row.y0; y < row.y1; ++y) {
            if (row.family == Family::H) {
              check_read(tile_id, Family::E, row.step - 1, y, z, "operand");
              check_read(tile_id, Family::E, row.step - 1, y + 1, z, "operand");
              check_read(tile_id, Family::E, row.step - 1, y, z + 1, "operand");
              check_read(tile_id, Family::H, row.step - 1, y, z, "own-value");
            } else {
              check_read(tile_id, Family::H, row.step, y, z, "operand");
              check_read(tile_id, Family::H, row.step, y - 1, z, "operand");
              check_read(tile_id, Family::H, row.step, y, z - 1, "operand");
              check_read(tile_id, Family::E, row.step - 1, y, z, "own-value");
            }
            int& p = producer[idx(row.family, row.step, y, z)];
            if (p >= 0) {
              std::ostringstream os;
              os << "cell (" << (row.family == Family::E ? 'E' : 'H')
                 << ",t=" << row.step << ",y=" << y << ",z=" << z
                 << ") already updated by tile " << p;
              flag(TraceViolation::Kind::Multiplicity, tile_id, os.str());
            } else {
              p = tile_id;
              (row.family == Family::H ? out.updates_h : out.updates_e) +=
                  std::uint64_t(plan.dims.nx);
            }
          }
        }
      }
    }
  }
};

}  // namespace

TraceCheckResult check_schedule_trace(const TilingPlan& plan,
                                      const std::vector<TileTrace>& trace) {
  TraceCheckResult result;
  const int n = int(plan.tiles.size());
  std::vector<int> seen(n, 0);
  for (const auto& t : trace) {
    if (t.tile < 0 || t.tile >= n) {
      result.violations.push_back(
          {TraceViolation::Kind::BadTrace, t.tile, "unknown tile id"});
      return result;
    }
    ++seen[t.tile];
    if (t.digest != plan.tiles[t.tile].digest)
      result.violations.push_back({TraceViolation::Kind::BadTrace, t.tile,
                                   "update-set digest does not match the plan"});
  }
  std::string missing;
  for (int i = 0; i < n; ++i) {
    if (seen[i] == 0) missing += (missing.empty() ? "" : ",") + std::to_string(i);
    if (seen[i] > 1)
      result.violations.push_back(
          {TraceViolation::Kind::BadTrace, i, "tile appears more than once"});
  }
  if (!missing.empty()) {
    result.violations.push_back({TraceViolation::Kind::BadTrace, -1,
                                 "trace truncated, missing tiles: " + missing});
    return result;
  }
  if (!result.violations.empty()) return result;

  Replay replay{plan, trace, result, {}, {}, {}, plan.dims.ny, plan.dims.nz,
                plan.steps_padded};
  replay.start.resize(n);
  replay.end.resize(n);
  for (const auto& t : trace) {
    replay.start[t.tile] = t.start_ns;
    replay.end[t.tile] = t.end_ns;
  }
  replay.producer.assign(std::size_t(2) * plan.steps_padded * plan.dims.ny *
                             plan.dims.nz,
                         -1);

  // Tile-level dependency discipline.
  for (int i = 0; i < n; ++i) {
    for (int dep : plan.tiles[i].deps) {
      if (replay.end[dep] > replay.start[i]) {
        std::ostringstream os;
        os << "tile " << i << " started before dependency " << dep << " ended";
        result.violations.push_back(
            {TraceViolation::Kind::DependencyOrder, i, os.str()});
      }
    }
  }

  // Fine-grained replay in start order.
  std::vector<const TileTrace*> order;
  order.reserve(trace.size());
  for (const auto& t : trace) order.push_back(&t);
  std::sort(order.begin(), order.end(), [](const TileTrace* a, const TileTrace* b) {
    return std::tie(a->start_ns, a->tile) < std::tie(b->start_ns, b->tile);
  });
  for (const TileTrace* t : order) replay.run_tile(t->tile);
  return result;
}

std::vector<TileTrace> synthesize_trace(const TilingPlan& plan, int groups) {
  if (groups < 1) throw ConfigError("synthesize_trace needs >= 1 group");
  const int n = int(plan.tiles.size());
  std::vector<int> pending(n);
  std::deque<int> ready;
  for (int i = 0; i < n; ++i) {
    pending[i] = int(plan.tiles[i].deps.size());
    if (pending[i] == 0) ready.push_back(i);
  }
  std::vector<std::uint64_t> ready_at(n, 0), free_at(groups, 0);
  using Running = std::pair<std::uint64_t, int>;  // (end, tile)
  std::priority_queue<Running, std::vector<Running>, std::greater<>> running;
  std::vector<TileTrace> trace;
  trace.reserve(n);

  int done = 0;
  while (done < n) {
    if (!ready.empty()) {
      int g = 0;
      for (int i = 1; i < groups; ++i)
        if (free_at[i] < free_at[g]) g = i;
      const int tile = ready.front();
      ready.pop_front();
      const std::uint64_t start = std::max(free_at[g], ready_at[tile]);
      const std::uint64_t end = start + plan.tiles[tile].cell_updates + 1;
      trace.push_back({tile, g, start, end, plan.tiles[tile].digest});
      free_at[g] = end;
      running.push({end, tile});
      continue;
    }
    const auto [end, tile] = running.top();
    running.pop();
    ++done;
    for (int succ : plan.tiles[tile].succs) {
      if (--pending[succ] == 0) {
        ready.push_back(succ);
        ready_at[succ] = end;
      }
    }
  }
  std::sort(trace.begin(), trace.end(), [](const TileTrace& a, const TileTrace& b) {
    return std::tie(a.start_ns, a.tile) < std::tie(b.start_ns, b.tile);
  });
  return trace;
}

}  // namespace thiim
