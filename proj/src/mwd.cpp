#include "thiim/mwd.hpp"

#include <algorithm>
#include <chrono>
#include <condition_variable>
#include <deque>
#include <fstream>
#include <memory>
#include <mutex>
#include <sstream>

#include "thiim/perf_models.hpp"
#include "thiim/worker_pool.hpp"

#include <json.hpp>

namespace thiim {

namespace {

using Clock = std::chrono::steady_clock;

std::uint64_t now_ns() {
  return std::chrono::duration_cast<std::chrono::nanoseconds>(
             Clock::now().time_since_epoch())
      .count();
}

// Shared FIFO of ready tiles. One lock guards the counters and the queue;
// releases are rare compared to tile work, so contention is negligible.
class TileQueue {
 public:
  explicit TileQueue(const TilingPlan& plan) : plan_(plan) {
    pending_.resize(plan.tiles.size());
    for (std::size_t i = 0; i < plan.tiles.size(); ++i) {
      pending_[i] = int(plan.tiles[i].deps.size());
      if (pending_[i] == 0) ready_.push_back(int(i));
    }
  }

  // Blocks until a tile is ready or the run is over. Returns -1 when all
  // tiles are done. Throws SchedulerStuck if every group idles with tiles
  // still pending.
  int pop(int num_groups) {
    std::unique_lock<std::mutex> lk(mu_);
    ++idle_groups_;
    for (;;) {
      if (!ready_.empty()) {
        --idle_groups_;
        const int t = ready_.front();
        ready_.pop_front();
        return t;
      }
      if (done_ == int(plan_.tiles.size())) {
        --idle_groups_;
        return -1;
      }
      if (idle_groups_ == num_groups) {
        std::vector<int> stuck;
        for (std::size_t i = 0; i < pending_.size(); ++i)
          if (pending_[i] >= 0 && !started_[i]) stuck.push_back(int(i));
        cv_.notify_all();
        throw SchedulerStuck(std::move(stuck));
      }
      cv_.wait(lk);
    }
  }

  void mark_started(int tile) {
    std::lock_guard<std::mutex> g(mu_);
    started_[tile] = true;
  }

  void complete(int tile) {
    std::lock_guard<std::mutex> g(mu_);
    ++done_;
    pending_[tile] = -1;
    for (int succ : plan_.tiles[tile].succs)
      if (--pending_[succ] == 0) ready_.push_back(succ);
    cv_.notify_all();
  }

  void init_started() { started_.assign(plan_.tiles.size(), false); }

 private:
  const TilingPlan& plan_;
  std::mutex mu_;
  std::condition_variable cv_;
  std::deque<int> ready_;
  std::vector<int> pending_;
  std::vector<bool> started_;
  int done_ = 0;
  int idle_groups_ = 0;
};

struct GroupState {
  explicit GroupState(int size) : barrier(size) {}
  SpinBarrier barrier;
  int current_tile = -1;
  std::uint64_t tile_start_ns = 0;
  std::vector<TileTrace> trace;
  std::exception_ptr error;
};

// Static chunking of [0, n) into `parts` pieces, piece sizes rounded up to
// a multiple of `quantum` so each worker keeps whole cache lines of the
// unit-stride axis.
std::pair<int, int> chunk(int n, int parts, int which, int quantum) {
  int per = (n + parts - 1) / parts;
  per = (per + quantum - 1) / quantum * quantum;
  const int lo = std::min(n, which * per);
  return {lo, std::min(n, lo + per)};
}

}  // namespace

SchedulerStuck::SchedulerStuck(std::vector<int> tiles)
    : std::runtime_error([&] {
        std::ostringstream os;
        os << "scheduler stuck: " << tiles.size() << " tile(s) unreleased (";
        for (std::size_t i = 0; i < tiles.size() && i < 8; ++i)
          os << (i ? "," : "") << tiles[i];
        if (tiles.size() > 8) os << ",...";
        os << ")";
        return os.str();
      }()),
      stuck_tiles(std::move(tiles)) {}

MwdResult run_mwd(ProblemState& state, const TilingPlan& plan,
                  const ThreadGroupShape& shape, int total_threads,
                  const MwdOptions& opts) {
  const GridDims& d = state.dims;
  if (!(d == plan.dims)) throw ConfigError("plan was built for different dims");
  shape.validate(total_threads);
  const int group_size = shape.group_size();
  const int num_groups = total_threads / group_size;

  RunReport report;
  // Group size 1 is the one-tile-per-thread wavefront-diamond variant.
  report.engine = group_size == 1 ? "1wd" : "mwd";
  report.dims = d;
  report.steps = plan.steps;
  report.steps_executed = plan.steps_padded;
  report.threads = total_threads;
  report.dw = plan.dw;
  report.bz = plan.bz;
  report.shape = shape;
  report.balance_model = code_balance_diamond(plan.dw);
  report.cache_model_bytes = aggregate_cache_bytes(d.nx, plan.dw, plan.bz, num_groups);

  TileQueue queue(plan);
  queue.init_started();
  std::vector<std::unique_ptr<GroupState>> groups;
  for (int g = 0; g < num_groups; ++g)
    groups.push_back(std::make_unique<GroupState>(group_size));

  const int iterations = plan.wavefront_iterations();
  const auto t0 = Clock::now();

  WorkerPool::instance().run(total_threads, [&](int worker) {
    const int g = worker / group_size;
    GroupState& group = *groups[g];
    const int local = worker % group_size;
    const int ic = local / (shape.tgz * shape.tgx);
    const int ix = (local / shape.tgz) % shape.tgx;
    const int iz = local % shape.tgz;
    const bool leader = local == 0;

    // Fixed cell-to-thread assignment: this worker always updates the same
    // z slab and x chunk while the wavefront traverses a tile.
    const auto [zs0, zs1] = chunk(d.nz, shape.tgz, iz, 1);
    const auto [xs0, xs1] = chunk(d.nx, shape.tgx, ix, 8);

    try {
      for (;;) {
        if (leader) {
          int tile = -1;
          try {
            tile = queue.pop(num_groups);
          } catch (...) {
            group.error = std::current_exception();
            tile = -1;
          }
          group.current_tile = tile;
          if (tile >= 0) {
            queue.mark_started(tile);
            group.tile_start_ns = now_ns();
          }
        }
        group.barrier.arrive_and_wait();
        const int tile_id = group.current_tile;
        if (tile_id < 0) break;
        const Tile& tile = plan.tiles[tile_id];

        for (int it = 0; it < iterations; ++it) {
          for (const TileRow& row : tile.rows) {
            // Cumulative frontier of this row after iteration i is
            // clamp(nz - (i+1)*bz + lag); the block is what it gained.
            const auto frontier = [&](int i) {
              const long c = long(d.nz) - long(i + 1) * plan.bz + row.lag;
              return int(std::clamp(c, 0l, long(d.nz)));
            };
            const int zb0 = frontier(it);
            const int zb1 = it == 0 ? d.nz : frontier(it - 1);
            if (zb0 >= zb1) continue;  // uniform across the group, no barrier needed
            const int z0 = std::max(zb0, zs0), z1 = std::min(zb1, zs1);
            if (z0 < z1 && xs0 < xs1) {
              Region r{xs0, xs1, row.y0, row.y1, z0, z1, row.family, row.step};
              for (Component c : component_slice(row.family, shape.tgc, ic)) {
                update_component_region(state, descriptor(c), r);
                if (opts.log) opts.log->add(c, r);
              }
            }
            group.barrier.arrive_and_wait();
          }
        }

        group.barrier.arrive_and_wait();
        if (leader) {
          if (opts.collect_trace)
            group.trace.push_back(
                {tile_id, g, group.tile_start_ns, now_ns(), tile.digest});
          queue.complete(tile_id);
        }
      }
    } catch (...) {
      if (leader && !group.error) group.error = std::current_exception();
    }
  });

  for (auto& g : groups)
    if (g->error) std::rethrow_exception(g->error);

  report.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  if (plan.steps_padded > 0 && report.seconds > 0.0)
    report.mlups =
        double(d.interior_cells()) * plan.steps_padded / report.seconds / 1e6;

  MwdResult result;
  result.report = std::move(report);
  for (auto& g : groups)
    result.trace.insert(result.trace.end(), g->trace.begin(), g->trace.end());
  std::sort(result.trace.begin(), result.trace.end(),
            [](const TileTrace& a, const TileTrace& b) {
              return a.start_ns < b.start_ns;
            });
  return result;
}

MwdResult run_mwd(ProblemState& state, int steps, int dw, int bz,
                  const ThreadGroupShape& shape, int total_threads,
                  const MwdOptions& opts) {
  const TilingPlan plan = build_tiling_plan(state.dims, steps, dw, bz);
  return run_mwd(state, plan, shape, total_threads, opts);
}

void write_trace_jsonl(const TilingPlan& plan, const std::vector<TileTrace>& trace,
                       const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write trace: " + path);
  for (const auto& t : trace) {
    nlohmann::ordered_json j;
    j["tile"] = t.tile;
    j["group"] = t.group;
    j["start_ns"] = t.start_ns;
    j["end_ns"] = t.end_ns;
    j["digest"] = t.digest;
    const Tile& tile = plan.tiles[t.tile];
    j["row_index"] = tile.row_index;
    j["slab"] = tile.slab;
    out << j.dump() << '\n';
  }
}

}  // namespace thiim
