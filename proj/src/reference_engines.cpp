#include "thiim/reference_engines.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>

#include "thiim/worker_pool.hpp"

namespace thiim {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_seconds(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

void finish_report(RunReport& r, const GridDims& d, int steps, double seconds) {
  r.seconds = seconds;
  if (steps > 0 && seconds > 0.0)
    r.mlups = double(d.interior_cells()) * steps / seconds / 1e6;
}

// Static z partition: slab boundaries for worker w of n.
std::pair<int, int> z_slab(int nz, int n, int w) {
  const int base = nz / n, rem = nz % n;
  const int lo = w * base + std::min(w, rem);
  return {lo, lo + base + (w < rem ? 1 : 0)};
}

}  // namespace

RunReport run_naive(ProblemState& state, int steps, int threads, UpdateLog* log) {
  if (steps < 0) throw ConfigError("steps must be >= 0");
  if (threads < 1) throw ConfigError("threads must be >= 1");
  RunReport report;
  report.engine = "naive";
  report.dims = state.dims;
  report.steps = report.steps_executed = steps;
  report.threads = threads;
  report.balance_model = code_balance_naive();

  const auto t0 = Clock::now();
  if (threads == 1) {
    for (int n = 0; n < steps; ++n) step_reference(state, n, log);
  } else {
    SpinBarrier barrier(threads);
    WorkerPool::instance().run(threads, [&](int w) {
      const auto [z0, z1] = z_slab(state.dims.nz, threads, w);
      for (int n = 0; n < steps; ++n) {
        for (Family fam : {Family::H, Family::E}) {
          if (z0 < z1) {
            Region r{0, state.dims.nx, 0, state.dims.ny, z0, z1, fam, n};
            for (Component c : family_order(fam)) {
              update_component_region(state, descriptor(c), r);
              if (log) log->add(c, r);
            }
          }
          barrier.arrive_and_wait();
        }
      }
    });
  }
  finish_report(report, state.dims, steps, elapsed_seconds(t0));
  return report;
}

RunReport run_spatial_blocked(ProblemState& state, int steps, int block_y,
                              int block_x, int threads,
                              const MachineProfile* profile, UpdateLog* log) {
  const GridDims& d = state.dims;
  if (steps < 0) throw ConfigError("steps must be >= 0");
  if (threads < 1) throw ConfigError("threads must be >= 1");
  if (block_y < 1) throw ConfigError("block_y must be >= 1");
  if (block_x < 0) throw ConfigError("block_x must be >= 0");
  const int by = std::min(block_y, d.ny);
  const int bx = block_x == 0 ? d.nx : std::min(block_x, d.nx);

  if (profile) {
    // Layer condition: two successive x-y layers of each of the two shifted
    // operand arrays must stay cached per thread.
    const std::uint64_t need =
        2ull * 2ull * std::uint64_t(bx) * by * sizeof(ComplexScalar) * threads;
    if (need > profile->usable_cache_bytes())
      std::fprintf(stderr,
                   "[spatial] warning: blocks of %dx%d need %llu B for the layer "
                   "condition, above the usable cache (%llu B)\n",
                   bx, by, (unsigned long long)need,
                   (unsigned long long)profile->usable_cache_bytes());
  }

  RunReport report;
  report.engine = "spatial";
  report.dims = d;
  report.steps = report.steps_executed = steps;
  report.threads = threads;
  report.balance_model = code_balance_spatial();
  if (profile)
    report.predicted_mlups = predict_mlups(profile->bandwidth_gbs, report.balance_model);

  const auto sweep = [&](int z0, int z1, Family fam, int n) {
    for (Component c : family_order(fam)) {
      const ComponentDescriptor& desc = descriptor(c);
      for (int yb = 0; yb < d.ny; yb += by) {
        for (int xb = 0; xb < d.nx; xb += bx) {
          Region r{xb,
                   std::min(xb + bx, d.nx),
                   yb,
                   std::min(yb + by, d.ny),
                   z0,
                   z1,
                   fam,
                   n};
          update_component_region(state, desc, r);
          if (log) log->add(c, r);
        }
      }
    }
  };

  const auto t0 = Clock::now();
  if (threads == 1) {
    for (int n = 0; n < steps; ++n)
      for (Family fam : {Family::H, Family::E}) sweep(0, d.nz, fam, n);
  } else {
    SpinBarrier barrier(threads);
    WorkerPool::instance().run(threads, [&](int w) {
      const auto [z0, z1] = z_slab(d.nz, threads, w);
      for (int n = 0; n < steps; ++n) {
        for (Family fam : {Family::H, Family::E}) {
          if (z0 < z1) sweep(z0, z1, fam, n);
          barrier.arrive_and_wait();
        }
      }
    });
  }
  finish_report(report, d, steps, elapsed_seconds(t0));
  return report;
}

}  // namespace thiim
