// Acceptance suite: one criterion per entry, one [PASS]/[FAIL]/[SKIP] line
// each, nonzero exit if anything fails. Run all with no arguments or a
// single one with --criterion N.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <thread>
#include <vector>

#include "support/tile_footprint_oracle.hpp"
#include "thiim/autotuner.hpp"
#include "thiim/bandwidth.hpp"
#include "thiim/coefficients.hpp"
#include "thiim/mwd.hpp"
#include "thiim/reference_engines.hpp"
#include "thiim/verifier.hpp"

using namespace thiim;

namespace {

struct Outcome {
  enum Kind { Pass, Fail, Skip } kind = Pass;
  std::string note;
};

Outcome pass(std::string note = "") { return {Outcome::Pass, std::move(note)}; }
Outcome fail(std::string note) { return {Outcome::Fail, std::move(note)}; }
Outcome skip(std::string note) { return {Outcome::Skip, std::move(note)}; }

#define EXPECT(cond, msg)                 \
  do {                                    \
    if (!(cond)) return fail(msg);        \
  } while (0)

// ---- criterion 1: model exactness -----------------------------------------

Outcome criterion1() {
  EXPECT(code_balance_naive() == 1344.0, "naive balance != 1344");
  EXPECT(code_balance_spatial() == 1216.0, "spatial balance != 1216");
  for (int nx : {1, 8, 480})
    EXPECT(cache_block_bytes(nx, 4, 4) == 14912ull * nx,
           "cache_block_bytes(nx,4,4) != 14912*nx");
  const double p = predict_mlups(50.0, 1216.0);
  EXPECT(std::abs(p - 41.1) <= 0.1, "predict(50 GB/s, 1216) outside 41.1 +- 0.1");
  return pass("1344 / 1216 / 14912*nx / 41.1 MLUP/s");
}

// ---- criterion 2: flop accounting ------------------------------------------

Outcome criterion2() {
  const GridDims d(32, 32, 32);
  SchemeParams sp;
  ProblemState s = build_benchmark_problem(d, sp);
  UpdateLog log;
  run_naive(s, 1, 1, &log);
  const std::uint64_t cells = d.interior_cells();
  std::uint64_t sourced = 0, plain = 0;
  for (const auto& rec : log.records()) {
    if (descriptor(rec.comp).has_source)
      sourced += rec.region.cells() * 22;
    else
      plain += rec.region.cells() * 20;
  }
  EXPECT(sourced == cells * 4 * 22, "sourced loops are not 4 x 22 flops");
  EXPECT(plain == cells * 8 * 20, "unsourced loops are not 8 x 20 flops");
  EXPECT(log.total_flops() == cells * 248, "total flops != 248 per LUP");
  return pass("248 flops/LUP = 4*22 + 8*20 on 32^3");
}

// ---- criterion 3: engine equivalence ---------------------------------------

struct MwdCase {
  int dw, bz, threads;
  ThreadGroupShape shape;
  int steps;
};

Outcome criterion3() {
  const std::vector<GridDims> grids = {GridDims(32, 32, 32), GridDims(48, 48, 48),
                                       GridDims(96, 96, 96),
                                       GridDims(64, 128, 64)};
  // Covering design over dw {4,8}, bz {1,2,4}, threads {1,2,4,8} plus the
  // 3- and 6-thread runs that component parallelism 3 and 6 need, and all
  // of tgc {1,2,3,6}. Steps are dw/2 or 2*dw.
  const std::map<int, std::vector<MwdCase>> cases = {
      {0,  // 32^3
       {{4, 1, 1, {1, 1, 1}, 2},
        {4, 2, 4, {2, 1, 2}, 8},
        {8, 4, 2, {1, 1, 2}, 4},
        {8, 1, 6, {1, 2, 3}, 4}}},
      {1,  // 48^3
       {{4, 4, 8, {2, 2, 2}, 8},
        {8, 2, 3, {3, 1, 1}, 16},
        {4, 1, 6, {1, 1, 6}, 2}}},
      {2,  // 96^3
       {{8, 2, 12, {2, 2, 3}, 16},
        {4, 2, 8, {2, 1, 2}, 2}}},
      {3,  // 64x128x64
       {{8, 4, 6, {1, 2, 3}, 4},
        {4, 4, 4, {4, 1, 1}, 8}}},
  };
  struct SpatialCase {
    int by, bx, threads, steps;
  };
  const std::map<int, std::vector<SpatialCase>> spatial_cases = {
      {0, {{4, 0, 1, 4}, {5, 8, 8, 8}}},
      {1, {{6, 0, 2, 8}}},
      {2, {{8, 16, 4, 4}}},
      {3, {{16, 0, 8, 4}}},
  };

  SchemeParams sp;
  int checked = 0;
  for (int gi = 0; gi < int(grids.size()); ++gi) {
    const GridDims& d = grids[gi];
    ProblemState pristine = build_benchmark_problem(d, sp);
    std::map<int, std::unique_ptr<ProblemState>> naive_at;
    const auto naive_baseline = [&](int steps) -> const ProblemState& {
      auto& slot = naive_at[steps];
      if (!slot) {
        slot = std::make_unique<ProblemState>(clone_state(pristine));
        run_naive(*slot, steps);
      }
      return *slot;
    };

    for (const SpatialCase& c : spatial_cases.at(gi)) {
      ProblemState s = clone_state(pristine);
      run_spatial_blocked(s, c.steps, c.by, c.bx, c.threads);
      const StateDiff diff = compare_states(naive_baseline(c.steps), s);
      if (!diff.bitwise_equal) {
        char buf[128];
        std::snprintf(buf, sizeof buf,
                      "spatial != naive on grid %dx%dx%d (by=%d bx=%d thr=%d)",
                      d.nx, d.ny, d.nz, c.by, c.bx, c.threads);
        return fail(buf);
      }
      ++checked;
    }
    for (const MwdCase& c : cases.at(gi)) {
      ProblemState s = clone_state(pristine);
      const MwdResult r = run_mwd(s, c.steps, c.dw, c.bz, c.shape, c.threads);
      const StateDiff diff =
          compare_states(naive_baseline(r.report.steps_executed), s);
      if (!diff.bitwise_equal) {
        char buf[160];
        std::snprintf(
            buf, sizeof buf,
            "mwd != naive on grid %dx%dx%d (dw=%d bz=%d thr=%d shape=%dx%dx%d)",
            d.nx, d.ny, d.nz, c.dw, c.bz, c.threads, c.shape.tgz, c.shape.tgx,
            c.shape.tgc);
        return fail(buf);
      }
      ++checked;
    }
  }
  return pass(std::to_string(checked) + " engine comparisons, all bitwise-equal");
}

// ---- criterion 4: exact cover and dependency soundness ---------------------

Outcome criterion4() {
  const GridDims d(16, 16, 16);
  const int T = 8, dw = 4;
  SchemeParams sp;
  ProblemState s = build_benchmark_problem(d, sp);
  const TilingPlan plan = build_tiling_plan(d, T, dw, 2);
  MwdOptions opts;
  opts.collect_trace = true;
  const MwdResult r = run_mwd(s, plan, {1, 1, 1}, 4, opts);
  const TraceCheckResult tc = check_schedule_trace(plan, r.trace);
  EXPECT(tc.violations.empty(), "live MWD trace has violations");
  const std::uint64_t want = std::uint64_t(d.nx) * d.ny * d.nz * T;
  EXPECT(tc.updates_h == want && tc.updates_e == want,
         "update totals != nx*ny*nz*T per family");

  // Fault injection: drop one dependency edge and keep the dropped
  // predecessor busy; the replay against the intact plan must object.
  TilingPlan tampered = plan;
  int dropped = -1;
  for (auto& tile : tampered.tiles)
    if (tile.deps.size() == 2) {
      dropped = tile.deps.back();
      tile.deps.pop_back();
      break;
    }
  EXPECT(dropped >= 0, "no interior tile to tamper with");
  tampered.tiles[dropped].cell_updates *= 1000;
  tampered.rebuild_succs();
  const auto bad_trace = synthesize_trace(tampered, 3);
  const TraceCheckResult bad = check_schedule_trace(plan, bad_trace);
  EXPECT(!bad.violations.empty(), "fault-injected trace passed the checker");
  return pass("multiplicity 1, totals " + std::to_string(want) +
              " per family, 0 violations; fault injection flagged " +
              std::to_string(bad.violations.size()));
}

// ---- criterion 5: cache-block oracle ---------------------------------------

Outcome criterion5() {
  const std::uint64_t oracle = thiim::testing::brute_force_tile_bytes(8, 4, 2);
  const std::uint64_t model = cache_block_bytes(8, 4, 2);
  if (oracle != model) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "oracle %llu != model %llu",
                  (unsigned long long)oracle, (unsigned long long)model);
    return fail(buf);
  }
  return pass("distinct-touch footprint = " + std::to_string(model) + " B");
}

// ---- criterion 6: model monotonicity ---------------------------------------

Outcome criterion6() {
  for (int dw = 4; dw + 4 <= 32; dw += 4)
    EXPECT(code_balance_diamond(dw) > code_balance_diamond(dw + 4),
           "diamond balance not strictly decreasing in dw");
  for (int nx : {8, 16, 32})
    for (int dw : {4, 8, 12})
      for (int bz : {1, 2, 3}) {
        EXPECT(cache_block_bytes(nx, dw, bz) < cache_block_bytes(nx + 8, dw, bz),
               "cache block not increasing in nx");
        EXPECT(cache_block_bytes(nx, dw, bz) < cache_block_bytes(nx, dw + 4, bz),
               "cache block not increasing in dw");
        EXPECT(cache_block_bytes(nx, dw, bz) < cache_block_bytes(nx, dw, bz + 1),
               "cache block not increasing in bz");
      }
  return pass("balance strictly falls with dw; footprint strictly rises");
}

// ---- criterion 7: tuner feasibility ----------------------------------------

Outcome criterion7() {
  MachineProfile profile;
  profile.cache_bytes = 45ull << 20;
  profile.usable_fraction = 0.5;
  const GridDims dims(480, 480, 480);
  const auto cands = enumerate_candidates(dims, 18, profile);
  bool pruned_ok = true, retained_ok = false;
  for (const auto& c : cands) {
    if (c.dw == 4 && c.bz == 6 && c.num_groups == 3) pruned_ok = false;
    if (c.dw == 8 && c.bz == 1 && c.num_groups == 2) retained_ok = true;
  }
  EXPECT(pruned_ok, "(dw=4, bz=6, 3 groups) was not pruned");
  EXPECT(retained_ok, "(dw=8, bz=1, 2 groups) was not retained");
  return pass("(4,6,x3) pruned at ~28.0 MiB; (8,1,x2) retained at ~21.6 MiB");
}

// ---- criterion 8: bandwidth-bound speedup (hardware-gated) ------------------

Outcome criterion8() {
  const unsigned cores = std::thread::hardware_concurrency();
  if (cores < 8) {
    return skip("needs >= 8 physical cores, found " + std::to_string(cores) +
                " hardware threads");
  }
  const int threads = int(cores);
  const double bw = measure_bandwidth(threads, 45ull << 20);

  const GridDims d(256, 256, 256);
  SchemeParams sp;
  std::unique_ptr<ProblemState> state;
  try {
    state = std::make_unique<ProblemState>(build_benchmark_problem(d, sp));
  } catch (const SetupError& e) {
    return skip(std::string("cannot allocate 256^3 working set: ") + e.what());
  }
  MachineProfile profile;
  profile.bandwidth_gbs = bw;

  RunReport spatial = run_spatial_blocked(*state, 8, 8, 0, threads, &profile);
  const double predicted = predict_mlups(bw, code_balance_spatial());
  const double ratio = *spatial.mlups / predicted;
  char buf[160];
  if (std::abs(ratio - 1.0) > 0.25) {
    std::snprintf(buf, sizeof buf,
                  "not bandwidth-bound: spatial %.1f vs predicted %.1f MLUP/s "
                  "(ratio %.2f)",
                  *spatial.mlups, predicted, ratio);
    return skip(buf);
  }

  TuneResult tuned = tune(d, sp, threads, profile, 0, 0.5);
  if (!tuned.best) return fail("tuner found no feasible configuration");
  state->zero_fields();
  const MwdResult mwd = run_mwd(*state, std::max(8, tuned.best->dw),
                                tuned.best->dw, tuned.best->bz,
                                tuned.best->shape, threads);
  const double speedup = *mwd.report.mlups / *spatial.mlups;
  std::snprintf(buf, sizeof buf,
                "spatial %.1f MLUP/s (model ratio %.2f), tuned MWD %.1f MLUP/s, "
                "speedup %.2fx",
                *spatial.mlups, ratio, *mwd.report.mlups, speedup);
  if (speedup < 1.5) return fail(buf);
  return pass(buf);
}

// ---- criterion 9: linearity exactness --------------------------------------

Outcome criterion9() {
  const GridDims d(48, 48, 48);
  SchemeParams sp;
  ProblemState a = build_benchmark_problem(d, sp);
  ProblemState b = clone_state(a);
  for (auto& src : b.coeff_src)
    for (std::size_t i = 0; i < src.size(); ++i) {
      src[i].re *= 2.0;
      src[i].im *= 2.0;
    }
  run_naive(a, 8);
  run_naive(b, 8);
  for (int ci = 0; ci < kNumComponents; ++ci) {
    for (int z = 0; z < d.nz; ++z)
      for (int y = 0; y < d.ny; ++y)
        for (int x = 0; x < d.nx; ++x) {
          const std::size_t i = d.linear_index(x, y, z);
          const ComplexScalar va = a.fields[ci][i];
          const ComplexScalar doubled{2.0 * va.re, 2.0 * va.im};
          if (std::memcmp(&doubled, &b.fields[ci][i], sizeof doubled) != 0)
            return fail("doubled sources did not double the field bitwise");
        }
  }
  return pass("2x sources -> bitwise 2x fields after T=8 on 48^3");
}

const std::map<int, std::pair<const char*, std::function<Outcome()>>> kCriteria = {
    {1, {"model exactness (balances, cache block, throughput)", criterion1}},
    {2, {"flop accounting, 248 flops/LUP split 4x22 + 8x20", criterion2}},
    {3, {"engine equivalence, bitwise across the test matrix", criterion3}},
    {4, {"exact cover and dependency soundness", criterion4}},
    {5, {"cache-block model vs distinct-touch oracle", criterion5}},
    {6, {"model monotonicity", criterion6}},
    {7, {"tuner cache-budget feasibility", criterion7}},
    {8, {"bandwidth-bound MWD speedup (hardware-gated)", criterion8}},
    {9, {"linearity exactness under power-of-two scaling", criterion9}},
};

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc)
      only = std::atoi(argv[++i]);
  }
  bool any_fail = false;
  for (const auto& [num, entry] : kCriteria) {
    if (only != 0 && num != only) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = entry.second();
    } catch (const std::exception& e) {
      out = fail(std::string("exception: ") + e.what());
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    const char* tag = out.kind == Outcome::Pass   ? "PASS"
                      : out.kind == Outcome::Skip ? "SKIP"
                                                  : "FAIL";
    std::printf("[%s] criterion %d: %s (%.2fs)%s%s\n", tag, num, entry.first,
                secs, out.note.empty() ? "" : " -- ", out.note.c_str());
    if (out.kind == Outcome::Fail) any_fail = true;
  }
  return any_fail ? 1 : 0;
}
