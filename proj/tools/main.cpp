#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "thiim/autotuner.hpp"
#include "thiim/bandwidth.hpp"
#include "thiim/config.hpp"
#include "thiim/model_tables.hpp"
#include "thiim/reference_engines.hpp"
#include "thiim/verifier.hpp"

namespace {

using namespace thiim;

// Exactly-once coverage check over a sanitizer log: every
// (component, cell, timestep) must have been updated exactly once.
bool coverage_ok(const UpdateLog& log, const GridDims& d, int steps) {
  const std::size_t per_step =
      std::size_t(kNumComponents) * d.nx * d.ny * d.nz;
  std::vector<std::uint8_t> count(per_step * steps, 0);
  for (const auto& rec : log.records()) {
    const Region& r = rec.region;
    const std::size_t base =
        (std::size_t(r.step) * kNumComponents + int(rec.comp)) *
        (std::size_t(d.nx) * d.ny * d.nz);
    for (int z = r.z0; z < r.z1; ++z)
      for (int y = r.y0; y < r.y1; ++y)
        for (int x = r.x0; x < r.x1; ++x) {
          std::uint8_t& c =
              count[base + (std::size_t(z) * d.ny + y) * d.nx + x];
          if (++c > 1) return false;
        }
  }
  return std::all_of(count.begin(), count.end(),
                     [](std::uint8_t c) { return c == 1; });
}

int check_against_naive(const ProblemState& before, const ProblemState& after,
                        int steps_executed, RunReport& report) {
  ProblemState ref = clone_state(before);
  run_naive(ref, steps_executed);
  const StateDiff diff = compare_states(ref, after);
  if (diff.bitwise_equal) {
    report.verification = "bitwise-equal";
    std::printf("verification: bitwise-equal\n");
    return 0;
  }
  report.verification = "failed";
  std::fprintf(stderr,
               "verification FAILED: max |diff| = %.17g, first at %s (%d,%d,%d), "
               "%llu values differ\n",
               diff.max_abs_diff,
               std::string(component_name(diff.first_component)).c_str(), diff.x,
               diff.y, diff.z, (unsigned long long)diff.differing_values);
  return 1;
}

void print_report(const RunReport& r) {
  std::printf("engine=%s grid=%dx%dx%d steps=%d(executed %d) threads=%d",
              r.engine.c_str(), r.dims.nx, r.dims.ny, r.dims.nz, r.steps,
              r.steps_executed, r.threads);
  if (r.dw) std::printf(" dw=%d bz=%d shape=%dx%dx%d", r.dw, r.bz, r.shape.tgz,
                        r.shape.tgx, r.shape.tgc);
  std::printf(" seconds=%.4f", r.seconds);
  if (r.mlups) std::printf(" mlups=%.2f", *r.mlups);
  std::printf(" balance_model=%.2f", r.balance_model);
  if (r.cache_model_bytes)
    std::printf(" cache_model_bytes=%llu", (unsigned long long)r.cache_model_bytes);
  if (r.predicted_mlups) std::printf(" predicted_mlups=%.2f", *r.predicted_mlups);
  std::printf("\n");
}

int do_run(BenchConfig cfg, bool check_flag, bool sanitize,
           const std::string& trace_path, const std::string& material_path) {
  ProblemState state =
      material_path.empty()
          ? build_benchmark_problem(cfg.grid, cfg.scheme)
          : build_problem_from_voxels(cfg.grid, cfg.scheme, material_path);
  const bool advances = cfg.steps > 0;
  const bool auto_check = advances && cfg.grid.interior_cells() <= 96ull * 96 * 96 &&
                          cfg.engine != "naive";
  const bool do_check = check_flag || auto_check;
  ProblemState before = do_check ? clone_state(state) : ProblemState{};

  UpdateLog log;
  RunReport report;
  std::vector<TileTrace> trace;
  TilingPlan plan;
  if (cfg.steps == 0) {
    report.engine = cfg.engine;
    report.dims = cfg.grid;
    report.threads = cfg.threads;
    report.balance_model = cfg.engine == "naive"      ? code_balance_naive()
                           : cfg.engine == "spatial"  ? code_balance_spatial()
                                                      : code_balance_diamond(cfg.dw);
    std::printf("empty run: state digest unchanged\n");
    print_report(report);
    emit_reports({report}, cfg.report_dir);
    return 0;
  }
  if (cfg.engine == "naive") {
    report = run_naive(state, cfg.steps, cfg.threads, sanitize ? &log : nullptr);
  } else if (cfg.engine == "spatial") {
    report = run_spatial_blocked(state, cfg.steps, cfg.block_y, cfg.block_x,
                                 cfg.threads, &cfg.profile,
                                 sanitize ? &log : nullptr);
  } else if (cfg.engine == "mwd" || cfg.engine == "1wd") {
    if (cfg.engine == "1wd") {
      cfg.threads = 1;
      cfg.shape = {1, 1, 1};
    }
    plan = build_tiling_plan(cfg.grid, cfg.steps, cfg.dw, cfg.bz);
    MwdOptions opts;
    opts.collect_trace = !trace_path.empty() || sanitize;
    opts.log = sanitize ? &log : nullptr;
    MwdResult r = run_mwd(state, plan, cfg.shape, cfg.threads, opts);
    report = std::move(r.report);
    trace = std::move(r.trace);
  } else {
    throw ConfigError("unknown engine: " + cfg.engine);
  }
  report.predicted_mlups = predict_mlups(cfg.profile.bandwidth_gbs,
                                         report.balance_model);

  int rc = 0;
  if (do_check && advances)
    rc = check_against_naive(before, state, report.steps_executed, report);

  if (sanitize) {
    const bool cov = coverage_ok(log, cfg.grid, report.steps_executed);
    std::printf("sanitizer: exactly-once coverage %s\n", cov ? "OK" : "VIOLATED");
    if (!cov) rc = 1;
    if (!trace.empty()) {
      const TraceCheckResult tc = check_schedule_trace(plan, trace);
      std::printf("sanitizer: schedule replay %s (%zu violations)\n",
                  tc.ok() ? "OK" : "VIOLATED", tc.violations.size());
      if (!tc.ok()) rc = 1;
    }
  }
  if (!trace_path.empty() && !trace.empty())
    write_trace_jsonl(plan, trace, trace_path);

  print_report(report);
  emit_reports({report}, cfg.report_dir);
  return rc;
}

int do_verify(const BenchConfig& cfg, double tolerance) {
  ProblemState mwd_state = build_benchmark_problem(cfg.grid, cfg.scheme);
  ProblemState ref_state = clone_state(mwd_state);
  const TilingPlan plan = build_tiling_plan(cfg.grid, cfg.steps, cfg.dw, cfg.bz);
  MwdOptions opts;
  opts.collect_trace = true;
  MwdResult res = run_mwd(mwd_state, plan, cfg.shape, cfg.threads, opts);
  run_naive(ref_state, res.report.steps_executed);
  const StateDiff diff = compare_states(ref_state, mwd_state);
  const TraceCheckResult tc = check_schedule_trace(plan, res.trace);
  std::printf("verify: grid=%dx%dx%d steps=%d dw=%d bz=%d threads=%d shape=%dx%dx%d\n",
              cfg.grid.nx, cfg.grid.ny, cfg.grid.nz, res.report.steps_executed,
              cfg.dw, cfg.bz, cfg.threads, cfg.shape.tgz, cfg.shape.tgx,
              cfg.shape.tgc);
  std::printf("  fields: %s (max |diff| = %.17g)\n",
              diff.bitwise_equal ? "bitwise-equal" : "DIFFER", diff.max_abs_diff);
  std::printf("  schedule: %zu violation(s), %llu H + %llu E cell updates\n",
              tc.violations.size(), (unsigned long long)tc.updates_h,
              (unsigned long long)tc.updates_e);
  for (std::size_t i = 0; i < tc.violations.size() && i < 10; ++i)
    std::printf("    [%zu] tile %d: %s\n", i, tc.violations[i].tile,
                tc.violations[i].detail.c_str());
  bool fields_ok = diff.bitwise_equal;
  if (!fields_ok && tolerance > 0.0 && diff.max_abs_diff <= tolerance) {
    // Diagnostic escape hatch for toolchain-induced contraction
    // differences; the default contract stays bitwise.
    std::printf("  fields within --tolerance %g, accepting\n", tolerance);
    fields_ok = true;
  }
  return fields_ok && tc.ok() ? 0 : 1;
}

int do_tune(const BenchConfig& cfg, const std::string& table_csv,
            const std::string& winner_json) {
  const auto candidates = enumerate_candidates(cfg.grid, cfg.threads, cfg.profile);
  std::printf("%zu feasible candidates\n", candidates.size());
  TuneResult result = tune(cfg.grid, cfg.scheme, cfg.threads, cfg.profile,
                           candidates, cfg.steps);
  if (!table_csv.empty()) {
    std::ofstream out(table_csv);
    out << trial_table_csv(result.table);
  }
  if (result.fell_back_to_spatial) {
    std::printf("tuner fell back to spatial blocking\n");
    return 0;
  }
  const std::string js = candidate_to_json(*result.best);
  std::printf("winner: %s (verification: %s)\n", js.c_str(),
              result.winner_verification.c_str());
  if (!winner_json.empty()) {
    std::ofstream out(winner_json);
    out << js << '\n';
  }
  return 0;
}

int do_sweep(const BenchConfig& cfg, const std::string& mode, int from, int to,
             int step) {
  std::vector<RunReport> reports;
  if (mode == "threads") {
    for (int t = 1; t <= cfg.threads; ++t) {
      ProblemState s1 = build_benchmark_problem(cfg.grid, cfg.scheme);
      reports.push_back(run_spatial_blocked(s1, cfg.steps, cfg.block_y, cfg.block_x,
                                            t, &cfg.profile));
      print_report(reports.back());
      ProblemState s2 = build_benchmark_problem(cfg.grid, cfg.scheme);
      MwdResult wd = run_mwd(s2, cfg.steps, cfg.dw, cfg.bz, {1, 1, 1}, t);
      reports.push_back(wd.report);
      print_report(reports.back());
      TuneResult tr = tune(cfg.grid, cfg.scheme, t, cfg.profile, cfg.steps);
      if (tr.best) {
        ProblemState s3 = build_benchmark_problem(cfg.grid, cfg.scheme);
        MwdResult best = run_mwd(s3, cfg.steps, tr.best->dw, tr.best->bz,
                                 tr.best->shape, t);
        best.report.verification = tr.winner_verification;
        reports.push_back(best.report);
        print_report(reports.back());
      }
    }
  } else if (mode == "grid") {
    for (int n = from; n <= to; n += step) {
      const GridDims g(n, n, n);
      BenchConfig c = cfg;
      c.grid = g;
      ProblemState s1 = build_benchmark_problem(g, cfg.scheme);
      reports.push_back(run_spatial_blocked(s1, cfg.steps, cfg.block_y, cfg.block_x,
                                            cfg.threads, &cfg.profile));
      print_report(reports.back());
      TuneResult tr = tune(g, cfg.scheme, cfg.threads, cfg.profile, cfg.steps);
      if (tr.best) {
        ProblemState s2 = build_benchmark_problem(g, cfg.scheme);
        MwdResult best = run_mwd(s2, cfg.steps, tr.best->dw, tr.best->bz,
                                 tr.best->shape, cfg.threads);
        best.report.verification = tr.winner_verification;
        reports.push_back(best.report);
        print_report(reports.back());
      }
    }
  } else if (mode == "groups") {
    for (int group = 1; group <= cfg.threads; ++group) {
      if (cfg.threads % group != 0) continue;
      auto candidates = enumerate_candidates(cfg.grid, cfg.threads, cfg.profile);
      candidates.erase(std::remove_if(candidates.begin(), candidates.end(),
                                      [&](const Candidate& c) {
                                        return c.shape.group_size() != group;
                                      }),
                       candidates.end());
      TuneResult tr = tune(cfg.grid, cfg.scheme, cfg.threads, cfg.profile,
                           candidates, cfg.steps);
      if (!tr.best) continue;
      ProblemState s = build_benchmark_problem(cfg.grid, cfg.scheme);
      MwdResult best = run_mwd(s, cfg.steps, tr.best->dw, tr.best->bz,
                               tr.best->shape, cfg.threads);
      best.report.engine = "mwd-group" + std::to_string(group);
      best.report.verification = tr.winner_verification;
      reports.push_back(best.report);
      print_report(reports.back());
    }
  } else {
    throw ConfigError("unknown sweep mode: " + mode);
  }
  emit_reports(reports, cfg.report_dir);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Split-field Maxwell stencil benchmark with wavefront-diamond "
               "temporal blocking"};
  app.require_subcommand(1);

  std::string config_path, grid_spec, shape_spec, engine, trace_path;
  BenchConfig cfg;
  bool check_flag = false, sanitize = false;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "key=value config file");
    sub->add_option("--grid", grid_spec, "grid size, N or NXxNYxNZ");
    sub->add_option("--steps", cfg.steps, "timesteps");
    sub->add_option("--threads", cfg.threads, "worker threads");
    sub->add_option("--dw", cfg.dw, "diamond width (multiple of 4)");
    sub->add_option("--bz", cfg.bz, "wavefront block extent along z");
    sub->add_option("--shape", shape_spec, "thread group shape tgz x tgx x tgc");
    sub->add_option("--block-y", cfg.block_y, "spatial block size along y");
    sub->add_option("--block-x", cfg.block_x, "spatial block size along x (0 = off)");
    sub->add_option("--cache-bytes", cfg.profile.cache_bytes, "LLC capacity");
    sub->add_option("--usable-fraction", cfg.profile.usable_fraction,
                    "cache fraction usable for tiles");
    sub->add_option("--bandwidth", cfg.profile.bandwidth_gbs, "memory BW in GB/s");
    sub->add_option("--report-dir", cfg.report_dir, "report output directory");
  };

  auto* run = app.add_subcommand("run", "run one engine configuration");
  add_common(run);
  std::string material_path;
  run->add_option("--engine", engine, "naive | spatial | 1wd | mwd");
  run->add_flag("--check", check_flag,
                "rerun the naive engine and require bitwise equality");
  run->add_flag("--sanitize", sanitize,
                "exactly-once coverage and schedule replay checks");
  run->add_option("--trace", trace_path, "write scheduler trace JSONL here");
  run->add_option("--material", material_path,
                  "voxel material map (nx*ny*nz records of 5 doubles)");

  auto* tune_cmd = app.add_subcommand("tune", "auto-tune (dw, bz, shape)");
  add_common(tune_cmd);
  std::string table_csv = "tune_trials.csv", winner_json;
  tune_cmd->add_option("--table", table_csv, "trial table CSV path");
  tune_cmd->add_option("--winner", winner_json, "winner JSON path");

  auto* verify = app.add_subcommand("verify", "bitwise MWD vs naive + trace replay");
  add_common(verify);
  double verify_tolerance = 0.0;
  verify->add_option("--tolerance", verify_tolerance,
                     "accept |diff| <= this instead of bitwise (diagnostic only)");

  auto* model = app.add_subcommand("model", "evaluate the performance models");
  std::string variant = "naive";
  int mdw = 8, mbz = 1, mnx = 480, mgroups = 1;
  double mbalance = 0.0, mbandwidth = 50.0;
  bool tables = false, cache_mode = false, predict_mode = false;
  model->add_option("--variant", variant, "naive | spatial | diamond");
  model->add_option("--dw", mdw, "diamond width");
  model->add_option("--bz", mbz, "wavefront block extent");
  model->add_option("--nx", mnx, "leading dimension");
  model->add_option("--groups", mgroups, "concurrent thread groups");
  model->add_flag("--cache", cache_mode, "print cache block size for (nx,dw,bz)");
  model->add_flag("--predict", predict_mode, "print throughput for --bandwidth/--balance");
  model->add_option("--balance", mbalance, "bytes/LUP for --predict");
  model->add_option("--bandwidth", mbandwidth, "GB/s for --predict");
  model->add_flag("--tables", tables, "emit all model tables as markdown");

  auto* sweep = app.add_subcommand("sweep", "thread/grid/group-size sweeps");
  add_common(sweep);
  std::string sweep_mode = "threads";
  int sfrom = 64, sto = 512, sstep = 64;
  sweep->add_option("--mode", sweep_mode, "threads | grid | groups");
  sweep->add_option("--from", sfrom, "grid sweep start");
  sweep->add_option("--to", sto, "grid sweep end");
  sweep->add_option("--step", sstep, "grid sweep increment");

  auto* bw = app.add_subcommand("bandwidth", "triad streaming bandwidth");
  add_common(bw);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (!config_path.empty()) {
      BenchConfig file_cfg = BenchConfig::from_file(config_path);
      // CLI flags already parsed into cfg win over file values.
      const BenchConfig defaults;
      auto keep = [&](auto cli_val, auto def_val, auto file_val) {
        return cli_val != def_val ? cli_val : file_val;
      };
      file_cfg.steps = keep(cfg.steps, defaults.steps, file_cfg.steps);
      file_cfg.threads = keep(cfg.threads, defaults.threads, file_cfg.threads);
      file_cfg.dw = keep(cfg.dw, defaults.dw, file_cfg.dw);
      file_cfg.bz = keep(cfg.bz, defaults.bz, file_cfg.bz);
      file_cfg.block_y = keep(cfg.block_y, defaults.block_y, file_cfg.block_y);
      file_cfg.block_x = keep(cfg.block_x, defaults.block_x, file_cfg.block_x);
      file_cfg.profile.cache_bytes =
          keep(cfg.profile.cache_bytes, defaults.profile.cache_bytes,
               file_cfg.profile.cache_bytes);
      file_cfg.profile.usable_fraction =
          keep(cfg.profile.usable_fraction, defaults.profile.usable_fraction,
               file_cfg.profile.usable_fraction);
      file_cfg.profile.bandwidth_gbs =
          keep(cfg.profile.bandwidth_gbs, defaults.profile.bandwidth_gbs,
               file_cfg.profile.bandwidth_gbs);
      file_cfg.report_dir = keep(cfg.report_dir, defaults.report_dir,
                                 file_cfg.report_dir);
      cfg = file_cfg;
    }
    if (!grid_spec.empty()) cfg.grid = parse_grid(grid_spec);
    if (!shape_spec.empty()) cfg.shape = parse_shape(shape_spec);
    if (!engine.empty()) cfg.engine = engine;
    cfg.apply_env_overrides();

    if (run->parsed())
      return do_run(cfg, check_flag, sanitize, trace_path, material_path);
    if (tune_cmd->parsed()) return do_tune(cfg, table_csv, winner_json);
    if (verify->parsed()) return do_verify(cfg, verify_tolerance);
    if (model->parsed()) {
      if (tables) {
        std::cout << generate_model_tables(mnx, mbandwidth);
        return 0;
      }
      if (cache_mode) {
        const std::uint64_t per = cache_block_bytes(mnx, mdw, mbz);
        std::printf("cache_block_bytes(nx=%d, dw=%d, bz=%d) = %llu B", mnx, mdw,
                    mbz, (unsigned long long)per);
        if (mgroups > 1)
          std::printf("; x%d groups = %llu B", mgroups,
                      (unsigned long long)(per * mgroups));
        std::printf("\n");
        return 0;
      }
      if (predict_mode) {
        if (mbalance <= 0.0) throw ConfigError("--predict needs --balance > 0");
        std::printf("%.1f MLUP/s\n", predict_mlups(mbandwidth, mbalance));
        return 0;
      }
      double b;
      if (variant == "naive") b = code_balance_naive();
      else if (variant == "spatial") b = code_balance_spatial();
      else if (variant == "diamond") b = code_balance_diamond(mdw);
      else throw ConfigError("unknown variant: " + variant);
      std::printf("%g B/LUP (arithmetic intensity %.2f flops/byte)\n", b,
                  arithmetic_intensity(b));
      return 0;
    }
    if (sweep->parsed()) return do_sweep(cfg, sweep_mode, sfrom, sto, sstep);
    if (bw->parsed()) {
      const double gbs = measure_bandwidth(cfg.threads, cfg.profile.cache_bytes);
      std::printf("%.2f GB/s (best of 5, %d threads)\n", gbs, cfg.threads);
      return 0;
    }
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const PlanError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const SetupError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
