#pragma once

#include <optional>
#include <string>
#include <vector>

#include "thiim/grid.hpp"

namespace thiim {

// Intra-tile thread factorization: tgz workers along the wavefront (z),
// tgx over x chunks, tgc over field components. The diamond (y) axis is
// never split.
struct ThreadGroupShape {
  int tgz = 1;
  int tgx = 1;
  int tgc = 1;

  int group_size() const { return tgz * tgx * tgc; }

  void validate(int total_threads) const {
    if (tgz < 1 || tgx < 1)
      throw ConfigError("thread group extents must be >= 1");
    if (tgc != 1 && tgc != 2 && tgc != 3 && tgc != 6)
      throw ConfigError("component parallelism must be 1, 2, 3 or 6");
    if (total_threads % group_size() != 0)
      throw ConfigError("group size " + std::to_string(group_size()) +
                        " does not divide thread count " +
                        std::to_string(total_threads));
  }

  friend bool operator==(const ThreadGroupShape& a, const ThreadGroupShape& b) {
    return a.tgz == b.tgz && a.tgx == b.tgx && a.tgc == b.tgc;
  }
};

struct RunReport {
  std::string engine;
  GridDims dims;
  int steps = 0;          // as requested
  int steps_executed = 0; // including diamond padding
  int threads = 1;
  int dw = 0;
  int bz = 0;
  ThreadGroupShape shape;
  double seconds = 0.0;
  std::optional<double> mlups;          // absent for empty runs
  double balance_model = 0.0;           // model-predicted, bytes/LUP
  std::uint64_t cache_model_bytes = 0;  // aggregate tile footprint, 0 for baselines
  std::optional<double> predicted_mlups;
  std::string verification = "skipped";
};

// One JSON object per run (schema "run-report/1") appended to <dir>/reports.jsonl
// plus a CSV summary at <dir>/reports.csv.
void emit_reports(const std::vector<RunReport>& reports, const std::string& dir);

std::string report_to_json(const RunReport& r);
std::string report_csv_header();
std::string report_to_csv(const RunReport& r);

}  // namespace thiim
