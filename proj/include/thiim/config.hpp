#pragma once

#include <string>

#include "thiim/coefficients.hpp"
#include "thiim/perf_models.hpp"
#include "thiim/report.hpp"

namespace thiim {

// Flat key=value run configuration. File values are overridden by CLI
// flags, which are overridden by THIIM_THREADS / THIIM_REPORT_DIR.
struct BenchConfig {
  GridDims grid{64, 64, 64};
  int steps = 8;
  std::string engine = "mwd";  // naive | spatial | 1wd | mwd
  int dw = 8;
  int bz = 1;
  ThreadGroupShape shape;
  int threads = 1;
  int block_y = 8;
  int block_x = 0;
  MachineProfile profile;
  SchemeParams scheme;
  unsigned seed = 1;
  std::string report_dir = ".";

  static BenchConfig from_file(const std::string& path);
  void set(const std::string& key, const std::string& value);
  std::string serialize() const;
  void apply_env_overrides();
};

GridDims parse_grid(const std::string& text);       // "64" or "64x128x64"
ThreadGroupShape parse_shape(const std::string&);   // "2x1x3"

}  // namespace thiim
