#include "thiim/model_tables.hpp"

#include <cstdio>
#include <sstream>

#include "thiim/perf_models.hpp"

namespace thiim {

std::string generate_model_tables(int nx, double bandwidth_gbs) {
  std::ostringstream os;
  char buf[128];

  os << "# Performance model tables\n\n"
     << "Generated by `thiim-bench model --tables`; do not edit by hand.\n\n";

  os << "## Code balance (bytes/LUP)\n\n"
     << "| variant | balance | arithmetic intensity (flops/byte) |\n"
     << "|---|---|---|\n";
  const double bn = code_balance_naive();
  const double bs = code_balance_spatial();
  std::snprintf(buf, sizeof buf, "| naive | %.0f | %.2f |\n", bn,
                arithmetic_intensity(bn));
  os << buf;
  std::snprintf(buf, sizeof buf, "| spatial | %.0f | %.2f |\n", bs,
                arithmetic_intensity(bs));
  os << buf;
  for (int dw = 4; dw <= 16; dw += 4) {
    const double b = code_balance_diamond(dw);
    std::snprintf(buf, sizeof buf, "| diamond, dw=%d | %.2f | %.2f |\n", dw, b,
                  arithmetic_intensity(b));
    os << buf;
  }

  os << "\n## Cache block size (bytes per tile, nx = " << nx << ")\n\n"
     << "| dw \\ bz | 1 | 6 | 9 |\n|---|---|---|---|\n";
  for (int dw = 4; dw <= 16; dw += 4) {
    os << "| " << dw << " |";
    for (int bz : {1, 6, 9}) {
      const std::uint64_t cs = cache_block_bytes(nx, dw, bz);
      std::snprintf(buf, sizeof buf, " %llu (%.1f MiB) |", (unsigned long long)cs,
                    double(cs) / (1 << 20));
      os << buf;
    }
    os << '\n';
  }
  os << "\nPer-x-line form: cache_block_bytes(nx=1, dw=4, bz=4) = "
     << cache_block_bytes(1, 4, 4) << " bytes, i.e. " << cache_block_bytes(1, 4, 4)
     << "*nx for the (dw=4, bz=4) tile.\n";

  os << "\n## Bandwidth-bound throughput at " << bandwidth_gbs << " GB/s\n\n"
     << "| variant | predicted MLUP/s |\n|---|---|\n";
  std::snprintf(buf, sizeof buf, "| naive | %.1f |\n",
                predict_mlups(bandwidth_gbs, bn));
  os << buf;
  std::snprintf(buf, sizeof buf, "| spatial | %.1f |\n",
                predict_mlups(bandwidth_gbs, bs));
  os << buf;
  for (int dw = 4; dw <= 16; dw += 4) {
    std::snprintf(buf, sizeof buf, "| diamond, dw=%d | %.1f |\n", dw,
                  predict_mlups(bandwidth_gbs, code_balance_diamond(dw)));
    os << buf;
  }
  return os.str();
}

}  // namespace thiim
