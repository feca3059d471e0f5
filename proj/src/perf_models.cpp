#include "thiim/perf_models.hpp"

#include <stdexcept>

namespace thiim {

namespace {

double balance_from_traffic(bool layer_condition) {
  int reals = 0;
  for (const auto& desc : kComponentTable)
    reals += traffic_per_cell(desc, layer_condition).total();
  return double(reals) * 8.0;
}

}  // namespace

double code_balance_naive() { return balance_from_traffic(false); }

double code_balance_spatial() { return balance_from_traffic(true); }

double code_balance_diamond(int dw) {
  if (dw < 4) throw std::invalid_argument("diamond width must be >= 4");
  // Writes: 6 H components over width dw plus 6 E components over dw-1.
  // Reads: 40 numbers per cell of the diamond footprint plus the 12-field
  // neighbor fringe. Amortized over the diamond area dw^2/2.
  const double writes = 6.0 * (2.0 * dw - 1.0);
  const double reads = 40.0 * dw + 12.0;
  return 16.0 * (writes + reads) / (double(dw) * dw / 2.0);
}

std::uint64_t cache_block_bytes(int nx, int dw, int bz) {
  if (dw < 4 || bz < 1 || nx < 1)
    throw std::invalid_argument("cache_block_bytes needs dw >= 4, bz >= 1, nx >= 1");
  const std::uint64_t area = std::uint64_t(dw) * dw / 2 + std::uint64_t(dw) * (bz - 1);
  const std::uint64_t fringe = std::uint64_t(12) * (dw + wavefront_width(dw, bz));
  return 16ull * std::uint64_t(nx) * (40ull * area + fringe);
}

}  // namespace thiim
