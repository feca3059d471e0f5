#pragma once

#include <cstdint>

namespace thiim {

// Triad-style streaming benchmark (a = b + s*c) over arrays at least four
// times the cache capacity, split across all requested threads. Returns the
// best of five sweeps in GB/s.
double measure_bandwidth(int threads, std::uint64_t cache_bytes);

}  // namespace thiim
