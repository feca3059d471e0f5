#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "thiim/bandwidth.hpp"
#include "thiim/grid.hpp"

using namespace thiim;

TEST_CASE("triad bandwidth is positive and repeatable") {
  const std::uint64_t cache_hint = 8ull << 20;
  // Shared machines see load spikes; demand the <= 20% repeat-run
  // agreement from the closest pair of three measurements.
  double runs[3];
  for (double& r : runs) {
    r = measure_bandwidth(2, cache_hint);
    CHECK(r > 0.0);
    CHECK(std::isfinite(r));
  }
  double closest = 1e9;
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j)
      closest = std::min(closest, std::abs(runs[i] - runs[j]) /
                                      std::max(runs[i], runs[j]));
  CHECK(closest <= 0.20);

  const double all = *std::max_element(runs, runs + 3);
  const double single = measure_bandwidth(1, cache_hint);
  CHECK(single <= all * 1.15);

  CHECK_THROWS_AS(measure_bandwidth(0, cache_hint), ConfigError);
}
