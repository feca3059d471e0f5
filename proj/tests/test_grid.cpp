#include <doctest.h>

#include <set>

#include "thiim/state.hpp"

using namespace thiim;

TEST_CASE("linear_index matches the padded layout") {
  const GridDims d(4, 4, 4);
  CHECK(d.px() == 6);
  CHECK(d.linear_index(0, 0, 0) == 43);
  CHECK(d.linear_index(3, 0, 0) == 46);
  CHECK(d.linear_index(3, 3, 3) == 172);
}

TEST_CASE("linear_index is a bijection on the interior") {
  const GridDims d(4, 5, 6);
  std::set<std::size_t> seen;
  for (int z = 0; z < d.nz; ++z)
    for (int y = 0; y < d.ny; ++y)
      for (int x = 0; x < d.nx; ++x) CHECK(seen.insert(d.linear_index(x, y, z)).second);
  CHECK(seen.size() == d.interior_cells());
}

TEST_CASE("footprint accounting") {
  CHECK(interior_footprint_bytes(GridDims(64, 64, 64)) == 167772160ull);
  CHECK(interior_footprint_bytes(GridDims(480, 480, 480)) == 70778880000ull);
  const GridDims d(8, 8, 8);
  CHECK(allocated_footprint_bytes(d) == 40ull * 16 * 10 * 10 * 10);
}

TEST_CASE("fresh state is zero and aligned") {
  const GridDims d(6, 6, 6);
  ProblemState s = allocate_state(d);
  for (const auto& f : s.fields) {
    CHECK(reinterpret_cast<std::uintptr_t>(f.data()) % 64 == 0);
    for (std::size_t i = 0; i < f.size(); ++i)
      CHECK(f[i] == ComplexScalar{0.0, 0.0});
  }
  CHECK_THROWS_AS(allocate_state(GridDims(3, 8, 8)), SetupError);
}
