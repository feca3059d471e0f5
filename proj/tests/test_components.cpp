#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>

#include "thiim/components.hpp"

using namespace thiim;

TEST_CASE("descriptor table structure") {
  int z_shift_sourced = 0, xy_shift_unsourced = 0, coeff_arrays = 0;
  for (const auto& d : kComponentTable) {
    if (d.shift_axis == Axis::Z) {
      CHECK(d.has_source);
      ++z_shift_sourced;
    } else {
      CHECK_FALSE(d.has_source);
      ++xy_shift_unsourced;
    }
    CHECK(d.shift_sign == (d.family == Family::H ? +1 : -1));
    // Operands are the two splits of one physical component of the other
    // family: same first subscript, opposite family, both subscripts of
    // the pair differ from each other.
    const auto& a = descriptor(d.operand_a);
    const auto& b = descriptor(d.operand_b);
    CHECK(a.family != d.family);
    CHECK(b.family != d.family);
    CHECK(a.id != b.id);
    CHECK(component_name(a.id)[1] == component_name(b.id)[1]);
    coeff_arrays += d.has_source ? 3 : 2;
  }
  CHECK(z_shift_sourced == 4);
  CHECK(xy_shift_unsourced == 8);
  CHECK(coeff_arrays == 28);
}

TEST_CASE("the split pairs sum to the six physical components") {
  // Each physical component of one family must appear as the operand pair
  // of exactly two components of the other family.
  std::map<std::pair<Component, Component>, int> uses;
  for (const auto& d : kComponentTable) {
    auto key = std::minmax(d.operand_a, d.operand_b);
    ++uses[{key.first, key.second}];
  }
  CHECK(uses.size() == 6);
  for (const auto& [pair, count] : uses) CHECK(count == 2);
}

TEST_CASE("component slices partition each family phase") {
  for (Family f : {Family::E, Family::H}) {
    for (int ways : {1, 2, 3, 6}) {
      std::set<Component> seen;
      int total = 0;
      for (int slot = 0; slot < ways; ++slot) {
        for (Component c : component_slice(f, ways, slot)) {
          CHECK(descriptor(c).family == f);
          CHECK(seen.insert(c).second);
          ++total;
        }
      }
      CHECK(total == 6);
    }
  }
  CHECK_THROWS(component_slice(Family::E, 4, 0));
}
