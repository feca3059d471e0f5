#include "thiim/components.hpp"

#include <stdexcept>

namespace thiim {

namespace {

using C = Component;

// 3-way regions: {Ex splits + their consumers}, {Ey splits + consumers},
// {Ez splits + consumers}. Consumers of Exy/Exz are Hyz and Hzy, etc.
constexpr std::array<std::array<C, 2>, 3> kRegionE = {{
    {C::Exy, C::Exz},
    {C::Eyx, C::Eyz},
    {C::Ezx, C::Ezy},
}};
constexpr std::array<std::array<C, 2>, 3> kRegionH = {{
    {C::Hyz, C::Hzy},
    {C::Hxz, C::Hzx},
    {C::Hxy, C::Hyx},
}};

}  // namespace

std::span<const Component> component_slice(Family f, int ways, int slot) {
  const auto order = family_order(f);
  switch (ways) {
    case 1:
      return order;
    case 2:
      return order.subspan(slot == 0 ? 0 : 3, 3);
    case 3:
      return f == Family::E ? std::span<const Component>(kRegionE[slot])
                            : std::span<const Component>(kRegionH[slot]);
    case 6:
      return order.subspan(slot, 1);
    default:
      throw std::invalid_argument("component parallelism must be 1, 2, 3 or 6");
  }
}

}  // namespace thiim
