#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string_view>

namespace thiim {

enum class Family : std::uint8_t { E = 0, H = 1 };

enum class Axis : std::uint8_t { X = 0, Y = 1, Z = 2 };

// The 12 split-field components. F_ab is the part of physical component
// F_a driven by the derivative along axis b; the two splits of F_a sum to
// the physical field (Exy + Exz = Ex, and so on).
enum class Component : std::uint8_t {
  Exy = 0,
  Exz,
  Eyx,
  Eyz,
  Ezx,
  Ezy,
  Hxy,
  Hxz,
  Hyx,
  Hyz,
  Hzx,
  Hzy,
};

inline constexpr int kNumComponents = 12;
inline constexpr int kNumSourceComponents = 4;

// Static description of one update equation. shift_sign gives the neighbor
// direction of the finite difference (+1 for the H family, -1 for E);
// curl_sign is the sign the component's derivative term carries in the curl
// it was split from. Both get folded into the c coefficient at setup time.
struct ComponentDescriptor {
  Component id;
  Family family;
  Axis shift_axis;
  int shift_sign;
  Component operand_a;  // the two splits of the opposite-family
  Component operand_b;  // physical component being differentiated
  int curl_sign;
  bool has_source;
};

// curl structure: (curl F)_a = dF_c/db - dF_b/dc, so split F_ab carries the
// Levi-Civita sign eps(a,b,c) for E and -eps(a,b,c) for H (the H equation
// has the curl negated). Source terms sit on the four z-shift (transverse)
// components, where the plane wave is injected.
inline constexpr std::array<ComponentDescriptor, kNumComponents> kComponentTable = {{
    {Component::Exy, Family::E, Axis::Y, -1, Component::Hzx, Component::Hzy, +1, false},
    {Component::Exz, Family::E, Axis::Z, -1, Component::Hyx, Component::Hyz, -1, true},
    {Component::Eyx, Family::E, Axis::X, -1, Component::Hzx, Component::Hzy, -1, false},
    {Component::Eyz, Family::E, Axis::Z, -1, Component::Hxy, Component::Hxz, +1, true},
    {Component::Ezx, Family::E, Axis::X, -1, Component::Hyx, Component::Hyz, +1, false},
    {Component::Ezy, Family::E, Axis::Y, -1, Component::Hxy, Component::Hxz, -1, false},
    {Component::Hxy, Family::H, Axis::Y, +1, Component::Ezx, Component::Ezy, -1, false},
    {Component::Hxz, Family::H, Axis::Z, +1, Component::Eyx, Component::Eyz, +1, true},
    {Component::Hyx, Family::H, Axis::X, +1, Component::Ezx, Component::Ezy, +1, false},
    {Component::Hyz, Family::H, Axis::Z, +1, Component::Exy, Component::Exz, -1, true},
    {Component::Hzx, Family::H, Axis::X, +1, Component::Eyx, Component::Eyz, -1, false},
    {Component::Hzy, Family::H, Axis::Y, +1, Component::Exy, Component::Exz, +1, false},
}};

inline const ComponentDescriptor& descriptor(Component c) {
  return kComponentTable[static_cast<int>(c)];
}

inline constexpr std::array<Component, 6> kEOrder = {
    Component::Exy, Component::Exz, Component::Eyx,
    Component::Eyz, Component::Ezx, Component::Ezy,
};
inline constexpr std::array<Component, 6> kHOrder = {
    Component::Hxy, Component::Hxz, Component::Hyx,
    Component::Hyz, Component::Hzx, Component::Hzy,
};

// Update order within a half-step is fixed; every engine walks the same list.
inline std::span<const Component> family_order(Family f) {
  return f == Family::E ? std::span<const Component>(kEOrder)
                        : std::span<const Component>(kHOrder);
}

// Index into the 4 source arrays, -1 for unsourced components.
inline int source_index(Component c) {
  switch (c) {
    case Component::Exz: return 0;
    case Component::Eyz: return 1;
    case Component::Hxz: return 2;
    case Component::Hyz: return 3;
    default: return -1;
  }
}

inline std::string_view component_name(Component c) {
  constexpr std::array<std::string_view, kNumComponents> names = {
      "Exy", "Exz", "Eyx", "Eyz", "Ezx", "Ezy",
      "Hxy", "Hxz", "Hyx", "Hyz", "Hzx", "Hzy"};
  return names[static_cast<int>(c)];
}

// Component subsets for c-way intra-tile parallelism. Worker `slot` of
// `ways` returns its share of one family phase, in the fixed family order.
// The 3-way grouping pairs each pair of E splits with the two H components
// that consume them, so a worker's H reads mostly hit data it wrote itself.
std::span<const Component> component_slice(Family f, int ways, int slot);

}  // namespace thiim
