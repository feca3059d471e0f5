#include "thiim/kernels.hpp"

#include <cassert>
#include <set>
#include <utility>

namespace thiim {

// The per-cell expression lives here and only here, so every engine runs
// the exact same machine code and the bitwise-equivalence contract between
// engines cannot be broken by per-call-site contraction differences.
void update_component_region(ProblemState& state, const ComponentDescriptor& desc,
                             const Region& region) {
  assert(!region.empty());
  assert(region.x0 >= 0 && region.x1 <= state.dims.nx);
  assert(region.y0 >= 0 && region.y1 <= state.dims.ny);
  assert(region.z0 >= 0 && region.z1 <= state.dims.nz);

  const GridDims& d = state.dims;
  std::ptrdiff_t shift = 0;
  switch (desc.shift_axis) {
    case Axis::X: shift = d.stride_x(); break;
    case Axis::Y: shift = d.stride_y(); break;
    case Axis::Z: shift = d.stride_z(); break;
  }
  shift *= desc.shift_sign;

  ComplexScalar* __restrict f = state.field(desc.id).data();
  const ComplexScalar* __restrict tc = state.t_of(desc.id).data();
  const ComplexScalar* __restrict cc = state.c_of(desc.id).data();
  const ComplexScalar* __restrict a = state.field(desc.operand_a).data();
  const ComplexScalar* __restrict b = state.field(desc.operand_b).data();
  const int si = source_index(desc.id);
  const ComplexScalar* __restrict src = si >= 0 ? state.coeff_src[si].data() : nullptr;

  for (int z = region.z0; z < region.z1; ++z) {
    for (int y = region.y0; y < region.y1; ++y) {
      const std::size_t row = d.linear_index(region.x0, y, z);
      const std::size_t end = row + std::size_t(region.x1 - region.x0);
      if (src) {
        for (std::size_t i = row; i < end; ++i) {
          const std::size_t j = i + shift;
          const double dr = (a[j].re + b[j].re) - (a[i].re + b[i].re);
          const double di = (a[j].im + b[j].im) - (a[i].im + b[i].im);
          const double fr = f[i].re, fi = f[i].im;
          const double tr = tc[i].re * fr - tc[i].im * fi;
          const double ti = tc[i].re * fi + tc[i].im * fr;
          const double cr = cc[i].re * dr - cc[i].im * di;
          const double ci = cc[i].re * di + cc[i].im * dr;
          f[i].re = tr + cr + src[i].re;
          f[i].im = ti + ci + src[i].im;
        }
      } else {
        for (std::size_t i = row; i < end; ++i) {
          const std::size_t j = i + shift;
          const double dr = (a[j].re + b[j].re) - (a[i].re + b[i].re);
          const double di = (a[j].im + b[j].im) - (a[i].im + b[i].im);
          const double fr = f[i].re, fi = f[i].im;
          const double tr = tc[i].re * fr - tc[i].im * fi;
          const double ti = tc[i].re * fi + tc[i].im * fr;
          const double cr = cc[i].re * dr - cc[i].im * di;
          const double ci = cc[i].re * di + cc[i].im * dr;
          f[i].re = tr + cr;
          f[i].im = ti + ci;
        }
      }
    }
  }
}

RegionTraffic count_distinct_touches(const GridDims& dims,
                                     const ComponentDescriptor& desc,
                                     const Region& region) {
  // Brute-force enumeration of every (array, element) the update touches.
  // Diagnostic-scale only.
  std::ptrdiff_t shift = 0;
  switch (desc.shift_axis) {
    case Axis::X: shift = dims.stride_x(); break;
    case Axis::Y: shift = dims.stride_y(); break;
    case Axis::Z: shift = dims.stride_z(); break;
  }
  shift *= desc.shift_sign;
  enum ArrayId { T, C, Src, F, A, B };
  std::set<std::pair<int, std::size_t>> reads, writes;
  for (int z = region.z0; z < region.z1; ++z) {
    for (int y = region.y0; y < region.y1; ++y) {
      for (int x = region.x0; x < region.x1; ++x) {
        const std::size_t i = dims.linear_index(x, y, z);
        const std::size_t j = i + shift;
        reads.insert({T, i});
        reads.insert({C, i});
        if (desc.has_source) reads.insert({Src, i});
        reads.insert({F, i});
        reads.insert({A, i});
        reads.insert({B, i});
        reads.insert({A, j});
        reads.insert({B, j});
        writes.insert({F, i});
      }
    }
  }
  return {2 * std::uint64_t(reads.size()), 2 * std::uint64_t(writes.size())};
}

void step_reference(ProblemState& state, int step, UpdateLog* log) {
  for (Family fam : {Family::H, Family::E}) {
    const Region region = full_interior(state.dims, fam, step);
    for (Component c : family_order(fam)) {
      update_component_region(state, descriptor(c), region);
      if (log) log->add(c, region);
    }
  }
}

}  // namespace thiim
