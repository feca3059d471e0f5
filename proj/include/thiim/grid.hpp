#pragma once

#include <cassert>
#include <cstddef>
#include <cstdint>
#include <stdexcept>

namespace thiim {

// Interior cell counts plus a one-cell ghost layer on every face.
// x is the unit-stride axis, z the slowest.
struct GridDims {
  int nx = 0;
  int ny = 0;
  int nz = 0;
  int ghost = 1;

  GridDims() = default;
  GridDims(int nx_, int ny_, int nz_) : nx(nx_), ny(ny_), nz(nz_) {}

  bool valid() const { return nx >= 4 && ny >= 4 && nz >= 4 && ghost == 1; }

  int px() const { return nx + 2 * ghost; }
  int py() const { return ny + 2 * ghost; }
  int pz() const { return nz + 2 * ghost; }

  std::size_t padded_cells() const {
    return std::size_t(px()) * std::size_t(py()) * std::size_t(pz());
  }
  std::size_t interior_cells() const {
    return std::size_t(nx) * std::size_t(ny) * std::size_t(nz);
  }

  std::ptrdiff_t stride_x() const { return 1; }
  std::ptrdiff_t stride_y() const { return px(); }
  std::ptrdiff_t stride_z() const { return std::ptrdiff_t(px()) * py(); }

  // Offset of interior cell (x,y,z) into a padded array.
  std::size_t linear_index(int x, int y, int z) const {
    assert(x >= 0 && x < nx && y >= 0 && y < ny && z >= 0 && z < nz);
    return std::size_t(z + ghost) * stride_z() + std::size_t(y + ghost) * stride_y() +
           std::size_t(x + ghost);
  }

  friend bool operator==(const GridDims& a, const GridDims& b) {
    return a.nx == b.nx && a.ny == b.ny && a.nz == b.nz && a.ghost == b.ghost;
  }
};

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct PlanError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SetupError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace thiim
