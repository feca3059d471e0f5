#pragma once

#include <array>
#include <cstdlib>
#include <cstring>
#include <memory>

#include "thiim/complex.hpp"
#include "thiim/components.hpp"
#include "thiim/grid.hpp"

namespace thiim {

// One domain-sized array, 64-byte aligned, zero-initialized.
class FieldArray {
 public:
  FieldArray() = default;
  explicit FieldArray(std::size_t n) : size_(n) {
    const std::size_t bytes = (n * sizeof(ComplexScalar) + 63) / 64 * 64;
    void* p = std::aligned_alloc(64, bytes);
    if (!p) throw SetupError("field allocation failed: " + std::to_string(bytes) + " bytes");
    std::memset(p, 0, bytes);
    data_.reset(static_cast<ComplexScalar*>(p));
  }

  ComplexScalar* data() { return data_.get(); }
  const ComplexScalar* data() const { return data_.get(); }
  std::size_t size() const { return size_; }

  ComplexScalar& operator[](std::size_t i) { return data_[i]; }
  const ComplexScalar& operator[](std::size_t i) const { return data_[i]; }

  void fill_zero() { std::memset(data_.get(), 0, size_ * sizeof(ComplexScalar)); }

 private:
  struct FreeDeleter {
    void operator()(ComplexScalar* p) const { std::free(p); }
  };
  std::unique_ptr<ComplexScalar[], FreeDeleter> data_;
  std::size_t size_ = 0;
};

inline constexpr int kArraysPerCell = 40;   // 12 fields + 12 t + 12 c + 4 src
inline constexpr int kBytesPerCell = kArraysPerCell * int(sizeof(ComplexScalar));

// The full working set: 12 field components plus the 28 coefficient arrays
// (one t and one c per component, one src for each of the 4 sourced
// components). 640 bytes per grid cell.
struct ProblemState {
  GridDims dims;
  std::array<FieldArray, kNumComponents> fields;
  std::array<FieldArray, kNumComponents> coeff_t;
  std::array<FieldArray, kNumComponents> coeff_c;
  std::array<FieldArray, kNumSourceComponents> coeff_src;

  FieldArray& field(Component c) { return fields[static_cast<int>(c)]; }
  const FieldArray& field(Component c) const { return fields[static_cast<int>(c)]; }
  FieldArray& t_of(Component c) { return coeff_t[static_cast<int>(c)]; }
  const FieldArray& t_of(Component c) const { return coeff_t[static_cast<int>(c)]; }
  FieldArray& c_of(Component c) { return coeff_c[static_cast<int>(c)]; }
  const FieldArray& c_of(Component c) const { return coeff_c[static_cast<int>(c)]; }

  void zero_fields() {
    for (auto& f : fields) f.fill_zero();
  }
};

inline std::uint64_t allocated_footprint_bytes(const GridDims& d) {
  return std::uint64_t(kBytesPerCell) * d.padded_cells();
}

inline std::uint64_t interior_footprint_bytes(const GridDims& d) {
  return std::uint64_t(kBytesPerCell) * d.interior_cells();
}

ProblemState allocate_state(const GridDims& dims);

// Deep copy of the field arrays only (coefficients are shared-immutable in
// spirit but cheap enough to copy too; oracle runs want full isolation).
ProblemState clone_state(const ProblemState& s);

}  // namespace thiim
