#include "thiim/state.hpp"

namespace thiim {

ProblemState allocate_state(const GridDims& dims) {
  if (!dims.valid())
    throw SetupError("invalid grid dims (need nx,ny,nz >= 4, ghost = 1)");
  ProblemState s;
  s.dims = dims;
  const std::size_t n = dims.padded_cells();
  for (auto& f : s.fields) f = FieldArray(n);
  for (auto& f : s.coeff_t) f = FieldArray(n);
  for (auto& f : s.coeff_c) f = FieldArray(n);
  for (auto& f : s.coeff_src) f = FieldArray(n);
  return s;
}

ProblemState clone_state(const ProblemState& src) {
  ProblemState s = allocate_state(src.dims);
  const std::size_t bytes = src.dims.padded_cells() * sizeof(ComplexScalar);
  for (int i = 0; i < kNumComponents; ++i) {
    std::memcpy(s.fields[i].data(), src.fields[i].data(), bytes);
    std::memcpy(s.coeff_t[i].data(), src.coeff_t[i].data(), bytes);
    std::memcpy(s.coeff_c[i].data(), src.coeff_c[i].data(), bytes);
  }
  for (int i = 0; i < kNumSourceComponents; ++i)
    std::memcpy(s.coeff_src[i].data(), src.coeff_src[i].data(), bytes);
  return s;
}

}  // namespace thiim
