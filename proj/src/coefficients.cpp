#include "thiim/coefficients.hpp"

#include <cstdio>
#include <fstream>

namespace thiim {

namespace {

using cplx = std::complex<double>;

cplx expi(double phase) { return {std::cos(phase), std::sin(phase)}; }

void check_denom(const cplx& denom, Family family, IterationMode mode) {
  if (std::abs(denom) == 0.0) {
    throw SetupError(std::string("vanishing update denominator (") +
                     (family == Family::E ? "E" : "H") +
                     (mode == IterationMode::Back ? ", back" : ", forward") +
                     "): resonant sigma/tau combination");
  }
}

}  // namespace

UpdateCoefficients derive_coefficients(const MaterialCell& mat, const SchemeParams& sp,
                                       Family family, IterationMode mode) {
  const double wt = sp.omega * sp.tau;
  UpdateCoefficients out;
  if (family == Family::H) {
    // H_new = [e^{-i wt/2} H_old + (tau/mu) D + tau S_H] / (e^{i wt/2} + tau sigma*/mu)
    // with D the signed discrete curl contribution.
    const cplx denom = expi(wt / 2.0) + cplx(sp.tau * mat.sigma_star / mat.mu, 0.0);
    check_denom(denom, family, mode);
    out.t = expi(-wt / 2.0) / denom;
    out.c = cplx(sp.tau / (mat.mu * sp.delta), 0.0) / denom;
    out.src = sp.tau * sp.source_h / denom;
  } else if (mode == IterationMode::Forward) {
    // E_new = [e^{-i wt} E_old + (tau/eps) e^{-i wt/2} D + tau e^{-i wt} S_E]
    //         / (1 + tau sigma/eps)
    const cplx denom = cplx(1.0, 0.0) + sp.tau * mat.sigma / mat.eps;
    check_denom(denom, family, mode);
    out.t = expi(-wt) / denom;
    out.c = (sp.tau / (mat.eps * sp.delta)) * expi(-wt / 2.0) / denom;
    out.src = sp.tau * expi(-wt) * sp.source_e / denom;
  } else {
    // Back iteration: E_new = [e^{i wt} E_old - (1/eps) e^{i wt/2} D / (1/tau - s/e)
    //                          - S_E / (1/tau - s/e)] with denom = 1/tau - sigma/eps.
    const cplx denom = cplx(1.0 / sp.tau, 0.0) - mat.sigma / mat.eps;
    check_denom(denom, family, mode);
    out.t = expi(wt) / (sp.tau * denom);
    out.c = -(1.0 / (mat.eps * sp.delta)) * expi(wt / 2.0) / denom;
    out.src = -sp.source_e / denom;
  }
  return out;
}

void fill_coefficients(ProblemState& state, const SchemeParams& sp,
                       const MaterialFn& material) {
  sp.validate();
  const GridDims& d = state.dims;
  for (const auto& desc : kComponentTable) {
    const int ci = static_cast<int>(desc.id);
    const int si = source_index(desc.id);
    // Backward differences on the E family flip the sign of the raw
    // neighbor difference the kernel computes.
    const double orient = desc.family == Family::E ? -1.0 : 1.0;
    const double sign = orient * double(desc.curl_sign);
    for (int z = 0; z < d.nz; ++z) {
      for (int y = 0; y < d.ny; ++y) {
        for (int x = 0; x < d.nx; ++x) {
          const MaterialCell mat = material(x, y, z, desc.shift_axis);
          if (mat.mu == 0.0) throw SetupError("mu must be nonzero");
          if (std::abs(mat.eps) == 0.0) throw SetupError("eps must be nonzero");
          const IterationMode mode = select_mode(desc.family, mat.eps);
          UpdateCoefficients uc;
          try {
            uc = derive_coefficients(mat, sp, desc.family, mode);
          } catch (const SetupError& e) {
            char where[96];
            std::snprintf(where, sizeof(where), " at cell (%d,%d,%d) component %s", x,
                          y, z, std::string(component_name(desc.id)).c_str());
            throw SetupError(e.what() + std::string(where));
          }
          const std::size_t i = d.linear_index(x, y, z);
          state.coeff_t[ci][i] = from_std(uc.t);
          state.coeff_c[ci][i] = from_std(sign * uc.c);
          if (si >= 0) state.coeff_src[si][i] = from_std(uc.src);
        }
      }
    }
  }
}

ProblemState build_benchmark_problem(const GridDims& dims, const SchemeParams& sp) {
  sp.validate();
  ProblemState state = allocate_state(dims);
  fill_coefficients(state, sp,
                    [](int, int, int, Axis) { return MaterialCell{}; });
  // Restrict the pre-scaled source term to the injection plane.
  const int zsrc = source_plane_z(dims);
  for (int si = 0; si < kNumSourceComponents; ++si) {
    FieldArray& src = state.coeff_src[si];
    for (int z = 0; z < dims.nz; ++z) {
      if (z == zsrc) continue;
      for (int y = 0; y < dims.ny; ++y)
        for (int x = 0; x < dims.nx; ++x)
          src[dims.linear_index(x, y, z)] = ComplexScalar{};
    }
  }
  return state;
}

ProblemState build_problem_from_voxels(const GridDims& dims, const SchemeParams& sp,
                                       const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SetupError("cannot open voxel map: " + path);
  const std::size_t n = dims.interior_cells();
  std::vector<MaterialCell> cells(n);
  for (std::size_t i = 0; i < n; ++i) {
    double rec[5];
    in.read(reinterpret_cast<char*>(rec), sizeof rec);
    if (!in) throw SetupError("voxel map truncated: " + path);
    cells[i].eps = {rec[0], rec[1]};
    cells[i].mu = rec[2];
    cells[i].sigma = rec[3];
    cells[i].sigma_star = rec[4];
  }
  ProblemState state = allocate_state(dims);
  const std::size_t sx = 1, sy = dims.nx, sz = std::size_t(dims.nx) * dims.ny;
  fill_coefficients(state, sp, [&](int x, int y, int z, Axis) {
    return cells[z * sz + y * sy + x * sx];
  });
  const int zsrc = source_plane_z(dims);
  for (int si = 0; si < kNumSourceComponents; ++si) {
    FieldArray& src = state.coeff_src[si];
    for (int z = 0; z < dims.nz; ++z) {
      if (z == zsrc) continue;
      for (int y = 0; y < dims.ny; ++y)
        for (int x = 0; x < dims.nx; ++x)
          src[dims.linear_index(x, y, z)] = ComplexScalar{};
    }
  }
  return state;
}

}  // namespace thiim
