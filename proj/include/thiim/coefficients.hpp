#pragma once

#include <complex>
#include <functional>
#include <string>

#include "thiim/state.hpp"

namespace thiim {

// Per-cell material parameters. sigma is the conductivity seen by the split
// component being set up; callers that want directional conductivities pass
// a different value per shift axis through the material callback.
struct MaterialCell {
  std::complex<double> eps{1.0, 0.0};
  double mu = 1.0;
  double sigma = 0.0;
  double sigma_star = 0.0;
};

struct SchemeParams {
  double omega = 0.4;   // angular frequency of the incident wave
  double tau = 1.0;     // pseudo-time step
  double delta = 1.0;   // grid spacing (uniform)
  std::complex<double> source_e{1.0, 0.0};
  std::complex<double> source_h{1.0, 0.0};

  void validate() const {
    if (!(tau > 0.0)) throw ConfigError("tau must be > 0");
    if (!(delta > 0.0)) throw ConfigError("delta must be > 0");
    if (!(omega * tau <= 3.14159265358979323846 + 1e-12))
      throw ConfigError("omega*tau must be <= pi");
  }
};

enum class IterationMode { Forward, Back };

// Multipliers of the rearranged per-cell update
//   F_new = t*F_old + c*(shifted operand sum - local operand sum) + src.
// c here carries the magnitude, the mode-dependent phase and the iteration
// direction; the per-component curl sign and the finite-difference
// orientation are applied in fill_coefficients.
struct UpdateCoefficients {
  std::complex<double> t;
  std::complex<double> c;
  std::complex<double> src;
};

// Back iteration is used for E updates in negative-permittivity cells.
inline IterationMode select_mode(Family family, const std::complex<double>& eps) {
  return (family == Family::E && eps.real() < 0.0) ? IterationMode::Back
                                                   : IterationMode::Forward;
}

// Solve the discretized update equation of one family for the new-time
// value. Throws SetupError on a vanishing denominator.
UpdateCoefficients derive_coefficients(const MaterialCell& mat, const SchemeParams& sp,
                                       Family family, IterationMode mode);

// Material lookup per interior cell and shift axis (axis only matters for
// directional conductivities).
using MaterialFn = std::function<MaterialCell(int x, int y, int z, Axis shift_axis)>;

// Fill all 28 coefficient arrays of an allocated state. Modes are selected
// per cell from the permittivity. Ghost coefficients stay zero.
void fill_coefficients(ProblemState& state, const SchemeParams& sp,
                       const MaterialFn& material);

// z index of the plane-wave injection layer.
inline int source_plane_z(const GridDims& d) { return d.nz / 4; }

// Homogeneous vacuum-like medium, Dirichlet ghosts, plane-wave source layer
// at z = nz/4 with constant amplitude; fields zero.
ProblemState build_benchmark_problem(const GridDims& dims, const SchemeParams& sp);

// Binary voxel map: nx*ny*nz records of 5 doubles (eps_re, eps_im, mu,
// sigma, sigma_star), x fastest.
ProblemState build_problem_from_voxels(const GridDims& dims, const SchemeParams& sp,
                                       const std::string& path);

}  // namespace thiim
