#pragma once

#include <cmath>
#include <complex>

namespace thiim {

// Interleaved re/im pair, the element type of every domain-sized array.
// Kept an aggregate so arrays can be zeroed bytewise; std::complex is only
// used in setup code where divisions and exponentials are needed.
struct ComplexScalar {
  double re;
  double im;

  std::complex<double> to_std() const { return {re, im}; }

  friend constexpr bool operator==(const ComplexScalar& a, const ComplexScalar& b) {
    return a.re == b.re && a.im == b.im;
  }
};

inline ComplexScalar from_std(const std::complex<double>& z) {
  return {z.real(), z.imag()};
}

inline double abs2(const ComplexScalar& z) { return z.re * z.re + z.im * z.im; }

inline bool is_finite(const ComplexScalar& z) {
  return std::isfinite(z.re) && std::isfinite(z.im);
}

}  // namespace thiim
