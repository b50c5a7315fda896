#pragma once

#include <algorithm>
#include <array>
#include <cmath>

#include "ptbilayer/constants.hpp"

namespace ptbilayer {

/// Dense 2x2 complex matrix. Transfer, interface, propagation, noise-coupling
/// and scattering matrices all share this type.
struct ComplexMatrix2 {
  cplx m11{1.0};
  cplx m12{0.0};
  cplx m21{0.0};
  cplx m22{1.0};

  static constexpr ComplexMatrix2 identity() { return {}; }
  static constexpr ComplexMatrix2 zero() { return {0.0, 0.0, 0.0, 0.0}; }
  static constexpr ComplexMatrix2 diagonal(cplx a, cplx b) { return {a, 0.0, 0.0, b}; }

  cplx determinant() const { return m11 * m22 - m12 * m21; }
  cplx trace() const { return m11 + m22; }

  bool is_finite() const {
    for (const cplx& v : {m11, m12, m21, m22}) {
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
    }
    return true;
  }

  friend ComplexMatrix2 operator*(const ComplexMatrix2& a, const ComplexMatrix2& b) {
    return {a.m11 * b.m11 + a.m12 * b.m21, a.m11 * b.m12 + a.m12 * b.m22,
            a.m21 * b.m11 + a.m22 * b.m21, a.m21 * b.m12 + a.m22 * b.m22};
  }

  friend ComplexMatrix2 operator*(cplx s, const ComplexMatrix2& a) {
    return {s * a.m11, s * a.m12, s * a.m21, s * a.m22};
  }

  /// Eigenvalues from the characteristic polynomial; unordered.
  std::array<cplx, 2> eigenvalues() const {
    const cplx half_trace = 0.5 * trace();
    const cplx disc = std::sqrt(half_trace * half_trace - determinant());
    return {half_trace + disc, half_trace - disc};
  }
};

/// Largest entrywise modulus difference.
inline double max_abs_difference(const ComplexMatrix2& a, const ComplexMatrix2& b) {
  return std::max({std::abs(a.m11 - b.m11), std::abs(a.m12 - b.m12), std::abs(a.m21 - b.m21),
                   std::abs(a.m22 - b.m22)});
}

}  // namespace ptbilayer
