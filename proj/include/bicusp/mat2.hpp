#pragma once

#include <complex>

namespace bicusp {

using cplx = std::complex<double>;

/// Plain double-precision 2x2 complex matrix [[w, x], [y, z]].
struct Mat2 {
  cplx w{1.0};
  cplx x{0.0};
  cplx y{0.0};
  cplx z{1.0};

  static Mat2 identity() { return {}; }
  cplx det() const { return w * z - x * y; }

  /// Inverse assuming determinant one.
  Mat2 inverse() const { return {z, -x, -y, w}; }

  /// Image of the point at infinity; only meaningful for y != 0.
  cplx at_infinity() const { return w / y; }

  friend Mat2 operator*(const Mat2& A, const Mat2& B) {
    return {A.w * B.w + A.x * B.y, A.w * B.x + A.x * B.z, A.y * B.w + A.z * B.y, A.y * B.x + A.z * B.z};
  }
  friend Mat2 operator-(const Mat2& A) { return {-A.w, -A.x, -A.y, -A.z}; }
};

inline Mat2 translation(cplx t) { return {1.0, t, 0.0, 1.0}; }

}  // namespace bicusp
