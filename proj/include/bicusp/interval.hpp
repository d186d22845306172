/**
 * @file interval.hpp
 * @brief Certified arithmetic on real intervals, complex rectangles and
 *        2x2 complex-interval matrices.
 *
 * Rounding is handled by error-free transformations: a result whose rounding
 * error is provably zero is kept as is, anything else is widened outward by
 * two ulps. No hardware rounding modes are touched, so every value here is
 * safe to share across threads.
 */
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace bicusp {

namespace detail {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Products and sums below this magnitude may have lost bits to gradual
// underflow, where the FMA residual is no longer exact.
inline constexpr double kUnderflowGuard = 1e-290;

inline double down(double v, int ulps = 2) {
  for (int i = 0; i < ulps; ++i) v = std::nextafter(v, -kInf);
  return v;
}

inline double up(double v, int ulps = 2) {
  for (int i = 0; i < ulps; ++i) v = std::nextafter(v, kInf);
  return v;
}

struct Rounded {
  double lo;
  double hi;
};

// Knuth's TwoSum: the rounding error of x + y is itself a double.
inline Rounded sum(double x, double y) {
  const double s = x + y;
  const double bp = s - x;
  const double err = (x - (s - bp)) + (y - bp);
  if (err == 0.0 && std::isfinite(s)) return {s, s};
  return {down(s), up(s)};
}

inline Rounded product(double x, double y) {
  if (x == 0.0 || y == 0.0) return {0.0, 0.0};
  const double p = x * y;
  if (std::abs(p) >= kUnderflowGuard && std::fma(x, y, -p) == 0.0) return {p, p};
  return {down(p), up(p)};
}

inline Rounded sqrt_rounded(double v) {
  if (v <= 0.0) return {0.0, 0.0};
  const double s = std::sqrt(v);
  if (std::fma(s, s, -v) == 0.0) return {s, s};
  return {std::max(0.0, down(s)), up(s)};
}

}  // namespace detail

/// Closed interval [lo, hi] of doubles.
class RealInterval {
 public:
  constexpr RealInterval() = default;
  constexpr RealInterval(double point) : lo_(point), hi_(point) {}  // NOLINT(implicit)

  RealInterval(double lo, double hi) : lo_(lo), hi_(hi) {
    if (!std::isfinite(lo) || !std::isfinite(hi) || lo > hi)
      throw std::invalid_argument("RealInterval: need finite lo <= hi");
  }

  /// Builds from bounds known to be ordered (internal results; may be
  /// infinite after overflow, which still encloses).
  static RealInterval unchecked(double lo, double hi) {
    RealInterval r;
    r.lo_ = lo;
    r.hi_ = hi;
    return r;
  }

  double lo() const { return lo_; }
  double hi() const { return hi_; }
  double width() const { return hi_ - lo_; }
  double mid() const { return lo_ + (hi_ - lo_) / 2; }
  bool is_point() const { return lo_ == hi_; }
  bool contains(double v) const { return lo_ <= v && v <= hi_; }
  bool contains(const RealInterval& o) const { return lo_ <= o.lo_ && o.hi_ <= hi_; }
  bool contains_zero() const { return lo_ <= 0.0 && 0.0 <= hi_; }
  double mag() const { return std::max(std::abs(lo_), std::abs(hi_)); }

  /// Distance from zero to the nearest member.
  double mig() const {
    if (contains_zero()) return 0.0;
    return std::min(std::abs(lo_), std::abs(hi_));
  }

  friend bool operator==(const RealInterval&, const RealInterval&) = default;

  friend RealInterval operator+(const RealInterval& x, const RealInterval& y) {
    return unchecked(detail::sum(x.lo_, y.lo_).lo, detail::sum(x.hi_, y.hi_).hi);
  }

  friend RealInterval operator-(const RealInterval& x) { return unchecked(-x.hi_, -x.lo_); }

  friend RealInterval operator-(const RealInterval& x, const RealInterval& y) { return x + (-y); }

  friend RealInterval operator*(const RealInterval& x, const RealInterval& y) {
    const detail::Rounded ps[4] = {detail::product(x.lo_, y.lo_), detail::product(x.lo_, y.hi_),
                                   detail::product(x.hi_, y.lo_), detail::product(x.hi_, y.hi_)};
    double lo = ps[0].lo;
    double hi = ps[0].hi;
    for (const auto& p : ps) {
      lo = std::min(lo, p.lo);
      hi = std::max(hi, p.hi);
    }
    return unchecked(lo, hi);
  }

  RealInterval& operator+=(const RealInterval& o) { return *this = *this + o; }
  RealInterval& operator-=(const RealInterval& o) { return *this = *this - o; }
  RealInterval& operator*=(const RealInterval& o) { return *this = *this * o; }

  friend std::ostream& operator<<(std::ostream& os, const RealInterval& x) {
    return os << '[' << x.lo_ << ", " << x.hi_ << ']';
  }

 private:
  double lo_ = 0.0;
  double hi_ = 0.0;
};

/// Enclosure of {x^2 : x in X}; tighter than X*X when X straddles zero.
inline RealInterval sqr(const RealInterval& x) {
  const double m = x.mig();
  const double M = x.mag();
  return RealInterval::unchecked(std::max(0.0, detail::product(m, m).lo), detail::product(M, M).hi);
}

/// Hull of two intervals.
inline RealInterval hull(const RealInterval& x, const RealInterval& y) {
  return RealInterval::unchecked(std::min(x.lo(), y.lo()), std::max(x.hi(), y.hi()));
}

/// Axis-aligned rectangle re x im in the complex plane.
struct ComplexInterval {
  RealInterval re;
  RealInterval im;

  constexpr ComplexInterval() = default;
  constexpr ComplexInterval(RealInterval r, RealInterval i = RealInterval(0.0)) : re(r), im(i) {}  // NOLINT
  ComplexInterval(std::complex<double> z) : re(z.real()), im(z.imag()) {}  // NOLINT
  ComplexInterval(double r) : re(r), im(0.0) {}  // NOLINT

  bool contains(std::complex<double> z) const { return re.contains(z.real()) && im.contains(z.imag()); }
  bool contains(const ComplexInterval& o) const { return re.contains(o.re) && im.contains(o.im); }
  bool contains_zero() const { return re.contains_zero() && im.contains_zero(); }
  bool is_point() const { return re.is_point() && im.is_point(); }
  std::complex<double> mid() const { return {re.mid(), im.mid()}; }

  friend bool operator==(const ComplexInterval&, const ComplexInterval&) = default;

  friend ComplexInterval operator+(const ComplexInterval& x, const ComplexInterval& y) {
    return {x.re + y.re, x.im + y.im};
  }
  friend ComplexInterval operator-(const ComplexInterval& x, const ComplexInterval& y) {
    return {x.re - y.re, x.im - y.im};
  }
  friend ComplexInterval operator-(const ComplexInterval& x) { return {-x.re, -x.im}; }
  friend ComplexInterval operator*(const ComplexInterval& x, const ComplexInterval& y) {
    return {x.re * y.re - x.im * y.im, x.re * y.im + x.im * y.re};
  }

  friend std::ostream& operator<<(std::ostream& os, const ComplexInterval& z) {
    return os << z.re << " + i" << z.im;
  }
};

inline ComplexInterval conj(const ComplexInterval& z) { return {z.re, -z.im}; }

/// Certified bounds [L, U] on |z| over the rectangle. L is exactly zero iff
/// the rectangle contains the origin.
inline RealInterval abs_bounds(const ComplexInterval& z) {
  if (z.im == RealInterval(0.0)) return RealInterval::unchecked(z.re.mig(), z.re.mag());
  if (z.re == RealInterval(0.0)) return RealInterval::unchecked(z.im.mig(), z.im.mag());
  const double dx = z.re.mig();
  const double dy = z.im.mig();
  const double fx = z.re.mag();
  const double fy = z.im.mag();

  const double near_sq = detail::sum(detail::product(dx, dx).lo, detail::product(dy, dy).lo).lo;
  const double far_sq = detail::sum(detail::product(fx, fx).hi, detail::product(fy, fy).hi).hi;

  // |z| >= max(|Re z|, |Im z|) keeps L positive even if dx^2 underflows.
  const double lo = std::max({detail::sqrt_rounded(near_sq).lo, dx, dy});
  const double hi = std::max({detail::sqrt_rounded(far_sq).hi, fx, fy});
  return RealInterval::unchecked(lo, hi);
}

/// 2x2 matrix of complex rectangles, row-major [[m11, m12], [m21, m22]].
struct IntervalMatrix {
  ComplexInterval m11{1.0};
  ComplexInterval m12{0.0};
  ComplexInterval m21{0.0};
  ComplexInterval m22{1.0};

  static IntervalMatrix identity() { return {}; }

  ComplexInterval det() const { return m11 * m22 - m12 * m21; }

  bool contains(const IntervalMatrix& o) const {
    return m11.contains(o.m11) && m12.contains(o.m12) && m21.contains(o.m21) && m22.contains(o.m22);
  }

  friend bool operator==(const IntervalMatrix&, const IntervalMatrix&) = default;

  friend IntervalMatrix operator*(const IntervalMatrix& A, const IntervalMatrix& B) {
    return {A.m11 * B.m11 + A.m12 * B.m21, A.m11 * B.m12 + A.m12 * B.m22,
            A.m21 * B.m11 + A.m22 * B.m21, A.m21 * B.m12 + A.m22 * B.m22};
  }
};

/// Inverse of a determinant-one matrix: the adjugate, no division.
inline IntervalMatrix inverse_sl2(const IntervalMatrix& A) { return {A.m22, -A.m12, -A.m21, A.m11}; }

}  // namespace bicusp
