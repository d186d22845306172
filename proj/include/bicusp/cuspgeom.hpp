/**
 * @file cuspgeom.hpp
 * @brief Cusp torus arithmetic: area and volume of C/<a,b>, slope lengths,
 *        short-slope enumeration, intersection numbers and the
 *        exceptional-filling counting rule.
 *
 * Volume convention: a maximal cusp whose boundary torus has area A has
 * volume A/2.
 */
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "bicusp/bicuspid.hpp"

namespace bicusp {

/// Lattice <a, b> of translations on the height-one horotorus.
struct CuspShape {
  std::complex<double> a;
  std::complex<double> b;

  /// Signed area Im(conj(a) b).
  double signed_area() const { return (std::conj(a) * b).imag(); }

  void validate() const {
    if (!std::isfinite(a.real()) || !std::isfinite(a.imag()) || !std::isfinite(b.real()) ||
        !std::isfinite(b.imag()) || signed_area() == 0.0)
      throw std::invalid_argument("CuspShape: degenerate lattice (a and b are R-linearly dependent)");
  }

  /// The translation lattice of a normalized bicuspid group. On a maximal cusp
  /// the shortest translation has length at least one.
  static CuspShape from_params(const Params& p) {
    if (std::abs(p.a) < 1.0) throw std::invalid_argument("CuspShape: |a| < 1 violates the horoball normalization");
    CuspShape s{p.a, p.b};
    s.validate();
    return s;
  }
};

/// Primitive slope p*a + q*b, canonical sign q > 0, or q == 0 and p == 1.
struct Slope {
  long p = 1;
  long q = 0;

  Slope() = default;
  Slope(long p_, long q_) : p(p_), q(q_) {
    if (p == 0 && q == 0) throw std::invalid_argument("Slope: (0, 0) is not a slope");
    if (std::gcd(p, q) != 1) throw std::invalid_argument("Slope: (p, q) must be primitive");
    if (q < 0 || (q == 0 && p < 0)) {
      p = -p;
      q = -q;
    }
  }

  friend bool operator==(const Slope&, const Slope&) = default;
};

inline double cusp_area(const CuspShape& s) {
  s.validate();
  return std::abs(s.signed_area());
}

inline double cusp_volume(const CuspShape& s) { return cusp_area(s) / 2.0; }

inline double slope_length(const CuspShape& s, const Slope& sl) {
  return std::abs(static_cast<double>(sl.p) * s.a + static_cast<double>(sl.q) * s.b);
}

/// Geometric intersection number |p1 q2 - p2 q1|.
inline long delta(const Slope& s1, const Slope& s2) { return std::labs(s1.p * s2.q - s2.p * s1.q); }

struct SlopeLength {
  Slope slope;
  double length = 0.0;
};

/// Every primitive slope of length <= max_length, sorted by length, then by
/// (q, p). Complete: a lattice vector v = p a + q b has |p| <= |v| |b| / area
/// and |q| <= |v| |a| / area (lengths of the dual basis).
inline std::vector<SlopeLength> short_slopes_with_lengths(const CuspShape& s, double max_length = 6.0) {
  if (!(max_length > 0.0)) throw std::invalid_argument("short_slopes: length bound must be positive");
  const double area = cusp_area(s);
  const long pmax = static_cast<long>(std::floor(max_length * std::abs(s.b) / area * (1 + 1e-12))) + 1;
  const long qmax = static_cast<long>(std::floor(max_length * std::abs(s.a) / area * (1 + 1e-12))) + 1;
  std::vector<SlopeLength> out;
  for (long q = 0; q <= qmax; ++q) {
    for (long p = -pmax; p <= pmax; ++p) {
      if (std::gcd(p, q) != 1 || (q == 0 && p != 1)) continue;
      const Slope sl(p, q);
      const double len = slope_length(s, sl);
      if (len <= max_length) out.push_back({sl, len});
    }
  }
  std::sort(out.begin(), out.end(), [](const SlopeLength& l, const SlopeLength& r) {
    if (l.length != r.length) return l.length < r.length;
    if (l.slope.q != r.slope.q) return l.slope.q < r.slope.q;
    return l.slope.p < r.slope.p;
  });
  return out;
}

inline std::vector<Slope> short_slopes(const CuspShape& s, double max_length = 6.0) {
  std::vector<Slope> out;
  for (const auto& sl : short_slopes_with_lengths(s, max_length)) out.push_back(sl.slope);
  return out;
}

/// 36 / area: any two slopes of length <= 6 on a torus of this area have
/// intersection number at most this.
inline double delta_bound(double area) {
  if (!(area > 0.0)) throw std::invalid_argument("delta_bound: area must be positive");
  return 36.0 / area;
}

/// Largest integer strictly below the bound.
inline long strict_integer_below(double bound) { return static_cast<long>(std::ceil(bound)) - 1; }

inline bool is_prime(long n) {
  if (n < 2) return false;
  for (long k = 2; k * k <= n; ++k)
    if (n % k == 0) return false;
  return true;
}

/// (smallest prime > delta_max) + 1: the most slopes with pairwise
/// intersection number <= delta_max.
inline long max_exceptional_count(long delta_max) {
  if (delta_max < 0) throw std::invalid_argument("max_exceptional_count: delta_max must be >= 0");
  long p = delta_max + 1;
  while (!is_prime(p)) ++p;
  return p + 1;
}

struct CuspAudit {
  CuspShape shape;
  double area = 0.0;
  double volume = 0.0;
  double slope_length_bound = 6.0;
  std::vector<SlopeLength> slopes;
  double delta_bound = 0.0;
  long delta_max = 0;
  long max_exceptional = 0;
};

inline CuspAudit audit_cusp(const CuspShape& s, double slope_length_bound = 6.0) {
  CuspAudit out;
  out.shape = s;
  out.area = cusp_area(s);
  out.volume = out.area / 2.0;
  out.slope_length_bound = slope_length_bound;
  out.slopes = short_slopes_with_lengths(s, slope_length_bound);
  out.delta_bound = delta_bound(out.area);
  out.delta_max = std::max(0L, strict_integer_below(out.delta_bound));
  out.max_exceptional = max_exceptional_count(out.delta_max);
  return out;
}

}  // namespace bicusp
