/**
 * @file bicuspid.hpp
 * @brief Normalized parameterization of bicuspid groups <alpha, beta, gamma>.
 *
 *   alpha = [[1, a], [0, 1]],  beta = [[1, b], [0, 1]],  gamma = [[c, -1], [1, 0]]
 *
 * with 1 <= |a| <= |b| <= 2A/sqrt(3) and |c| <= |b|, where A bounds the area
 * of the maximal cusp torus. Replacing alpha or beta by its inverse and
 * conjugating the whole group by complex conjugation leave the normal form of
 * gamma intact, so the reduced space has Re a >= 0, Im a >= 0, Im b >= 0.
 */
#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <optional>
#include <stdexcept>
#include <string>

#include "bicusp/interval.hpp"

namespace bicusp {

/// A parameter point (a, b, c).
struct Params {
  std::complex<double> a;
  std::complex<double> b;
  std::complex<double> c;
};

/// Coordinate order used by boxes, subdivision tie-breaks and serialization.
enum class Coord : int { ARe = 0, AIm, BRe, BIm, CRe, CIm };
inline constexpr int kNumCoords = 6;
inline constexpr std::array<const char*, kNumCoords> kCoordNames = {"a_re", "a_im", "b_re",
                                                                    "b_im", "c_re", "c_im"};

/// A product of six real intervals, tagged with its path in the subdivision
/// tree ('0' = lower half, '1' = upper half).
struct ParamBox {
  std::array<RealInterval, kNumCoords> coords{};
  std::string path;

  static ParamBox point(const Params& p) {
    ParamBox box;
    box.coords = {RealInterval(p.a.real()), RealInterval(p.a.imag()), RealInterval(p.b.real()),
                  RealInterval(p.b.imag()), RealInterval(p.c.real()), RealInterval(p.c.imag())};
    return box;
  }

  const RealInterval& operator[](Coord k) const { return coords[static_cast<int>(k)]; }
  RealInterval& operator[](Coord k) { return coords[static_cast<int>(k)]; }

  ComplexInterval a() const { return {(*this)[Coord::ARe], (*this)[Coord::AIm]}; }
  ComplexInterval b() const { return {(*this)[Coord::BRe], (*this)[Coord::BIm]}; }
  ComplexInterval c() const { return {(*this)[Coord::CRe], (*this)[Coord::CIm]}; }

  bool contains(const Params& p) const {
    return a().contains(p.a) && b().contains(p.b) && c().contains(p.c);
  }

  double max_width() const {
    double w = 0.0;
    for (const auto& x : coords) w = std::max(w, x.width());
    return w;
  }

  int depth() const { return static_cast<int>(path.size()); }
};

struct GeneratorTriple {
  IntervalMatrix alpha;
  IntervalMatrix beta;
  IntervalMatrix gamma;
};

inline GeneratorTriple gens_from_params(const ParamBox& box) {
  const ComplexInterval one(1.0);
  const ComplexInterval zero(0.0);
  return {IntervalMatrix{one, box.a(), zero, one}, IntervalMatrix{one, box.b(), zero, one},
          IntervalMatrix{box.c(), -one, one, zero}};
}

inline GeneratorTriple gens_from_params(const Params& p) { return gens_from_params(ParamBox::point(p)); }

/// Certified enclosure of 2A/sqrt(3), the bound on |b|.
inline RealInterval translation_bound(double area_bound) {
  const double r = 2.0 * area_bound / std::sqrt(3.0);
  return RealInterval(detail::down(r, 4), detail::up(r, 4));
}

/// Bounding box of the reduced parameter space for cusp area <= area_bound.
/// Empty (nullopt) when the region has no interior, i.e. 2A/sqrt(3) <= 1.
inline std::optional<ParamBox> param_space(double area_bound) {
  if (!std::isfinite(area_bound) || area_bound <= 0.0)
    throw std::invalid_argument("param_space: area bound must be positive");
  const double r_nominal = 2.0 * area_bound / std::sqrt(3.0);
  if (r_nominal - 1.0 < 1e-12) return std::nullopt;

  const double r = translation_bound(area_bound).hi();
  ParamBox box;
  box[Coord::ARe] = RealInterval(0.0, r);
  box[Coord::AIm] = RealInterval(0.0, r);
  box[Coord::BRe] = RealInterval(-r, r);
  box[Coord::BIm] = RealInterval(0.0, r);
  box[Coord::CRe] = RealInterval(-r, r);
  box[Coord::CIm] = RealInterval(-r, r);
  return box;
}

enum class Feasibility { Inside, Outside, Straddles };

inline const char* to_string(Feasibility f) {
  switch (f) {
    case Feasibility::Inside: return "inside";
    case Feasibility::Outside: return "outside";
    case Feasibility::Straddles: return "straddles";
  }
  return "?";
}

struct FeasibilityOptions {
  /// Also require |Re(b/a)| <= 1/2 (beta the next shortest lattice vector).
  bool lattice_reduction = false;
};

/// Certified classification of a box against the normalization constraints.
inline Feasibility box_in_param_space(const ParamBox& box, double area_bound,
                                      const FeasibilityOptions& opts = {}) {
  const RealInterval r = translation_bound(area_bound);
  const RealInterval abs_a = abs_bounds(box.a());
  const RealInterval abs_b = abs_bounds(box.b());
  const RealInterval abs_c = abs_bounds(box.c());

  bool outside = abs_a.hi() < 1.0 || abs_a.lo() > abs_b.hi() || abs_b.lo() > r.hi() ||
                 abs_c.lo() > abs_b.hi() || box[Coord::ARe].hi() < 0.0 || box[Coord::AIm].hi() < 0.0 ||
                 box[Coord::BIm].hi() < 0.0;
  bool inside = abs_a.lo() >= 1.0 && abs_a.hi() <= abs_b.lo() && abs_b.hi() <= r.lo() &&
                abs_c.hi() <= abs_b.lo() && box[Coord::ARe].lo() >= 0.0 && box[Coord::AIm].lo() >= 0.0 &&
                box[Coord::BIm].lo() >= 0.0;

  if (opts.lattice_reduction) {
    // |Re(b conj(a))| <= |a|^2 / 2, division free.
    const ComplexInterval ba = box.b() * conj(box.a());
    const RealInterval lhs = RealInterval::unchecked(ba.re.mig(), ba.re.mag());
    const RealInterval half_norm = (sqr(box[Coord::ARe]) + sqr(box[Coord::AIm])) * RealInterval(0.5);
    outside = outside || lhs.lo() > half_norm.hi();
    inside = inside && lhs.hi() <= half_norm.lo();
  }

  if (outside) return Feasibility::Outside;
  if (inside) return Feasibility::Inside;
  return Feasibility::Straddles;
}

}  // namespace bicusp
