/**
 * @file horoball.hpp
 * @brief Horoball patterns of a concrete bicuspid group.
 *
 * For mu = [[w, x], [y, z]] in SL2(C) with y != 0, the image of the height-one
 * horoball at infinity is a horoball tangent to C at mu(inf) = w/y with
 * Euclidean diameter 1/|y|^2. Elements are enumerated breadth first over the
 * Cayley graph of {x, y, z}^{+-1}; uppercase letters denote inverses in
 * witness words. Plain floating point throughout: these diagrams illustrate,
 * they do not certify.
 */
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "bicusp/bicuspid.hpp"
#include "bicusp/cuspgeom.hpp"
#include "bicusp/mat2.hpp"

namespace bicusp {

struct GroupElement {
  std::string word;
  Mat2 matrix;
};

struct ElementEnumeration {
  std::vector<GroupElement> elements;
  /// products formed at each word length, before deduplication
  std::vector<std::size_t> generated_per_length;
};

namespace detail {

inline constexpr std::array<char, 6> kLetters = {'x', 'X', 'y', 'Y', 'z', 'Z'};
inline constexpr double kMatchTol = 1e-9;

inline char inverse_letter(char c) { return static_cast<char>(c ^ 0x20); }

inline bool close(cplx u, cplx v) { return std::abs(u - v) <= kMatchTol * (1.0 + std::abs(u)); }

inline bool same_up_to_sign(const Mat2& A, const Mat2& B) {
  if (close(A.w, B.w) && close(A.x, B.x) && close(A.y, B.y) && close(A.z, B.z)) return true;
  return close(A.w, -B.w) && close(A.x, -B.x) && close(A.y, -B.y) && close(A.z, -B.z);
}

// Sign-invariant bucketing of matrices for tolerant deduplication.
class MatrixIndex {
 public:
  /// Inserts unless a match up to sign is already present.
  bool insert(const Mat2& M) {
    const auto [k1, k2] = keys(M);
    for (std::int64_t d1 = -1; d1 <= 1; ++d1)
      for (std::int64_t d2 = -1; d2 <= 1; ++d2) {
        auto it = buckets_.find(combine(k1 + d1, k2 + d2));
        if (it == buckets_.end()) continue;
        for (const auto& other : it->second)
          if (same_up_to_sign(M, other)) return false;
      }
    buckets_[combine(k1, k2)].push_back(M);
    return true;
  }

 private:
  static std::pair<std::int64_t, std::int64_t> keys(const Mat2& M) {
    const double frob = std::sqrt(std::norm(M.w) + std::norm(M.x) + std::norm(M.y) + std::norm(M.z));
    return {std::llround(frob * 1e4), std::llround(std::abs(M.y) * 1e4)};
  }
  static std::uint64_t combine(std::int64_t a, std::int64_t b) {
    return static_cast<std::uint64_t>(a) * 0x9E3779B97F4A7C15ULL ^ static_cast<std::uint64_t>(b);
  }
  std::unordered_map<std::uint64_t, std::vector<Mat2>> buckets_;
};

}  // namespace detail

inline std::array<Mat2, 6> generator_matrices(const Params& p) {
  const Mat2 alpha = translation(p.a);
  const Mat2 beta = translation(p.b);
  const Mat2 gamma{p.c, -1.0, 1.0, 0.0};
  return {alpha, alpha.inverse(), beta, beta.inverse(), gamma, gamma.inverse()};
}

/// Breadth-first products without immediate cancellation up to max_len
/// letters, deduplicated up to sign. The identity is never returned.
inline ElementEnumeration enumerate_elements(const Params& p, int max_len) {
  if (max_len < 1) throw std::invalid_argument("enumerate_elements: max_len must be >= 1");
  const auto gens = generator_matrices(p);
  ElementEnumeration out;
  detail::MatrixIndex seen;
  seen.insert(Mat2::identity());

  std::vector<std::size_t> frontier;  // indices into out.elements
  std::size_t generated = 0;
  for (std::size_t g = 0; g < gens.size(); ++g) {
    ++generated;
    if (seen.insert(gens[g])) {
      frontier.push_back(out.elements.size());
      out.elements.push_back({std::string(1, detail::kLetters[g]), gens[g]});
    }
  }
  out.generated_per_length.push_back(generated);

  for (int len = 2; len <= max_len; ++len) {
    std::vector<std::size_t> next;
    generated = 0;
    for (std::size_t idx : frontier) {
      for (std::size_t g = 0; g < gens.size(); ++g) {
        const char last = out.elements[idx].word.back();
        if (detail::kLetters[g] == detail::inverse_letter(last)) continue;
        ++generated;
        const Mat2 M = out.elements[idx].matrix * gens[g];
        if (!seen.insert(M)) continue;
        next.push_back(out.elements.size());
        out.elements.push_back({out.elements[idx].word + detail::kLetters[g], M});
      }
    }
    out.generated_per_length.push_back(generated);
    frontier = std::move(next);
  }
  return out;
}

struct Horoball {
  cplx center;
  double diameter = 0.0;
  std::string witness;
};

struct HoroballDiagram {
  CuspShape lattice;
  std::vector<Horoball> balls;
};

/// Lattice coordinates (s, t) with z = s a + t b.
inline std::pair<double, double> lattice_coordinates(const CuspShape& L, cplx z) {
  const double s = (std::conj(L.b) * z).imag() / (std::conj(L.b) * L.a).imag();
  const double t = (std::conj(L.a) * z).imag() / (std::conj(L.a) * L.b).imag();
  return {s, t};
}

/// Representative of z modulo <a, b> in the half-open parallelogram
/// {s a + t b : 0 <= s, t < 1}.
inline cplx reduce_mod_lattice(const CuspShape& L, cplx z) {
  auto wrap = [](double u) {
    double f = u - std::floor(u);
    if (f > 1.0 - 1e-9 || f < 1e-12) f = 0.0;
    return f;
  };
  auto [s, t] = lattice_coordinates(L, z);
  return wrap(s) * L.a + wrap(t) * L.b;
}

/// Cutoffs above 1 give an empty diagram once the cusp is maximal.
inline HoroballDiagram horoball_diagram(const Params& p, double min_diameter, int max_len) {
  if (!(min_diameter > 0.0)) throw std::invalid_argument("horoball_diagram: cutoff must be positive");
  HoroballDiagram d;
  d.lattice = CuspShape{p.a, p.b};
  d.lattice.validate();

  const auto elems = enumerate_elements(p, max_len);
  std::unordered_map<std::uint64_t, std::vector<std::size_t>> index;
  auto key = [](std::int64_t s, std::int64_t t, std::int64_t q) {
    return static_cast<std::uint64_t>(s) * 0x9E3779B97F4A7C15ULL ^ static_cast<std::uint64_t>(t) * 0xC2B2AE3D27D4EB4FULL ^
           static_cast<std::uint64_t>(q);
  };
  constexpr double kGrid = 1e6;

  for (const auto& e : elems.elements) {
    const double abs_y = std::abs(e.matrix.y);
    if (abs_y < 1e-12) continue;
    const double diam = 1.0 / (abs_y * abs_y);
    if (diam < min_diameter) continue;
    const cplx center = reduce_mod_lattice(d.lattice, e.matrix.at_infinity());
    auto [s, t] = lattice_coordinates(d.lattice, center);
    const std::int64_t ks = std::llround(s * kGrid), kt = std::llround(t * kGrid), kq = std::llround(diam * kGrid);

    bool duplicate = false;
    for (std::int64_t ds = -1; ds <= 1 && !duplicate; ++ds)
      for (std::int64_t dt = -1; dt <= 1 && !duplicate; ++dt)
        for (std::int64_t dq = -1; dq <= 1 && !duplicate; ++dq) {
          // Coordinates near 1 wrap to near 0.
          const std::int64_t ws = (ks + ds + static_cast<std::int64_t>(kGrid)) % static_cast<std::int64_t>(kGrid);
          const std::int64_t wt = (kt + dt + static_cast<std::int64_t>(kGrid)) % static_cast<std::int64_t>(kGrid);
          auto it = index.find(key(ws, wt, kq + dq));
          if (it == index.end()) continue;
          for (std::size_t bi : it->second) {
            const auto& b = d.balls[bi];
            auto [bs, bt] = lattice_coordinates(d.lattice, b.center);
            auto circ = [](double u, double v) {
              const double du = std::abs(u - v);
              return std::min(du, 1.0 - du);
            };
            if (circ(s, bs) <= 1e-9 && circ(t, bt) <= 1e-9 && std::abs(b.diameter - diam) <= 1e-9) {
              duplicate = true;
              break;
            }
          }
        }
    if (duplicate) continue;
    const std::int64_t grid = static_cast<std::int64_t>(kGrid);
    index[key(((ks % grid) + grid) % grid, ((kt % grid) + grid) % grid, kq)].push_back(d.balls.size());
    d.balls.push_back({center, diam, e.word});
  }

  std::stable_sort(d.balls.begin(), d.balls.end(), [](const Horoball& l, const Horoball& r) {
    if (l.diameter != r.diameter) return l.diameter > r.diameter;
    if (l.center.real() != r.center.real()) return l.center.real() < r.center.real();
    return l.center.imag() < r.center.imag();
  });
  return d;
}

/// Smallest nonzero |y| over the enumerated elements; below 1 means the
/// height-one horoball is not precisely invariant for these parameters.
inline double min_lower_left(const Params& p, int max_len) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& e : enumerate_elements(p, max_len).elements) {
    const double abs_y = std::abs(e.matrix.y);
    if (abs_y >= 1e-12) best = std::min(best, abs_y);
  }
  return best;
}

namespace detail {

inline std::string fmt(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

inline std::string xml_escape(std::string_view s) {
  std::string out;
  for (char ch : s) {
    switch (ch) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      default: out += ch;
    }
  }
  return out;
}

}  // namespace detail

/// Standalone SVG 1.1: the fundamental parallelogram of the lattice and one
/// circle per ball (radius = diameter / 2). `metadata` is embedded verbatim.
inline std::string render_svg(const HoroballDiagram& d, double scale_px_per_unit, std::string_view metadata = {}) {
  if (!(scale_px_per_unit > 0.0)) throw std::invalid_argument("render_svg: scale must be positive");
  const std::array<cplx, 4> corners = {cplx{0.0}, d.lattice.a, d.lattice.a + d.lattice.b, d.lattice.b};
  double min_x = 0, max_x = 0, min_y = 0, max_y = 0;
  for (const auto& c : corners) {
    min_x = std::min(min_x, c.real());
    max_x = std::max(max_x, c.real());
    min_y = std::min(min_y, c.imag());
    max_y = std::max(max_y, c.imag());
  }
  const double margin = 0.6;  // the largest ball has radius 1/2
  min_x -= margin;
  min_y -= margin;
  max_x += margin;
  max_y += margin;
  const double width = (max_x - min_x) * scale_px_per_unit;
  const double height = (max_y - min_y) * scale_px_per_unit;
  auto px = [&](cplx z) {
    return std::pair{(z.real() - min_x) * scale_px_per_unit, (max_y - z.imag()) * scale_px_per_unit};
  };

  std::string svg;
  svg += "<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"no\"?>\n";
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + detail::fmt("%.2f", width) +
         "\" height=\"" + detail::fmt("%.2f", height) + "\" viewBox=\"0 0 " + detail::fmt("%.2f", width) + " " +
         detail::fmt("%.2f", height) + "\">\n";
  if (!metadata.empty()) svg += "<metadata>" + detail::xml_escape(metadata) + "</metadata>\n";
  svg += "<rect x=\"0\" y=\"0\" width=\"" + detail::fmt("%.2f", width) + "\" height=\"" +
         detail::fmt("%.2f", height) + "\" fill=\"white\"/>\n";

  svg += "<polygon points=\"";
  for (std::size_t i = 0; i < corners.size(); ++i) {
    const auto [x, y] = px(corners[i]);
    if (i) svg += ' ';
    svg += detail::fmt("%.4f", x) + "," + detail::fmt("%.4f", y);
  }
  svg += "\" fill=\"none\" stroke=\"black\" stroke-width=\"1.5\"/>\n";

  for (const auto& b : d.balls) {
    const auto [x, y] = px(b.center);
    const bool full = b.diameter >= 1.0 - 1e-9;
    svg += "<circle cx=\"" + detail::fmt("%.4f", x) + "\" cy=\"" + detail::fmt("%.4f", y) + "\" r=\"" +
           detail::fmt("%.4f", b.diameter / 2.0 * scale_px_per_unit) + "\" fill=\"" +
           (full ? "#9ecae1" : "#deebf7") + "\" fill-opacity=\"0.6\" stroke=\"#08519c\" stroke-width=\"0.75\">" +
           "<title>" + detail::xml_escape(b.witness) + " d=" + detail::fmt("%.6g", b.diameter) + "</title></circle>\n";
  }
  svg += "</svg>\n";
  return svg;
}

/// CSV with header center_re,center_im,diameter,word.
inline std::string to_csv(const HoroballDiagram& d) {
  std::string out = "center_re,center_im,diameter,word\n";
  for (const auto& b : d.balls)
    out += detail::fmt("%.17g", b.center.real()) + "," + detail::fmt("%.17g", b.center.imag()) + "," +
           detail::fmt("%.17g", b.diameter) + "," + b.witness + "\n";
  return out;
}

}  // namespace bicusp
