/**
 * @file words.hpp
 * @brief Cyclically reduced words in (<x> x <y>) * <z>, their interval
 *        evaluation over parameter boxes, and the killer-word test.
 *
 * A word is stored as syllables r_1 z^{e_1} r_2 z^{e_2} ... r_j z^{e_j} with
 * r_i = x^{m_i} y^{n_i}. Only r_1 may be trivial. Evaluating with
 * x -> alpha, y -> beta, z -> gamma gives W(a,b,c); its lower-left entry p
 * is the polynomial the search bounds on boxes.
 */
#pragma once

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "bicusp/bicuspid.hpp"
#include "bicusp/interval.hpp"
#include "bicusp/mat2.hpp"

namespace bicusp {

/// x^m y^n z^z.
struct Syllable {
  int m = 0;
  int n = 0;
  int z = 0;

  bool trivial_translation() const { return m == 0 && n == 0; }
  friend bool operator==(const Syllable&, const Syllable&) = default;
};

class Word {
 public:
  Word() = default;

  /// Validates the syllable form and cyclic reduction.
  explicit Word(std::vector<Syllable> syllables) : syl_(std::move(syllables)) {
    if (syl_.empty()) throw std::invalid_argument("Word: at least one z-syllable required");
    for (std::size_t i = 0; i < syl_.size(); ++i) {
      if (syl_[i].z == 0) throw std::invalid_argument("Word: zero z-exponent");
      if (i > 0 && syl_[i].trivial_translation())
        throw std::invalid_argument("Word: interior translation syllable is trivial");
    }
    if (syl_.size() > 1 && syl_.front().trivial_translation() && (syl_.front().z > 0) != (syl_.back().z > 0))
      throw std::invalid_argument("Word: z-syllables cancel across the wraparound");
  }

  const std::vector<Syllable>& syllables() const { return syl_; }

  /// Number of occurrences of z^{+-1}.
  int d() const {
    int total = 0;
    for (const auto& s : syl_) total += std::abs(s.z);
    return total;
  }

  int exponent_sum() const {
    int total = 0;
    for (const auto& s : syl_) total += std::abs(s.m) + std::abs(s.n) + std::abs(s.z);
    return total;
  }

  std::vector<int> key() const {
    std::vector<int> k;
    k.reserve(3 * syl_.size());
    for (const auto& s : syl_) {
      k.push_back(s.m);
      k.push_back(s.n);
      k.push_back(s.z);
    }
    return k;
  }

  /// Inverse, when it is again of the r_1 z ... r_j z form (r_1 trivial).
  std::optional<Word> inverse() const {
    if (!syl_.front().trivial_translation()) return std::nullopt;
    std::vector<Syllable> inv;
    inv.reserve(syl_.size());
    inv.push_back({0, 0, -syl_.back().z});
    for (std::size_t i = syl_.size() - 1; i >= 1; --i)
      inv.push_back({-syl_[i].m, -syl_[i].n, -syl_[i - 1].z});
    return Word(std::move(inv));
  }

  std::string to_string() const {
    std::string out;
    auto emit = [&out](char letter, int e) {
      if (e == 0) return;
      if (!out.empty()) out += ' ';
      out += letter;
      if (e != 1) out += '^' + std::to_string(e);
    };
    for (const auto& s : syl_) {
      emit('x', s.m);
      emit('y', s.n);
      emit('z', s.z);
    }
    return out;
  }

  /// Parses the space-separated text form, e.g. "x^2 y^-1 z x z^-1".
  static Word parse(std::string_view text) {
    std::vector<Syllable> syl;
    Syllable pending;
    bool last_was_z = false;
    std::istringstream in{std::string(text)};
    std::string tok;
    while (in >> tok) {
      const char letter = tok[0];
      int e = 1;
      if (tok.size() > 1) {
        if (tok[1] != '^' || tok.size() < 3) throw std::invalid_argument("Word: bad token '" + tok + "'");
        std::size_t used = 0;
        try {
          e = std::stoi(tok.substr(2), &used);
        } catch (const std::exception&) {
          throw std::invalid_argument("Word: bad exponent in '" + tok + "'");
        }
        if (used != tok.size() - 2) throw std::invalid_argument("Word: bad exponent in '" + tok + "'");
      }
      switch (letter) {
        case 'x': pending.m += e; last_was_z = false; break;
        case 'y': pending.n += e; last_was_z = false; break;
        case 'z':
          if (last_was_z) {
            syl.back().z += e;
            if (syl.back().z == 0) throw std::invalid_argument("Word: z-syllables cancel");
          } else {
            pending.z = e;
            syl.push_back(pending);
            pending = {};
          }
          last_was_z = true;
          break;
        default: throw std::invalid_argument("Word: unknown letter in '" + tok + "'");
      }
      if (e == 0) throw std::invalid_argument("Word: zero exponent in '" + tok + "'");
    }
    if (syl.empty()) throw std::invalid_argument("Word: no z-syllable");
    if (!pending.trivial_translation()) throw std::invalid_argument("Word: must end in a z-syllable");
    return Word(std::move(syl));
  }

  friend bool operator==(const Word&, const Word&) = default;

 private:
  std::vector<Syllable> syl_;
};

namespace detail {

inline void collect_class(int max_exp, int pos, int dz, int tw, std::vector<Syllable>& cur,
                          std::vector<Word>& out) {
  if (dz == 0) {
    if (tw != 0) return;
    const bool first_trivial = cur.front().trivial_translation();
    if (first_trivial && cur.size() > 1 && (cur.front().z > 0) != (cur.back().z > 0)) return;
    // One representative per {w, w^-1}: keep the one whose first z-exponent is positive.
    if (first_trivial && cur.front().z < 0) return;
    out.emplace_back(cur);
    return;
  }
  if (tw > 2 * max_exp * dz) return;
  const int emax = std::min(max_exp, dz);
  for (int m = -max_exp; m <= max_exp; ++m) {
    for (int n = -max_exp; n <= max_exp; ++n) {
      const int w = std::abs(m) + std::abs(n);
      if (w > tw || (w == 0 && pos > 0)) continue;
      for (int e = -emax; e <= emax; ++e) {
        if (e == 0) continue;
        cur.push_back({m, n, e});
        collect_class(max_exp, pos + 1, dz - std::abs(e), tw - w, cur, out);
        cur.pop_back();
      }
    }
  }
}

}  // namespace detail

/// Streams every cyclically reduced word with d(w) <= max_d and all
/// exponents bounded by max_exp, one per inverse pair, ordered by d, then
/// total exponent sum, then lexicographically on (m_1, n_1, e_1, ...).
/// Stops early when the sink returns false.
inline void enumerate_words(int max_d, int max_exp, const std::function<bool(const Word&)>& sink) {
  if (max_d < 1 || max_exp < 1) throw std::invalid_argument("enumerate_words: bounds must be >= 1");
  std::vector<Syllable> cur;
  std::vector<Word> cls;
  for (int d = 1; d <= max_d; ++d) {
    for (int tw = 0; tw <= 2 * max_exp * d; ++tw) {
      cls.clear();
      detail::collect_class(max_exp, 0, d, tw, cur, cls);
      std::sort(cls.begin(), cls.end(), [](const Word& l, const Word& r) { return l.key() < r.key(); });
      for (const auto& w : cls)
        if (!sink(w)) return;
    }
  }
}

/// The first `limit` words of the canonical stream.
inline std::vector<Word> enumerate_words(int max_d, int max_exp, std::size_t limit) {
  std::vector<Word> out;
  if (limit == 0) return out;
  enumerate_words(max_d, max_exp, [&](const Word& w) {
    out.push_back(w);
    return out.size() < limit;
  });
  return out;
}

/// Left-to-right interval product W = w(alpha, beta, gamma).
inline IntervalMatrix evaluate_word(const Word& w, const GeneratorTriple& g) {
  const ComplexInterval& a = g.alpha.m12;
  const ComplexInterval& b = g.beta.m12;
  const IntervalMatrix gamma_inv = inverse_sl2(g.gamma);
  IntervalMatrix M;
  bool first = true;
  for (const auto& s : w.syllables()) {
    if (!s.trivial_translation()) {
      const ComplexInterval t = ComplexInterval(static_cast<double>(s.m)) * a +
                                ComplexInterval(static_cast<double>(s.n)) * b;
      const IntervalMatrix T{ComplexInterval(1.0), t, ComplexInterval(0.0), ComplexInterval(1.0)};
      M = first ? T : M * T;
      first = false;
    }
    const IntervalMatrix& step = s.z > 0 ? g.gamma : gamma_inv;
    for (int k = 0; k < std::abs(s.z); ++k) {
      M = first ? step : M * step;
      first = false;
    }
  }
  return M;
}

/// Double-precision evaluation at a point.
inline Mat2 evaluate_word(const Word& w, const Params& p) {
  const Mat2 gamma{p.c, -1.0, 1.0, 0.0};
  const Mat2 gamma_inv = gamma.inverse();
  Mat2 M;
  for (const auto& s : w.syllables()) {
    if (!s.trivial_translation()) M = M * translation(static_cast<double>(s.m) * p.a + static_cast<double>(s.n) * p.b);
    for (int k = 0; k < std::abs(s.z); ++k) M = M * (s.z > 0 ? gamma : gamma_inv);
  }
  return M;
}

/// Certified bounds on |p(a,b,c)| over the box.
inline RealInterval lower_left_abs(const Word& w, const ParamBox& box) {
  return abs_bounds(evaluate_word(w, gens_from_params(box)).m21);
}

enum class KillerVerdict { Eliminates, CandidateRelator, Inconclusive };

inline const char* to_string(KillerVerdict v) {
  switch (v) {
    case KillerVerdict::Eliminates: return "eliminates";
    case KillerVerdict::CandidateRelator: return "candidate_relator";
    case KillerVerdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

/// Classifies from certified bounds [L, U] on |p|.
inline KillerVerdict classify_lower_left(const RealInterval& abs_p) {
  if (abs_p.hi() >= 1.0) return KillerVerdict::Inconclusive;
  return abs_p.lo() > 0.0 ? KillerVerdict::Eliminates : KillerVerdict::CandidateRelator;
}

inline KillerVerdict killer_test(const Word& w, const ParamBox& box) {
  return classify_lower_left(lower_left_abs(w, box));
}

/// d(w) - 2; the covolume bound is this multiple of pi.
inline int volume_bound_pi_multiple(const Word& w) { return w.d() - 2; }

/// pi (d(w) - 2). Non-positive means no finite-covolume non-free group
/// satisfies the relation.
inline double volume_bound(const Word& w) {
  return std::numbers::pi * static_cast<double>(volume_bound_pi_multiple(w));
}

}  // namespace bicusp
