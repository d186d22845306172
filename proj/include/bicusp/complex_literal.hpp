#pragma once

#include <charconv>
#include <complex>
#include <regex>
#include <stdexcept>
#include <string>
#include <string_view>

namespace bicusp {

namespace detail {

inline double to_double(std::string_view s) {
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
    throw std::invalid_argument("bad number '" + std::string(s) + "'");
  return v;
}

}  // namespace detail

/// Parses "re", "re+imi", "re-imi" or "imi" (e.g. "1+1.7320508075688772i",
/// "-2", "1i"). Locale independent.
inline std::complex<double> parse_complex(std::string_view text) {
  static const std::regex full(R"(^(-?\d+(?:\.\d+)?)(?:([+-])(\d+(?:\.\d+)?)i)?$)");
  static const std::regex imag_only(R"(^(-?\d+(?:\.\d+)?)i$)");
  const std::string s(text);
  std::smatch m;
  if (std::regex_match(s, m, full)) {
    const double re = detail::to_double(m.str(1));
    if (!m[2].matched) return {re, 0.0};
    const double im = detail::to_double(m.str(3));
    return {re, m.str(2) == "-" ? -im : im};
  }
  if (std::regex_match(s, m, imag_only)) return {0.0, detail::to_double(m.str(1))};
  throw std::invalid_argument("bad complex literal '" + s + "' (expected e.g. 1+1.5i, -2, 3i)");
}

}  // namespace bicusp
