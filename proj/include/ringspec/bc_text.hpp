#ifndef RINGSPEC_BC_TEXT_HPP
#define RINGSPEC_BC_TEXT_HPP

// Text form of boundary conditions:
//   robin:alpha=<f>   pp:alpha=<f>   qp:alpha=<f>   chiral:alpha=<f>
//   dpp:alpha=<f>     parity:eta=<f>,theta=<f>
//   u2:eta=<f>,m0=<f>,m1=<f>,m2=<f>,m3=<f>
//   mat:<8 reals>     (row-major re/im pairs, comma or space separated)

#include <charconv>
#include <cstdio>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "ringspec/bc.hpp"

namespace ringspec {

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

inline double parse_real(std::string_view s) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(v))
    throw BcParseError("malformed number '" + std::string(s) + "'");
  return v;
}

inline std::vector<std::string_view> split(std::string_view s, std::string_view seps) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || seps.find(s[i]) != std::string_view::npos) {
      if (i > start) out.push_back(s.substr(start, i - start));
      start = i + 1;
    }
  }
  return out;
}

inline std::map<std::string, double, std::less<>> parse_keyvals(std::string_view body) {
  std::map<std::string, double, std::less<>> kv;
  for (auto item : split(body, ",")) {
    const auto eq = item.find('=');
    if (eq == std::string_view::npos)
      throw BcParseError("expected key=value, got '" + std::string(item) + "'");
    const auto key = std::string(trim(item.substr(0, eq)));
    if (!kv.emplace(key, parse_real(item.substr(eq + 1))).second)
      throw BcParseError("duplicate key '" + key + "'");
  }
  return kv;
}

inline double take(std::map<std::string, double, std::less<>>& kv, std::string_view key) {
  const auto it = kv.find(key);
  if (it == kv.end()) throw BcParseError("missing key '" + std::string(key) + "'");
  const double v = it->second;
  kv.erase(it);
  return v;
}

inline void expect_consumed(const std::map<std::string, double, std::less<>>& kv) {
  if (!kv.empty()) throw BcParseError("unexpected key '" + kv.begin()->first + "'");
}

}  // namespace detail

/// Parses the text form. Throws BcParseError on malformed text and
/// BcValidationError (or NonUnitaryError) when the data is well-formed but
/// not a valid U(2) element.
inline UnitaryBC parse_bc(std::string_view text) {
  using namespace detail;
  const auto colon = text.find(':');
  if (colon == std::string_view::npos)
    throw BcParseError("boundary condition must look like <family>:<params>");
  const auto name = trim(text.substr(0, colon));
  const auto body = text.substr(colon + 1);

  if (name == "mat") {
    const auto parts = split(body, ", \t");
    if (parts.size() != 8) throw BcParseError("mat: expects 8 reals (re/im pairs, row-major)");
    Mat2 m;
    for (int i = 0; i < 4; ++i) m.e[i] = cplx(parse_real(parts[2 * i]), parse_real(parts[2 * i + 1]));
    return UnitaryBC::from_matrix(m);
  }

  auto kv = parse_keyvals(body);
  if (name == "u2") {
    const double eta = take(kv, "eta"), m0 = take(kv, "m0");
    const std::array<double, 3> m{take(kv, "m1"), take(kv, "m2"), take(kv, "m3")};
    expect_consumed(kv);
    return UnitaryBC::from_chart(eta, m0, m, 1e-9);
  }
  if (name == "parity") {
    const double eta = take(kv, "eta"), theta = take(kv, "theta");
    expect_consumed(kv);
    return named_family(Family::parity, eta, theta);
  }
  const Family f = family_from_name(name);
  const double alpha = take(kv, "alpha");
  expect_consumed(kv);
  return named_family(f, alpha);
}

/// Canonical u2: form with 17 significant digits; parse_bc(format_bc(u))
/// reproduces u.
inline std::string format_bc(const UnitaryBC& u) {
  char buf[256];
  std::snprintf(buf, sizeof buf, "u2:eta=%.17g,m0=%.17g,m1=%.17g,m2=%.17g,m3=%.17g", u.eta(),
                u.m0(), u.m()[0], u.m()[1], u.m()[2]);
  return buf;
}

}  // namespace ringspec

#endif  // RINGSPEC_BC_TEXT_HPP
