#pragma once

// Exact rationals backed by GMP. mpq_class keeps every value in lowest
// terms with a positive denominator, so equality is structural.

#include <gmpxx.h>

#include <cctype>
#include <optional>
#include <string>
#include <string_view>

namespace daeforms {

using Rational = mpq_class;
using Integer = mpz_class;

/// Parses "p", "-p", "+p" or "p/q" (q > 0, decimal digits only).
/// Returns std::nullopt on anything else, including a zero denominator.
inline std::optional<Rational> parse_rational(std::string_view text) {
  auto is_int = [](std::string_view s, bool allow_sign) {
    if (s.empty()) return false;
    std::size_t i = 0;
    if (allow_sign && (s[0] == '-' || s[0] == '+')) i = 1;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i) {
      if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    }
    return true;
  };

  const auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den =
      slash == std::string_view::npos ? std::string_view{"1"} : text.substr(slash + 1);
  if (!is_int(num, true) || !is_int(den, false)) return std::nullopt;
  if (num[0] == '+') num.remove_prefix(1);

  Integer n(std::string(num), 10);
  Integer d(std::string(den), 10);
  if (d == 0) return std::nullopt;
  Rational r(n, d);
  r.canonicalize();
  return r;
}

inline std::string to_string(const Rational& r) { return r.get_str(10); }

inline bool is_canonical(const Rational& r) {
  Integer g;
  mpz_gcd(g.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return r.get_den() > 0 && g == 1;
}

}  // namespace daeforms
