#ifndef CDGA_RATIONAL_HPP
#define CDGA_RATIONAL_HPP

#include <boost/multiprecision/gmp.hpp>

#include <string>
#include <string_view>

namespace cdga {

using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;
using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;

inline bool is_zero(const Rational& q) { return q.is_zero(); }

/// Parses "p", "-p" or "p/q" with decimal digits only. Returns false on bad input
/// or a zero denominator.
inline bool parse_rational(std::string_view text, Rational& out) {
  if (text.empty()) return false;
  auto slash = text.find('/');
  auto valid_int = [](std::string_view s, bool allow_sign) {
    if (s.empty()) return false;
    std::size_t i = 0;
    if (allow_sign && (s[0] == '-' || s[0] == '+')) i = 1;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
      if (s[i] < '0' || s[i] > '9') return false;
    return true;
  };
  std::string_view num = text.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view{} : text.substr(slash + 1);
  if (!valid_int(num, true)) return false;
  if (slash != std::string_view::npos && !valid_int(den, false)) return false;
  std::string n(num);
  if (!n.empty() && n[0] == '+') n.erase(0, 1);
  Integer p(n);
  Integer q(1);
  if (slash != std::string_view::npos) q = Integer(std::string(den));
  if (q.is_zero()) return false;
  out = Rational(p, q);
  return true;
}

inline std::string to_string(const Rational& q) { return q.str(); }

}  // namespace cdga

#endif  // CDGA_RATIONAL_HPP
