#include "asmas/rational.hpp"

#include <cctype>

#include "asmas/error.hpp"

namespace asmas {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text, bool allow_decimal) {
  std::string_view s = text;
  bool neg = false;
  if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
    neg = s[0] == '-';
    s.remove_prefix(1);
  }
  Rational q;
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    auto num = s.substr(0, slash), den = s.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den))
      throw ParseError("malformed rational '" + std::string(text) + "'");
    mpz_class n(std::string(num), 10), d(std::string(den), 10);
    if (d == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
    q = Rational(n, d);
  } else if (auto dot = s.find('.'); dot != std::string_view::npos) {
    if (!allow_decimal)
      throw ParseError("decimal literal '" + std::string(text) + "' not allowed; use n/d");
    auto ip = s.substr(0, dot), fp = s.substr(dot + 1);
    if ((!ip.empty() && !all_digits(ip)) || !all_digits(fp))
      throw ParseError("malformed decimal '" + std::string(text) + "'");
    mpz_class den = 1;
    for (size_t i = 0; i < fp.size(); ++i) den *= 10;
    mpz_class n(std::string(ip.empty() ? "0" : ip) + std::string(fp), 10);
    q = Rational(n, den);
  } else {
    if (!all_digits(s)) throw ParseError("malformed number '" + std::string(text) + "'");
    q = Rational(mpz_class(std::string(s), 10));
  }
  q.canonicalize();
  return neg ? Rational(-q) : q;
}

std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_str();
}

}  // namespace asmas
