#pragma once

#include <gmpxx.h>

#include <map>
#include <string>
#include <string_view>

namespace asmas {

using Rational = mpq_class;

/// Parses "n", "n/d" or (when allow_decimal) "0.25". Always canonicalized.
Rational parse_rational(std::string_view text, bool allow_decimal = false);

std::string to_string(const Rational& q);

/// Finite distribution with deterministic (key-ordered) iteration.
template <class K>
using Dist = std::map<K, Rational>;

template <class K>
Rational total(const Dist<K>& d) {
  Rational s = 0;
  for (const auto& [k, v] : d) s += v;
  return s;
}

}  // namespace asmas
