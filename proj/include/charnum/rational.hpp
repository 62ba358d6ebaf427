#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace charnum {

using Rational = mpq_class;
using Integer = mpz_class;

// "p/q", or "p" when the denominator is one.
std::string to_string(const Rational& q);

// Accepts "p", "p/q", "-p/q"; the result is canonical. Throws std::invalid_argument.
Rational parse_rational(std::string_view text);

Integer factorial(unsigned n);
Integer binomial(unsigned n, unsigned k);

// Product over slots of C(n_i, k_i).
Integer multi_binomial(const std::vector<int>& n, const std::vector<int>& k);

// n/d in lowest terms; mpq_class(n, d) alone does not reduce.
inline Rational frac(long n, long d) {
  Rational q(n, d);
  q.canonicalize();
  return q;
}

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

}  // namespace charnum
