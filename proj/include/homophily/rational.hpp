#pragma once

#include <cstdint>
#include <string>

#include <gmpxx.h>

namespace homophily {

using BigInt = mpz_class;
using Rational = mpq_class;

inline BigInt big(std::uint64_t v) {
  static_assert(sizeof(unsigned long) == sizeof(std::uint64_t));
  return BigInt(static_cast<unsigned long>(v));
}

inline Rational ratio(const BigInt& num, const BigInt& den) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

// Truncates toward zero (mpq_get_d), so within one ulp of the exact value.
// Integers and dyadic rationals convert exactly.
inline double to_double(const Rational& q) { return q.get_d(); }

inline std::string to_string(const Rational& q) { return q.get_str(); }

inline int sign(const Rational& q) { return sgn(q); }

}  // namespace homophily
