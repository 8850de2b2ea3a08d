#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace mhlab {

/// Arbitrary-precision rational, always canonical (lowest terms, positive denominator).
using Rat = mpq_class;
using BigInt = mpz_class;

inline Rat rat(long num, long den = 1) {
  Rat r(num, den);
  r.canonicalize();
  return r;
}

inline Rat rat(const BigInt& num, const BigInt& den) {
  Rat r(num, den);
  r.canonicalize();
  return r;
}

/// Serialized form used in every report: "p/q", denominator always written.
std::string to_fraction(const Rat& r);

/// Human form: "p" for integers, "p/q" otherwise.
std::string to_display(const Rat& r);

/// Accepts "p", "-p", "p/q". Throws std::invalid_argument on malformed text or q = 0.
Rat parse_rat(std::string_view text);

inline double to_double(const Rat& r) { return r.get_d(); }

Rat pow(const Rat& base, unsigned exponent);

/// 2^e for any integer e.
Rat pow2(long e);

inline int sign(const Rat& r) { return sgn(r); }

Rat abs(const Rat& r);
Rat min(const Rat& a, const Rat& b);
Rat max(const Rat& a, const Rat& b);

}  // namespace mhlab
