#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

namespace quantsel {

using Rat = mpq_class;
using Int = mpz_class;

/// Parses "p/q", "p", or a plain decimal like "-1.25" into an exact rational.
Rat parse_rat(const std::string& s);

/// Canonical "p/q" form ("p" when q == 1).
std::string rat_to_string(const Rat& r);

double rat_to_double(const Rat& r);

inline int sgn(const Rat& r) { return mpq_sgn(r.get_mpq_t()); }

/// Best rational approximation of x with denominator <= den_cap
/// (continued-fraction convergents).
Rat rationalize(double x, unsigned long den_cap = 1000000UL);

Int rat_floor(const Rat& r);
Int rat_ceil(const Rat& r);

/// Canonicalized fraction (mpq_class's two-argument constructor does not
/// reduce, and non-canonical values break comparisons).
inline Rat frac(long num, long den) {
  Rat r(num, den);
  r.canonicalize();
  return r;
}

/// Largest rational r with r*r <= x and denominator ~ 2^precision_bits.
Rat sqrt_lower(const Rat& x, unsigned precision_bits = 64);
/// Smallest convenient rational r with r*r >= x.
Rat sqrt_upper(const Rat& x, unsigned precision_bits = 64);

/// Rational bounds on pi, good to ~1e-17.
const Rat& pi_lower();
const Rat& pi_upper();

Rat binomial(unsigned n, unsigned k);

/// a^q <= b^p for positive rationals, i.e. a <= b^{p/q} without roots.
bool pow_leq(const Rat& a, const Rat& b, unsigned long p, unsigned long q);

Rat pow_rat(const Rat& base, long e);

}  // namespace quantsel
