#include "quantsel/rational.hpp"

#include <cmath>
#include <stdexcept>

#include "quantsel/error.hpp"

namespace quantsel {

Rat parse_rat(const std::string& s) {
  if (s.empty()) fail(ErrorCode::InvalidInput, "empty rational literal");
  auto slash = s.find('/');
  try {
    if (slash != std::string::npos) {
      Int num(s.substr(0, slash));
      Int den(s.substr(slash + 1));
      if (den == 0) fail(ErrorCode::InvalidInput, "zero denominator in " + s);
      Rat r(num, den);
      r.canonicalize();
      return r;
    }
    auto dot = s.find('.');
    if (dot == std::string::npos) {
      Rat r{Int(s)};
      return r;
    }
    // decimal literal: digits.digits
    std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    size_t frac_len = s.size() - dot - 1;
    Int num(digits);
    Int den(1);
    for (size_t i = 0; i < frac_len; ++i) den *= 10;
    Rat r(num, den);
    r.canonicalize();
    return r;
  } catch (const std::invalid_argument&) {
    fail(ErrorCode::InvalidInput, "bad rational literal: " + s);
  }
}

std::string rat_to_string(const Rat& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

double rat_to_double(const Rat& r) { return r.get_d(); }

Rat rationalize(double x, unsigned long den_cap) {
  if (!std::isfinite(x)) fail(ErrorCode::InvalidInput, "non-finite value");
  bool neg = x < 0;
  double v = neg ? -x : x;
  // continued-fraction convergents h/k, stop before k exceeds den_cap
  Int h0 = 0, h1 = 1, k0 = 1, k1 = 0;
  double frac = v;
  for (int iter = 0; iter < 64; ++iter) {
    double a_f = std::floor(frac);
    if (a_f > 1e18) break;
    Int a(static_cast<unsigned long>(a_f));
    Int h2 = a * h1 + h0;
    Int k2 = a * k1 + k0;
    if (k2 > Int(den_cap)) break;
    h0 = h1; h1 = h2;
    k0 = k1; k1 = k2;
    double rem = frac - a_f;
    if (rem < 1e-15) break;
    frac = 1.0 / rem;
  }
  if (k1 == 0) return Rat(0);
  Rat r(h1, k1);
  r.canonicalize();
  return neg ? Rat(-r) : r;
}

Int rat_floor(const Rat& r) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), r.get_num().get_mpz_t(), r.get_den().get_mpz_t());
  return q;
}

Int rat_ceil(const Rat& r) {
  Int q;
  mpz_cdiv_q(q.get_mpz_t(), r.get_num().get_mpz_t(), r.get_den().get_mpz_t());
  return q;
}

Rat sqrt_lower(const Rat& x, unsigned precision_bits) {
  if (sgn(x) < 0) fail(ErrorCode::InvalidInput, "sqrt of negative");
  if (sgn(x) == 0) return Rat(0);
  // scale so that floor-sqrt of an integer gives the precision
  Int scale(1);
  mpz_mul_2exp(scale.get_mpz_t(), scale.get_mpz_t(), 2 * precision_bits);
  Int scaled_num = x.get_num() * scale;
  Int q = scaled_num / x.get_den();
  Int root;
  mpz_sqrt(root.get_mpz_t(), q.get_mpz_t());  // floor sqrt
  Int den(1);
  mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), precision_bits);
  Rat r(root, den);
  r.canonicalize();
  return r;
}

Rat sqrt_upper(const Rat& x, unsigned precision_bits) {
  if (sgn(x) < 0) fail(ErrorCode::InvalidInput, "sqrt of negative");
  if (sgn(x) == 0) return Rat(0);
  Int scale(1);
  mpz_mul_2exp(scale.get_mpz_t(), scale.get_mpz_t(), 2 * precision_bits);
  Int scaled_num = x.get_num() * scale;
  Int q = scaled_num / x.get_den() + 1;
  Int root;
  mpz_sqrt(root.get_mpz_t(), q.get_mpz_t());
  root += 1;
  Int den(1);
  mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), precision_bits);
  Rat r(root, den);
  r.canonicalize();
  return r;
}

const Rat& pi_lower() {
  static const Rat v = [] {
    Rat r(Int("31415926535897932384"), Int("10000000000000000000"));
    r.canonicalize();
    return r;
  }();
  return v;
}

const Rat& pi_upper() {
  static const Rat v = [] {
    Rat r(Int("31415926535897932385"), Int("10000000000000000000"));
    r.canonicalize();
    return r;
  }();
  return v;
}

Rat binomial(unsigned n, unsigned k) {
  if (k > n) return Rat(0);
  Int b;
  mpz_bin_uiui(b.get_mpz_t(), n, k);
  return Rat(b);
}

bool pow_leq(const Rat& a, const Rat& b, unsigned long p, unsigned long q) {
  if (sgn(a) <= 0) return true;
  if (sgn(b) <= 0) return false;
  Rat lhs = pow_rat(a, static_cast<long>(q));
  Rat rhs = pow_rat(b, static_cast<long>(p));
  return lhs <= rhs;
}

Rat pow_rat(const Rat& base, long e) {
  if (e == 0) return Rat(1);
  bool inv = e < 0;
  unsigned long k = static_cast<unsigned long>(inv ? -e : e);
  Int num, den;
  mpz_pow_ui(num.get_mpz_t(), base.get_num().get_mpz_t(), k);
  mpz_pow_ui(den.get_mpz_t(), base.get_den().get_mpz_t(), k);
  if (inv) {
    if (num == 0) fail(ErrorCode::InvalidInput, "zero to negative power");
    std::swap(num, den);
  }
  Rat r(num, den);
  r.canonicalize();
  return r;
}

}  // namespace quantsel
