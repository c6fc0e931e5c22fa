#pragma once

#include <gmpxx.h>

#include <numeric>
#include <stdexcept>
#include <string>

namespace qlab {

// Exact rational coefficients. gmp arithmetic preserves canonical form as
// long as every value starts canonical, so raw num/den construction goes
// through rat().
using Rat = mpq_class;
using Int = mpz_class;

inline Rat rat(long num, long den = 1) {
  if (den == 0) throw std::invalid_argument("rat: zero denominator");
  Rat r(num, den);
  r.canonicalize();
  return r;
}

inline Rat rat(const Int& num, const Int& den) {
  if (den == 0) throw std::invalid_argument("rat: zero denominator");
  Rat r(num, den);
  r.canonicalize();
  return r;
}

inline Rat rat_parse(const std::string& text) {
  Rat r;
  if (r.set_str(text, 10) != 0)
    throw std::invalid_argument("rat_parse: bad rational '" + text + "'");
  r.canonicalize();
  return r;
}

inline std::string to_string(const Rat& r) { return r.get_str(); }

inline Int int_pow(const Int& base, unsigned long exp) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
  return r;
}

// Inverse of a modulo m, for gcd(a, m) = 1; result in [0, m).
inline long mod_inverse(long a, long m) {
  if (m <= 0) throw std::invalid_argument("mod_inverse: modulus must be positive");
  a %= m;
  if (a < 0) a += m;
  long r0 = m, r1 = a, s0 = 0, s1 = 1;
  while (r1 != 0) {
    long q = r0 / r1;
    long r2 = r0 - q * r1;
    long s2 = s0 - q * s1;
    r0 = r1; r1 = r2;
    s0 = s1; s1 = s2;
  }
  if (r0 != 1) throw std::invalid_argument("mod_inverse: arguments not coprime");
  s0 %= m;
  if (s0 < 0) s0 += m;
  return s0;
}

inline long mod_reduce(long x, long m) {
  x %= m;
  if (x < 0) x += m;
  return x;
}

} // namespace qlab
