#pragma once

#include <string>
#include <vector>

#include "qlab/bigfloat.hpp"
#include "qlab/rational.hpp"

namespace qlab {

long euler_phi(long m);

// Element of the cyclotomic field Q(zeta_m), stored in the power basis
// {1, z, ..., z^{phi(m)-1}} reduced modulo the m-th cyclotomic polynomial.
// Reduction mod Phi_m (rather than x^m - 1) makes the representation
// canonical: two elements are equal iff their coefficient vectors are.
//
// Arithmetic requires equal orders. The one exception is order 1: a plain
// rational embeds canonically in every Q(zeta_m), so rational operands are
// broadcast. Anything else needs an explicit lifted() call to a stated
// common order; mixing, say, order 4 with order 6 throws.
class Cyclo {
public:
  Cyclo() : order_(1), c_(1, Rat(0)) {}
  Cyclo(long value) : order_(1), c_(1, rat(value)) {}
  Cyclo(const Rat& value) : order_(1), c_(1, value) {}

  // zeta_order^power, power taken mod order.
  static Cyclo root(long order, long power);

  long order() const { return order_; }
  const std::vector<Rat>& coeffs() const { return c_; }

  bool is_zero() const;
  bool is_rational() const;
  Rat rational_value() const; // requires is_rational()

  // Embedding into Q(zeta_target) for order | target: z_m -> z_target^{target/m}.
  Cyclo lifted(long target_order) const;

  Cyclo operator-() const;
  friend Cyclo operator+(const Cyclo& a, const Cyclo& b);
  friend Cyclo operator-(const Cyclo& a, const Cyclo& b);
  friend Cyclo operator*(const Cyclo& a, const Cyclo& b);
  Cyclo& operator+=(const Cyclo& o) { *this = *this + o; return *this; }
  Cyclo& operator-=(const Cyclo& o) { *this = *this - o; return *this; }
  Cyclo& operator*=(const Cyclo& o) { *this = *this * o; return *this; }

  // Exact inverse via the extended Euclidean algorithm against Phi_m.
  Cyclo inverse() const;
  Cyclo pow(long e) const;

  // Equality across orders lifts both sides to the lcm; Q(z_a) and Q(z_b)
  // only share elements visible there.
  friend bool operator==(const Cyclo& a, const Cyclo& b);
  friend bool operator!=(const Cyclo& a, const Cyclo& b) { return !(a == b); }

  // Numeric image sum_j c_j e^{2 pi i j / m}. Works at digits + 15 internally
  // and reports at digits; absolute error < 10^{-(digits-5)} for moderate
  // coefficient sizes.
  BigComplex embed(int digits) const;

  std::string str() const;             // human-readable
  std::string encode() const;          // exact round-trip form
  static Cyclo decode(const std::string& text);

  // Monic coefficients of Phi_m, ascending degree, length phi(m)+1.
  static std::vector<Rat> cyclotomic_polynomial(long m);

private:
  Cyclo(long order, std::vector<Rat> coeffs)
      : order_(order), c_(std::move(coeffs)) {}

  static Cyclo from_poly(long order, std::vector<Rat> poly);

  long order_;
  std::vector<Rat> c_;
};

inline Cyclo operator*(const Rat& s, const Cyclo& x) { return Cyclo(s) * x; }

} // namespace qlab
