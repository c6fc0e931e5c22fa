#pragma once

#include <mpfr.h>

#include <string>
#include <utility>

#include "qlab/rational.hpp"

namespace qlab {

// Arbitrary-precision real backed by mpfr. Every value carries its own
// precision; binary operations compute at the larger of the two operand
// precisions, so precision is decided where values are created and never
// drifts implicitly.
class BigFloat {
public:
  BigFloat() { mpfr_init2(v_, 64); mpfr_set_zero(v_, 1); }

  explicit BigFloat(int digits) {
    mpfr_init2(v_, bits_for(digits));
    mpfr_set_zero(v_, 1);
  }

  BigFloat(const BigFloat& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }

  BigFloat(BigFloat&& o) noexcept {
    mpfr_init2(v_, 64);
    mpfr_swap(v_, o.v_);
  }

  BigFloat& operator=(const BigFloat& o) {
    if (this != &o) {
      mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }

  BigFloat& operator=(BigFloat&& o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
  }

  ~BigFloat() { mpfr_clear(v_); }

  static BigFloat of(long value, int digits) {
    BigFloat r(digits);
    mpfr_set_si(r.v_, value, MPFR_RNDN);
    return r;
  }

  static BigFloat of(double value, int digits) {
    BigFloat r(digits);
    mpfr_set_d(r.v_, value, MPFR_RNDN);
    return r;
  }

  static BigFloat of(const Rat& value, int digits) {
    BigFloat r(digits);
    mpfr_set_q(r.v_, value.get_mpq_t(), MPFR_RNDN);
    return r;
  }

  static BigFloat parse(const std::string& text, int digits) {
    BigFloat r(digits);
    if (mpfr_set_str(r.v_, text.c_str(), 10, MPFR_RNDN) != 0)
      throw std::invalid_argument("BigFloat::parse: bad number '" + text + "'");
    return r;
  }

  // 1 - 2^{-t}, exact (dyadic).
  static BigFloat one_minus_pow2(int t, int digits) {
    BigFloat r(digits);
    mpfr_set_ui_2exp(r.v_, 1, -t, MPFR_RNDN);
    mpfr_ui_sub(r.v_, 1, r.v_, MPFR_RNDN);
    return r;
  }

  static BigFloat pi(int digits) {
    BigFloat r(digits);
    mpfr_const_pi(r.v_, MPFR_RNDN);
    return r;
  }

  static BigFloat pow10(long exp, int digits = 20) {
    BigFloat r(digits);
    mpfr_set_si(r.v_, 10, MPFR_RNDN);
    mpfr_pow_si(r.v_, r.v_, exp, MPFR_RNDN);
    return r;
  }

  friend BigFloat operator+(const BigFloat& a, const BigFloat& b) {
    BigFloat r(join(a, b));
    mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend BigFloat operator-(const BigFloat& a, const BigFloat& b) {
    BigFloat r(join(a, b));
    mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend BigFloat operator*(const BigFloat& a, const BigFloat& b) {
    BigFloat r(join(a, b));
    mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend BigFloat operator/(const BigFloat& a, const BigFloat& b) {
    BigFloat r(join(a, b));
    mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }

  BigFloat& operator+=(const BigFloat& o) { mpfr_add(v_, v_, o.v_, MPFR_RNDN); return *this; }
  BigFloat& operator-=(const BigFloat& o) { mpfr_sub(v_, v_, o.v_, MPFR_RNDN); return *this; }
  BigFloat& operator*=(const BigFloat& o) { mpfr_mul(v_, v_, o.v_, MPFR_RNDN); return *this; }
  BigFloat& operator/=(const BigFloat& o) { mpfr_div(v_, v_, o.v_, MPFR_RNDN); return *this; }

  BigFloat operator-() const {
    BigFloat r(*this);
    mpfr_neg(r.v_, r.v_, MPFR_RNDN);
    return r;
  }

  BigFloat abs() const {
    BigFloat r(*this);
    mpfr_abs(r.v_, r.v_, MPFR_RNDN);
    return r;
  }

  BigFloat sqrt() const {
    BigFloat r(*this);
    mpfr_sqrt(r.v_, r.v_, MPFR_RNDN);
    return r;
  }

  void mul_si(long s) { mpfr_mul_si(v_, v_, s, MPFR_RNDN); }
  void div_si(long s) { mpfr_div_si(v_, v_, s, MPFR_RNDN); }

  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }
  int cmp(const BigFloat& o) const { return mpfr_cmp(v_, o.v_); }

  friend bool operator<(const BigFloat& a, const BigFloat& b) { return a.cmp(b) < 0; }
  friend bool operator<=(const BigFloat& a, const BigFloat& b) { return a.cmp(b) <= 0; }
  friend bool operator>(const BigFloat& a, const BigFloat& b) { return a.cmp(b) > 0; }
  friend bool operator>=(const BigFloat& a, const BigFloat& b) { return a.cmp(b) >= 0; }
  friend bool operator==(const BigFloat& a, const BigFloat& b) { return a.cmp(b) == 0; }
  friend bool operator!=(const BigFloat& a, const BigFloat& b) { return a.cmp(b) != 0; }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

  // log10 of |x| computed from the binary exponent; accurate to ~1e-15,
  // which is all the precision guards need.
  double log10_abs() const;

  // Decimal string with the given number of significant digits; digits = 0
  // emits enough digits for an exact read-back at the same precision.
  std::string str(int sig_digits = 0) const;

  // Fixed-point rendering with the given number of fractional digits
  // (dyadic radii 1 - 2^{-t} print exactly with t fractional digits).
  std::string str_fixed(int frac_digits) const;

  mpfr_prec_t prec_bits() const { return mpfr_get_prec(v_); }

  static mpfr_prec_t bits_for(int digits) {
    if (digits < 1) digits = 1;
    return static_cast<mpfr_prec_t>(digits * 3.3219280948873623 + 17.0);
  }

  mpfr_srcptr raw() const { return v_; }
  mpfr_ptr raw() { return v_; }

private:
  struct Bits { mpfr_prec_t bits; };
  explicit BigFloat(Bits b) {
    mpfr_init2(v_, b.bits);
    mpfr_set_zero(v_, 1);
  }
  static Bits join(const BigFloat& a, const BigFloat& b) {
    return {std::max(mpfr_get_prec(a.v_), mpfr_get_prec(b.v_))};
  }

  mpfr_t v_;
};

struct BigComplex {
  BigFloat re, im;

  BigComplex() = default;
  BigComplex(BigFloat r, BigFloat i) : re(std::move(r)), im(std::move(i)) {}

  explicit BigComplex(int digits) : re(digits), im(digits) {}

  static BigComplex of(long r, long i, int digits) {
    return {BigFloat::of(r, digits), BigFloat::of(i, digits)};
  }

  friend BigComplex operator+(const BigComplex& a, const BigComplex& b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend BigComplex operator-(const BigComplex& a, const BigComplex& b) {
    return {a.re - b.re, a.im - b.im};
  }
  friend BigComplex operator*(const BigComplex& a, const BigComplex& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend BigComplex operator*(const BigFloat& s, const BigComplex& a) {
    return {s * a.re, s * a.im};
  }
  friend BigComplex operator/(const BigComplex& a, const BigComplex& b) {
    BigFloat n = b.re * b.re + b.im * b.im;
    return {(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n};
  }

  BigComplex& operator+=(const BigComplex& o) { re += o.re; im += o.im; return *this; }
  BigComplex& operator-=(const BigComplex& o) { re -= o.re; im -= o.im; return *this; }
  BigComplex& operator*=(const BigComplex& o) { *this = *this * o; return *this; }

  BigComplex operator-() const { return {-re, -im}; }
  BigComplex conj() const { return {re, -im}; }

  BigFloat abs() const { return (re * re + im * im).sqrt(); }
  bool is_zero() const { return re.is_zero() && im.is_zero(); }

  double log10_abs() const;

  std::string str(int sig_digits = 0) const;
};

} // namespace qlab
