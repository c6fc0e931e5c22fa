#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "qlab/bigfloat.hpp"
#include "qlab/cyclo.hpp"
#include "qlab/rational.hpp"

namespace qlab {

inline Rat field_inverse(const Rat& x) {
  if (x == 0) throw std::domain_error("field_inverse: zero constant term");
  return 1 / x;
}
inline Cyclo field_inverse(const Cyclo& x) { return x.inverse(); }

inline bool field_is_zero(const Rat& x) { return x == 0; }
inline bool field_is_zero(const Cyclo& x) { return x.is_zero(); }

inline BigComplex to_bigcomplex(const Rat& x, int digits) {
  return {BigFloat::of(x, digits), BigFloat::of(0L, digits)};
}
inline BigComplex to_bigcomplex(const Cyclo& x, int digits) { return x.embed(digits); }

// Truncated formal power series in q over an exact field F, tracking
// coefficients of q^0 ... q^N. The truncation order is part of the value;
// combining different orders is an error, never an implicit re-truncation.
template <typename F>
class Series {
public:
  explicit Series(int order) : order_(check_order(order)), c_(order + 1, F()) {}

  static Series zero(int order) { return Series(order); }

  static Series one(int order) {
    Series s(order);
    s.c_[0] = F(1);
    return s;
  }

  static Series constant(const F& value, int order) {
    Series s(order);
    s.c_[0] = value;
    return s;
  }

  // c * q^d; exponents beyond the order contribute nothing.
  static Series monomial(const F& value, int d, int order) {
    Series s(order);
    if (d < 0) throw std::invalid_argument("Series::monomial: negative exponent");
    if (d <= order) s.c_[d] = value;
    return s;
  }

  int order() const { return order_; }

  const F& operator[](int n) const {
    if (n < 0 || n > order_)
      throw std::out_of_range("Series: coefficient index out of range");
    return c_[n];
  }

  void set(int n, const F& value) {
    if (n < 0 || n > order_)
      throw std::out_of_range("Series: coefficient index out of range");
    c_[n] = value;
  }

  Series& operator+=(const Series& o) {
    match(o);
    for (int i = 0; i <= order_; ++i)
      if (!field_is_zero(o.c_[i])) c_[i] += o.c_[i];
    return *this;
  }

  Series& operator-=(const Series& o) {
    match(o);
    for (int i = 0; i <= order_; ++i)
      if (!field_is_zero(o.c_[i])) c_[i] -= o.c_[i];
    return *this;
  }

  friend Series operator+(Series a, const Series& b) { return a += b; }
  friend Series operator-(Series a, const Series& b) { return a -= b; }

  friend Series operator*(const Series& a, const Series& b) {
    a.match(b);
    Series r(a.order_);
    for (int i = 0; i <= a.order_; ++i) {
      if (field_is_zero(a.c_[i])) continue;
      for (int j = 0; i + j <= a.order_; ++j) {
        if (field_is_zero(b.c_[j])) continue;
        r.c_[i + j] += a.c_[i] * b.c_[j];
      }
    }
    return r;
  }

  Series& operator*=(const Series& o) { return *this = *this * o; }

  Series& mul_scalar(const F& s) {
    for (F& c : c_) c = c * s;
    return *this;
  }

  // In-place multiply by (1 - scale * q^d).
  Series& mul_binomial(const F& scale, int d) {
    if (d < 1) throw std::invalid_argument("Series::mul_binomial: d must be >= 1");
    for (int i = order_; i >= d; --i)
      if (!field_is_zero(c_[i - d])) c_[i] -= scale * c_[i - d];
    return *this;
  }

  // In-place multiply by sum_k scale^k q^{kd}, i.e. divide by (1 - scale * q^d).
  Series& mul_geometric(const F& scale, int d) {
    if (d < 1) throw std::invalid_argument("Series::mul_geometric: d must be >= 1");
    for (int i = d; i <= order_; ++i)
      if (!field_is_zero(c_[i - d])) c_[i] += scale * c_[i - d];
    return *this;
  }

  // In-place multiply by q^d.
  Series& shift(int d) {
    if (d < 0) throw std::invalid_argument("Series::shift: negative shift");
    if (d == 0) return *this;
    for (int i = order_; i >= d; --i) c_[i] = c_[i - d];
    for (int i = 0; i < d && i <= order_; ++i) c_[i] = F();
    return *this;
  }

  // Multiplicative inverse mod q^{N+1} by the standard coefficient
  // recurrence; requires an invertible constant term.
  Series inverted() const {
    Series r(order_);
    F inv0 = field_inverse(c_[0]);
    r.c_[0] = inv0;
    for (int n = 1; n <= order_; ++n) {
      F acc{};
      for (int k = 1; k <= n; ++k) {
        if (field_is_zero(c_[k]) || field_is_zero(r.c_[n - k])) continue;
        acc += c_[k] * r.c_[n - k];
      }
      r.c_[n] = -(inv0 * acc);
    }
    return r;
  }

  friend bool operator==(const Series& a, const Series& b) {
    if (a.order_ != b.order_) return false;
    for (int i = 0; i <= a.order_; ++i)
      if (!(a.c_[i] == b.c_[i])) return false;
    return true;
  }
  friend bool operator!=(const Series& a, const Series& b) { return !(a == b); }

  // First index where coefficients differ, for mismatch reports.
  static std::optional<int> first_difference(const Series& a, const Series& b) {
    a.match(b);
    for (int i = 0; i <= a.order_; ++i)
      if (!(a.c_[i] == b.c_[i])) return i;
    return std::nullopt;
  }

  Series truncated(int new_order) const {
    if (new_order > order_)
      throw std::invalid_argument("Series::truncated: cannot extend order");
    Series r(new_order);
    for (int i = 0; i <= new_order; ++i) r.c_[i] = c_[i];
    return r;
  }

  // Horner evaluation at a complex point, for numeric oracles.
  BigComplex eval(const BigComplex& q) const {
    int digits = static_cast<int>(q.re.prec_bits() * 0.30103) + 1;
    BigComplex acc(digits);
    for (int i = order_; i >= 0; --i) {
      acc = acc * q;
      if (!field_is_zero(c_[i])) acc += to_bigcomplex(c_[i], digits);
    }
    return acc;
  }

private:
  static int check_order(int order) {
    if (order < 0) throw std::invalid_argument("Series: order must be >= 0");
    return order;
  }

  void match(const Series& o) const {
    if (order_ != o.order_)
      throw std::invalid_argument("Series: truncation order mismatch (" +
                                  std::to_string(order_) + " vs " +
                                  std::to_string(o.order_) + ")");
  }

  int order_;
  std::vector<F> c_;
};

// Product spec for (1 - scale q^{offset + j step}), j = 0 .. count-1;
// count = nullopt means the infinite product, which within truncation is
// always a finite loop since factors with offset + j step > N are 1 + O(q^{N+1}).
template <typename F>
struct PochSpec {
  F scale;
  int offset = 1;
  int step = 1;
  std::optional<long> count; // nullopt = infinite

  PochSpec(F s, int d, int e, std::optional<long> n)
      : scale(std::move(s)), offset(d), step(e), count(n) {
    if (offset < 1) throw std::invalid_argument("PochSpec: offset must be >= 1");
    if (step < 1) throw std::invalid_argument("PochSpec: step must be >= 1");
    if (count && *count < 0) throw std::invalid_argument("PochSpec: negative count");
  }
};

template <typename F>
Series<F> pochhammer(const PochSpec<F>& spec, int order) {
  Series<F> s = Series<F>::one(order);
  for (long j = 0;; ++j) {
    if (spec.count && j >= *spec.count) break;
    long d = spec.offset + j * spec.step;
    if (d > order) break; // remaining factors are identity within truncation
    s.mul_binomial(spec.scale, static_cast<int>(d));
  }
  return s;
}

template <typename F>
Series<F> qpoch(const F& scale, int offset, int step, std::optional<long> count, int order) {
  return pochhammer(PochSpec<F>(scale, offset, step, count), order);
}

// sum_{k>=0} scale^k q^{kd}.
template <typename F>
Series<F> geometric_frac(const F& scale, int d, int order) {
  Series<F> s = Series<F>::one(order);
  s.mul_geometric(scale, d);
  return s;
}

inline Series<Cyclo> to_cyclo_series(const Series<Rat>& s) {
  Series<Cyclo> r(s.order());
  for (int i = 0; i <= s.order(); ++i)
    if (s[i] != 0) r.set(i, Cyclo(s[i]));
  return r;
}

} // namespace qlab
