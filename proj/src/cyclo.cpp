#include "qlab/cyclo.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

namespace qlab {

namespace {

using Poly = std::vector<Rat>; // ascending degree

void poly_trim(Poly& p) {
  while (p.size() > 1 && p.back() == 0) p.pop_back();
}

Poly poly_mul(const Poly& a, const Poly& b) {
  Poly r(a.size() + b.size() - 1, Rat(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (b[j] == 0) continue;
      r[i + j] += a[i] * b[j];
    }
  }
  poly_trim(r);
  return r;
}

// Euclidean division over Q; divisor need not be monic.
void poly_divmod(const Poly& num, const Poly& den, Poly& quot, Poly& rem) {
  rem = num;
  poly_trim(rem);
  Poly d = den;
  poly_trim(d);
  if (d.size() == 1 && d[0] == 0)
    throw std::invalid_argument("poly_divmod: division by zero polynomial");
  quot.assign(std::max<std::size_t>(1, rem.size() >= d.size() ? rem.size() - d.size() + 1 : 1),
              Rat(0));
  Rat lead_inv = 1 / d.back();
  while (rem.size() >= d.size() && !(rem.size() == 1 && rem[0] == 0)) {
    std::size_t shift = rem.size() - d.size();
    Rat factor = rem.back() * lead_inv;
    quot[shift] = factor;
    for (std::size_t i = 0; i < d.size(); ++i)
      rem[shift + i] -= factor * d[i];
    poly_trim(rem);
    if (rem.size() < d.size()) break;
    if (rem.size() == 1 && rem[0] == 0) break;
  }
  poly_trim(quot);
}

Poly poly_mod(const Poly& num, const Poly& den) {
  Poly q, r;
  poly_divmod(num, den, q, r);
  return r;
}

bool poly_is_zero(const Poly& p) {
  for (const Rat& c : p)
    if (c != 0) return false;
  return true;
}

const Poly& cyclo_poly_cached(long m);

Poly compute_cyclo_poly(long m) {
  // Phi_m = (x^m - 1) / prod_{d | m, d < m} Phi_d.
  Poly p(m + 1, Rat(0));
  p[0] = rat(-1);
  p[m] = rat(1);
  for (long d = 1; d < m; ++d) {
    if (m % d != 0) continue;
    Poly q, r;
    poly_divmod(p, cyclo_poly_cached(d), q, r);
    if (!poly_is_zero(r))
      throw std::logic_error("cyclotomic polynomial division left a remainder");
    p = q;
  }
  return p;
}

const Poly& cyclo_poly_cached(long m) {
  static std::map<long, Poly> cache;
  // Recursive: computing Phi_m divides out Phi_d for every proper divisor.
  static std::recursive_mutex mu;
  std::lock_guard<std::recursive_mutex> lock(mu);
  auto it = cache.find(m);
  if (it == cache.end())
    it = cache.emplace(m, compute_cyclo_poly(m)).first;
  return it->second;
}

} // namespace

long euler_phi(long m) {
  if (m < 1) throw std::invalid_argument("euler_phi: m must be positive");
  long result = m, n = m;
  for (long p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      result -= result / p;
      while (n % p == 0) n /= p;
    }
  }
  if (n > 1) result -= result / n;
  return result;
}

std::vector<Rat> Cyclo::cyclotomic_polynomial(long m) {
  if (m < 1) throw std::invalid_argument("cyclotomic_polynomial: m must be positive");
  return cyclo_poly_cached(m);
}

Cyclo Cyclo::from_poly(long order, Poly poly) {
  const Poly& phi = cyclo_poly_cached(order);
  std::size_t deg = phi.size() - 1; // phi(order), always >= 1
  poly_trim(poly);
  if (poly.size() > deg) poly = poly_mod(poly, phi);
  poly.resize(deg, Rat(0));
  return Cyclo(order, std::move(poly));
}

Cyclo Cyclo::root(long order, long power) {
  if (order < 1) throw std::invalid_argument("Cyclo::root: order must be positive");
  power = mod_reduce(power, order);
  Poly p(power + 1, Rat(0));
  p[power] = rat(1);
  return from_poly(order, std::move(p));
}

bool Cyclo::is_zero() const {
  for (const Rat& c : c_)
    if (c != 0) return false;
  return true;
}

bool Cyclo::is_rational() const {
  for (std::size_t i = 1; i < c_.size(); ++i)
    if (c_[i] != 0) return false;
  return true;
}

Rat Cyclo::rational_value() const {
  if (!is_rational())
    throw std::invalid_argument("Cyclo::rational_value: element is not rational");
  return c_[0];
}

Cyclo Cyclo::lifted(long target_order) const {
  if (target_order % order_ != 0)
    throw std::invalid_argument("Cyclo::lifted: current order does not divide target");
  if (target_order == order_) return *this;
  long k = target_order / order_;
  Poly p(static_cast<std::size_t>((c_.size() - 1) * k + 1), Rat(0));
  for (std::size_t j = 0; j < c_.size(); ++j) p[j * k] = c_[j];
  return from_poly(target_order, std::move(p));
}

Cyclo Cyclo::operator-() const {
  Cyclo r = *this;
  for (Rat& c : r.c_) c = -c;
  return r;
}

namespace {

// Resolves the order-1 broadcast; throws on genuinely mixed orders.
std::pair<Cyclo, Cyclo> align(const Cyclo& a, const Cyclo& b) {
  if (a.order() == b.order()) return {a, b};
  if (a.order() == 1) return {a.lifted(b.order()), b};
  if (b.order() == 1) return {a, b.lifted(a.order())};
  throw std::invalid_argument(
      "Cyclo: order mismatch (" + std::to_string(a.order()) + " vs " +
      std::to_string(b.order()) + "); lift operands to a common order first");
}

} // namespace

Cyclo operator+(const Cyclo& a, const Cyclo& b) {
  auto [x, y] = align(a, b);
  std::vector<Rat> c = x.coeffs();
  for (std::size_t i = 0; i < c.size(); ++i) c[i] += y.coeffs()[i];
  return Cyclo(x.order(), std::move(c));
}

Cyclo operator-(const Cyclo& a, const Cyclo& b) {
  auto [x, y] = align(a, b);
  std::vector<Rat> c = x.coeffs();
  for (std::size_t i = 0; i < c.size(); ++i) c[i] -= y.coeffs()[i];
  return Cyclo(x.order(), std::move(c));
}

Cyclo operator*(const Cyclo& a, const Cyclo& b) {
  auto [x, y] = align(a, b);
  return Cyclo::from_poly(x.order(), poly_mul(x.coeffs(), y.coeffs()));
}

Cyclo Cyclo::inverse() const {
  if (is_zero()) throw std::domain_error("Cyclo::inverse: division by zero");
  if (is_rational()) {
    std::vector<Rat> c(c_.size(), Rat(0));
    c[0] = 1 / c_[0];
    return Cyclo(order_, std::move(c));
  }
  // Extended Euclid over Q[x]: s*f + t*Phi = gcd; Phi_m irreducible and
  // deg f < deg Phi force the gcd to a nonzero constant.
  Poly r0 = cyclo_poly_cached(order_);
  Poly r1 = c_;
  poly_trim(r1);
  Poly s0{Rat(0)}, s1{Rat(1)};
  while (!poly_is_zero(r1)) {
    Poly q, r2;
    poly_divmod(r0, r1, q, r2);
    Poly qs = poly_mul(q, s1);
    Poly s2 = s0;
    s2.resize(std::max(s2.size(), qs.size()), Rat(0));
    for (std::size_t i = 0; i < qs.size(); ++i) s2[i] -= qs[i];
    poly_trim(s2);
    r0 = std::move(r1);
    r1 = std::move(r2);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  if (r0.size() != 1 || r0[0] == 0)
    throw std::logic_error("Cyclo::inverse: gcd with Phi_m is not a constant");
  Rat scale = 1 / r0[0];
  for (Rat& c : s0) c *= scale;
  return from_poly(order_, std::move(s0));
}

Cyclo Cyclo::pow(long e) const {
  if (e == 0) return Cyclo(1);
  Cyclo base = e < 0 ? inverse() : *this;
  unsigned long n = e < 0 ? static_cast<unsigned long>(-(e + 1)) + 1UL
                          : static_cast<unsigned long>(e);
  Cyclo acc(1);
  while (n > 0) {
    if (n & 1UL) acc *= base;
    base = n > 1 ? base * base : base;
    n >>= 1;
  }
  return acc;
}

bool operator==(const Cyclo& a, const Cyclo& b) {
  if (a.order() == b.order()) return a.coeffs() == b.coeffs();
  long l = std::lcm(a.order(), b.order());
  return a.lifted(l).coeffs() == b.lifted(l).coeffs();
}

BigComplex Cyclo::embed(int digits) const {
  int work = digits + 15;
  BigFloat two_pi = BigFloat::pi(work);
  two_pi.mul_si(2);
  BigComplex acc(work);
  for (std::size_t j = 0; j < c_.size(); ++j) {
    if (c_[j] == 0) continue;
    BigFloat angle = two_pi;
    angle.mul_si(static_cast<long>(j));
    angle.div_si(order_);
    BigFloat c(work), s(work);
    mpfr_sin_cos(s.raw(), c.raw(), angle.raw(), MPFR_RNDN);
    BigFloat coeff = BigFloat::of(c_[j], work);
    acc.re += coeff * c;
    acc.im += coeff * s;
  }
  return acc;
}

std::string Cyclo::str() const {
  if (is_rational()) return to_string(c_[0]);
  std::ostringstream out;
  bool first = true;
  for (std::size_t j = 0; j < c_.size(); ++j) {
    if (c_[j] == 0) continue;
    Rat a = c_[j];
    if (first) {
      if (a < 0) { out << "-"; a = -a; }
    } else {
      out << (a < 0 ? " - " : " + ");
      if (a < 0) a = -a;
    }
    first = false;
    if (j == 0) {
      out << to_string(a);
    } else {
      if (a != 1) out << to_string(a) << "*";
      out << "z" << order_;
      if (j > 1) out << "^" << j;
    }
  }
  if (first) out << "0";
  return out.str();
}

std::string Cyclo::encode() const {
  if (order_ == 1) return to_string(c_[0]);
  std::ostringstream out;
  out << "[";
  for (std::size_t j = 0; j < c_.size(); ++j) {
    if (j) out << ",";
    out << to_string(c_[j]);
  }
  out << "]@z" << order_;
  return out.str();
}

Cyclo Cyclo::decode(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("Cyclo::decode: empty input");
  if (text[0] != '[') return Cyclo(rat_parse(text));
  std::size_t close = text.find(']');
  std::size_t at = text.find("@z");
  if (close == std::string::npos || at == std::string::npos || at < close)
    throw std::invalid_argument("Cyclo::decode: bad encoding '" + text + "'");
  long order = std::stol(text.substr(at + 2));
  std::vector<Rat> coeffs;
  std::string body = text.substr(1, close - 1);
  std::istringstream in(body);
  std::string item;
  while (std::getline(in, item, ','))
    coeffs.push_back(rat_parse(item));
  if (static_cast<long>(coeffs.size()) != euler_phi(order))
    throw std::invalid_argument("Cyclo::decode: coefficient count does not match phi(order)");
  return Cyclo(order, std::move(coeffs));
}

} // namespace qlab
