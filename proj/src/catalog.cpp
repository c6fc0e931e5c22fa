#include "qlab/catalog.hpp"

#include <algorithm>
#include <map>

#include "qlab/errors.hpp"

namespace qlab {

bool tag_needs_w(SeriesTag tag) {
  switch (tag) {
    case SeriesTag::Rank:
    case SeriesTag::Crank:
    case SeriesTag::UBig:
    case SeriesTag::Appell1:
    case SeriesTag::Appell2:
      return true;
    default:
      return false;
  }
}

bool tag_needs_s(SeriesTag tag) { return tag == SeriesTag::QZeta; }

std::string tag_name(SeriesTag tag) {
  switch (tag) {
    case SeriesTag::F: return "f";
    case SeriesTag::B: return "b";
    case SeriesTag::USmall: return "u";
    case SeriesTag::Psi: return "psi";
    case SeriesTag::Phi: return "phi";
    case SeriesTag::Rank: return "rank";
    case SeriesTag::Crank: return "crank";
    case SeriesTag::UBig: return "bigu";
    case SeriesTag::Appell1: return "appell1";
    case SeriesTag::Appell2: return "appell2";
    case SeriesTag::QZeta: return "qzeta";
    case SeriesTag::EisP: return "P";
    case SeriesTag::EisQ: return "Q";
    case SeriesTag::EisR: return "R";
  }
  return "?";
}

std::optional<SeriesTag> tag_from_name(const std::string& name) {
  static const std::map<std::string, SeriesTag> table = {
      {"f", SeriesTag::F},         {"b", SeriesTag::B},
      {"u", SeriesTag::USmall},    {"psi", SeriesTag::Psi},
      {"phi", SeriesTag::Phi},     {"rank", SeriesTag::Rank},
      {"crank", SeriesTag::Crank}, {"bigu", SeriesTag::UBig},
      {"appell1", SeriesTag::Appell1}, {"appell2", SeriesTag::Appell2},
      {"qzeta", SeriesTag::QZeta}, {"P", SeriesTag::EisP},
      {"Q", SeriesTag::EisQ},      {"R", SeriesTag::EisR},
      {"eisP", SeriesTag::EisP},   {"eisQ", SeriesTag::EisQ},
      {"eisR", SeriesTag::EisR}};
  auto it = table.find(name);
  if (it == table.end()) return std::nullopt;
  return it->second;
}

void SeriesId::validate() const {
  if (tag_needs_w(tag) != w.has_value())
    throw std::invalid_argument("SeriesId: tag '" + tag_name(tag) +
                                (w ? "' takes no w parameter" : "' requires a w parameter"));
  if (tag_needs_s(tag) != s.has_value())
    throw std::invalid_argument("SeriesId: tag '" + tag_name(tag) +
                                (s ? "' takes no s parameter" : "' requires an s parameter"));
  if (s && *s < 1) throw std::invalid_argument("SeriesId: s must be >= 1");
  if ((tag == SeriesTag::Appell1 || tag == SeriesTag::Appell2) && w && *w == Cyclo(1))
    throw std::invalid_argument("SeriesId: w = 1 is a pole of the Appell-Lerch prefactor");
}

// ---------------------------------------------------------------------------
// Exact expansions
// ---------------------------------------------------------------------------

namespace {

Series<Rat> expand_f(int order) {
  Series<Rat> sum = Series<Rat>::one(order);
  Series<Rat> term = Series<Rat>::one(order);
  for (long n = 1; n * n <= order; ++n) {
    term.shift(static_cast<int>(2 * n - 1));
    term.mul_geometric(rat(-1), static_cast<int>(n));
    term.mul_geometric(rat(-1), static_cast<int>(n));
    sum += term;
  }
  return sum;
}

Series<Rat> theta_alternating(int order) {
  // sum_{n in Z} (-1)^n q^{n^2} = 1 - 2q + 2q^4 - 2q^9 + ...
  Series<Rat> t = Series<Rat>::one(order);
  for (long n = 1; n * n <= order; ++n)
    t.set(static_cast<int>(n * n), rat((n & 1) ? -2 : 2));
  return t;
}

Series<Rat> expand_b(int order) {
  Series<Rat> s = qpoch(rat(1), 1, 2, std::nullopt, order);
  return s * theta_alternating(order);
}

Series<Rat> expand_u_small(int order) {
  Series<Rat> sum(order);
  Series<Rat> prod = Series<Rat>::one(order); // (-q;q)_n^2
  for (int n = 0; n + 1 <= order; ++n) {
    Series<Rat> term = prod;
    term.shift(n + 1);
    sum += term;
    prod.mul_binomial(rat(-1), n + 1);
    prod.mul_binomial(rat(-1), n + 1);
  }
  return sum;
}

Series<Rat> expand_psi(int order) {
  Series<Rat> sum(order);
  Series<Rat> prod = Series<Rat>::one(order); // (-q^2;q^2)_n
  for (int n = 0; n + 1 <= order; ++n) {
    Series<Rat> term = prod;
    term.shift(n + 1);
    sum += term;
    if (2 * (n + 1) <= order) prod.mul_binomial(rat(-1), 2 * (n + 1));
  }
  return sum;
}

Series<Rat> expand_phi(int order) {
  Series<Rat> sum = Series<Rat>::one(order);
  Series<Rat> prod = Series<Rat>::one(order); // (q;q^2)_n
  for (int n = 0; 2 * n + 1 <= order; ++n) {
    Series<Rat> term = prod;
    term.shift(2 * n + 1);
    if (n & 1) sum -= term; else sum += term;
    prod.mul_binomial(rat(1), 2 * n + 1);
  }
  return sum;
}

} // namespace

Series<Rat> expand_qzeta(int s, int order) {
  if (s < 1) throw std::invalid_argument("expand_qzeta: s must be >= 1");
  Series<Rat> z(order);
  for (long m = 1; m <= order; ++m) {
    Rat pw(int_pow(Int(m), static_cast<unsigned long>(s - 1)));
    for (long e = m; e <= order; e += m)
      z.set(static_cast<int>(e), z[static_cast<int>(e)] + pw);
  }
  return z;
}

Series<Rat> expand(SeriesTag tag, int order) {
  switch (tag) {
    case SeriesTag::F: return expand_f(order);
    case SeriesTag::B: return expand_b(order);
    case SeriesTag::USmall: return expand_u_small(order);
    case SeriesTag::Psi: return expand_psi(order);
    case SeriesTag::Phi: return expand_phi(order);
    case SeriesTag::EisP: {
      Series<Rat> s = expand_qzeta(2, order);
      s.mul_scalar(rat(-24));
      return s + Series<Rat>::one(order);
    }
    case SeriesTag::EisQ: {
      Series<Rat> s = expand_qzeta(4, order);
      s.mul_scalar(rat(240));
      return s + Series<Rat>::one(order);
    }
    case SeriesTag::EisR: {
      Series<Rat> s = expand_qzeta(6, order);
      s.mul_scalar(rat(-504));
      return s + Series<Rat>::one(order);
    }
    default:
      throw std::invalid_argument("expand: tag '" + tag_name(tag) +
                                  "' needs parameters; use the parameterized overload");
  }
}

Series<Cyclo> expand(SeriesTag tag, const Cyclo& w, int order) {
  Cyclo winv = w.inverse();
  switch (tag) {
    case SeriesTag::Rank: {
      Series<Cyclo> sum = Series<Cyclo>::one(order);
      Series<Cyclo> term = Series<Cyclo>::one(order);
      for (long n = 1; n * n <= order; ++n) {
        term.shift(static_cast<int>(2 * n - 1));
        term.mul_geometric(w, static_cast<int>(n));
        term.mul_geometric(winv, static_cast<int>(n));
        sum += term;
      }
      return sum;
    }
    case SeriesTag::Crank: {
      Series<Cyclo> s = qpoch(Cyclo(1), 1, 1, std::nullopt, order);
      for (int n = 1; n <= order; ++n) {
        s.mul_geometric(w, n);
        s.mul_geometric(winv, n);
      }
      return s;
    }
    case SeriesTag::UBig: {
      Series<Cyclo> sum(order);
      Series<Cyclo> prod = Series<Cyclo>::one(order);
      for (int n = 0; n + 1 <= order; ++n) {
        Series<Cyclo> term = prod;
        term.shift(n + 1);
        sum += term;
        prod.mul_binomial(w, n + 1);
        prod.mul_binomial(winv, n + 1);
      }
      return sum;
    }
    case SeriesTag::Appell1:
    case SeriesTag::Appell2:
      return appell_lerch(tag, w, order);
    default:
      throw std::invalid_argument("expand: tag '" + tag_name(tag) +
                                  "' takes no w parameter");
  }
}

Series<Cyclo> appell_lerch(SeriesTag tag, const Cyclo& w, int order) {
  if (tag != SeriesTag::Appell1 && tag != SeriesTag::Appell2)
    throw std::invalid_argument("appell_lerch: tag must be appell1 or appell2");
  if (w == Cyclo(1))
    throw std::invalid_argument("appell_lerch: w = 1 (prefactor pole)");
  const bool carries_w = (tag == SeriesTag::Appell1);
  Cyclo winv = w.inverse();
  Cyclo pref = Cyclo(1) - winv;

  Series<Cyclo> inner(order);
  inner += Series<Cyclo>::constant(pref.inverse(), order); // n = 0 term

  for (long n = 1; n * (n + 1) / 2 <= order; ++n) {
    Cyclo unit = carries_w ? (-w).pow(n) : Cyclo((n & 1) ? -1 : 1);
    Series<Cyclo> t =
        Series<Cyclo>::monomial(unit, static_cast<int>(n * (n + 1) / 2), order);
    t.mul_geometric(winv, static_cast<int>(n));
    inner += t;
  }
  // n = -m, m >= 1, rewritten to q^{m(m+1)/2} (-1)^{m+1} w^{1-m or 1} / (1 - w q^m).
  for (long m = 1; m * (m + 1) / 2 <= order; ++m) {
    Cyclo unit = carries_w ? w.pow(1 - m) : w;
    if (!(m & 1)) unit = -unit;
    Series<Cyclo> t =
        Series<Cyclo>::monomial(unit, static_cast<int>(m * (m + 1) / 2), order);
    t.mul_geometric(w, static_cast<int>(m));
    inner += t;
  }

  inner.mul_scalar(pref);
  return inner * qpoch(Cyclo(1), 1, 1, std::nullopt, order).inverted();
}

// ---------------------------------------------------------------------------
// Numeric evaluation
// ---------------------------------------------------------------------------

NumericSum::NumericSum(int digits, int work_digits)
    : sum_(work_digits), thr_(-(digits + 10.0)) {}

bool NumericSum::add(const BigComplex& term) {
  if (++terms_ > kNumericTermCap)
    throw ConvergenceError("numeric sum did not converge within the term cap "
                           "(|q| too close to 1 for the requested precision)");
  sum_ += term;
  double tl = term.log10_abs();
  double pl = sum_.log10_abs();
  peak_ = std::max({peak_, tl, pl});
  max_partial_ = std::max(max_partial_, pl);
  if (tl < thr_ + max_partial_ || term.is_zero()) {
    if (++small_run_ >= 3) return false;
  } else {
    small_run_ = 0;
  }
  return true;
}

namespace {

BigComplex at_precision(const BigComplex& z, int digits) {
  BigComplex r(digits);
  mpfr_set(r.re.raw(), z.re.raw(), MPFR_RNDN);
  mpfr_set(r.im.raw(), z.im.raw(), MPFR_RNDN);
  return r;
}

void check_inside_disc(const BigComplex& q, int digits) {
  BigFloat margin = BigFloat::pow10(-(digits / 2), 30);
  BigFloat bound = BigFloat::of(1L, 30) - margin;
  if (q.abs() > bound)
    throw std::invalid_argument("eval_numeric: |q| must stay inside the unit disc "
                                "by at least 10^(-digits/2)");
}

struct ProductAccum {
  BigComplex value;
  double peak = -1e300;
  long factors = 0;

  explicit ProductAccum(int work) : value(BigComplex::of(1, 0, work)) {}

  void mul_factor(const BigComplex& f) {
    if (++factors > kNumericTermCap)
      throw ConvergenceError("numeric product did not converge within the factor cap");
    value *= f;
    peak = std::max(peak, value.log10_abs());
  }
};

// Generic summation driver: `ratio(n)` maps term_{n-1} to term_n for n >= 1.
template <typename Ratio>
NumericValue sum_by_ratio(const BigComplex& first_term, Ratio ratio, int digits,
                          int work) {
  NumericSum acc(digits, work);
  BigComplex term = first_term;
  bool more = acc.add(term);
  for (long n = 1; more; ++n) {
    term = ratio(term, n);
    more = acc.add(term);
  }
  return {acc.value(), acc.log10_peak(), acc.terms()};
}

NumericValue eval_qzeta_numeric(int s, const BigComplex& q, int digits, int work) {
  NumericSum acc(digits, work);
  BigComplex qm = BigComplex::of(1, 0, work);
  BigComplex one = BigComplex::of(1, 0, work);
  for (long m = 1;; ++m) {
    qm *= q;
    BigFloat pw = BigFloat::of(Rat(int_pow(Int(m), static_cast<unsigned long>(s - 1))), work);
    BigComplex term = pw * (qm / (one - qm));
    if (!acc.add(term)) break;
  }
  return {acc.value(), acc.log10_peak(), acc.terms()};
}

NumericValue eval_theta_numeric(const BigComplex& q, int digits, int work) {
  // 1 + 2 sum_{n>=1} (-1)^n q^{n^2}
  NumericSum acc(digits, work);
  acc.add(BigComplex::of(1, 0, work));
  BigComplex qn2(BigComplex::of(1, 0, work));
  BigComplex qodd = q; // q^{2n-1}
  BigComplex q2 = q * q;
  BigFloat two = BigFloat::of(2L, work);
  for (long n = 1;; ++n) {
    qn2 *= qodd;
    qodd *= q2;
    BigComplex term = two * qn2;
    if (n & 1) term = -term;
    if (!acc.add(term)) break;
  }
  return {acc.value(), acc.log10_peak(), acc.terms()};
}

} // namespace

NumericValue numeric_poch_inf(const BigComplex& scale, int offset, int step,
                              const BigComplex& q, int digits) {
  if (offset < 1 || step < 1)
    throw std::invalid_argument("numeric_poch_inf: offset and step must be >= 1");
  int work = digits + 15;
  BigComplex qd = at_precision(q, work); // q^{offset + j step}, built incrementally
  BigComplex qs = qd;
  for (int i = 1; i < offset; ++i) qd *= qs;
  BigComplex qstep = qs;
  for (int i = 1; i < step; ++i) qstep *= qs;
  BigComplex sc = at_precision(scale, work);
  double lscale = sc.log10_abs();
  double thr = -(digits + 10.0);

  ProductAccum prod(work);
  BigComplex one = BigComplex::of(1, 0, work);
  while (lscale + qd.log10_abs() >= thr) {
    prod.mul_factor(one - sc * qd);
    qd *= qstep;
  }
  return {prod.value, prod.peak, prod.factors};
}

AppellInnerNumeric appell_inner_numeric(const Cyclo& w, const BigComplex& q,
                                        int digits, long residues,
                                        std::vector<BigComplex>* split1,
                                        std::vector<BigComplex>* split2) {
  if (w == Cyclo(1))
    throw std::invalid_argument("appell_inner_numeric: w = 1");
  int work = digits + 15;
  BigComplex qw = at_precision(q, work);
  BigComplex wc = w.embed(work);
  BigComplex wi = w.inverse().embed(work);
  BigComplex one = BigComplex::of(1, 0, work);

  if (residues > 0) {
    split1->assign(residues, BigComplex(work));
    split2->assign(residues, BigComplex(work));
  }
  auto bucket = [&](long n, const BigComplex& t1, const BigComplex& t2) {
    if (residues <= 0) return;
    long c = mod_reduce(n, residues);
    (*split1)[c] += t1;
    (*split2)[c] += t2;
  };

  NumericSum acc1(digits, work), acc2(digits, work);
  // n = 0 term: 1/(1 - w^{-1}) for both sums.
  {
    BigComplex t = one / (one - wi);
    acc1.add(t);
    acc2.add(t);
    bucket(0, t, t);
  }
  // n >= 1: q^{n(n+1)/2} u^n / (1 - w^{-1} q^n).
  {
    BigComplex qn = BigComplex::of(1, 0, work);
    BigComplex qT = BigComplex::of(1, 0, work);
    BigComplex u1 = one; // (-w)^n
    bool more = true;
    for (long n = 1; more; ++n) {
      qn *= qw;
      qT *= qn;
      u1 = -(u1 * wc);
      BigComplex den = one - wi * qn;
      BigComplex base = qT / den;
      BigComplex t1 = base * u1;
      BigComplex t2 = (n & 1) ? -base : base;
      bool m1 = acc1.add(t1);
      bool m2 = acc2.add(t2);
      more = m1 || m2;
      bucket(n, t1, t2);
    }
  }
  // n = -m, m >= 1, rewritten: q^{m(m+1)/2} (-1)^{m+1} w^{1-m} / (1 - w q^m)
  // for a1 and q^{m(m+1)/2} (-1)^{m+1} w / (1 - w q^m) for a2.
  {
    BigComplex qm = BigComplex::of(1, 0, work);
    BigComplex qT = BigComplex::of(1, 0, work);
    BigComplex u1 = one; // w^{1-m}; the (-1)^{m+1} sign is applied per term
    bool more = true;
    for (long m = 1; more; ++m) {
      qm *= qw;
      qT *= qm; // q^{m(m+1)/2}
      BigComplex den = one - wc * qm;
      BigComplex base = qT / den;
      BigComplex t1 = base * u1;
      BigComplex t2 = base * wc;
      if (!(m & 1)) { t1 = -t1; t2 = -t2; }
      bool m1 = acc1.add(t1);
      bool m2 = acc2.add(t2);
      more = m1 || m2;
      bucket(-m, t1, t2);
      u1 = u1 * wi; // w^{1-m} loses one power of w per step
    }
  }
  AppellInnerNumeric out;
  out.a1 = acc1.value();
  out.a2 = acc2.value();
  out.log10_peak = std::max(acc1.log10_peak(), acc2.log10_peak());
  out.terms = acc1.terms() + acc2.terms();
  return out;
}

NumericValue eval_numeric(const SeriesId& id, const BigComplex& q, int digits) {
  id.validate();
  if (digits < 10) throw std::invalid_argument("eval_numeric: digits must be >= 10");
  check_inside_disc(q, digits);
  int work = digits + 15;
  BigComplex qw = at_precision(q, work);
  BigComplex one = BigComplex::of(1, 0, work);

  switch (id.tag) {
    case SeriesTag::F: {
      // term ratio q^{2n-1} / (1 + q^n)^2
      BigComplex qn = BigComplex::of(1, 0, work);
      BigComplex qodd = qw;
      BigComplex q2 = qw * qw;
      return sum_by_ratio(
          one,
          [&](const BigComplex& t, long) {
            qn *= qw;
            BigComplex den = one + qn;
            BigComplex r = t * qodd / (den * den);
            qodd *= q2;
            return r;
          },
          digits, work);
    }
    case SeriesTag::USmall: {
      BigComplex qn = BigComplex::of(1, 0, work);
      return sum_by_ratio(
          qw,
          [&](const BigComplex& t, long) {
            qn *= qw;
            BigComplex f = one + qn;
            return t * f * f * qw;
          },
          digits, work);
    }
    case SeriesTag::Psi: {
      BigComplex q2 = qw * qw;
      BigComplex q2n = BigComplex::of(1, 0, work);
      return sum_by_ratio(
          qw,
          [&](const BigComplex& t, long) {
            q2n *= q2;
            return t * (one + q2n) * qw;
          },
          digits, work);
    }
    case SeriesTag::Phi: {
      BigComplex q2 = qw * qw;
      BigComplex qodd = qw; // q^{2n+1} at the factor (1 - q^{2n-1}) step n
      NumericValue inner = sum_by_ratio(
          qw,
          [&](const BigComplex& t, long) {
            BigComplex r = -(t * (one - qodd) * q2);
            qodd *= q2;
            return r;
          },
          digits, work);
      inner.value += one;
      inner.log10_peak = std::max(inner.log10_peak, inner.value.log10_abs());
      return inner;
    }
    case SeriesTag::B: {
      NumericValue prod = numeric_poch_inf(one, 1, 2, qw, digits);
      NumericValue theta = eval_theta_numeric(qw, digits, work);
      NumericValue out;
      out.value = prod.value * theta.value;
      out.log10_peak = std::max({prod.log10_peak, theta.log10_peak, out.value.log10_abs()});
      out.terms = prod.terms + theta.terms;
      return out;
    }
    case SeriesTag::Rank: {
      BigComplex wc = id.w->embed(work);
      BigComplex wi = id.w->inverse().embed(work);
      BigComplex qn = BigComplex::of(1, 0, work);
      BigComplex qodd = qw;
      BigComplex q2 = qw * qw;
      return sum_by_ratio(
          one,
          [&](const BigComplex& t, long) {
            qn *= qw;
            BigComplex r = t * qodd / ((one - wc * qn) * (one - wi * qn));
            qodd *= q2;
            return r;
          },
          digits, work);
    }
    case SeriesTag::UBig: {
      BigComplex wc = id.w->embed(work);
      BigComplex wi = id.w->inverse().embed(work);
      BigComplex qn = BigComplex::of(1, 0, work);
      return sum_by_ratio(
          qw,
          [&](const BigComplex& t, long) {
            qn *= qw;
            return t * (one - wc * qn) * (one - wi * qn) * qw;
          },
          digits, work);
    }
    case SeriesTag::Crank: {
      BigComplex wc = id.w->embed(work);
      BigComplex wi = id.w->inverse().embed(work);
      NumericValue pq = numeric_poch_inf(one, 1, 1, qw, digits);
      NumericValue pw = numeric_poch_inf(wc, 1, 1, qw, digits);
      NumericValue pwi = numeric_poch_inf(wi, 1, 1, qw, digits);
      NumericValue out;
      out.value = pq.value / (pw.value * pwi.value);
      out.log10_peak = std::max({pq.log10_peak, pw.log10_peak, pwi.log10_peak,
                                 out.value.log10_abs()});
      out.terms = pq.terms + pw.terms + pwi.terms;
      return out;
    }
    case SeriesTag::Appell1:
    case SeriesTag::Appell2: {
      AppellInnerNumeric inner = appell_inner_numeric(*id.w, qw, digits);
      NumericValue pq = numeric_poch_inf(one, 1, 1, qw, digits);
      BigComplex wi = id.w->inverse().embed(work);
      BigComplex pref = (one - wi) / pq.value;
      NumericValue out;
      out.value = pref * (id.tag == SeriesTag::Appell1 ? inner.a1 : inner.a2);
      out.log10_peak = std::max({inner.log10_peak, pq.log10_peak,
                                 pref.log10_abs(), out.value.log10_abs()});
      out.terms = inner.terms + pq.terms;
      return out;
    }
    case SeriesTag::QZeta:
      return eval_qzeta_numeric(*id.s, qw, digits, work);
    case SeriesTag::EisP:
    case SeriesTag::EisQ:
    case SeriesTag::EisR: {
      int s = id.tag == SeriesTag::EisP ? 2 : id.tag == SeriesTag::EisQ ? 4 : 6;
      long c = id.tag == SeriesTag::EisP ? -24 : id.tag == SeriesTag::EisQ ? 240 : -504;
      NumericValue z = eval_qzeta_numeric(s, qw, digits, work);
      z.value = one + BigFloat::of(c, work) * z.value;
      z.log10_peak = std::max(z.log10_peak, z.value.log10_abs());
      return z;
    }
  }
  throw std::logic_error("eval_numeric: unhandled tag");
}

} // namespace qlab
