#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "qlab/catalog.hpp"

using namespace qlab;

namespace {

// Independent direct-summation oracle for f(q): each term built from a fresh
// pochhammer product and a full series inversion, rather than the incremental
// geometric updates used by expand().
Series<Rat> oracle_f(int order) {
  Series<Rat> sum(order);
  for (long n = 0; n * n <= order; ++n) {
    Series<Rat> den = qpoch(rat(-1), 1, 1, n, order);
    Series<Rat> term = (den * den).inverted();
    term.shift(static_cast<int>(n * n));
    sum += term;
  }
  return sum;
}

long sigma(int s_minus_1, long n) {
  long total = 0;
  for (long d = 1; d <= n; ++d)
    if (n % d == 0) {
      long p = 1;
      for (int i = 0; i < s_minus_1; ++i) p *= d;
      total += p;
    }
  return total;
}

// Brute-force series oracle for the full Appell-Lerch right-hand sides: every
// term assembled from geometric_frac objects and explicit unit constants.
Series<Cyclo> oracle_appell(SeriesTag tag, const Cyclo& w, int order) {
  Cyclo winv = w.inverse();
  Series<Cyclo> inner(order);
  long cap = 2 * order + 2;
  for (long n = -cap; n <= cap; ++n) {
    if (n == 0) {
      inner += Series<Cyclo>::constant((Cyclo(1) - winv).inverse(), order);
      continue;
    }
    if (n > 0) {
      if (n * (n + 1) / 2 > order) continue;
      Cyclo unit = (tag == SeriesTag::Appell1) ? (-w).pow(n) : Cyclo((n & 1) ? -1 : 1);
      Series<Cyclo> t = geometric_frac(winv, static_cast<int>(n), order);
      t.mul_scalar(unit);
      t.shift(static_cast<int>(n * (n + 1) / 2));
      inner += t;
    } else {
      long m = -n;
      if (m * (m + 1) / 2 > order) continue;
      Cyclo unit = (tag == SeriesTag::Appell1) ? w.pow(1 - m) : w;
      if (!(m & 1)) unit = -unit;
      Series<Cyclo> t = geometric_frac(w, static_cast<int>(m), order);
      t.mul_scalar(unit);
      t.shift(static_cast<int>(m * (m + 1) / 2));
      inner += t;
    }
  }
  inner.mul_scalar(Cyclo(1) - winv);
  return inner * qpoch(Cyclo(1), 1, 1, std::nullopt, order).inverted();
}

BigComplex cpx(double re, double im, int digits) {
  return {BigFloat::of(re, digits), BigFloat::of(im, digits)};
}

} // namespace

TEST_CASE("f(q) expansion against the direct-summation oracle") {
  Series<Rat> f = expand(SeriesTag::F, 20);
  CHECK(f == oracle_f(20));
  std::vector<long> prefix = {1, 1, -2, 3, -3, 3, -5};
  for (std::size_t i = 0; i < prefix.size(); ++i)
    CHECK(f[static_cast<int>(i)] == rat(prefix[i]));
}

TEST_CASE("rank at w = -1 is f") {
  Series<Cyclo> rank = expand(SeriesTag::Rank, Cyclo(-1), 20);
  Series<Rat> f = expand(SeriesTag::F, 20);
  CHECK(rank == to_cyclo_series(f));
}

TEST_CASE("rank at w = 1 generates partition numbers") {
  Series<Cyclo> rank = expand(SeriesTag::Rank, Cyclo(1), 50);
  Series<Rat> partitions = qpoch(rat(1), 1, 1, std::nullopt, 50).inverted();
  CHECK(rank == to_cyclo_series(partitions));
  std::vector<long> prefix = {1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42};
  for (std::size_t i = 0; i < prefix.size(); ++i)
    CHECK(rank[static_cast<int>(i)] == Cyclo(prefix[i]));
}

TEST_CASE("u, psi, phi small expansions") {
  // u(q) = q + q^2 + 3q^3 + 4q^4 + ... from (-q;q)_n^2 q^{n+1} by hand
  Series<Rat> u = expand(SeriesTag::USmall, 8);
  std::vector<long> u_prefix = {0, 1, 1, 3, 4, 6, 10, 15, 21};
  for (std::size_t i = 0; i < u_prefix.size(); ++i)
    CHECK(u[static_cast<int>(i)] == rat(u_prefix[i]));
  Series<Rat> psi = expand(SeriesTag::Psi, 5);
  std::vector<long> psi_prefix = {0, 1, 1, 1, 2, 2};
  for (std::size_t i = 0; i < psi_prefix.size(); ++i)
    CHECK(psi[static_cast<int>(i)] == rat(psi_prefix[i]));
  Series<Rat> phi = expand(SeriesTag::Phi, 5);
  std::vector<long> phi_prefix = {1, 1, 0, -1, 1, 1};
  for (std::size_t i = 0; i < phi_prefix.size(); ++i)
    CHECK(phi[static_cast<int>(i)] == rat(phi_prefix[i]));
}

TEST_CASE("q-zeta expansions carry divisor sums") {
  Series<Rat> z2 = expand_qzeta(2, 4);
  CHECK(z2[1] == rat(1));
  CHECK(z2[2] == rat(3));
  CHECK(z2[3] == rat(4));
  CHECK(z2[4] == rat(7));
  for (int s : {2, 4, 6}) {
    Series<Rat> z = expand_qzeta(s, 50);
    for (long n = 1; n <= 50; ++n)
      CHECK(z[static_cast<int>(n)] == rat(sigma(s - 1, n)));
  }
}

TEST_CASE("eisenstein normalizations") {
  Series<Rat> p = expand(SeriesTag::EisP, 4);
  CHECK(p[0] == rat(1));
  CHECK(p[1] == rat(-24));
  CHECK(p[2] == rat(-72));
  Series<Rat> q = expand(SeriesTag::EisQ, 2);
  CHECK(q[1] == rat(240));
  CHECK(q[2] == rat(2160));
  Series<Rat> r = expand(SeriesTag::EisR, 2);
  CHECK(r[1] == rat(-504));
  CHECK(r[2] == rat(-16632));
}

TEST_CASE("the three displayed forms of b(q) agree") {
  int N = 200;
  Series<Rat> b = expand(SeriesTag::B, N); // (q;q^2)_inf x theta form
  Series<Rat> quotient_form = qpoch(rat(1), 1, 1, std::nullopt, N);
  Series<Rat> negq = qpoch(rat(-1), 1, 1, std::nullopt, N);
  quotient_form *= (negq * negq).inverted();
  CHECK(b == quotient_form);
}

TEST_CASE("appell-lerch full right-hand sides at w = -1") {
  int N = 30;
  // rama2 at w = -1: the crank representation
  CHECK(appell_lerch(SeriesTag::Appell2, Cyclo(-1), N) ==
        expand(SeriesTag::Crank, Cyclo(-1), N));
  // rama1 at w = -1 combines with (1-w)(1-w^{-1}) = 4: f + 4u
  Series<Rat> lhs = expand(SeriesTag::F, N);
  Series<Rat> u4 = expand(SeriesTag::USmall, N);
  u4.mul_scalar(rat(4));
  lhs += u4;
  CHECK(appell_lerch(SeriesTag::Appell1, Cyclo(-1), N) == to_cyclo_series(lhs));
}

TEST_CASE("appell-lerch constant term is 1") {
  for (long b : {2L, 3L, 4L, 6L}) {
    Cyclo w = Cyclo::root(b, 1);
    CHECK(appell_lerch(SeriesTag::Appell1, w, 8)[0] == Cyclo(1));
    CHECK(appell_lerch(SeriesTag::Appell2, w, 8)[0] == Cyclo(1));
  }
}

TEST_CASE("appell-lerch bilateral rewriting against the brute-force oracle") {
  for (int N : {12, 20}) {
    for (const Cyclo& w : {Cyclo(-1), Cyclo::root(3, 1), Cyclo::root(4, 1)}) {
      CHECK(appell_lerch(SeriesTag::Appell1, w, N) == oracle_appell(SeriesTag::Appell1, w, N));
      CHECK(appell_lerch(SeriesTag::Appell2, w, N) == oracle_appell(SeriesTag::Appell2, w, N));
    }
  }
}

TEST_CASE("bilateral rewriting against a raw numeric bilateral sum") {
  // Evaluates the bilateral sum with genuinely negative powers of q (no
  // rewriting anywhere) and compares against the exact series evaluated at
  // the same point.
  int digits = 60;
  Cyclo w = Cyclo::root(3, 1);
  BigComplex q = cpx(0.2, 0.1, digits + 15);
  BigComplex one = BigComplex::of(1, 0, digits + 15);
  BigComplex wc = w.embed(digits + 15);
  BigComplex wi = w.inverse().embed(digits + 15);

  BigComplex raw(digits + 15);
  for (long n = -60; n <= 60; ++n) {
    // q^{n(n+1)/2} (-w)^n / (1 - w^{-1} q^n) evaluated literally
    BigComplex qT = one;
    long T = n * (n + 1) / 2;
    for (long i = 0; i < T; ++i) qT *= q;
    BigComplex u = one;
    for (long i = 0; i < (n >= 0 ? n : -n); ++i) u = u * (-wc);
    if (n < 0) u = one / u;
    BigComplex qn = one;
    for (long i = 0; i < (n >= 0 ? n : -n); ++i) qn *= q;
    if (n < 0) qn = one / qn;
    raw += qT * u / (one - wi * qn);
  }
  Series<Cyclo> inner_only = appell_lerch(SeriesTag::Appell1, w, 40);
  // strip the prefactor: multiply back by (q;q)_inf / (1 - w^{-1})
  Series<Cyclo> inner =
      inner_only * qpoch(Cyclo(1), 1, 1, std::nullopt, 40);
  inner.mul_scalar((Cyclo(1) - w.inverse()).inverse());
  BigComplex series_val = inner.eval(q);
  CHECK((series_val - raw).abs().to_double() < 1e-25);
}

TEST_CASE("w = 1 policy") {
  CHECK_THROWS_AS(appell_lerch(SeriesTag::Appell1, Cyclo(1), 10), std::invalid_argument);
  CHECK_THROWS_AS(appell_lerch(SeriesTag::Appell2, Cyclo(1), 10), std::invalid_argument);
  CHECK_NOTHROW(expand(SeriesTag::Rank, Cyclo(1), 10));
  CHECK_NOTHROW(expand(SeriesTag::Crank, Cyclo(1), 10));
  CHECK_NOTHROW(expand(SeriesTag::UBig, Cyclo(1), 10));
}

TEST_CASE("truncation consistency") {
  for (SeriesTag tag : {SeriesTag::F, SeriesTag::B, SeriesTag::USmall, SeriesTag::Psi,
                        SeriesTag::Phi, SeriesTag::EisQ}) {
    CHECK(expand(tag, 40).truncated(25) == expand(tag, 25));
  }
  Cyclo w = Cyclo::root(3, 1);
  for (SeriesTag tag : {SeriesTag::Rank, SeriesTag::Crank, SeriesTag::UBig}) {
    CHECK(expand(tag, w, 40).truncated(25) == expand(tag, w, 25));
  }
}

TEST_CASE("numeric evaluation matches exact polynomial evaluation") {
  BigComplex q1 = cpx(0.1, 0.0, 95);
  NumericValue fv = eval_numeric({SeriesTag::F, {}, {}}, q1, 50);
  BigComplex fp = expand(SeriesTag::F, 60).eval(q1);
  CHECK((fv.value - fp).abs().to_double() < 1e-45);

  NumericValue b0 = eval_numeric({SeriesTag::B, {}, {}}, BigComplex::of(0, 0, 60), 40);
  CHECK((b0.value - BigComplex::of(1, 0, 60)).abs().to_double() < 1e-30);

  BigComplex qi = cpx(0.0, 0.5, 95);
  NumericValue rv = eval_numeric({SeriesTag::Rank, Cyclo(-1), {}}, qi, 60);
  NumericValue fv2 = eval_numeric({SeriesTag::F, {}, {}}, qi, 60);
  CHECK((rv.value - fv2.value).abs().to_double() < 1e-50);
}

TEST_CASE("numeric evaluation of the whole catalog at random points") {
  // The comparison polynomial runs to order 140 so its own truncation tail
  // (|q|^141 <= 0.5^141 ~ 4e-43) sits below the 1e-40 bound being asserted.
  std::mt19937 rng(2718);
  std::uniform_real_distribution<double> coord(-0.35, 0.35);
  std::vector<SeriesId> ids = {
      {SeriesTag::F, {}, {}},
      {SeriesTag::B, {}, {}},
      {SeriesTag::USmall, {}, {}},
      {SeriesTag::Psi, {}, {}},
      {SeriesTag::Phi, {}, {}},
      {SeriesTag::Rank, Cyclo(-1), {}},
      {SeriesTag::Crank, Cyclo::root(3, 1), {}},
      {SeriesTag::UBig, Cyclo::root(4, 1), {}},
      {SeriesTag::Appell1, Cyclo::root(3, 1), {}},
      {SeriesTag::Appell2, Cyclo(-1), {}},
      {SeriesTag::QZeta, {}, 2},
      {SeriesTag::EisP, {}, {}},
      {SeriesTag::EisQ, {}, {}},
      {SeriesTag::EisR, {}, {}},
  };
  for (const SeriesId& id : ids) {
    BigComplex q = cpx(coord(rng), coord(rng), 95);
    NumericValue nv = eval_numeric(id, q, 60);
    BigComplex pv;
    if (id.w) {
      Series<Cyclo> s = (id.tag == SeriesTag::Appell1 || id.tag == SeriesTag::Appell2)
                            ? appell_lerch(id.tag, *id.w, 140)
                            : expand(id.tag, *id.w, 140);
      pv = s.eval(q);
    } else if (id.tag == SeriesTag::QZeta) {
      pv = expand_qzeta(*id.s, 140).eval(q);
    } else {
      pv = expand(id.tag, 140).eval(q);
    }
    CHECK((nv.value - pv).abs().to_double() < 1e-40);
  }
}

TEST_CASE("eval_numeric input validation") {
  CHECK_THROWS_AS(eval_numeric({SeriesTag::F, {}, {}}, BigComplex::of(1, 0, 60), 40),
                  std::invalid_argument);
  CHECK_THROWS_AS(eval_numeric({SeriesTag::F, {}, {}}, BigComplex::of(2, 0, 60), 40),
                  std::invalid_argument);
  SeriesId bad{SeriesTag::Rank, {}, {}};
  CHECK_THROWS_AS(eval_numeric(bad, BigComplex::of(0, 0, 60), 40), std::invalid_argument);
}
