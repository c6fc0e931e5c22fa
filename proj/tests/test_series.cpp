#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "qlab/series.hpp"

using namespace qlab;

namespace {

Series<Rat> from_list(const std::vector<long>& coeffs, int order) {
  Series<Rat> s(order);
  for (std::size_t i = 0; i < coeffs.size(); ++i)
    s.set(static_cast<int>(i), rat(coeffs[i]));
  return s;
}

Series<Rat> random_series(std::mt19937& rng, int order) {
  std::uniform_int_distribution<long> num(-4, 4);
  std::uniform_int_distribution<long> den(1, 3);
  Series<Rat> s(order);
  for (int i = 0; i <= order; ++i) s.set(i, rat(num(rng), den(rng)));
  return s;
}

// Euler's pentagonal number theorem as a sparse oracle for (q;q)_inf.
Series<Rat> pentagonal_series(int order) {
  Series<Rat> s = Series<Rat>::one(order);
  for (long k = 1;; ++k) {
    long g1 = k * (3 * k - 1) / 2;
    long g2 = k * (3 * k + 1) / 2;
    if (g1 > order && g2 > order) break;
    Rat sign = rat((k & 1) ? -1 : 1);
    if (g1 <= order) s.set(static_cast<int>(g1), sign);
    if (g2 <= order) s.set(static_cast<int>(g2), sign);
  }
  return s;
}

} // namespace

TEST_CASE("ring operation basics") {
  int N = 6;
  Series<Rat> a = from_list({1, 1}, N);  // 1 + q
  Series<Rat> b = from_list({1, -1}, N); // 1 - q
  CHECK(a * b == from_list({1, 0, -1}, N));
  Series<Rat> zero(N);
  CHECK(a + zero == a);
  // (1-q) * (1+q+...+q^N) telescopes to 1 within the truncation
  Series<Rat> geo = geometric_frac(rat(1), 1, N);
  CHECK(b * geo == Series<Rat>::one(N));
}

TEST_CASE("order mismatch is an error, not a re-truncation") {
  Series<Rat> a(5), b(6);
  CHECK_THROWS_AS(a + b, std::invalid_argument);
  CHECK_THROWS_AS(a * b, std::invalid_argument);
  CHECK_THROWS_AS((void)(Series<Rat>::one(5) += Series<Rat>::one(7)),
                  std::invalid_argument);
}

TEST_CASE("coefficient access") {
  Series<Rat> s = from_list({1, 0, -1}, 4); // 1 - q^2
  CHECK(s[2] == rat(-1));
  CHECK(s[0] == rat(1));
  CHECK_THROWS_AS(s[5], std::out_of_range);
  CHECK_THROWS_AS(s[-1], std::out_of_range);
}

TEST_CASE("inversion") {
  int N = 12;
  Series<Rat> s = from_list({1, -1}, N);
  Series<Rat> inv = s.inverted();
  for (int i = 0; i <= N; ++i) CHECK(inv[i] == rat(1));
  Series<Rat> t = from_list({1, 1}, N);
  Series<Rat> tinv = t.inverted();
  for (int i = 0; i <= N; ++i) CHECK(tinv[i] == rat((i & 1) ? -1 : 1));
  CHECK_THROWS_AS(Series<Rat>(4).inverted(), std::domain_error);

  std::mt19937 rng(99);
  for (int trial = 0; trial < 5; ++trial) {
    Series<Rat> r = random_series(rng, 20);
    r.set(0, rat(1));
    CHECK(r.inverted().inverted() == r);
    CHECK(r * r.inverted() == Series<Rat>::one(20));
  }
}

TEST_CASE("ring axioms on random series") {
  std::mt19937 rng(31337);
  int N = 30;
  for (int trial = 0; trial < 4; ++trial) {
    Series<Rat> a = random_series(rng, N);
    Series<Rat> b = random_series(rng, N);
    Series<Rat> c = random_series(rng, N);
    CHECK(a * b == b * a);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
  }
}

TEST_CASE("pochhammer basics") {
  // (q;q)_3 = 1 - q - q^2 + q^4 + q^5 - q^6
  CHECK(qpoch(rat(1), 1, 1, 3L, 8) ==
        from_list({1, -1, -1, 0, 1, 1, -1}, 8));
  // (-q;q)_2 = (1+q)(1+q^2) = 1 + q + q^2 + q^3
  CHECK(qpoch(rat(-1), 1, 1, 2L, 6) == from_list({1, 1, 1, 1}, 6));
  CHECK_THROWS_AS(qpoch(rat(1), 0, 1, std::nullopt, 5), std::invalid_argument);
}

TEST_CASE("infinite pochhammer matches the pentagonal number theorem") {
  Series<Rat> p15 = qpoch(rat(1), 1, 1, std::nullopt, 15);
  CHECK(p15 == from_list({1, -1, -1, 0, 0, 1, 0, 1, 0, 0, 0, 0, -1, 0, 0, -1}, 15));
  CHECK(qpoch(rat(1), 1, 1, std::nullopt, 500) == pentagonal_series(500));
}

TEST_CASE("finite pochhammer equals the explicit factor product") {
  std::mt19937 rng(5);
  std::uniform_int_distribution<long> pick_scale(-2, 2);
  for (long n = 1; n <= 8; ++n) {
    for (int trial = 0; trial < 3; ++trial) {
      Rat scale = rat(pick_scale(rng));
      int d = 1 + static_cast<int>(rng() % 3);
      int e = 1 + static_cast<int>(rng() % 3);
      int N = 40;
      Series<Rat> direct = Series<Rat>::one(N);
      for (long j = 0; j < n; ++j) {
        Series<Rat> factor = Series<Rat>::one(N);
        int expo = d + static_cast<int>(j) * e;
        if (expo <= N) {
          Series<Rat> mono = Series<Rat>::monomial(scale, expo, N);
          factor -= mono;
        }
        direct *= factor;
      }
      CHECK(qpoch(scale, d, e, n, N) == direct);
    }
  }
}

TEST_CASE("geometric_frac") {
  Series<Rat> g = geometric_frac(rat(1), 1, 6);
  for (int i = 0; i <= 6; ++i) CHECK(g[i] == rat(1));
  Series<Rat> h = geometric_frac(rat(-1), 2, 8);
  CHECK(h == from_list({1, 0, -1, 0, 1, 0, -1, 0, 1}, 8));
  // cyclotomic ratio: 1 + z3 q^3 + z3^2 q^6 + q^9
  Series<Cyclo> c = geometric_frac(Cyclo::root(3, 1), 3, 9);
  CHECK(c[0] == Cyclo(1));
  CHECK(c[3] == Cyclo::root(3, 1));
  CHECK(c[6] == Cyclo::root(3, 2));
  CHECK(c[9] == Cyclo(1));
}

TEST_CASE("euler product inverts exactly at N = 200") {
  int N = 200;
  Series<Rat> p = qpoch(rat(1), 1, 1, std::nullopt, N);
  CHECK(p.inverted() * p == Series<Rat>::one(N));
}

TEST_CASE("partition numbers from the inverted euler product") {
  Series<Rat> partitions = qpoch(rat(1), 1, 1, std::nullopt, 20).inverted();
  std::vector<long> expected = {1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42};
  for (std::size_t i = 0; i < expected.size(); ++i)
    CHECK(partitions[static_cast<int>(i)] == rat(expected[i]));
}

TEST_CASE("truncation") {
  std::mt19937 rng(11);
  Series<Rat> s = random_series(rng, 30);
  Series<Rat> t = s.truncated(12);
  for (int i = 0; i <= 12; ++i) CHECK(t[i] == s[i]);
  CHECK_THROWS_AS(s.truncated(40), std::invalid_argument);
}

TEST_CASE("series over a cyclotomic field") {
  int N = 10;
  Cyclo z4 = Cyclo::root(4, 1);
  Series<Cyclo> s = qpoch(z4, 1, 1, 2L, N); // (1 - i q)(1 - i q^2)
  CHECK(s[0] == Cyclo(1));
  CHECK(s[1] == -z4);
  CHECK(s[2] == -z4);
  CHECK(s[3] == -Cyclo(1)); // (-i)(-i) q^3 = -q^3
  CHECK(s * s.inverted() == Series<Cyclo>::one(N));
}
