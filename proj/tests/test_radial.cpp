#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "qlab/errors.hpp"
#include "qlab/radial.hpp"

using namespace qlab;

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(RootSpec(2, 4), std::invalid_argument);  // gcd != 1
  CHECK_THROWS_AS(RootSpec(0, 4), std::invalid_argument);
  CHECK_THROWS_AS(RootSpec(4, 4), std::invalid_argument);
  CHECK_THROWS_AS(ForParams::make(2, 4, 1, 8), std::invalid_argument); // gcd(a,b)
  CHECK_THROWS_AS(ForParams::make(1, 2, 1, 3), std::invalid_argument); // b | m
  CHECK_THROWS_AS(ForParams::make(2, 2, 1, 2), std::invalid_argument); // a < b
  CHECK(ForParams::make(1, 3, 5, 6).hprime == 5);
  CHECK(ForParams::make(1, 2, 1, 2).hprime == 1);
}

TEST_CASE("exact u at even roots of unity") {
  CHECK(exact_u_at_root(1, RootSpec(1, 2)) == Cyclo(-1));
  CHECK(exact_u_at_root(2, RootSpec(1, 4)) == -Cyclo::root(4, 1));
  // terminating sums evaluate cleanly for k up to 6 and all primitive h
  for (long k = 1; k <= 6; ++k)
    for (long h = 1; h < 2 * k; ++h)
      if (std::gcd(h, 2 * k) == 1) CHECK_NOTHROW(exact_u_at_root(k, RootSpec(h, 2 * k)));
  CHECK_THROWS_AS(exact_u_at_root(1, RootSpec(1, 3)), std::invalid_argument);
}

TEST_CASE("the u summand vanishes identically from n = k on") {
  for (long k = 1; k <= 6; ++k) {
    Cyclo zeta = Cyclo::root(2 * k, 1);
    Cyclo prod(1);
    for (long j = 1; j <= k; ++j) {
      Cyclo f = Cyclo(1) + zeta.pow(j);
      prod *= f * f;
    }
    CHECK(prod.is_zero()); // (-zeta;zeta)_k^2 = 0
  }
}

TEST_CASE("for1 and for2 agree for k = 1..6") {
  CHECK(for1_value(1, RootSpec(1, 2)) == Cyclo(4));
  CHECK(for1_value(2, RootSpec(1, 4)) == Cyclo(4) * Cyclo::root(4, 1));
  CHECK(for2_value(1, RootSpec(1, 2)) == Cyclo(4));
  CHECK(for2_value(2, RootSpec(1, 4)) == Cyclo(4) * Cyclo::root(4, 1));
  for (long k = 1; k <= 6; ++k)
    for (long h = 1; h < 2 * k; ++h)
      if (std::gcd(h, 2 * k) == 1)
        CHECK(for2_value(k, RootSpec(h, 2 * k)) == for1_value(k, RootSpec(h, 2 * k)));
}

TEST_CASE("exact U(w;q) values at roots") {
  CHECK(exact_bigU_at_root(ForParams::make(1, 2, 1, 2)) == Cyclo(-1));
  CHECK(exact_bigU_at_root(ForParams::make(1, 2, 1, 4)) == -Cyclo::root(4, 1));
}

TEST_CASE("the U summand vanishes for all n >= termination up to m + 5") {
  ForParams p = ForParams::make(1, 3, 5, 6);
  long m = p.root.m;
  Cyclo zeta = p.root.value();
  Cyclo w = Cyclo::root(m, p.a * (m / p.b));
  Cyclo winv = w.inverse();
  Cyclo prod(1);
  for (long n = 1; n <= m + 5; ++n) {
    Cyclo zn = zeta.pow(n);
    prod *= (Cyclo(1) - w * zn) * (Cyclo(1) - winv * zn);
    if (n >= m) CHECK(prod.is_zero());
  }
}

TEST_CASE("for3 specializes to for1 at a = 1, b = 2") {
  CHECK(for3_value(ForParams::make(1, 2, 1, 2)) == Cyclo(4));
  CHECK(for3_value(ForParams::make(1, 2, 1, 4)) == Cyclo(4) * Cyclo::root(4, 1));
  for (long k = 1; k <= 5; ++k)
    for (long h = 1; h < 2 * k; ++h)
      if (std::gcd(h, 2 * k) == 1)
        CHECK(for3_value(ForParams::make(1, 2, h, 2 * k)) ==
              for1_value(k, RootSpec(h, 2 * k)));
}

TEST_CASE("theta multiplier") {
  CHECK(theta_multiplier(ForParams::make(1, 2, 1, 2)) == Cyclo(-1));
  CHECK(theta_multiplier(ForParams::make(1, 2, 1, 4)) == Cyclo(1));
  CHECK(theta_multiplier(ForParams::make(2, 3, 1, 6)) == Cyclo::root(3, 2));
  // at a = 1, b = 2 it reduces to (-1)^k
  for (long k = 1; k <= 6; ++k)
    for (long h = 1; h < 2 * k; ++h)
      if (std::gcd(h, 2 * k) == 1)
        CHECK(theta_multiplier(ForParams::make(1, 2, h, 2 * k)) ==
              Cyclo((k & 1) ? -1 : 1));
}

TEST_CASE("collapsing residue examples and random verification") {
  CHECK(collapsing_residue(ForParams::make(1, 2, 1, 2)) == 1);
  CHECK(collapsing_residue(ForParams::make(1, 2, 1, 4)) == 2);
  CHECK(collapsing_residue(ForParams::make(1, 3, 5, 6)) == 4);

  std::mt19937 rng(424242);
  int found = 0;
  while (found < 20) {
    long b = 2 + static_cast<long>(rng() % 11);
    long mult = 1 + static_cast<long>(rng() % (24 / b));
    long m = b * mult;
    long a = 1 + static_cast<long>(rng() % (b - 1));
    long h = 1 + static_cast<long>(rng() % (m - 1));
    if (std::gcd(a, b) != 1 || std::gcd(h, m) != 1) continue;
    ForParams p = ForParams::make(a, b, h, m);
    long c0 = collapsing_residue(p);
    // exact root-of-unity check: zeta_b^{-a} zeta_m^{h c0} = 1
    Cyclo lhs = Cyclo::root(b, -a).lifted(m) * Cyclo::root(m, h * c0);
    CHECK(lhs == Cyclo(1));
    ++found;
  }
}

TEST_CASE("aitken recovers geometric limits") {
  // v_t = L + alpha 2^{-t}: one sweep lands on L up to roundoff
  int digits = 60;
  std::vector<BigComplex> v;
  for (int t = 2; t <= 12; ++t) {
    BigFloat pow2 = BigFloat::of(1L, digits) - BigFloat::one_minus_pow2(t, digits);
    BigFloat re = BigFloat::of(3L, digits) + BigFloat::of(7L, digits) * pow2;
    BigFloat im = BigFloat::of(-2L, digits) + BigFloat::of(1L, digits) * pow2;
    v.push_back({re, im});
  }
  Extrapolation ex = iterated_aitken(v);
  BigComplex limit = {BigFloat::of(3L, digits), BigFloat::of(-2L, digits)};
  CHECK((ex.value - limit).abs().to_double() < 1e-10);
  // two-mode decay: full-depth iteration still converges fast
  std::vector<BigComplex> v2;
  for (int t = 2; t <= 12; ++t) {
    double x = 5.0 + 3.0 * std::pow(0.5, t) + 11.0 * std::pow(0.25, t);
    v2.push_back(BigComplex{BigFloat::of(x, digits), BigFloat::of(0L, digits)});
  }
  Extrapolation ex2 = iterated_aitken(v2);
  CHECK(std::abs(ex2.value.re.to_double() - 5.0) < 1e-9);
  CHECK_THROWS_AS(iterated_aitken({}), std::invalid_argument);
}

TEST_CASE("appell split: parts sum to the full sums") {
  ForParams p = ForParams::make(1, 2, 1, 2);
  AppellSplit split = split_appell_numeric(p, BigFloat::parse("0.9", 95), 80);
  CHECK(split.collapsing == 1);
  BigComplex sum1(95), sum2(95);
  for (const BigComplex& part : split.rank_parts) sum1 += part;
  for (const BigComplex& part : split.crank_parts) sum2 += part;
  CHECK((sum1 - split.rank_total).abs().to_double() < 1e-40);
  CHECK((sum2 - split.crank_total).abs().to_double() < 1e-40);
}

TEST_CASE("appell split: collapsing residue dominates near the boundary") {
  ForParams p = ForParams::make(1, 2, 1, 4);
  BigFloat r = BigFloat::one_minus_pow2(8, 95);
  AppellSplit split = split_appell_numeric(p, r, 80);
  long c0 = split.collapsing;
  CHECK(c0 == 2);
  double dominant = split.crank_parts[c0].abs().to_double();
  for (long c = 0; c < 4; ++c) {
    if (c == c0) continue;
    CHECK(split.crank_parts[c].abs().to_double() < dominant);
  }
}

TEST_CASE("appell split: all parts finite away from the boundary") {
  ForParams p = ForParams::make(1, 3, 5, 6);
  AppellSplit split = split_appell_numeric(p, BigFloat::parse("0.5", 95), 80);
  for (const BigComplex& part : split.rank_parts)
    CHECK(part.abs().to_double() < 1.0e6);
  for (const BigComplex& part : split.crank_parts)
    CHECK(part.abs().to_double() < 1.0e6);
}

TEST_CASE("quotient experiment approaches the theta multiplier") {
  RadialPath path;
  path.t_min = 2;
  path.t_max = 8;
  path.digits = 80;
  RadialReport r = quotient_limit_check(ForParams::make(1, 2, 1, 2), path);
  REQUIRE(r.agreement.has_value());
  CHECK(r.agreement->to_double() < 1e-2);
  CHECK(r.exact_target.has_value());
  CHECK(*r.exact_target == Cyclo(-1));
}

TEST_CASE("direct radial difference, small path") {
  RadialPath path;
  path.t_min = 2;
  path.t_max = 8;
  path.digits = 120;
  RadialReport r = radial_diff_for1(1, 1, path);
  REQUIRE(r.agreement.has_value());
  CHECK(r.agreement->to_double() < 1e-3);
  CHECK(*r.exact_target == Cyclo(4));
  CHECK(!r.truncated);
  CHECK(static_cast<int>(r.samples.size()) == r.requested_samples);
}

TEST_CASE("for3 sampling reproduces for1 at a=1, b=2, m=2") {
  RadialPath path;
  path.t_min = 2;
  path.t_max = 6;
  path.digits = 120;
  RadialReport direct = radial_diff_for1(1, 1, path);
  RadialReport general = radial_diff_for3(ForParams::make(1, 2, 1, 2), path);
  REQUIRE(direct.samples.size() == general.samples.size());
  for (std::size_t i = 0; i < direct.samples.size(); ++i) {
    double dist = (direct.samples[i].value - general.samples[i].value).abs().to_double();
    CHECK(dist < 1e-60);
  }
}

TEST_CASE("precision guard drops hopeless samples and reports truncation") {
  RadialPath path;
  path.t_min = 2;
  path.t_max = 14;
  path.digits = 60;
  RadialReport r = radial_diff_for1(1, 1, path);
  CHECK(r.truncated);
  CHECK(static_cast<int>(r.samples.size()) < r.requested_samples);
  // with no usable samples at all, the experiment raises a precision error
  RadialPath hopeless;
  hopeless.t_min = 12;
  hopeless.t_max = 14;
  hopeless.digits = 40;
  CHECK_THROWS_AS(radial_diff_for1(1, 1, hopeless), PrecisionError);
}

TEST_CASE("decomposed route: prefactor decays, tr sums bounded, u converges") {
  RadialPath path;
  path.t_min = 4;
  path.t_max = 8;
  path.digits = 80;
  for (long k : {1L, 2L}) {
    DecomposedReport rep = decomposed_radial_check(k, 1, path);
    CHECK(rep.prefactor_decreasing);
    CHECK(rep.prefactor_final.to_double() < 1e-3);
    CHECK(rep.tr_box_radius.to_double() < 10.0);
    CHECK(rep.u_distance_decreasing);
    // continuity of the terminating limit: distance tracks |u'(zeta)| 2^{-t},
    // about 0.004 for k = 1 and 0.021 for k = 2 at t = 8
    CHECK(rep.u_final_distance.to_double() < 5e-2);
    CHECK(rep.rows.size() == 5);
  }
}
