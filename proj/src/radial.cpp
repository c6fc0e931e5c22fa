#include "qlab/radial.hpp"

#include <algorithm>
#include <numeric>

#include "qlab/errors.hpp"

namespace qlab {

RootSpec::RootSpec(long h_, long m_) : h(h_), m(m_) {
  if (m < 1) throw std::invalid_argument("RootSpec: m must be positive");
  if (h < 1 || h >= m)
    throw std::invalid_argument("RootSpec: h must satisfy 1 <= h < m");
  if (std::gcd(h, m) != 1)
    throw std::invalid_argument("RootSpec: gcd(h, m) must be 1");
}

ForParams ForParams::make(long a, long b, long h, long m) {
  if (!(1 <= a && a < b))
    throw std::invalid_argument("ForParams: need 1 <= a < b");
  if (std::gcd(a, b) != 1)
    throw std::invalid_argument("ForParams: gcd(a, b) must be 1");
  if (m % b != 0) throw std::invalid_argument("ForParams: b must divide m");
  RootSpec root(h, m);
  return ForParams{a, b, root, mod_inverse(h, m)};
}

void RadialPath::validate() const {
  if (!(2 <= t_min && t_min < t_max))
    throw std::invalid_argument("RadialPath: need 2 <= t_min < t_max");
  if (digits < 20) throw std::invalid_argument("RadialPath: digits must be >= 20");
}

// ---------------------------------------------------------------------------
// Exact terminating evaluations
// ---------------------------------------------------------------------------

Cyclo exact_u_at_root(long k, const RootSpec& root) {
  if (k < 1) throw std::invalid_argument("exact_u_at_root: k must be >= 1");
  if (root.m != 2 * k)
    throw std::invalid_argument("exact_u_at_root: root order must be 2k (even)");
  Cyclo zeta = root.value();
  Cyclo prod(1); // (-zeta;zeta)_n^2
  Cyclo zpow(1);
  Cyclo total(0);
  long vanish_at = -1;
  for (long n = 0; n <= 2 * k + 2; ++n) {
    zpow *= zeta; // zeta^{n+1}
    total += prod * zpow;
    Cyclo factor = Cyclo(1) + zeta.pow(n + 1);
    prod *= factor * factor;
    if (prod.is_zero()) { vanish_at = n + 1; break; }
  }
  if (vanish_at != k)
    throw std::logic_error("exact_u_at_root: summand did not vanish at n = k");
  return total;
}

Cyclo for1_value(long k, const RootSpec& root) {
  return Cyclo(-4) * exact_u_at_root(k, root);
}

Cyclo for2_value(long k, const RootSpec& root) {
  if (k < 1) throw std::invalid_argument("for2_value: k must be >= 1");
  if (root.m != 2 * k)
    throw std::invalid_argument("for2_value: root order must be 2k (even)");
  Cyclo x = -root.value(); // -zeta
  long cap = 2 * root.m + 4;
  if (k % 2 == 0) {
    // -4 psi(-zeta); factors (1 + x^{2j}) vanish once 2j hits k mod 2k.
    Cyclo prod(1), xpow(1), total(0);
    bool terminated = false;
    for (long n = 0; n <= cap; ++n) {
      xpow *= x; // x^{n+1}
      total += prod * xpow;
      prod *= Cyclo(1) + x.pow(2 * (n + 1));
      if (prod.is_zero()) { terminated = true; break; }
    }
    if (!terminated)
      throw std::domain_error("for2_value: psi sum failed to terminate (parameter error)");
    return Cyclo(-4) * total;
  }
  // 2 phi(-zeta); factors (1 - x^{2j+1}) vanish at some odd exponent.
  Cyclo prod(1), total(1); // leading 1 of phi
  bool terminated = false;
  for (long n = 0; n <= cap; ++n) {
    Cyclo term = prod * x.pow(2 * n + 1);
    if (n & 1) total -= term; else total += term;
    prod *= Cyclo(1) - x.pow(2 * n + 1);
    if (prod.is_zero()) { terminated = true; break; }
  }
  if (!terminated)
    throw std::domain_error("for2_value: phi sum failed to terminate (parameter error)");
  return Cyclo(2) * total;
}

Cyclo exact_bigU_at_root(const ForParams& p) {
  long m = p.root.m;
  Cyclo zeta = p.root.value();
  Cyclo w = Cyclo::root(m, p.a * (m / p.b)); // zeta_b^a lifted into Q(zeta_m)
  Cyclo winv = w.inverse();
  Cyclo prod(1), zpow(1), total(0);
  bool terminated = false;
  for (long n = 0; n <= m + 2; ++n) {
    zpow *= zeta;
    total += prod * zpow;
    Cyclo zn1 = zeta.pow(n + 1);
    prod *= (Cyclo(1) - w * zn1) * (Cyclo(1) - winv * zn1);
    if (prod.is_zero()) { terminated = true; break; }
  }
  if (!terminated)
    throw std::logic_error("exact_bigU_at_root: sum failed to terminate within n <= m");
  return total;
}

Cyclo for3_value(const ForParams& p) {
  Cyclo w = Cyclo::root(p.b, p.a);
  Cyclo scale = -((Cyclo(1) - w) * (Cyclo(1) - w.inverse()));
  return scale.lifted(std::lcm(p.b, p.root.m)) *
         exact_bigU_at_root(p).lifted(std::lcm(p.b, p.root.m));
}

Cyclo theta_multiplier(const ForParams& p) {
  long b2 = p.b * p.b;
  long e = mod_reduce(p.hprime, b2);
  e = mod_reduce(e * mod_reduce(p.a * p.a, b2), b2);
  e = mod_reduce(e * mod_reduce(p.root.m, b2), b2);
  return Cyclo::root(b2, e);
}

long collapsing_residue(const ForParams& p) {
  long m = p.root.m;
  long c0 = mod_reduce(p.hprime * mod_reduce(p.a * (m / p.b), m), m);
  // zeta_b^{-a} zeta_m^{h c0} = zeta_m^{-a m/b + h c0} must be exactly 1.
  long expo = mod_reduce(p.root.h * c0 - p.a * (m / p.b), m);
  if (expo != 0)
    throw std::logic_error("collapsing_residue: residue check failed");
  return c0;
}

// ---------------------------------------------------------------------------
// Extrapolation
// ---------------------------------------------------------------------------

namespace {

std::vector<BigComplex> aitken_once(const std::vector<BigComplex>& v) {
  std::vector<BigComplex> out;
  if (v.size() < 3) return out;
  out.reserve(v.size() - 2);
  for (std::size_t i = 0; i + 2 < v.size(); ++i) {
    BigComplex d1 = v[i + 1] - v[i];
    BigComplex d2 = v[i + 2] - v[i + 1];
    BigComplex den = d2 - d1;
    // Degenerate differences mean the sequence has already settled.
    double scale = std::max(v[i + 2].log10_abs(), 0.0);
    int digits = static_cast<int>(v[i].re.prec_bits() * 0.30103);
    if (den.is_zero() || den.log10_abs() < scale - (digits - 8)) {
      out.push_back(v[i + 2]);
      continue;
    }
    out.push_back(v[i + 2] - (d2 * d2) / den);
  }
  return out;
}

} // namespace

Extrapolation iterated_aitken(const std::vector<BigComplex>& samples, int levels) {
  if (samples.empty())
    throw std::invalid_argument("iterated_aitken: no samples");
  std::vector<BigComplex> cur = samples;
  BigComplex prev_level_last = cur.back();
  // levels < 0 iterates to full depth, keeping at least two extrapolants in
  // the final level so the error estimate compares genuine extrapolants.
  int remaining = levels < 0 ? static_cast<int>(samples.size()) : levels;
  while (remaining > 0 && cur.size() >= 4) {
    std::vector<BigComplex> next = aitken_once(cur);
    if (next.empty()) break;
    prev_level_last = cur.back();
    cur = std::move(next);
    --remaining;
  }
  // With exactly three raw samples a single Aitken step is still worthwhile;
  // the error estimate then compares against the last raw sample.
  if (remaining > 0 && cur.size() == 3 && samples.size() == 3) {
    std::vector<BigComplex> next = aitken_once(cur);
    if (!next.empty()) {
      prev_level_last = cur.back();
      cur = std::move(next);
    }
  }
  Extrapolation out;
  out.value = cur.back();
  if (cur.size() >= 2)
    out.error_estimate = (cur.back() - cur[cur.size() - 2]).abs();
  else
    out.error_estimate = (cur.back() - prev_level_last).abs();
  return out;
}

// ---------------------------------------------------------------------------
// Numeric experiments
// ---------------------------------------------------------------------------

namespace {

BigComplex root_times_radius(const RootSpec& root, const BigFloat& r, int digits) {
  BigComplex zeta = root.value().embed(digits);
  return {zeta.re * r, zeta.im * r};
}

struct GuardedSample {
  bool ok;
  RadialSample sample;
};

// Evaluators carry digits + 15 working precision; a sample survives when that
// covers the tracked peak magnitude plus the target accuracy plus margin.
bool sample_passes_guard(const RadialPath& path, double log10_peak) {
  return path.digits + 15 >= log10_peak + path.target_digits + 10.0;
}

void finish_report(RadialReport& report, const RadialPath& path,
                   const std::optional<Cyclo>& target) {
  std::vector<BigComplex> values;
  values.reserve(report.samples.size());
  for (const RadialSample& s : report.samples) values.push_back(s.value);
  if (values.empty())
    throw PrecisionError("radial experiment: no sample met the precision guard; "
                         "raise digits or lower t_max");
  Extrapolation ex = iterated_aitken(values, -1);
  report.extrapolated = ex.value;
  report.error_estimate = ex.error_estimate;
  report.digits = path.digits;
  if (target) {
    report.exact_target = target;
    BigComplex exact = target->embed(path.digits);
    report.agreement = (report.extrapolated - exact).abs();
  }
}

// tr1-type sum  sum_{n>=1} (-1)^{n-1} (q;q^2)_{n-1} q^{n^2} / (-q;q^2)_n^2,
// by the term ratio -(1 - q^{2n-1}) q^{2n+1} / (1 + q^{2n+1})^2.
NumericValue tr1_sum_numeric(const BigComplex& q, int digits) {
  int work = digits + 15;
  BigComplex one = BigComplex::of(1, 0, work);
  BigComplex q2 = q * q;
  BigComplex qodd = q; // q^{2n-1} marching over odd powers
  BigComplex den1 = one + q;
  NumericSum acc(digits, work);
  BigComplex term = q / (den1 * den1); // n = 1
  bool more = acc.add(term);
  while (more) {
    BigComplex qnext = qodd * q2; // q^{2n+1}
    BigComplex den = one + qnext;
    term = -(term * (one - qodd) * qnext) / (den * den);
    qodd = qnext;
    more = acc.add(term);
  }
  return {acc.value(), acc.log10_peak(), acc.terms()};
}

// tr2-type sum  sum_{n>=0} (-1)^n (q;q^2)_n q^{n^2} / (-q^2;q^2)_n^2,
// by the term ratio -(1 - q^{2n+1}) q^{2n+1} / (1 + q^{2n+2})^2.
NumericValue tr2_sum_numeric(const BigComplex& q, int digits) {
  int work = digits + 15;
  BigComplex one = BigComplex::of(1, 0, work);
  BigComplex q2 = q * q;
  BigComplex qodd = q;  // q^{2n+1}
  BigComplex qeven = q2; // q^{2n+2}
  NumericSum acc(digits, work);
  BigComplex term = one; // n = 0
  bool more = acc.add(term);
  while (more) {
    BigComplex den = one + qeven;
    term = -(term * (one - qodd) * qodd) / (den * den);
    qodd = qodd * q2;
    qeven = qeven * q2;
    more = acc.add(term);
  }
  return {acc.value(), acc.log10_peak(), acc.terms()};
}

} // namespace

AppellSplit split_appell_numeric(const ForParams& p, const BigFloat& r, int digits) {
  if (r.sign() <= 0 || r >= BigFloat::of(1L, 30))
    throw std::invalid_argument("split_appell_numeric: need 0 < r < 1");
  Cyclo w = Cyclo::root(p.b, p.a);
  BigComplex q = root_times_radius(p.root, r, digits + 15);
  AppellSplit split;
  AppellInnerNumeric inner = appell_inner_numeric(
      w, q, digits, p.root.m, &split.rank_parts, &split.crank_parts);
  split.rank_total = inner.a1;
  split.crank_total = inner.a2;
  split.collapsing = collapsing_residue(p);
  return split;
}

RadialReport quotient_limit_check(const ForParams& p, const RadialPath& path) {
  path.validate();
  Cyclo w = Cyclo::root(p.b, p.a);
  RadialReport report;
  report.requested_samples = path.t_max - path.t_min + 1;
  for (int t = path.t_min; t <= path.t_max; ++t) {
    BigFloat r = path.radius(t);
    BigComplex q = root_times_radius(p.root, r, path.digits + 15);
    AppellInnerNumeric inner = appell_inner_numeric(w, q, path.digits);
    BigComplex quotient = inner.a1 / inner.a2;
    // Quotient accuracy is limited by the relative accuracy of the two sums.
    double floor_mag = std::min(inner.a1.log10_abs(), inner.a2.log10_abs());
    double peak = inner.log10_peak - floor_mag;
    if (!sample_passes_guard(path, peak)) {
      report.truncated = true;
      break;
    }
    report.samples.push_back({t, r, quotient, peak});
  }
  finish_report(report, path, theta_multiplier(p));
  return report;
}

RadialReport radial_diff_for1(long k, long h, const RadialPath& path) {
  path.validate();
  RootSpec root(h, 2 * k);
  bool minus = (k & 1); // (-1)^k
  RadialReport report;
  report.requested_samples = path.t_max - path.t_min + 1;
  for (int t = path.t_min; t <= path.t_max; ++t) {
    BigFloat r = path.radius(t);
    BigComplex q = root_times_radius(root, r, path.digits + 15);
    NumericValue fv = eval_numeric({SeriesTag::F, {}, {}}, q, path.digits);
    NumericValue bv = eval_numeric({SeriesTag::B, {}, {}}, q, path.digits);
    BigComplex diff = minus ? fv.value + bv.value : fv.value - bv.value;
    double peak = std::max({fv.log10_peak, bv.log10_peak, fv.value.log10_abs(),
                            bv.value.log10_abs()});
    if (!sample_passes_guard(path, peak)) {
      report.truncated = true;
      break;
    }
    report.samples.push_back({t, r, diff, peak});
  }
  finish_report(report, path, for1_value(k, root));
  return report;
}

RadialReport radial_diff_for3(const ForParams& p, const RadialPath& path) {
  path.validate();
  Cyclo w = Cyclo::root(p.b, p.a);
  Cyclo mu = theta_multiplier(p);
  int work = path.digits + 15;
  BigComplex one = BigComplex::of(1, 0, work);
  BigComplex wc = w.embed(work);
  BigComplex wi = w.inverse().embed(work);
  BigComplex mu_c = mu.embed(work);
  RadialReport report;
  report.requested_samples = path.t_max - path.t_min + 1;
  for (int t = path.t_min; t <= path.t_max; ++t) {
    BigFloat r = path.radius(t);
    BigComplex q = root_times_radius(p.root, r, work);
    AppellInnerNumeric inner = appell_inner_numeric(w, q, path.digits);
    NumericValue eta = numeric_poch_inf(one, 1, 1, q, path.digits);
    NumericValue ubig = eval_numeric({SeriesTag::UBig, w, {}}, q, path.digits);
    BigComplex pref = (one - wi) / eta.value;
    // R = pref * a1 - (1-w)(1-w^{-1}) U and C = pref * a2.
    BigComplex rank_val = pref * inner.a1 - (one - wc) * (one - wi) * ubig.value;
    BigComplex crank_val = pref * inner.a2;
    BigComplex diff = rank_val - mu_c * crank_val;
    double lpref = pref.log10_abs();
    double peak = std::max({inner.log10_peak + lpref, ubig.log10_peak,
                            rank_val.log10_abs(), crank_val.log10_abs()});
    if (!sample_passes_guard(path, peak)) {
      report.truncated = true;
      break;
    }
    report.samples.push_back({t, r, diff, peak});
  }
  finish_report(report, path, for3_value(p));
  return report;
}

DecomposedReport decomposed_radial_check(long k, long h, const RadialPath& path) {
  path.validate();
  RootSpec root(h, 2 * k);
  int work = path.digits + 15;
  DecomposedReport report;
  report.k = k;
  report.u_exact = exact_u_at_root(k, root);
  BigComplex u_exact_c = report.u_exact.embed(path.digits);
  BigComplex minus_one = BigComplex::of(-1, 0, work);
  report.prefactor_decreasing = true;
  report.u_distance_decreasing = true;
  report.tr_box_radius = BigFloat::of(0L, path.digits);
  for (int t = path.t_min; t <= path.t_max; ++t) {
    BigFloat r = path.radius(t);
    BigComplex q = root_times_radius(root, r, work);
    NumericValue pre = numeric_poch_inf(minus_one, 1, 1, q, path.digits);
    BigFloat pre_sq = pre.value.re * pre.value.re + pre.value.im * pre.value.im;
    NumericValue tr = (k % 2 == 0) ? tr1_sum_numeric(q, path.digits)
                                   : tr2_sum_numeric(q, path.digits);
    NumericValue uv = eval_numeric({SeriesTag::USmall, {}, {}}, q, path.digits);
    BigFloat udist = (uv.value - u_exact_c).abs();
    if (!report.rows.empty()) {
      if (pre_sq >= report.rows.back().prefactor_sq_mag)
        report.prefactor_decreasing = false;
      if (udist >= report.rows.back().u_distance)
        report.u_distance_decreasing = false;
    }
    BigFloat tr_abs = tr.value.abs();
    if (tr_abs > report.tr_box_radius) report.tr_box_radius = tr_abs;
    report.rows.push_back({t, r, pre_sq, tr.value, uv.value, udist});
  }
  report.prefactor_final = report.rows.back().prefactor_sq_mag;
  report.u_final_distance = report.rows.back().u_distance;
  return report;
}

} // namespace qlab
