#pragma once

#include <optional>
#include <vector>

#include "qlab/catalog.hpp"

namespace qlab {

// zeta_m^h with gcd(h, m) = 1, 1 <= h < m.
struct RootSpec {
  long h, m;

  RootSpec(long h_, long m_);
  Cyclo value() const { return Cyclo::root(m, h); }
};

// Parameter tuple of the general radial-limit theorem: 1 <= a < b,
// gcd(a, b) = 1, b | m, and hprime the inverse of h mod m.
struct ForParams {
  long a, b;
  RootSpec root;
  long hprime;

  static ForParams make(long a, long b, long h, long m);
};

struct RadialPath {
  int t_min = 2;
  int t_max = 10;
  int digits = 100;
  // Decimal accuracy a sample must retain after cancellation to be kept;
  // samples failing digits >= log10(peak) + target_digits + 10 are dropped.
  int target_digits = 12;

  void validate() const;
  BigFloat radius(int t) const { return BigFloat::one_minus_pow2(t, digits + 15); }
};

// --- Exact terminating evaluations -----------------------------------------

// u(zeta) for zeta = zeta_{2k}^h; the factor 1 + zeta^k = 0 kills every
// summand with n >= k, which is verified, not assumed.
Cyclo exact_u_at_root(long k, const RootSpec& root);

// -4 u(zeta).
Cyclo for1_value(long k, const RootSpec& root);

// -4 psi(-zeta) for even k, 2 phi(-zeta) for odd k; termination of the
// case-appropriate sum is verified programmatically.
Cyclo for2_value(long k, const RootSpec& root);

// U(zeta_b^a; zeta_m^h), exact in Q(zeta_m); terminates at some n0 <= m.
Cyclo exact_bigU_at_root(const ForParams& p);

// -(1 - zeta_b^a)(1 - zeta_b^{-a}) U(zeta_b^a; zeta_m^h).
Cyclo for3_value(const ForParams& p);

// zeta_{b^2}^{h' a^2 m}, the root of unity multiplying the crank side.
Cyclo theta_multiplier(const ForParams& p);

// The unique c0 in [0, m) with zeta_b^{-a} zeta_m^{h c0} = 1 (the residue
// class whose Appell-Lerch subsum collapses); verified exactly.
long collapsing_residue(const ForParams& p);

// --- Extrapolation -----------------------------------------------------------

struct Extrapolation {
  BigComplex value;
  BigFloat error_estimate; // |last extrapolant - previous extrapolant|
};

// Iterated Aitken delta-squared. levels < 0 (the default) iterates to full
// depth while at least two extrapolants remain. Degenerate differences
// (already-converged sequences) fall back to the last value.
Extrapolation iterated_aitken(const std::vector<BigComplex>& samples, int levels = -1);

// --- Numeric radial experiments ----------------------------------------------

struct RadialSample {
  int t;
  BigFloat r;
  BigComplex value;
  double log10_peak;
};

struct RadialReport {
  std::vector<RadialSample> samples; // samples that met the precision guard
  int requested_samples = 0;
  bool truncated = false; // true when the guard dropped trailing samples
  int digits = 0;
  BigComplex extrapolated;
  BigFloat error_estimate;
  std::optional<Cyclo> exact_target;
  std::optional<BigFloat> agreement; // |extrapolated - embed(exact_target)|
};

// Per-residue split of both bilateral Appell-Lerch sums at q = zeta_m^h r.
struct AppellSplit {
  std::vector<BigComplex> rank_parts, crank_parts; // indexed by n mod m
  BigComplex rank_total, crank_total;              // straight full sums
  long collapsing; // c0, for locating the dominant part
};
AppellSplit split_appell_numeric(const ForParams& p, const BigFloat& r, int digits);

// Samples (rama1 RHS)/C along q = zeta_m^h r_t and extrapolates toward the
// exact theta_multiplier. The shared prefactor (1 - w^{-1})/(q;q)_inf of the
// two representations cancels exactly, so the quotient is evaluated as the
// ratio of the two bilateral inner sums.
RadialReport quotient_limit_check(const ForParams& p, const RadialPath& path);

// Direct difference f - (-1)^k b sampled at q = zeta_{2k}^h r_t, extrapolated
// against the exact -4 u(zeta).
RadialReport radial_diff_for1(long k, long h, const RadialPath& path);

// R(zeta_b^a; q) - theta_multiplier * C(zeta_b^a; q) via the Appell-Lerch
// representations, against the exact for3_value.
RadialReport radial_diff_for3(const ForParams& p, const RadialPath& path);

// Cancellation-free route following the structure of the elementary proof:
// the prefactor (-q;q)_inf^2 decays to zero, the parity-matched transformed
// sum stays bounded, and u(zeta r_t) approaches the exact terminating u(zeta).
struct DecomposedRow {
  int t;
  BigFloat r;
  BigFloat prefactor_sq_mag; // |(-q;q)_inf|^2
  BigComplex tr_sum;         // tr1-type sum for even k, tr2-type for odd k
  BigComplex u_value;
  BigFloat u_distance; // |u(zeta r_t) - embed(u(zeta))|
};

struct DecomposedReport {
  long k = 0;
  std::vector<DecomposedRow> rows;
  bool prefactor_decreasing = false;
  BigFloat prefactor_final;
  BigFloat tr_box_radius; // max |tr_sum| over the path
  Cyclo u_exact;
  BigFloat u_final_distance;
  bool u_distance_decreasing = false;
};

DecomposedReport decomposed_radial_check(long k, long h, const RadialPath& path);

} // namespace qlab
