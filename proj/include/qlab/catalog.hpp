#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qlab/series.hpp"

namespace qlab {

// Named series. EisR is the weight-6 Eisenstein series 1 - 504 zeta_q(6);
// Rank is Dyson's rank generating function R(w;q) -- distinct tags.
enum class SeriesTag {
  F,
  B,
  USmall,
  Psi,
  Phi,
  Rank,
  Crank,
  UBig,
  Appell1,
  Appell2,
  QZeta,
  EisP,
  EisQ,
  EisR,
};

bool tag_needs_w(SeriesTag tag);
bool tag_needs_s(SeriesTag tag);
std::string tag_name(SeriesTag tag);
std::optional<SeriesTag> tag_from_name(const std::string& name);

struct SeriesId {
  SeriesTag tag;
  std::optional<Cyclo> w; // Rank, Crank, UBig, Appell1, Appell2
  std::optional<int> s;   // QZeta

  void validate() const;
};

// Exact truncated expansions. Parameter-free tags live over Q; w-dependent
// tags over Q(zeta_b) for w in Q(zeta_b). Outer sums run until the minimal
// q-exponent of the term exceeds the order.
Series<Rat> expand(SeriesTag tag, int order);
Series<Rat> expand_qzeta(int s, int order);
Series<Cyclo> expand(SeriesTag tag, const Cyclo& w, int order);

// Full right-hand sides of the two Appell-Lerch representations, including
// the prefactor (1 - w^{-1})/(q;q)_inf. The bilateral sum is realized with
// nonnegative exponents only: the n = 0 term is the scalar 1/(1 - w^{-1}),
// and each n = -m term (m >= 1) is rewritten, by multiplying numerator and
// denominator by -w q^m, into q^{m(m+1)/2} (unit) / (1 - w q^m).
Series<Cyclo> appell_lerch(SeriesTag tag, const Cyclo& w, int order);

struct NumericValue {
  BigComplex value;
  double log10_peak = -1e300; // max log10 magnitude seen among terms/partials
  long terms = 0;

  // Estimated absolute error: precision spent at the peak magnitude.
  double log10_err(int digits) const { return log10_peak - digits - 8; }
};

// Term-by-term / factor-by-factor evaluation at |q| < 1 with working
// precision digits + 15. Sums stop once 3 consecutive terms fall below
// 10^{-(digits+10)} x (running max partial-sum magnitude); products stop
// once factors differ from 1 by less than 10^{-(digits+10)}.
NumericValue eval_numeric(const SeriesId& id, const BigComplex& q, int digits);

// prod_{j>=0} (1 - scale q^{offset + j step}) at the same stopping rule.
NumericValue numeric_poch_inf(const BigComplex& scale, int offset, int step,
                              const BigComplex& q, int digits);

// Both bilateral Appell-Lerch inner sums at w (a1 carries (-w)^n, a2 carries
// (-1)^n), sharing denominators 1 - w^{-1} q^n. Negative indices use the same
// nonnegative-exponent rewriting as the exact expansion. When residues > 0,
// per-residue subsums (n mod residues) are accumulated into split1/split2.
struct AppellInnerNumeric {
  BigComplex a1, a2;
  double log10_peak = -1e300;
  long terms = 0;
};
AppellInnerNumeric appell_inner_numeric(const Cyclo& w, const BigComplex& q,
                                        int digits, long residues = 0,
                                        std::vector<BigComplex>* split1 = nullptr,
                                        std::vector<BigComplex>* split2 = nullptr);

// Running-peak sum with the 3-consecutive-small-terms stopping rule.
class NumericSum {
public:
  NumericSum(int digits, int work_digits);

  // Accumulates a term; returns false once the stopping rule has fired.
  bool add(const BigComplex& term);

  const BigComplex& value() const { return sum_; }
  double log10_peak() const { return peak_; }
  long terms() const { return terms_; }

private:
  BigComplex sum_;
  double thr_;
  double peak_ = -1e300;
  double max_partial_ = -1e300;
  int small_run_ = 0;
  long terms_ = 0;
};

inline constexpr long kNumericTermCap = 20'000'000;

} // namespace qlab
