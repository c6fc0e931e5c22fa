#include "qlab/bigfloat.hpp"

#include <cmath>
#include <cstdlib>

namespace qlab {

double BigFloat::log10_abs() const {
  if (mpfr_zero_p(v_)) return -1.0e300;
  if (!mpfr_number_p(v_)) return 1.0e300;
  long e = 0;
  double m = mpfr_get_d_2exp(&e, v_, MPFR_RNDN);
  return std::log10(std::fabs(m)) + static_cast<double>(e) * 0.30102999566398120;
}

std::string BigFloat::str(int sig_digits) const {
  if (sig_digits <= 0) {
    // Enough digits that parsing the string at the same precision recovers
    // the value exactly.
    sig_digits = static_cast<int>(mpfr_get_prec(v_) * 0.30102999566398120) + 3;
  }
  char* s = nullptr;
  mpfr_asprintf(&s, "%.*Re", sig_digits - 1, v_);
  std::string out(s);
  mpfr_free_str(s);
  return out;
}

std::string BigFloat::str_fixed(int frac_digits) const {
  char* s = nullptr;
  mpfr_asprintf(&s, "%.*Rf", frac_digits, v_);
  std::string out(s);
  mpfr_free_str(s);
  return out;
}

double BigComplex::log10_abs() const {
  double lr = re.log10_abs();
  double li = im.log10_abs();
  return lr > li ? lr : li;
}

std::string BigComplex::str(int sig_digits) const {
  return re.str(sig_digits) + (im.sign() < 0 ? " - " : " + ") +
         im.abs().str(sig_digits) + "*i";
}

} // namespace qlab
