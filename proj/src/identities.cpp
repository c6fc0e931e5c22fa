#include "qlab/identities.hpp"

#include <algorithm>
#include <map>

namespace qlab {

bool identity_needs_w(IdentityTag tag) {
  return tag == IdentityTag::Rama1 || tag == IdentityTag::Rama2;
}

std::string identity_name(IdentityTag tag) {
  switch (tag) {
    case IdentityTag::Rama1: return "rama1";
    case IdentityTag::Rama2: return "rama2";
    case IdentityTag::CombinedMinus: return "combined_minus";
    case IdentityTag::CombinedPlus: return "combined_plus";
    case IdentityTag::Tr1: return "tr1";
    case IdentityTag::Tr2: return "tr2";
    case IdentityTag::AltTr1: return "alt_tr1";
    case IdentityTag::PartialTheta: return "partial_theta";
    case IdentityTag::BilateralOdd: return "bilateral_odd";
    case IdentityTag::BilateralEvenWeighted: return "bilateral_even_weighted";
  }
  return "?";
}

std::optional<IdentityTag> identity_from_name(const std::string& name) {
  static const std::map<std::string, IdentityTag> table = {
      {"rama1", IdentityTag::Rama1},
      {"rama2", IdentityTag::Rama2},
      {"combined_minus", IdentityTag::CombinedMinus},
      {"combined_plus", IdentityTag::CombinedPlus},
      {"tr1", IdentityTag::Tr1},
      {"tr2", IdentityTag::Tr2},
      {"alt_tr1", IdentityTag::AltTr1},
      {"partial_theta", IdentityTag::PartialTheta},
      {"bilateral_odd", IdentityTag::BilateralOdd},
      {"bilateral_even_weighted", IdentityTag::BilateralEvenWeighted}};
  auto it = table.find(name);
  if (it == table.end()) return std::nullopt;
  return it->second;
}

std::vector<IdentityTag> parameter_free_identities() {
  return {IdentityTag::CombinedMinus, IdentityTag::CombinedPlus,
          IdentityTag::Tr1,           IdentityTag::Tr2,
          IdentityTag::AltTr1,        IdentityTag::PartialTheta,
          IdentityTag::BilateralOdd,  IdentityTag::BilateralEvenWeighted};
}

namespace {

// The two bilateral sums of the combined formulas, folded to nonnegative
// indices. Pairing j <-> 1-j makes
//   sum_{j in Z} q^{j(2j-1)} / (1 + q^{2j-1}) = 2 sum_{j>=1} q^{j(2j-1)} / (1 + q^{2j-1}),
// and pairing j <-> -j makes
//   sum_{j in Z} q^{j(2j+1)} / (1 + q^{2j})  = 1/2 + 2 sum_{j>=1} q^{j(2j+1)} / (1 + q^{2j}).
Series<Rat> bilateral_minus(int order) {
  Series<Rat> s(order);
  for (long j = 1; j * (2 * j - 1) <= order; ++j) {
    Series<Rat> t = Series<Rat>::monomial(rat(2), static_cast<int>(j * (2 * j - 1)), order);
    t.mul_geometric(rat(-1), static_cast<int>(2 * j - 1));
    s += t;
  }
  return s;
}

Series<Rat> bilateral_plus(int order) {
  Series<Rat> s = Series<Rat>::constant(rat(1, 2), order);
  for (long j = 1; j * (2 * j + 1) <= order; ++j) {
    Series<Rat> t = Series<Rat>::monomial(rat(2), static_cast<int>(j * (2 * j + 1)), order);
    t.mul_geometric(rat(-1), static_cast<int>(2 * j));
    s += t;
  }
  return s;
}

Series<Rat> inv_qq_inf(int order) {
  return qpoch(rat(1), 1, 1, std::nullopt, order).inverted();
}

Series<Rat> negq_inf_sq(int order) {
  Series<Rat> p = qpoch(rat(-1), 1, 1, std::nullopt, order);
  return p * p;
}

// sum_{n>=1} (-1)^{n-1} (q;q^2)_{n-1} q^{n^2} / (-q;q^2)_n^2
Series<Rat> tr1_sum(int order) {
  Series<Rat> s(order);
  for (long n = 1; n * n <= order; ++n) {
    Series<Rat> t = qpoch(rat(1), 1, 2, n - 1, order);
    t.shift(static_cast<int>(n * n));
    for (long j = 0; j < n; ++j) {
      t.mul_geometric(rat(-1), static_cast<int>(2 * j + 1));
      t.mul_geometric(rat(-1), static_cast<int>(2 * j + 1));
    }
    if (!(n & 1)) s -= t; else s += t;
  }
  return s;
}

// sum_{n>=0} (-1)^n (q;q^2)_n q^{n^2} / (-q^2;q^2)_n^2
Series<Rat> tr2_sum(int order) {
  Series<Rat> s(order);
  for (long n = 0; n * n <= order; ++n) {
    Series<Rat> t = qpoch(rat(1), 1, 2, n, order);
    t.shift(static_cast<int>(n * n));
    for (long j = 1; j <= n; ++j) {
      t.mul_geometric(rat(-1), static_cast<int>(2 * j));
      t.mul_geometric(rat(-1), static_cast<int>(2 * j));
    }
    if (n & 1) s -= t; else s += t;
  }
  return s;
}

// sum_{n>=1} (-1)^{n-1} (-q^2;q^2)_{n-1} q^n / (-q;q^2)_n
Series<Rat> alt_tr1_sum(int order) {
  Series<Rat> s(order);
  for (long n = 1; n <= order; ++n) {
    Series<Rat> t = qpoch(rat(-1), 2, 2, n - 1, order);
    t.shift(static_cast<int>(n));
    for (long j = 0; j < n; ++j)
      t.mul_geometric(rat(-1), static_cast<int>(2 * j + 1));
    if (!(n & 1)) s -= t; else s += t;
  }
  return s;
}

// Bilateral sum_{n in Z} (-q)^{n(n+1)/2} / (1 + q^{2n}) with nonnegative
// exponents: the n = -m term picks up q^{2m} from clearing the denominator,
// contributing (-1)^{m(m-1)/2} q^{m(m+3)/2} / (1 + q^{2m}).
Series<Rat> bilateral_odd_inner(int order) {
  Series<Rat> s = Series<Rat>::constant(rat(1, 2), order); // n = 0
  for (long n = 1; n * (n + 1) / 2 <= order; ++n) {
    long T = n * (n + 1) / 2;
    Series<Rat> t = Series<Rat>::monomial(rat((T & 1) ? -1 : 1), static_cast<int>(T), order);
    t.mul_geometric(rat(-1), static_cast<int>(2 * n));
    s += t;
  }
  for (long m = 1; m * (m + 3) / 2 <= order; ++m) {
    long Tprev = m * (m - 1) / 2;
    Series<Rat> t = Series<Rat>::monomial(rat((Tprev & 1) ? -1 : 1),
                                          static_cast<int>(m * (m + 3) / 2), order);
    t.mul_geometric(rat(-1), static_cast<int>(2 * m));
    s += t;
  }
  return s;
}

// Weighted bilateral sum_{n in Z} (-1)^n n (-q)^{n(n+1)/2} / (1 + q^{2n});
// the n = 0 term vanishes with its factor n.
Series<Rat> bilateral_even_weighted_inner(int order) {
  Series<Rat> s(order);
  for (long n = 1; n * (n + 1) / 2 <= order; ++n) {
    long T = n * (n + 1) / 2;
    long sign = ((n & 1) ? -1 : 1) * ((T & 1) ? -1 : 1);
    Series<Rat> t = Series<Rat>::monomial(rat(sign * n), static_cast<int>(T), order);
    t.mul_geometric(rat(-1), static_cast<int>(2 * n));
    s += t;
  }
  for (long m = 1; m * (m + 3) / 2 <= order; ++m) {
    long Tprev = m * (m - 1) / 2;
    long sign = ((m & 1) ? -1 : 1) * ((Tprev & 1) ? -1 : 1);
    Series<Rat> t = Series<Rat>::monomial(rat(-sign * m),
                                          static_cast<int>(m * (m + 3) / 2), order);
    t.mul_geometric(rat(-1), static_cast<int>(2 * m));
    s += t;
  }
  return s;
}

std::pair<Series<Rat>, Series<Rat>> build_rational_identity(IdentityTag tag, int order) {
  switch (tag) {
    case IdentityTag::CombinedMinus: {
      Series<Rat> lhs = expand(SeriesTag::F, order);
      Series<Rat> u = expand(SeriesTag::USmall, order);
      u.mul_scalar(rat(4));
      lhs += u;
      lhs -= expand(SeriesTag::B, order);
      Series<Rat> rhs = inv_qq_inf(order) * bilateral_minus(order);
      rhs.mul_scalar(rat(4));
      return {lhs, rhs};
    }
    case IdentityTag::CombinedPlus: {
      Series<Rat> lhs = expand(SeriesTag::F, order);
      Series<Rat> u = expand(SeriesTag::USmall, order);
      u.mul_scalar(rat(4));
      lhs += u;
      lhs += expand(SeriesTag::B, order);
      Series<Rat> rhs = inv_qq_inf(order) * bilateral_plus(order);
      rhs.mul_scalar(rat(4));
      return {lhs, rhs};
    }
    case IdentityTag::Tr1: {
      Series<Rat> lhs = inv_qq_inf(order) * bilateral_minus(order);
      Series<Rat> rhs = negq_inf_sq(order) * tr1_sum(order);
      rhs.mul_scalar(rat(2));
      return {lhs, rhs};
    }
    case IdentityTag::Tr2: {
      Series<Rat> lhs = inv_qq_inf(order) * bilateral_plus(order);
      Series<Rat> rhs = negq_inf_sq(order) * tr2_sum(order);
      rhs.mul_scalar(rat(1, 2));
      return {lhs, rhs};
    }
    case IdentityTag::AltTr1: {
      Series<Rat> lhs = inv_qq_inf(order) * bilateral_minus(order);
      Series<Rat> rhs = negq_inf_sq(order) * alt_tr1_sum(order);
      rhs.mul_scalar(rat(2));
      return {lhs, rhs};
    }
    case IdentityTag::PartialTheta: {
      // sum_n (-1)^n (-q;q^2)_n q^n / (-q^2;q^2)_n = sum_n (-1)^n q^{n(n+1)/2}
      Series<Rat> lhs(order);
      for (long n = 0; n <= order; ++n) {
        Series<Rat> t = qpoch(rat(-1), 1, 2, n, order);
        t.shift(static_cast<int>(n));
        for (long j = 1; j <= n; ++j)
          t.mul_geometric(rat(-1), static_cast<int>(2 * j));
        if (n & 1) lhs -= t; else lhs += t;
      }
      Series<Rat> rhs(order);
      for (long n = 0; n * (n + 1) / 2 <= order; ++n)
        rhs.set(static_cast<int>(n * (n + 1) / 2), rat((n & 1) ? -1 : 1));
      return {lhs, rhs};
    }
    case IdentityTag::BilateralOdd: {
      Series<Rat> lhs = bilateral_plus(order);
      Series<Rat> pref =
          qpoch(rat(-1), 1, 1, std::nullopt, order) * qpoch(rat(-1), 1, 2, std::nullopt, order);
      Series<Rat> rhs = pref * bilateral_odd_inner(order);
      return {lhs, rhs};
    }
    case IdentityTag::BilateralEvenWeighted: {
      Series<Rat> lhs = bilateral_minus(order);
      Series<Rat> mq2 = qpoch(rat(-1), 2, 2, std::nullopt, order); // (-q^2;q^2)_inf
      Series<Rat> pref = mq2 * mq2;
      pref *= qpoch(rat(1), 1, 2, std::nullopt, order);            // (q;q^2)_inf
      pref *= qpoch(rat(-1), 1, 2, std::nullopt, order).inverted();
      Series<Rat> q2q2 = qpoch(rat(1), 2, 2, std::nullopt, order); // (q^2;q^2)_inf
      Series<Rat> inv = q2q2.inverted();
      pref *= inv;
      pref *= inv;
      pref.mul_scalar(rat(2));
      Series<Rat> rhs = pref * bilateral_even_weighted_inner(order);
      return {lhs, rhs};
    }
    default:
      throw std::invalid_argument("identity '" + identity_name(tag) + "' requires w");
  }
}

std::pair<Series<Cyclo>, Series<Cyclo>> build_w_identity(IdentityTag tag, const Cyclo& w,
                                                         int order) {
  if (w == Cyclo(1))
    throw std::invalid_argument("identity '" + identity_name(tag) + "': w = 1 not allowed");
  switch (tag) {
    case IdentityTag::Rama1: {
      Series<Cyclo> lhs = expand(SeriesTag::Rank, w, order);
      Series<Cyclo> u = expand(SeriesTag::UBig, w, order);
      u.mul_scalar((Cyclo(1) - w) * (Cyclo(1) - w.inverse()));
      lhs += u;
      return {lhs, appell_lerch(SeriesTag::Appell1, w, order)};
    }
    case IdentityTag::Rama2:
      return {expand(SeriesTag::Crank, w, order),
              appell_lerch(SeriesTag::Appell2, w, order)};
    default:
      throw std::invalid_argument("identity '" + identity_name(tag) + "' takes no w");
  }
}

template <typename F>
IdentityReport compare_sides(IdentityTag tag, const std::optional<Cyclo>& w, int order,
                             const Series<F>& lhs, Series<F> rhs,
                             const std::optional<Perturbation>& perturb) {
  if (perturb) {
    if (perturb->index < 0 || perturb->index > order)
      throw std::invalid_argument("perturbation index out of range");
    rhs.set(perturb->index, rhs[perturb->index] + F(perturb->delta));
  }
  IdentityReport report;
  report.tag = tag;
  report.w = w;
  report.order = order;
  std::optional<int> idx = Series<F>::first_difference(lhs, rhs);
  report.pass = !idx.has_value();
  if (idx)
    report.first_mismatch = Mismatch{*idx, Cyclo(lhs[*idx]), Cyclo(rhs[*idx])};
  return report;
}

} // namespace

IdentityReport check_identity(IdentityTag tag, int order, const std::optional<Cyclo>& w,
                              const std::optional<Perturbation>& perturb) {
  if (order < 1) throw std::invalid_argument("check_identity: order must be >= 1");
  if (identity_needs_w(tag)) {
    if (!w) throw std::invalid_argument("identity '" + identity_name(tag) + "' requires w");
    auto [lhs, rhs] = build_w_identity(tag, *w, order);
    return compare_sides<Cyclo>(tag, w, order, lhs, std::move(rhs), perturb);
  }
  if (w) throw std::invalid_argument("identity '" + identity_name(tag) + "' takes no w");
  auto [lhs, rhs] = build_rational_identity(tag, order);
  return compare_sides<Rat>(tag, std::nullopt, order, lhs, std::move(rhs), perturb);
}

std::vector<IdentityReport> run_suite(int order, const std::vector<Cyclo>& w_list) {
  if (w_list.empty())
    throw std::invalid_argument("run_suite: w_list must not be empty");
  for (const Cyclo& w : w_list)
    if (w == Cyclo(1))
      throw std::invalid_argument("run_suite: w = 1 not allowed");
  std::vector<IdentityReport> reports;
  for (IdentityTag tag : parameter_free_identities())
    reports.push_back(check_identity(tag, order));
  for (const Cyclo& w : w_list) {
    reports.push_back(check_identity(IdentityTag::Rama1, order, w));
    reports.push_back(check_identity(IdentityTag::Rama2, order, w));
  }
  return reports;
}

// ---------------------------------------------------------------------------
// q-zeta relation finder
// ---------------------------------------------------------------------------

namespace {

struct LinearSolution {
  bool consistent = false;
  int rank = 0;
  std::vector<Rat> x;
};

// Exact Gaussian elimination on an (rows x cols) system with right-hand side;
// free variables are pinned to zero.
LinearSolution solve_exact(std::vector<std::vector<Rat>> a, std::vector<Rat> b) {
  const std::size_t rows = a.size();
  const std::size_t cols = rows ? a[0].size() : 0;
  std::vector<int> pivot_col_of_row;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    std::swap(b[p], b[r]);
    Rat inv = 1 / a[r][c];
    for (std::size_t j = c; j < cols; ++j) a[r][j] *= inv;
    b[r] *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == 0) continue;
      Rat f = a[i][c];
      for (std::size_t j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
      b[i] -= f * b[r];
    }
    pivot_col_of_row.push_back(static_cast<int>(c));
    ++r;
  }
  LinearSolution sol;
  sol.rank = static_cast<int>(r);
  for (std::size_t i = r; i < rows; ++i)
    if (b[i] != 0) return sol; // inconsistent
  sol.consistent = true;
  sol.x.assign(cols, Rat(0));
  for (std::size_t i = 0; i < r; ++i)
    sol.x[pivot_col_of_row[i]] = b[i];
  return sol;
}

Series<Rat> graded_monomial(const Series<Rat>& q4, const Series<Rat>& q6, int i, int j) {
  Series<Rat> s = Series<Rat>::one(q4.order());
  for (int k = 0; k < i; ++k) s *= q4;
  for (int k = 0; k < j; ++k) s *= q6;
  return s;
}

} // namespace

RelationResult find_qzeta_relation(int s, int order, int verify_order) {
  if (s < 2 || (s % 2) != 0)
    throw std::invalid_argument(
        "find_qzeta_relation: only even s >= 2 is supported (no relations are "
        "expected among odd q-zeta values)");
  RelationResult result;
  result.weight = s;

  std::vector<std::pair<int, int>> monomials;
  for (int j = 0; 6 * j <= s; ++j) {
    int rem = s - 6 * j;
    if (rem % 4 == 0) monomials.emplace_back(rem / 4, j);
  }
  result.unknowns = static_cast<int>(monomials.size()) + 1;
  if (monomials.empty()) {
    result.found = false;
    result.unknowns = 0;
    return result;
  }
  if (order < 2 * result.unknowns)
    throw std::invalid_argument("find_qzeta_relation: order must be >= 2 x unknowns");
  if (verify_order <= 0) verify_order = 2 * order;

  Series<Rat> q4 = expand(SeriesTag::EisQ, order);
  Series<Rat> q6 = expand(SeriesTag::EisR, order);
  Series<Rat> zq = expand_qzeta(s, order);

  std::vector<Series<Rat>> basis;
  basis.reserve(monomials.size());
  for (auto [i, j] : monomials) basis.push_back(graded_monomial(q4, q6, i, j));

  // Unknowns: lambda_ij then c. Row n: sum lambda [q^n] Q^i R^j - c sigma_{s-1}(n)
  // equals 1 at n = 0 and 0 otherwise.
  std::vector<std::vector<Rat>> a;
  std::vector<Rat> b;
  for (int n = 0; n <= order; ++n) {
    std::vector<Rat> row;
    row.reserve(result.unknowns);
    for (const Series<Rat>& m : basis) row.push_back(m[n]);
    row.push_back(n == 0 ? Rat(0) : -zq[n]);
    a.push_back(std::move(row));
    b.push_back(n == 0 ? Rat(1) : Rat(0));
  }

  LinearSolution sol = solve_exact(std::move(a), std::move(b));
  result.rank = sol.rank;
  if (!sol.consistent) {
    result.found = false;
    return result;
  }
  for (std::size_t k = 0; k < monomials.size(); ++k)
    result.monomials.emplace_back(monomials[k].first, monomials[k].second, sol.x[k]);
  result.c = sol.x.back();

  // Re-verify the recovered relation at a higher order.
  Series<Rat> lhs(verify_order);
  Series<Rat> vq4 = expand(SeriesTag::EisQ, verify_order);
  Series<Rat> vq6 = expand(SeriesTag::EisR, verify_order);
  for (auto& [i, j, lambda] : result.monomials) {
    if (lambda == 0) continue;
    Series<Rat> m = graded_monomial(vq4, vq6, i, j);
    m.mul_scalar(lambda);
    lhs += m;
  }
  Series<Rat> rhs = expand_qzeta(s, verify_order);
  rhs.mul_scalar(result.c);
  rhs += Series<Rat>::one(verify_order);
  result.found = (lhs == rhs);
  result.verified_order = verify_order;
  return result;
}

} // namespace qlab
