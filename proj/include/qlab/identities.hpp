#pragma once

#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "qlab/catalog.hpp"

namespace qlab {

enum class IdentityTag {
  Rama1,
  Rama2,
  CombinedMinus,
  CombinedPlus,
  Tr1,
  Tr2,
  AltTr1,
  PartialTheta,
  BilateralOdd,
  BilateralEvenWeighted,
};

bool identity_needs_w(IdentityTag tag);
std::string identity_name(IdentityTag tag);
std::optional<IdentityTag> identity_from_name(const std::string& name);
std::vector<IdentityTag> parameter_free_identities();

struct Mismatch {
  int index;
  Cyclo lhs, rhs; // rational-valued identities report order-1 elements
};

struct IdentityReport {
  IdentityTag tag;
  std::optional<Cyclo> w;
  int order = 0;
  bool pass = false;
  std::optional<Mismatch> first_mismatch;
};

// Test hook: adds delta to the stated RHS coefficient before comparing, so
// defect detection can be exercised end to end.
struct Perturbation {
  int index;
  Rat delta;
};

// Builds both sides exactly and compares coefficients 0..order; the first
// mismatching index (if any) is reported with both values.
IdentityReport check_identity(IdentityTag tag, int order,
                              const std::optional<Cyclo>& w = std::nullopt,
                              const std::optional<Perturbation>& perturb = std::nullopt);

// Parameter-free identities once, then Rama1/Rama2 for each w, in that fixed
// deterministic order.
std::vector<IdentityReport> run_suite(int order, const std::vector<Cyclo>& w_list);

struct RelationResult {
  int weight = 0;
  bool found = false;
  Rat c;                                        // 1 + c zeta_q(s)
  std::vector<std::tuple<int, int, Rat>> monomials; // (i, j, lambda): lambda Q^i R^j
  int verified_order = 0;
  int unknowns = 0;
  int rank = 0;
};

// Searches the weight-graded space {Q^i R^j : 4i + 6j = s} for an exact match
// sum lambda_ij Q^i R^j = 1 + c zeta_q(s) on coefficients q^0..q^order, then
// re-verifies any solution at verify_order (default 2*order). Odd s is
// unsupported by design.
RelationResult find_qzeta_relation(int s, int order, int verify_order = 0);

} // namespace qlab
