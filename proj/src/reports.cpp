#include "qlab/reports.hpp"

#include <sstream>

namespace qlab {

namespace {

std::string w_string(const std::optional<Cyclo>& w) {
  return w ? w->encode() : std::string();
}

} // namespace

json cyclo_to_json(const Cyclo& value, int digits) {
  json coeffs = json::array();
  for (const Rat& c : value.coeffs()) coeffs.push_back(to_string(c));
  BigComplex e = value.embed(digits);
  return {{"order", value.order()},
          {"coeffs", coeffs},
          {"re", e.re.str(digits)},
          {"im", e.im.str(digits)}};
}

json identity_report_to_json(const IdentityReport& report) {
  json j;
  j["identity"] = identity_name(report.tag);
  j["order"] = report.order;
  j["w"] = report.w ? json(report.w->encode()) : json(nullptr);
  j["status"] = report.pass ? "pass" : "fail";
  if (report.first_mismatch) {
    j["first_mismatch"] = {{"n", report.first_mismatch->index},
                           {"lhs", report.first_mismatch->lhs.encode()},
                           {"rhs", report.first_mismatch->rhs.encode()}};
  } else {
    j["first_mismatch"] = nullptr;
  }
  return j;
}

IdentityReport identity_report_from_json(const json& j) {
  IdentityReport report;
  auto tag = identity_from_name(j.at("identity").get<std::string>());
  if (!tag) throw std::invalid_argument("identity_report_from_json: unknown identity");
  report.tag = *tag;
  report.order = j.at("order").get<int>();
  if (!j.at("w").is_null()) report.w = Cyclo::decode(j.at("w").get<std::string>());
  report.pass = j.at("status").get<std::string>() == "pass";
  if (!j.at("first_mismatch").is_null()) {
    const json& m = j.at("first_mismatch");
    report.first_mismatch =
        Mismatch{m.at("n").get<int>(), Cyclo::decode(m.at("lhs").get<std::string>()),
                 Cyclo::decode(m.at("rhs").get<std::string>())};
  }
  return report;
}

json identity_reports_to_json(const std::vector<IdentityReport>& reports) {
  json arr = json::array();
  for (const IdentityReport& r : reports) arr.push_back(identity_report_to_json(r));
  return arr;
}

json radial_report_to_json(const RadialReport& report) {
  json samples = json::array();
  for (const RadialSample& s : report.samples) {
    samples.push_back({{"t", s.t},
                       {"r", s.r.str()},
                       {"re", s.value.re.str()},
                       {"im", s.value.im.str()}});
  }
  json j;
  j["digits"] = report.digits;
  j["requested_samples"] = report.requested_samples;
  j["truncated"] = report.truncated;
  j["samples"] = samples;
  j["extrapolated"] = {{"re", report.extrapolated.re.str()},
                       {"im", report.extrapolated.im.str()}};
  j["error_estimate"] = report.error_estimate.str();
  j["exact_target"] =
      report.exact_target ? cyclo_to_json(*report.exact_target, report.digits) : json(nullptr);
  j["agreement"] = report.agreement ? json(report.agreement->str()) : json(nullptr);
  return j;
}

RadialReport radial_report_from_json(const json& j) {
  RadialReport report;
  report.digits = j.at("digits").get<int>();
  int prec = report.digits + 15;
  report.requested_samples = j.at("requested_samples").get<int>();
  report.truncated = j.at("truncated").get<bool>();
  for (const json& s : j.at("samples")) {
    RadialSample sample{s.at("t").get<int>(),
                        BigFloat::parse(s.at("r").get<std::string>(), prec),
                        BigComplex(BigFloat::parse(s.at("re").get<std::string>(), prec),
                                   BigFloat::parse(s.at("im").get<std::string>(), prec)),
                        0.0};
    report.samples.push_back(std::move(sample));
  }
  report.extrapolated =
      BigComplex(BigFloat::parse(j.at("extrapolated").at("re").get<std::string>(), prec),
                 BigFloat::parse(j.at("extrapolated").at("im").get<std::string>(), prec));
  report.error_estimate = BigFloat::parse(j.at("error_estimate").get<std::string>(), prec);
  if (!j.at("exact_target").is_null()) {
    const json& e = j.at("exact_target");
    long order = e.at("order").get<long>();
    std::string enc;
    if (order == 1) {
      enc = e.at("coeffs")[0].get<std::string>();
    } else {
      enc = "[";
      const json& coeffs = e.at("coeffs");
      for (std::size_t i = 0; i < coeffs.size(); ++i) {
        if (i) enc += ",";
        enc += coeffs[i].get<std::string>();
      }
      enc += "]@z" + std::to_string(order);
    }
    report.exact_target = Cyclo::decode(enc);
  }
  if (!j.at("agreement").is_null())
    report.agreement = BigFloat::parse(j.at("agreement").get<std::string>(), prec);
  return report;
}

json relation_result_to_json(const RelationResult& result) {
  json monomials = json::array();
  for (const auto& [i, j2, lambda] : result.monomials)
    monomials.push_back({{"i", i}, {"j", j2}, {"coefficient", to_string(lambda)}});
  return {{"weight", result.weight},
          {"found", result.found},
          {"normalizing_constant", to_string(result.c)},
          {"monomials", monomials},
          {"verified_order", result.verified_order},
          {"unknowns", result.unknowns},
          {"rank", result.rank}};
}

json decomposed_report_to_json(const DecomposedReport& report) {
  json rows = json::array();
  for (const DecomposedRow& r : report.rows) {
    rows.push_back({{"t", r.t},
                    {"r", r.r.str(30)},
                    {"prefactor_sq_mag", r.prefactor_sq_mag.str(30)},
                    {"tr_re", r.tr_sum.re.str(30)},
                    {"tr_im", r.tr_sum.im.str(30)},
                    {"u_re", r.u_value.re.str(30)},
                    {"u_im", r.u_value.im.str(30)},
                    {"u_distance", r.u_distance.str(30)}});
  }
  return {{"k", report.k},
          {"rows", rows},
          {"prefactor_decreasing", report.prefactor_decreasing},
          {"prefactor_final", report.prefactor_final.str(30)},
          {"tr_box_radius", report.tr_box_radius.str(30)},
          {"u_exact", cyclo_to_json(report.u_exact, 30)},
          {"u_final_distance", report.u_final_distance.str(30)},
          {"u_distance_decreasing", report.u_distance_decreasing}};
}

json appell_split_to_json(const AppellSplit& split, int digits) {
  json parts1 = json::array(), parts2 = json::array();
  for (const BigComplex& p : split.rank_parts)
    parts1.push_back({{"re", p.re.str(digits)}, {"im", p.im.str(digits)}});
  for (const BigComplex& p : split.crank_parts)
    parts2.push_back({{"re", p.re.str(digits)}, {"im", p.im.str(digits)}});
  return {{"collapsing_residue", split.collapsing},
          {"rank_parts", parts1},
          {"crank_parts", parts2},
          {"rank_total", {{"re", split.rank_total.re.str(digits)},
                          {"im", split.rank_total.im.str(digits)}}},
          {"crank_total", {{"re", split.crank_total.re.str(digits)},
                           {"im", split.crank_total.im.str(digits)}}}};
}

std::string identity_reports_csv(const std::vector<IdentityReport>& reports) {
  std::ostringstream out;
  out << "identity,w,order,status,mismatch_n,lhs,rhs\n";
  for (const IdentityReport& r : reports) {
    out << identity_name(r.tag) << "," << w_string(r.w) << "," << r.order << ","
        << (r.pass ? "pass" : "fail") << ",";
    if (r.first_mismatch)
      out << r.first_mismatch->index << "," << r.first_mismatch->lhs.encode() << ","
          << r.first_mismatch->rhs.encode();
    else
      out << ",,";
    out << "\n";
  }
  return out.str();
}

std::string radial_report_csv(const RadialReport& report) {
  std::ostringstream out;
  out << "t,r,re,im\n";
  for (const RadialSample& s : report.samples)
    out << s.t << "," << s.r.str_fixed(s.t) << "," << s.value.re.str(report.digits)
        << "," << s.value.im.str(report.digits) << "\n";
  out << "# extrapolated," << report.extrapolated.re.str(report.digits) << ","
      << report.extrapolated.im.str(report.digits) << "\n";
  out << "# error_estimate," << report.error_estimate.str(20) << "\n";
  if (report.exact_target) {
    BigComplex e = report.exact_target->embed(report.digits);
    out << "# exact_target," << e.re.str(report.digits) << "," << e.im.str(report.digits)
        << "\n";
    out << "# agreement," << report.agreement->str(20) << "\n";
  }
  if (report.truncated)
    out << "# truncated," << report.samples.size() << " of " << report.requested_samples
        << " samples met the precision guard\n";
  return out.str();
}

std::string identity_report_text(const IdentityReport& report) {
  std::ostringstream out;
  out << (report.pass ? "PASS " : "FAIL ") << identity_name(report.tag);
  if (report.w) out << " w=" << report.w->str();
  out << " N=" << report.order;
  if (report.first_mismatch)
    out << " first_mismatch n=" << report.first_mismatch->index
        << " lhs=" << report.first_mismatch->lhs.str()
        << " rhs=" << report.first_mismatch->rhs.str();
  return out.str();
}

std::string radial_report_text(const RadialReport& report) {
  std::ostringstream out;
  for (const RadialSample& s : report.samples)
    out << "t=" << s.t << " r=" << s.r.str(12) << " value=" << s.value.str(12) << "\n";
  if (report.truncated)
    out << "(" << report.samples.size() << " of " << report.requested_samples
        << " samples met the precision guard)\n";
  out << "extrapolated = " << report.extrapolated.str(20) << "\n";
  out << "error_estimate = " << report.error_estimate.str(6) << "\n";
  if (report.exact_target) {
    out << "exact_target = " << report.exact_target->str() << " = "
        << report.exact_target->embed(20).str(20) << "\n";
    out << "agreement = " << report.agreement->str(6) << "\n";
  }
  return out.str();
}

std::string relation_result_text(const RelationResult& result) {
  std::ostringstream out;
  if (!result.found) {
    out << "weight " << result.weight << ": no graded relation found";
    if (result.unknowns == 0) out << " (empty graded basis)";
    return out.str();
  }
  out << "1";
  if (result.c != 0) {
    Rat c = result.c;
    out << (c > 0 ? " + " : " - ");
    if (c < 0) c = -c;
    out << to_string(c) << "*zeta_q(" << result.weight << ")";
  }
  out << " = ";
  bool first = true;
  for (const auto& [i, j, lambda] : result.monomials) {
    if (lambda == 0) continue;
    Rat l = lambda;
    if (!first)
      out << (l > 0 ? " + " : " - ");
    else if (l < 0)
      out << "-";
    if (l < 0) l = -l;
    first = false;
    if (l != 1) out << to_string(l) << "*";
    if (i > 0) out << "Q" << (i > 1 ? "^" + std::to_string(i) : "");
    if (i > 0 && j > 0) out << "*";
    if (j > 0) out << "R" << (j > 1 ? "^" + std::to_string(j) : "");
    if (i == 0 && j == 0) out << "1";
  }
  out << "   (verified to order " << result.verified_order << ")";
  return out.str();
}

bool identity_reports_equal(const IdentityReport& a, const IdentityReport& b) {
  if (a.tag != b.tag || a.order != b.order || a.pass != b.pass) return false;
  if (a.w.has_value() != b.w.has_value()) return false;
  if (a.w && !(*a.w == *b.w)) return false;
  if (a.first_mismatch.has_value() != b.first_mismatch.has_value()) return false;
  if (a.first_mismatch) {
    if (a.first_mismatch->index != b.first_mismatch->index) return false;
    if (!(a.first_mismatch->lhs == b.first_mismatch->lhs)) return false;
    if (!(a.first_mismatch->rhs == b.first_mismatch->rhs)) return false;
  }
  return true;
}

bool radial_reports_equal(const RadialReport& a, const RadialReport& b) {
  if (a.digits != b.digits || a.truncated != b.truncated ||
      a.requested_samples != b.requested_samples ||
      a.samples.size() != b.samples.size())
    return false;
  for (std::size_t i = 0; i < a.samples.size(); ++i) {
    if (a.samples[i].t != b.samples[i].t) return false;
    if (a.samples[i].r != b.samples[i].r) return false;
    if (!(a.samples[i].value.re == b.samples[i].value.re)) return false;
    if (!(a.samples[i].value.im == b.samples[i].value.im)) return false;
  }
  if (!(a.extrapolated.re == b.extrapolated.re)) return false;
  if (!(a.extrapolated.im == b.extrapolated.im)) return false;
  if (a.error_estimate != b.error_estimate) return false;
  if (a.exact_target.has_value() != b.exact_target.has_value()) return false;
  if (a.exact_target && !(*a.exact_target == *b.exact_target)) return false;
  if (a.agreement.has_value() != b.agreement.has_value()) return false;
  if (a.agreement && *a.agreement != *b.agreement) return false;
  return true;
}

} // namespace qlab
