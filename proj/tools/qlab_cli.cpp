// Command-line front end: identity suite, exact radial limits, radial and
// quotient experiments, q-zeta relation finder. Exit codes: 0 = all checks
// pass / value computed, 1 = a verification failed, 2 = usage or I/O error,
// 3 = precision-guard failure.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "qlab/errors.hpp"
#include "qlab/reports.hpp"

using namespace qlab;

namespace {

Cyclo parse_root_token(const std::string& token) {
  if (token == "-1") return Cyclo(-1);
  if (token.size() >= 2 && token[0] == 'z') {
    std::size_t caret = token.find('^');
    long order = std::stol(token.substr(1, caret == std::string::npos
                                                ? std::string::npos
                                                : caret - 1));
    long power = caret == std::string::npos ? 1 : std::stol(token.substr(caret + 1));
    if (order < 2) throw std::invalid_argument("root token '" + token + "': order must be >= 2");
    return Cyclo::root(order, power);
  }
  throw std::invalid_argument("cannot parse root of unity '" + token +
                              "' (use -1, zK or zK^A)");
}

std::vector<Cyclo> parse_w_list(const std::string& list) {
  std::vector<Cyclo> out;
  std::istringstream in(list);
  std::string item;
  while (std::getline(in, item, ','))
    if (!item.empty()) out.push_back(parse_root_token(item));
  return out;
}

void write_sink(const std::string& payload, const std::string& path) {
  if (path.empty()) {
    std::cout << payload;
    if (!payload.empty() && payload.back() != '\n') std::cout << "\n";
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open output file '" + path + "'");
  out << payload;
  if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

int default_digits(int fallback) {
  if (const char* env = std::getenv("QLAB_DIGITS")) {
    int d = std::atoi(env);
    if (d >= 20) return d;
  }
  return fallback;
}

struct CommonOut {
  std::string format = "text";
  std::string out_path;
};

void add_output_options(CLI::App* cmd, CommonOut& out) {
  cmd->add_option("--format", out.format, "Output format: text, json or csv")
      ->check(CLI::IsMember({"text", "json", "csv"}));
  cmd->add_option("--out", out.out_path, "Write output to a file instead of stdout");
}

int run_identities(int order, const std::string& w_spec, const std::string& only,
                   const std::string& perturb_spec, const CommonOut& out) {
  std::optional<Perturbation> perturb;
  if (!perturb_spec.empty()) {
    if (only.empty())
      throw std::invalid_argument("--perturb requires --only to name one identity");
    std::size_t colon = perturb_spec.find(':');
    Perturbation p;
    p.index = std::stoi(perturb_spec.substr(0, colon));
    p.delta = colon == std::string::npos ? rat(1) : rat_parse(perturb_spec.substr(colon + 1));
    perturb = p;
  }

  std::vector<IdentityReport> reports;
  if (!only.empty()) {
    auto tag = identity_from_name(only);
    if (!tag) throw std::invalid_argument("unknown identity '" + only + "'");
    if (identity_needs_w(*tag)) {
      for (const Cyclo& w : parse_w_list(w_spec))
        reports.push_back(check_identity(*tag, order, w, perturb));
    } else {
      reports.push_back(check_identity(*tag, order, std::nullopt, perturb));
    }
  } else {
    reports = run_suite(order, parse_w_list(w_spec));
  }

  if (out.format == "json")
    write_sink(identity_reports_to_json(reports).dump(2), out.out_path);
  else if (out.format == "csv")
    write_sink(identity_reports_csv(reports), out.out_path);
  else {
    std::ostringstream text;
    for (const IdentityReport& r : reports) text << identity_report_text(r) << "\n";
    write_sink(text.str(), out.out_path);
  }
  for (const IdentityReport& r : reports)
    if (!r.pass) return 1;
  return 0;
}

int run_coeffs(const std::string& series, int order, const std::string& w_spec, int s,
               const CommonOut& out) {
  auto tag = tag_from_name(series);
  if (!tag) throw std::invalid_argument("unknown series '" + series + "'");
  SeriesId id{*tag, {}, {}};
  if (tag_needs_w(*tag)) {
    if (w_spec.empty())
      throw std::invalid_argument("series '" + series + "' requires --w");
    id.w = parse_root_token(w_spec);
  }
  if (tag_needs_s(*tag)) id.s = s;
  id.validate();

  std::vector<std::string> coeffs;
  if (id.w) {
    Series<Cyclo> c = (*tag == SeriesTag::Appell1 || *tag == SeriesTag::Appell2)
                          ? appell_lerch(*tag, *id.w, order)
                          : expand(*tag, *id.w, order);
    for (int n = 0; n <= order; ++n) coeffs.push_back(c[n].encode());
  } else if (*tag == SeriesTag::QZeta) {
    Series<Rat> c = expand_qzeta(*id.s, order);
    for (int n = 0; n <= order; ++n) coeffs.push_back(to_string(c[n]));
  } else {
    Series<Rat> c = expand(*tag, order);
    for (int n = 0; n <= order; ++n) coeffs.push_back(to_string(c[n]));
  }

  if (out.format == "json") {
    json j;
    j["series"] = series;
    j["order"] = order;
    if (id.w) j["w"] = id.w->encode();
    if (id.s) j["s"] = *id.s;
    j["coefficients"] = coeffs;
    write_sink(j.dump(2), out.out_path);
  } else if (out.format == "csv") {
    std::ostringstream csv;
    csv << "n,coefficient\n";
    for (int n = 0; n <= order; ++n) csv << n << "," << coeffs[n] << "\n";
    write_sink(csv.str(), out.out_path);
  } else {
    std::ostringstream text;
    text << series << " to order " << order << ":\n";
    for (int n = 0; n <= order; ++n)
      text << "  q^" << n << ": " << coeffs[n] << "\n";
    write_sink(text.str(), out.out_path);
  }
  return 0;
}

int run_limit(long k, long a, long b, long h, long m, int digits, const CommonOut& out) {
  if (k > 0) {
    // Theorem 1 / Theorem 2 values at zeta_{2k}^h with the cross-check.
    RootSpec root(h, 2 * k);
    Cyclo v1 = for1_value(k, root);
    Cyclo v2 = for2_value(k, root);
    bool equal = (v1 == v2);
    if (out.format == "json") {
      json j;
      j["k"] = k;
      j["h"] = h;
      j["for1"] = cyclo_to_json(v1, digits);
      j["for2"] = cyclo_to_json(v2, digits);
      j["cross_check"] = equal ? "pass" : "fail";
      write_sink(j.dump(2), out.out_path);
    } else {
      std::ostringstream text;
      text << "limit of f - (-1)^k b at zeta_" << 2 * k << "^" << h << ":\n";
      text << "  -4 u(zeta)            = " << v1.str() << " = " << v1.embed(digits).str(digits)
           << "\n";
      text << "  Theorem 2 expression  = " << v2.str() << "\n";
      text << "  cross-check: " << (equal ? "pass" : "FAIL") << "\n";
      write_sink(text.str(), out.out_path);
    }
    return equal ? 0 : 1;
  }
  ForParams p = ForParams::make(a, b, h, m);
  Cyclo v = for3_value(p);
  Cyclo mu = theta_multiplier(p);
  long c0 = collapsing_residue(p);
  if (out.format == "json") {
    json j;
    j["a"] = a;
    j["b"] = b;
    j["h"] = h;
    j["m"] = m;
    j["value"] = cyclo_to_json(v, digits);
    j["theta_multiplier"] = cyclo_to_json(mu, digits);
    j["collapsing_residue"] = c0;
    write_sink(j.dump(2), out.out_path);
  } else {
    std::ostringstream text;
    text << "limit of R - mu C at w = zeta_" << b << "^" << a << ", q -> zeta_" << m << "^"
         << h << ":\n";
    text << "  exact value = " << v.str() << " = " << v.embed(digits).str(digits) << "\n";
    text << "  theta multiplier mu = " << mu.str() << "\n";
    text << "  collapsing residue c0 = " << c0 << "\n";
    write_sink(text.str(), out.out_path);
  }
  return 0;
}

int emit_radial(const RadialReport& report, double tol, const CommonOut& out) {
  if (out.format == "json")
    write_sink(radial_report_to_json(report).dump(2), out.out_path);
  else if (out.format == "csv")
    write_sink(radial_report_csv(report), out.out_path);
  else
    write_sink(radial_report_text(report), out.out_path);
  if (report.agreement && report.agreement->to_double() >= tol) return 1;
  return 0;
}

int run_radial(const std::string& mode, long k, long a, long b, long h, long m,
               const RadialPath& path, double tol, const CommonOut& out) {
  if (mode == "for1") {
    if (k < 1) throw std::invalid_argument("radial --mode for1 requires --k");
    return emit_radial(radial_diff_for1(k, h, path), tol, out);
  }
  if (mode == "for3") {
    return emit_radial(radial_diff_for3(ForParams::make(a, b, h, m), path), tol, out);
  }
  if (mode == "decomposed") {
    if (k < 1) throw std::invalid_argument("radial --mode decomposed requires --k");
    DecomposedReport report = decomposed_radial_check(k, h, path);
    if (out.format == "json" || out.format == "csv") {
      write_sink(decomposed_report_to_json(report).dump(2), out.out_path);
    } else {
      std::ostringstream text;
      for (const DecomposedRow& r : report.rows)
        text << "t=" << r.t << " |(-q;q)inf|^2=" << r.prefactor_sq_mag.str(6)
             << " tr_sum=" << r.tr_sum.str(10) << " |u(q)-u(zeta)|=" << r.u_distance.str(6)
             << "\n";
      text << "prefactor decreasing: " << (report.prefactor_decreasing ? "yes" : "no")
           << ", final " << report.prefactor_final.str(6) << "\n";
      text << "tr-sum box radius: " << report.tr_box_radius.str(6) << "\n";
      text << "u exact: " << report.u_exact.str() << ", final distance "
           << report.u_final_distance.str(6) << " ("
           << (report.u_distance_decreasing ? "decreasing" : "not decreasing") << ")\n";
      write_sink(text.str(), out.out_path);
    }
    bool ok = report.prefactor_decreasing && report.u_distance_decreasing &&
              report.u_final_distance.to_double() < tol;
    return ok ? 0 : 1;
  }
  throw std::invalid_argument("unknown radial mode '" + mode + "'");
}

int run_quotient(long a, long b, long h, long m, const RadialPath& path, double tol,
                 const CommonOut& out) {
  return emit_radial(quotient_limit_check(ForParams::make(a, b, h, m), path), tol, out);
}

int run_qzeta(int s, int order, int verify_order, const CommonOut& out) {
  RelationResult result = find_qzeta_relation(s, order, verify_order);
  if (out.format == "json")
    write_sink(relation_result_to_json(result).dump(2), out.out_path);
  else if (out.format == "csv") {
    std::ostringstream csv;
    csv << "weight,found,normalizing_constant,verified_order\n";
    csv << result.weight << "," << (result.found ? 1 : 0) << "," << to_string(result.c)
        << "," << result.verified_order << "\n";
    csv << "i,j,coefficient\n";
    for (const auto& [i, j, lambda] : result.monomials)
      csv << i << "," << j << "," << to_string(lambda) << "\n";
    write_sink(csv.str(), out.out_path);
  } else {
    write_sink(relation_result_text(result), out.out_path);
  }
  // A nonempty graded basis that fails to produce a verified relation is a
  // failed verification; an empty basis (e.g. s = 2) is a clean negative.
  if (!result.found && result.unknowns > 0) return 1;
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"qlab: exact and numeric laboratory for mock theta radial limits"};
  app.require_subcommand(1);

  // identities
  auto* c_id = app.add_subcommand("identities", "Certify the q-series identity suite");
  int id_order = 200;
  std::string id_w = "-1,z3,z4,z6", id_only, id_perturb;
  CommonOut id_out;
  c_id->add_option("--order", id_order, "Truncation order N");
  c_id->add_option("--w", id_w, "Comma-separated roots of unity for rama1/rama2");
  c_id->add_option("--only", id_only, "Check a single identity by name");
  c_id->add_option("--perturb", id_perturb,
                   "Inject INDEX[:DELTA] into the RHS (requires --only)");
  add_output_options(c_id, id_out);

  // coeffs
  auto* c_co = app.add_subcommand("coeffs", "Exact expansion of a named series");
  std::string co_series, co_w;
  int co_order = 20, co_s = 2;
  CommonOut co_out;
  c_co->add_option("--series", co_series, "Series tag")->required();
  c_co->add_option("--order", co_order, "Truncation order N");
  c_co->add_option("--w", co_w, "Root of unity parameter (for rank/crank/bigu/appell)");
  c_co->add_option("--s", co_s, "Weight for qzeta");
  add_output_options(c_co, co_out);

  // limit
  auto* c_li = app.add_subcommand("limit", "Exact terminating radial-limit values");
  c_li->set_help_flag("--help", "Print this help message and exit");
  long li_k = 0, li_a = 0, li_b = 0, li_h = 1, li_m = 0;
  int li_digits = 0;
  CommonOut li_out;
  c_li->add_option("--k", li_k, "Half-order: limit at a primitive 2k-th root");
  c_li->add_option("--a", li_a);
  c_li->add_option("--b", li_b);
  c_li->add_option("--h", li_h);
  c_li->add_option("--m", li_m);
  c_li->add_option("--digits", li_digits, "Decimal digits for the embedding");
  add_output_options(c_li, li_out);

  // radial
  auto* c_ra = app.add_subcommand("radial", "Radial sampling and extrapolation");
  c_ra->set_help_flag("--help", "Print this help message and exit");
  std::string ra_mode = "for1";
  long ra_k = 0, ra_a = 0, ra_b = 0, ra_h = 1, ra_m = 0;
  int ra_tmin = 2, ra_tmax = 10, ra_digits = 0;
  double ra_tol = 1e-4;
  CommonOut ra_out;
  c_ra->add_option("--mode", ra_mode, "for1, for3 or decomposed")
      ->check(CLI::IsMember({"for1", "for3", "decomposed"}));
  c_ra->add_option("--k", ra_k);
  c_ra->add_option("--a", ra_a);
  c_ra->add_option("--b", ra_b);
  c_ra->add_option("--h", ra_h);
  c_ra->add_option("--m", ra_m);
  c_ra->add_option("--tmin", ra_tmin);
  c_ra->add_option("--tmax", ra_tmax);
  c_ra->add_option("--digits", ra_digits);
  c_ra->add_option("--tol", ra_tol, "Agreement tolerance (default 1e-4)");
  add_output_options(c_ra, ra_out);

  // quotient
  auto* c_qu = app.add_subcommand("quotient", "Appell-Lerch quotient limit experiment");
  c_qu->set_help_flag("--help", "Print this help message and exit");
  long qu_a = 1, qu_b = 2, qu_h = 1, qu_m = 2;
  int qu_tmin = 2, qu_tmax = 10, qu_digits = 0;
  double qu_tol = 1e-2;
  CommonOut qu_out;
  c_qu->add_option("--a", qu_a)->required();
  c_qu->add_option("--b", qu_b)->required();
  c_qu->add_option("--h", qu_h)->required();
  c_qu->add_option("--m", qu_m)->required();
  c_qu->add_option("--tmin", qu_tmin);
  c_qu->add_option("--tmax", qu_tmax);
  c_qu->add_option("--digits", qu_digits);
  c_qu->add_option("--tol", qu_tol, "Agreement tolerance (default 1e-2)");
  add_output_options(c_qu, qu_out);

  // qzeta
  auto* c_qz = app.add_subcommand("qzeta", "Graded polynomial relations for q-zeta values");
  int qz_s = 8, qz_order = 24, qz_verify = 0;
  CommonOut qz_out;
  c_qz->add_option("--s", qz_s, "Even weight")->required();
  c_qz->add_option("--order", qz_order, "Solve order");
  c_qz->add_option("--verify-order", qz_verify, "Re-verification order (default 2N)");
  add_output_options(c_qz, qz_out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (c_id->parsed()) return run_identities(id_order, id_w, id_only, id_perturb, id_out);
    if (c_co->parsed()) return run_coeffs(co_series, co_order, co_w, co_s, co_out);
    if (c_li->parsed())
      return run_limit(li_k, li_a, li_b, li_h, li_m,
                       li_digits > 0 ? li_digits : default_digits(50), li_out);
    if (c_ra->parsed()) {
      RadialPath path;
      path.t_min = ra_tmin;
      path.t_max = ra_tmax;
      path.digits = ra_digits > 0 ? ra_digits : default_digits(150);
      return run_radial(ra_mode, ra_k, ra_a, ra_b, ra_h, ra_m, path, ra_tol, ra_out);
    }
    if (c_qu->parsed()) {
      RadialPath path;
      path.t_min = qu_tmin;
      path.t_max = qu_tmax;
      path.digits = qu_digits > 0 ? qu_digits : default_digits(150);
      return run_quotient(qu_a, qu_b, qu_h, qu_m, path, qu_tol, qu_out);
    }
    if (c_qz->parsed()) return run_qzeta(qz_s, qz_order, qz_verify, qz_out);
  } catch (const PrecisionError& e) {
    std::cerr << "precision error: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
