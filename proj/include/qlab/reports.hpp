#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "qlab/identities.hpp"
#include "qlab/radial.hpp"

namespace qlab {

using json = nlohmann::json;

// JSON schemas use stable field names:
//   identity reports:  {"identity","order","w","status","first_mismatch"}
//   radial reports:    {"samples":[{"t","r","re","im"}],"extrapolated":{"re","im"},
//                       "error_estimate","exact_target","agreement", ...}
// Numeric fields are decimal strings so reports re-parse to equal values.

json identity_report_to_json(const IdentityReport& report);
IdentityReport identity_report_from_json(const json& j);
json identity_reports_to_json(const std::vector<IdentityReport>& reports);

json radial_report_to_json(const RadialReport& report);
RadialReport radial_report_from_json(const json& j);

json relation_result_to_json(const RelationResult& result);
json decomposed_report_to_json(const DecomposedReport& report);
json appell_split_to_json(const AppellSplit& split, int digits);

// Exact value together with its decimal embedding.
json cyclo_to_json(const Cyclo& value, int digits);

std::string identity_reports_csv(const std::vector<IdentityReport>& reports);
std::string radial_report_csv(const RadialReport& report);

std::string identity_report_text(const IdentityReport& report);
std::string radial_report_text(const RadialReport& report);
std::string relation_result_text(const RelationResult& result);

bool identity_reports_equal(const IdentityReport& a, const IdentityReport& b);
bool radial_reports_equal(const RadialReport& a, const RadialReport& b);

} // namespace qlab
