#pragma once

// JSON forms of the library's reports. Residue and count reports read back to
// values equal to the ones written; doubles go through the shortest
// round-trip representation and NaN is written as null.

#include <cmweyl/catalog.hpp>
#include <cmweyl/cm.hpp>
#include <cmweyl/exponent.hpp>
#include <cmweyl/residue.hpp>

#include <json.hpp>

namespace cmweyl::cli {

using json = nlohmann::ordered_json;

json to_json(const residue::ResidueReport& report);
residue::ResidueReport residue_report_from_json(const json& j);

json to_json(const cm::CountReport& report);
cm::CountReport count_report_from_json(const json& j);

json to_json(const cm::CMFieldRecord& record);
json to_json(const exponent::ExponentSet& set);
json to_json(const FieldRecord& record);

}  // namespace cmweyl::cli
