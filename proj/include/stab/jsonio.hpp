#ifndef STAB_JSONIO_HPP
#define STAB_JSONIO_HPP

#include <nlohmann/json.hpp>
#include <string>

#include "stab/doublecover.hpp"
#include "stab/glue.hpp"

namespace stab {

using nlohmann::json;

// Charges: {"n": int, "Z": {"OX": ["re","im"], "fiber": ["re","im"],
//           "Op": [["re","im"], ...]}}, rationals as "p/q" strings.
json charge_to_json(const CentralCharge& Z);
CentralCharge charge_from_json(const json& j, Geometry* geomOut = nullptr);

// HN results: {"factors": [{"label": s, "class": [int strings],
//              "phase": "p/q"|float}]}
json hn_to_json(const HNResult& r);

// Local stabilities: {"f": ["re","im"], "chart": "PLUS|MINUS|WALL",
//                     "coord": ["re","im"]}  (CHART representation)
json local_to_json(const LocalStability& s);
LocalStability local_from_json(const json& j);

// Ext patterns: {"G1": [...], "G2": [...],
//                "homs": [{"from": i, "to": j, "degrees": [ints]}]}
json pattern_to_json(const ExtPattern& p);
ExtPattern pattern_from_json(const json& j);

// Global stabilities (full frame record, exact; round-trips losslessly).
json global_to_json(const GlobalStability& s);
GlobalStability global_from_json(const json& j);

// Theta points.
json theta_to_json(const ThetaPoint& t);
ThetaPoint theta_from_json(const json& j);

json qc_to_json(const QC& z);
QC qc_from_json(const json& j);

} // namespace stab

#endif
