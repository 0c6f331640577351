#pragma once

#include "qseries.hpp"

#include <json.hpp>

// Wire formats. Rationals and exponents travel as strings so round-trips are
// bit-exact:
//   CycQ:    {"modulus": M, "vec": [["e","p/q"], ...]}
//   QSeries: {"denom": D, "trunc": "p/q", "terms": [{"exp":"p/q","coeff":{...}}, ...]}
namespace qb {

using json = nlohmann::ordered_json;

json to_json(const CycQ& c);
CycQ cycq_from_json(const json& j);

json to_json(const QSeries& s);
QSeries qseries_from_json(const json& j);

} // namespace qb
