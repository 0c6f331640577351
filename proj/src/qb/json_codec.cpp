#include "json_codec.hpp"

namespace qb {

json to_json(const CycQ& c) {
    json vec = json::array();
    for (auto& [e, r] : c.coeffs()) vec.push_back(json::array({std::to_string(e), rat_str(r)}));
    return json{{"modulus", c.modulus()}, {"vec", vec}};
}

CycQ cycq_from_json(const json& j) {
    long long m = j.at("modulus").get<long long>();
    CycQ out;
    for (auto& pair : j.at("vec")) {
        long long e = std::stoll(pair.at(0).get<std::string>());
        Rat r = parse_rat(pair.at(1).get<std::string>());
        out += CycQ::root_of_unity(Rat(e, m)) * r;
    }
    return out.embedded(m);
}

json to_json(const QSeries& s) {
    json terms = json::array();
    for (auto& [e, c] : s.terms()) terms.push_back(json{{"exp", rat_str(e)}, {"coeff", to_json(c)}});
    return json{{"denom", s.denom()}, {"trunc", rat_str(s.trunc())}, {"terms", terms}};
}

QSeries qseries_from_json(const json& j) {
    QSeries s(parse_rat(j.at("trunc").get<std::string>()));
    for (auto& t : j.at("terms"))
        s.set(parse_rat(t.at("exp").get<std::string>()), cycq_from_json(t.at("coeff")));
    return s;
}

} // namespace qb
