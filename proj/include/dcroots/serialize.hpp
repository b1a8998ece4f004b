#pragma once

// JSON shapes:
//   CoefficientVector  {"entries": [..], "gamma": g}
//   DMultiset          {"values": [..], "mults": [..]}
//   DCMatrix           {"a": [..], "b": [..], "perm": [..]}
//   CountReport        {"counts": {"minus", "zero", "plus", "bar"}, "method", "tol", "max_residual",
//                      "max_scaled_residual"}
//   RootSet            [{"re", "im", "residual"}, ..]
//   RegionSpec         {"kind": "box", "params": {..}}
//   PathPlan           {"start": .., "T": .., "segments": [{"case", "tau", "start", "end", "rates"}]}

#include <string>
#include <vector>

#include <json.hpp>

#include "bounds.hpp"
#include "core.hpp"
#include "homotopy.hpp"
#include "roots.hpp"

namespace dcroots {

using Json = nlohmann::json;

inline Json to_json(const CoefficientVector& c) { return {{"entries", c.vec()}, {"gamma", c.gamma()}}; }

inline Json to_json(const DMultiset& d) { return {{"values", d.values()}, {"mults", d.mults()}}; }

inline Json to_json(const DCMatrix& m) { return {{"a", m.a()}, {"b", m.b()}, {"perm", m.perm()}}; }

inline Json to_json(const CountReport& r) {
    return {{"counts", {{"minus", r.nu_minus}, {"zero", r.nu_zero}, {"plus", r.nu_plus}, {"bar", r.nu_bar}}},
            {"method", to_string(r.method)},
            {"tol", r.tol},
            {"max_residual", r.max_residual},
            {"max_scaled_residual", r.max_scaled_residual}};
}

inline Json to_json(const RootSet& rs) {
    Json a = Json::array();
    for (std::size_t i = 0; i < rs.size(); ++i)
        a.push_back({{"re", rs.roots[i].real()}, {"im", rs.roots[i].imag()}, {"residual", rs.residuals[i]}});
    return a;
}

inline Json to_json(const RegionSpec& r) {
    Json p = Json::object();
    for (const auto& [k, v] : r.params) p[k] = v;
    return {{"kind", to_string(r.kind)}, {"params", p}};
}

inline Json to_json(const IFTConstants& k) {
    return {{"M0", k.M0}, {"M1", k.M1}, {"M2", k.M2}, {"Omega", k.Omega},
            {"kappa", k.kappa}, {"r", k.r}, {"rho", k.rho}, {"safety", k.safety}};
}

inline Json to_json(const Segment& s) {
    return {{"case", to_string(s.case_tag)},
            {"tau", s.tau},
            {"start", to_json(s.start)},
            {"end", to_json(s.end)},
            {"rates", s.rates}};
}

inline Json to_json(const PathPlan& p) {
    Json segs = Json::array();
    for (const auto& s : p.segments) segs.push_back(to_json(s));
    return {{"start", to_json(p.start)}, {"T", p.T}, {"p", p.p()}, {"segments", segs}};
}

// ---------------------------------------------------------------------------
// Parsing. Malformed input throws DomainError.

namespace detail {

template <class T>
std::vector<T> json_array(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key) || !j.at(key).is_array())
        throw DomainError(std::string("json: expected array field \"") + key + "\"");
    try {
        return j.at(key).get<std::vector<T>>();
    } catch (const nlohmann::json::exception& e) {
        throw DomainError(std::string("json: bad element in \"") + key + "\": " + e.what());
    }
}

}  // namespace detail

inline CoefficientVector coefficient_vector_from_json(const Json& j) {
    return CoefficientVector(detail::json_array<double>(j, "entries"));
}

inline DMultiset multiset_from_json(const Json& j) {
    return DMultiset(detail::json_array<double>(j, "values"), detail::json_array<int>(j, "mults"));
}

inline DCMatrix matrix_from_json(const Json& j) {
    auto a = detail::json_array<double>(j, "a");
    auto b = detail::json_array<double>(j, "b");
    if (j.contains("perm")) return DCMatrix(std::move(a), std::move(b), detail::json_array<std::size_t>(j, "perm"));
    return DCMatrix(std::move(a), std::move(b));
}

inline CountReport count_report_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("counts")) throw DomainError("json: expected \"counts\"");
    const Json& c = j.at("counts");
    CountReport r;
    try {
        r.nu_minus = c.at("minus").get<int>();
        r.nu_zero = c.at("zero").get<int>();
        r.nu_plus = c.at("plus").get<int>();
        r.nu_bar = c.at("bar").get<int>();
        const std::string m = j.value("method", std::string("eigensolver"));
        if (m == "eigensolver") r.method = CountMethod::eigensolver;
        else if (m == "contour") r.method = CountMethod::contour;
        else if (m == "closed_form") r.method = CountMethod::closed_form;
        else throw DomainError("json: unknown count method " + m);
        r.tol = j.value("tol", 0.0);
        r.max_residual = j.value("max_residual", 0.0);
        r.max_scaled_residual = j.value("max_scaled_residual", 0.0);
    } catch (const nlohmann::json::exception& e) {
        throw DomainError(std::string("json: bad count report: ") + e.what());
    }
    return r;
}

}  // namespace dcroots
