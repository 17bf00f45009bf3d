#pragma once

// JSON documents for box states and polyhedra. Every rational is a string
// "p/q" in lowest terms ("0", "1" and other integers without a slash).
//
//   box state: {"signature": [[in, out], ...], "table": [[P(O|I) for O] for I]}
//   H-rep:     {"ambient_dim": n,
//               "inequalities": [{"coeffs": [...], "rhs": "..."}],   coeffs·x <= rhs
//               "equalities":   [{"coeffs": [...], "rhs": "..."}]}   coeffs·x == rhs
//   V-rep:     {"ambient_dim": n, "dimension": d,
//               "vertices": [[...]], "rays": [[...]], "linearities": [[...]]}

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "nsbox/box_state.hpp"
#include "nsbox/errors.hpp"
#include "nsbox/polytope.hpp"
#include "nsbox/rational.hpp"

namespace nsbox::io {

using json = nlohmann::json;

inline json to_json(const Vector& v) {
    json out = json::array();
    for (const auto& q : v) out.push_back(to_string(q));
    return out;
}

inline Rational rational_from_json(const json& j) {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) return Rational(j.get<long long>());
    throw ParseError("expected a rational string, got " + j.dump());
}

inline Vector vector_from_json(const json& j) {
    if (!j.is_array()) throw ParseError("expected an array of rationals, got " + j.dump());
    Vector v;
    for (const auto& e : j) v.push_back(rational_from_json(e));
    return v;
}

inline json to_json(const BoxState& s) {
    json sig = json::array();
    for (const auto& b : s.signature().boxes()) sig.push_back({b.inputs, b.outputs});
    json table = json::array();
    const auto no = s.signature().joint_outputs();
    for (std::size_t i = 0; i < s.signature().joint_inputs(); ++i) {
        json row = json::array();
        for (std::size_t o = 0; o < no; ++o) row.push_back(to_string(s.at(i, o)));
        table.push_back(std::move(row));
    }
    return {{"signature", std::move(sig)}, {"table", std::move(table)}};
}

inline BoxState box_state_from_json(const json& j) {
    if (!j.is_object() || !j.contains("signature") || !j.contains("table")) {
        throw ParseError("box state needs \"signature\" and \"table\" fields");
    }
    std::vector<BoxShape> shapes;
    for (const auto& b : j.at("signature")) {
        if (!b.is_array() || b.size() != 2 || !b[0].is_number_unsigned() || !b[1].is_number_unsigned()) {
            throw ParseError("signature entries must be [inputs, outputs], got " + b.dump());
        }
        shapes.push_back({b[0].get<std::size_t>(), b[1].get<std::size_t>()});
    }
    BoxSignature sig(std::move(shapes));
    const auto& rows = j.at("table");
    if (!rows.is_array() || rows.size() != sig.joint_inputs()) {
        throw ParseError("table needs one row per joint input (" + std::to_string(sig.joint_inputs()) + ")");
    }
    std::vector<Rational> table;
    for (const auto& row : rows) {
        if (!row.is_array() || row.size() != sig.joint_outputs()) {
            throw ParseError("each table row needs " + std::to_string(sig.joint_outputs()) + " entries");
        }
        for (const auto& e : row) table.push_back(rational_from_json(e));
    }
    return BoxState(std::move(sig), std::move(table));
}

inline json to_json(const HRep& h) {
    auto rows = [](const std::vector<LinearConstraint>& cs) {
        json out = json::array();
        for (const auto& c : cs) out.push_back({{"coeffs", to_json(c.coeffs)}, {"rhs", to_string(c.rhs)}});
        return out;
    };
    return {{"ambient_dim", h.ambient_dim},
            {"inequalities", rows(h.inequalities)},
            {"equalities", rows(h.equalities)}};
}

inline HRep hrep_from_json(const json& j) {
    if (!j.is_object() || !j.contains("ambient_dim")) throw ParseError("H-rep needs \"ambient_dim\"");
    HRep h;
    h.ambient_dim = j.at("ambient_dim").get<std::size_t>();
    auto rows = [](const json& arr) {
        std::vector<LinearConstraint> out;
        for (const auto& r : arr) {
            if (!r.contains("coeffs") || !r.contains("rhs")) {
                throw ParseError("constraints need \"coeffs\" and \"rhs\", got " + r.dump());
            }
            out.push_back({vector_from_json(r.at("coeffs")), rational_from_json(r.at("rhs"))});
        }
        return out;
    };
    if (j.contains("inequalities")) h.inequalities = rows(j.at("inequalities"));
    if (j.contains("equalities")) h.equalities = rows(j.at("equalities"));
    try {
        h.validate();
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
    }
    return h;
}

inline json to_json(const VRep& v) {
    auto list = [](const std::vector<Vector>& vs) {
        json out = json::array();
        for (const auto& x : vs) out.push_back(to_json(x));
        return out;
    };
    return {{"ambient_dim", v.ambient_dim},
            {"dimension", v.dimension},
            {"vertices", list(v.vertices)},
            {"rays", list(v.rays)},
            {"linearities", list(v.linearities)}};
}

inline VRep vrep_from_json(const json& j) {
    VRep v;
    v.ambient_dim = j.at("ambient_dim").get<std::size_t>();
    v.dimension = j.value("dimension", -1L);
    auto list = [](const json& arr) {
        std::vector<Vector> out;
        for (const auto& x : arr) out.push_back(vector_from_json(x));
        return out;
    };
    v.vertices = list(j.at("vertices"));
    if (j.contains("rays")) v.rays = list(j.at("rays"));
    if (j.contains("linearities")) v.linearities = list(j.at("linearities"));
    return v;
}

inline json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error(path + ": cannot open file");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ParseError(path + ": " + e.what());
    }
}

inline BoxState read_box_state(const std::string& path) {
    try {
        return box_state_from_json(read_json_file(path));
    } catch (const json::exception& e) {
        throw ParseError(path + ": " + e.what());
    } catch (const ParseError& e) {
        throw ParseError(path + ": " + e.what());
    }
}

}  // namespace nsbox::io
