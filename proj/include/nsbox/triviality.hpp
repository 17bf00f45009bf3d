#pragma once

// Vertices of the coupler polytope against the actions of Bob's wirings, and
// the five parameterized coupler families used to label them.

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "nsbox/coupler.hpp"
#include "nsbox/polytope.hpp"
#include "nsbox/wiring.hpp"

namespace nsbox {

enum class CouplerClass { Deterministic, OneSided, XorGated, AndGated, Sequential };

inline std::string class_name(CouplerClass c) {
    switch (c) {
        case CouplerClass::Deterministic: return "Deterministic";
        case CouplerClass::OneSided: return "One-sided";
        case CouplerClass::XorGated: return "XOR-gated";
        case CouplerClass::AndGated: return "AND-gated";
        case CouplerClass::Sequential: return "Sequential";
    }
    return "?";
}

inline char class_letter(CouplerClass c) {
    switch (c) {
        case CouplerClass::Deterministic: return 'D';
        case CouplerClass::OneSided: return 'O';
        case CouplerClass::XorGated: return 'X';
        case CouplerClass::AndGated: return 'A';
        case CouplerClass::Sequential: return 'S';
    }
    return '?';
}

struct FamilyCoupler {
    CouplerClass cls;
    std::vector<unsigned> params;  // α, β, γ, δ, ε as far as the class uses them
    Coupler coupler;

    std::string label() const {
        std::string s(1, class_letter(cls));
        for (auto p : params) s += std::to_string(p);
        return s;
    }
};

namespace detail {

/// Returns b' for admissible (b1, b2, y1, y2), or -1 where χ is zero.
using Pattern = std::function<int(unsigned b1, unsigned b2, unsigned y1, unsigned y2)>;

inline Coupler pattern_coupler(const Pattern& pattern) {
    std::vector<Vector> rows(2, Vector(kChiEntries));
    for (unsigned b1 = 0; b1 < 2; ++b1) {
        for (unsigned b2 = 0; b2 < 2; ++b2) {
            for (unsigned y1 = 0; y1 < 2; ++y1) {
                for (unsigned y2 = 0; y2 < 2; ++y2) {
                    const int b = pattern(b1, b2, y1, y2);
                    if (b >= 0) rows[static_cast<std::size_t>(b)][chi_index(b1, b2, y1, y2)] = 1;
                }
            }
        }
    }
    return Coupler(std::move(rows));
}

inline void for_bits(std::size_t n, const std::function<void(const std::vector<unsigned>&)>& f) {
    for (std::size_t m = 0; m < (std::size_t{1} << n); ++m) {
        std::vector<unsigned> bits(n);
        for (std::size_t k = 0; k < n; ++k) bits[k] = unsigned(m >> (n - 1 - k) & 1U);
        f(bits);
    }
}

}  // namespace detail

/// All 82 members of the five families, in class order.
inline const std::vector<FamilyCoupler>& family_couplers() {
    static const std::vector<FamilyCoupler> all = [] {
        std::vector<FamilyCoupler> out;
        // Deterministic: y1 = y2 = 0, b' = α.
        detail::for_bits(1, [&](const auto& p) {
            out.push_back({CouplerClass::Deterministic, p, detail::pattern_coupler([&](auto, auto, auto y1, auto y2) {
                               return (y1 == 0 && y2 == 0) ? int(p[0]) : -1;
                           })});
        });
        // One-sided: y1 = y2 = α, b' = b_β ⊕ γ (β = 0 names the first box).
        detail::for_bits(3, [&](const auto& p) {
            out.push_back({CouplerClass::OneSided, p, detail::pattern_coupler([&](auto b1, auto b2, auto y1, auto y2) {
                               if (y1 != p[0] || y2 != p[0]) return -1;
                               return int((p[1] == 0 ? b1 : b2) ^ p[2]);
                           })});
        });
        // XOR-gated: y1 = α, y2 = β, b' = b1 ⊕ b2 ⊕ γ.
        detail::for_bits(3, [&](const auto& p) {
            out.push_back({CouplerClass::XorGated, p, detail::pattern_coupler([&](auto b1, auto b2, auto y1, auto y2) {
                               if (y1 != p[0] || y2 != p[1]) return -1;
                               return int(b1 ^ b2 ^ p[2]);
                           })});
        });
        // AND-gated: y1 = α, y2 = β, b' = (b1 ⊕ γ)(b2 ⊕ δ) ⊕ ε.
        detail::for_bits(5, [&](const auto& p) {
            out.push_back({CouplerClass::AndGated, p, detail::pattern_coupler([&](auto b1, auto b2, auto y1, auto y2) {
                               if (y1 != p[0] || y2 != p[1]) return -1;
                               return int(((b1 ^ p[2]) & (b2 ^ p[3])) ^ p[4]);
                           })});
        });
        // Sequential: y_α = β, y_{1⊕α} = b_α ⊕ γ, b' = b_{1⊕α} ⊕ δ b_α ⊕ ε.
        detail::for_bits(5, [&](const auto& p) {
            out.push_back({CouplerClass::Sequential, p, detail::pattern_coupler([&](auto b1, auto b2, auto y1, auto y2) {
                               const unsigned b[2] = {b1, b2};
                               const unsigned y[2] = {y1, y2};
                               const unsigned first = p[0], second = 1 - p[0];
                               if (y[first] != p[1] || y[second] != (b[first] ^ p[2])) return -1;
                               return int(b[second] ^ (p[3] & b[first]) ^ p[4]);
                           })});
        });
        return out;
    }();
    return all;
}

/// Family member with this action. Classes are tried in the order
/// Deterministic, One-sided, XOR-gated, AND-gated, Sequential.
inline std::optional<FamilyCoupler> match_family(const CanonicalAction& action) {
    for (const auto& f : family_couplers()) {
        if (canonical_action(f.coupler) == action) return f;
    }
    return std::nullopt;
}

struct VertexClassification {
    Vector chi0;
    CanonicalAction action;
    std::optional<Wiring> wiring;
    std::optional<FamilyCoupler> family;
};

struct TrivialityReport {
    std::vector<VertexClassification> vertices;
    std::size_t nontrivial_count = 0;
    std::map<CouplerClass, std::size_t> histogram;
    std::size_t unlabeled_count = 0;
    std::size_t wiring_action_count = 0;
    bool vertex_actions_equal_wiring_actions = false;
};

/// Matches every vertex of the coupler polytope with a wiring of the same
/// action; a vertex without one would be a non-trivial coupler.
inline TrivialityReport classify_triviality(const VRep& coupler_vrep) {
    TrivialityReport report;
    const auto wirings = enumerate_wiring_couplers();
    report.wiring_action_count = wirings.size();
    std::map<CanonicalAction, Wiring> by_action;
    for (const auto& w : wirings) by_action.emplace(w.action, w.representative);

    std::set<CanonicalAction> vertex_actions;
    for (const auto& v : coupler_vrep.vertices) {
        VertexClassification vc{v, canonical_action(Coupler::from_zero_row(v)), std::nullopt, std::nullopt};
        if (auto it = by_action.find(vc.action); it != by_action.end()) {
            vc.wiring = it->second;
        } else {
            ++report.nontrivial_count;
        }
        vc.family = match_family(vc.action);
        if (vc.family) {
            ++report.histogram[vc.family->cls];
        } else {
            ++report.unlabeled_count;
        }
        vertex_actions.insert(vc.action);
        report.vertices.push_back(std::move(vc));
    }
    std::set<CanonicalAction> wiring_actions;
    for (const auto& w : wirings) wiring_actions.insert(w.action);
    report.vertex_actions_equal_wiring_actions = vertex_actions == wiring_actions;
    return report;
}

inline TrivialityReport classify_triviality() {
    return classify_triviality(enumerate_vertices(build_coupler_polytope()));
}

}  // namespace nsbox
