#pragma once

// Bob's sequential strategies on his two boxes: query one box, choose the
// other box's input from its output, then post-process both outputs into b'.

#include <array>
#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "nsbox/box_state.hpp"
#include "nsbox/catalog.hpp"
#include "nsbox/coupler.hpp"
#include "nsbox/rational.hpp"

namespace nsbox {

struct Wiring {
    unsigned first_box = 0;    // 0: the y1 box is queried first, 1: the y2 box
    unsigned first_input = 0;  // λ
    unsigned mu = 0;           // second input = μ · b_first ⊕ ν
    unsigned nu = 0;
    std::array<unsigned, 4> output_table{};  // b' = output_table[2 b1 + b2]

    static constexpr std::size_t kCount = 256;

    std::size_t index() const {
        std::size_t table = 0;
        for (auto bit : output_table) table = table << 1 | bit;
        return first_box << 7 | first_input << 6 | mu << 5 | nu << 4 | table;
    }

    static Wiring from_index(std::size_t i) {
        Wiring w;
        w.first_box = unsigned(i >> 7 & 1U);
        w.first_input = unsigned(i >> 6 & 1U);
        w.mu = unsigned(i >> 5 & 1U);
        w.nu = unsigned(i >> 4 & 1U);
        for (std::size_t k = 0; k < 4; ++k) w.output_table[k] = unsigned(i >> (3 - k) & 1U);
        return w;
    }

    /// (y1, y2) actually used when the boxes return (b1, b2).
    std::pair<unsigned, unsigned> inputs(unsigned b1, unsigned b2) const {
        if (first_box == 0) return {first_input, (mu & b1) ^ nu};
        return {(mu & b2) ^ nu, first_input};
    }

    unsigned output(unsigned b1, unsigned b2) const { return output_table[b1 * 2 + b2]; }

    std::string describe() const {
        const char* first = first_box == 0 ? "1" : "2";
        const char* second = first_box == 0 ? "2" : "1";
        std::string s = "y" + std::string(first) + "=" + std::to_string(first_input) + ", y" + second + "=";
        if (mu) {
            s += "b" + std::string(first) + (nu ? "^1" : "");
        } else {
            s += std::to_string(nu);
        }
        s += ", b'=[";
        for (std::size_t k = 0; k < 4; ++k) s += std::to_string(output_table[k]);
        return s + "]";
    }

    friend bool operator==(const Wiring&, const Wiring&) = default;
};

inline std::vector<Wiring> all_wirings() {
    std::vector<Wiring> out;
    for (std::size_t i = 0; i < Wiring::kCount; ++i) out.push_back(Wiring::from_index(i));
    return out;
}

/// Joint distribution of (b1, b2, b'), entry (2 b1 + b2) * 2 + b'.
using WiringDistribution = std::array<Rational, 8>;

inline WiringDistribution apply_wiring(const BoxState& state, const Wiring& w) {
    require_binary_pair(state, "apply_wiring");
    WiringDistribution d{};
    for (unsigned b1 = 0; b1 < 2; ++b1) {
        for (unsigned b2 = 0; b2 < 2; ++b2) {
            const auto [y1, y2] = w.inputs(b1, b2);
            d[(b1 * 2 + b2) * 2 + w.output(b1, b2)] += state.at(y1 * 2 + y2, b1 * 2 + b2);
        }
    }
    return d;
}

inline Vector output_marginal(const WiringDistribution& d) {
    Vector p(2);
    for (std::size_t k = 0; k < d.size(); ++k) p[k % 2] += d[k];
    return p;
}

/// χ(b', b1 b2 y1 y2) = 1 exactly when (y1, y2) are the inputs the strategy
/// uses on outputs (b1, b2) and b' is its post-processed bit.
inline Coupler wiring_to_coupler(const Wiring& w) {
    std::vector<Vector> rows(2, Vector(kChiEntries));
    for (unsigned b1 = 0; b1 < 2; ++b1) {
        for (unsigned b2 = 0; b2 < 2; ++b2) {
            const auto [y1, y2] = w.inputs(b1, b2);
            rows[w.output(b1, b2)][chi_index(b1, b2, y1, y2)] = 1;
        }
    }
    return Coupler(std::move(rows));
}

struct WiringCoupler {
    CanonicalAction action;
    Wiring representative;  // lowest-index wiring with this action
    Coupler coupler;
};

/// The distinct actions of all 256 deterministic wirings, sorted by action.
inline std::vector<WiringCoupler> enumerate_wiring_couplers() {
    std::map<CanonicalAction, WiringCoupler> seen;
    for (const auto& w : all_wirings()) {
        auto c = wiring_to_coupler(w);
        auto a = canonical_action(c);
        if (seen.contains(a)) continue;
        seen.emplace(a, WiringCoupler{a, w, std::move(c)});
    }
    std::vector<WiringCoupler> out;
    for (auto& [a, wc] : seen) out.push_back(std::move(wc));
    return out;
}

struct SwapBranch {
    Rational probability;
    BoxState alice_charlie;
};

/// Alice's box 0, Bob's boxes 1 and 2, Charlie's box 3.
inline BoxState pr_pair_state() { return tensor(pr_state(), pr_state()); }

/// Alice–Charlie state after Bob runs the strategy on boxes 1 (y1) and 2 (y2)
/// and announces both outputs, keyed by (b1, b2). Outcomes of probability
/// zero are left out.
inline std::map<std::pair<unsigned, unsigned>, SwapBranch> swapping_by_wiring(
    const Wiring& w, const BoxState& initial = pr_pair_state()) {
    if (initial.num_boxes() != 4) throw BadSignature("swapping needs a four-box state");
    std::map<std::pair<unsigned, unsigned>, SwapBranch> out;
    for (unsigned b1 = 0; b1 < 2; ++b1) {
        for (unsigned b2 = 0; b2 < 2; ++b2) {
            const auto [y1, y2] = w.inputs(b1, b2);
            try {
                auto c = condition(initial, {Observation{1, y1, b1}, Observation{2, y2, b2}});
                out.emplace(std::pair{b1, b2}, SwapBranch{c.probability, std::move(c.collapsed)});
            } catch (const ZeroProbabilityOutcome&) {
            }
        }
    }
    return out;
}

/// Same, but Bob announces only b'; branches are mixtures over (b1, b2).
inline std::map<unsigned, SwapBranch> swapping_by_announced_output(
    const Wiring& w, const BoxState& initial = pr_pair_state()) {
    const auto branches = swapping_by_wiring(w, initial);
    std::map<unsigned, SwapBranch> out;
    for (unsigned bout = 0; bout < 2; ++bout) {
        Rational total = 0;
        for (const auto& [bb, br] : branches) {
            if (w.output(bb.first, bb.second) == bout) total += br.probability;
        }
        if (total.is_zero()) continue;
        std::vector<Rational> weights;
        std::vector<BoxState> states;
        for (const auto& [bb, br] : branches) {
            if (w.output(bb.first, bb.second) != bout) continue;
            weights.push_back(br.probability / total);
            states.push_back(br.alice_charlie);
        }
        out.emplace(bout, SwapBranch{total, mix(weights, states)});
    }
    return out;
}

/// The deterministic local state Alice and Charlie are left with when Bob's
/// boxes were queried with (y1, y2) and returned (b1, b2): L_{y1 b1 y2 b2}.
inline BoxState predicted_swap_state(const Wiring& w, unsigned b1, unsigned b2) {
    const auto [y1, y2] = w.inputs(b1, b2);
    return local_extremal({y1, b1, y2, b2});
}

}  // namespace nsbox
