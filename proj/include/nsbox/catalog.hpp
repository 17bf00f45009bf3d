#pragma once

// Extremal states of the two-box binary no-signalling polytope, CHSH values
// and exact membership in the local polytope.

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nsbox/box_state.hpp"
#include "nsbox/polytope.hpp"
#include "nsbox/rational.hpp"

namespace nsbox {

/// Deterministic local state a = αx ⊕ β, b = γy ⊕ δ.
struct LocalExtremalId {
    unsigned alpha = 0, beta = 0, gamma = 0, delta = 0;

    /// α β γ δ read as a 4-bit number, α most significant.
    std::size_t index() const { return alpha << 3 | beta << 2 | gamma << 1 | delta; }
    static LocalExtremalId from_index(std::size_t i) {
        return {unsigned(i >> 3 & 1U), unsigned(i >> 2 & 1U), unsigned(i >> 1 & 1U), unsigned(i & 1U)};
    }
    std::string label() const {
        return "L" + std::to_string(alpha) + std::to_string(beta) + std::to_string(gamma) +
               std::to_string(delta);
    }

    friend auto operator<=>(const LocalExtremalId&, const LocalExtremalId&) = default;
};

/// PR-type state with a ⊕ b = xy ⊕ αx ⊕ βy ⊕ γ.
struct NonlocalExtremalId {
    unsigned alpha = 0, beta = 0, gamma = 0;

    std::size_t index() const { return alpha << 2 | beta << 1 | gamma; }
    static NonlocalExtremalId from_index(std::size_t i) {
        return {unsigned(i >> 2 & 1U), unsigned(i >> 1 & 1U), unsigned(i & 1U)};
    }
    std::string label() const {
        return "N" + std::to_string(alpha) + std::to_string(beta) + std::to_string(gamma);
    }

    friend auto operator<=>(const NonlocalExtremalId&, const NonlocalExtremalId&) = default;
};

using LocalDecomposition = std::map<LocalExtremalId, Rational>;

inline BoxState local_extremal(LocalExtremalId id) {
    std::vector<Rational> table(16);
    for (unsigned x = 0; x < 2; ++x) {
        for (unsigned y = 0; y < 2; ++y) {
            const unsigned a = (id.alpha & x) ^ id.beta;
            const unsigned b = (id.gamma & y) ^ id.delta;
            table[(x * 2 + y) * 4 + a * 2 + b] = 1;
        }
    }
    return BoxState(BoxSignature::binary(2), std::move(table));
}

inline BoxState nonlocal_extremal(NonlocalExtremalId id) {
    std::vector<Rational> table(16);
    const Rational half(1, 2);
    for (unsigned x = 0; x < 2; ++x) {
        for (unsigned y = 0; y < 2; ++y) {
            for (unsigned a = 0; a < 2; ++a) {
                for (unsigned b = 0; b < 2; ++b) {
                    const unsigned parity = (x & y) ^ (id.alpha & x) ^ (id.beta & y) ^ id.gamma;
                    if ((a ^ b) == parity) table[(x * 2 + y) * 4 + a * 2 + b] = half;
                }
            }
        }
    }
    return BoxState(BoxSignature::binary(2), std::move(table));
}

inline BoxState pr_state() { return nonlocal_extremal({0, 0, 0}); }

constexpr std::size_t kNumLocalExtremals = 16;
constexpr std::size_t kNumNonlocalExtremals = 8;
constexpr std::size_t kNumExtremals = kNumLocalExtremals + kNumNonlocalExtremals;

/// The 24 vertices: the 16 local states by index, then the 8 PR-type states.
inline const std::vector<BoxState>& extremal_states() {
    static const std::vector<BoxState> states = [] {
        std::vector<BoxState> v;
        for (std::size_t i = 0; i < kNumLocalExtremals; ++i) {
            v.push_back(local_extremal(LocalExtremalId::from_index(i)));
        }
        for (std::size_t i = 0; i < kNumNonlocalExtremals; ++i) {
            v.push_back(nonlocal_extremal(NonlocalExtremalId::from_index(i)));
        }
        return v;
    }();
    return states;
}

inline std::string extremal_label(std::size_t k) {
    return k < kNumLocalExtremals ? LocalExtremalId::from_index(k).label()
                                  : NonlocalExtremalId::from_index(k - kNumLocalExtremals).label();
}

inline void require_binary_pair(const BoxState& s, const char* what) {
    if (!s.signature().is_binary_pair()) {
        throw BadSignature(std::string(what) + " needs a state of two binary-input/binary-output boxes");
    }
}

/// E_xy = Σ_ab (−1)^(a⊕b) P(ab|xy).
inline Rational correlator(const BoxState& s, unsigned x, unsigned y) {
    require_binary_pair(s, "correlator");
    const auto i = x * 2 + y;
    return s.at(i, 0) - s.at(i, 1) - s.at(i, 2) + s.at(i, 3);
}

/// One of the 8 CHSH variants Σ_xy (−1)^(xy ⊕ αx ⊕ βy ⊕ γ) E_xy.
struct ChshVariant {
    unsigned alpha = 0, beta = 0, gamma = 0;
};

inline Rational chsh_variant_value(const BoxState& s, ChshVariant v) {
    require_binary_pair(s, "CHSH evaluation");
    Rational total = 0;
    for (unsigned x = 0; x < 2; ++x) {
        for (unsigned y = 0; y < 2; ++y) {
            const unsigned sign = (x & y) ^ (v.alpha & x) ^ (v.beta & y) ^ v.gamma;
            total += sign ? -correlator(s, x, y) : correlator(s, x, y);
        }
    }
    return total;
}

inline std::vector<ChshVariant> chsh_variants() {
    std::vector<ChshVariant> v;
    for (unsigned i = 0; i < 8; ++i) v.push_back({i >> 2 & 1U, i >> 1 & 1U, i & 1U});
    return v;
}

/// E00 + E01 + E10 − E11.
inline Rational chsh_value(const BoxState& s) { return chsh_variant_value(s, {0, 0, 0}); }

/// A convex decomposition over the 16 deterministic local states, if one exists.
inline std::optional<LocalDecomposition> local_membership(const BoxState& s) {
    require_binary_pair(s, "local membership");
    HRep lp;
    lp.ambient_dim = kNumLocalExtremals;
    for (std::size_t k = 0; k < kNumLocalExtremals; ++k) {
        Vector c(kNumLocalExtremals);
        c[k] = -1;
        lp.inequalities.push_back({std::move(c), 0});
    }
    const auto& ext = extremal_states();
    for (std::size_t e = 0; e < 16; ++e) {
        Vector c(kNumLocalExtremals);
        for (std::size_t k = 0; k < kNumLocalExtremals; ++k) c[k] = ext[k].table()[e];
        lp.equalities.push_back({std::move(c), s.table()[e]});
    }
    const auto w = lp_feasible(lp);
    if (!w) return std::nullopt;
    LocalDecomposition d;
    for (std::size_t k = 0; k < kNumLocalExtremals; ++k) {
        if (!(*w)[k].is_zero()) d[LocalExtremalId::from_index(k)] = (*w)[k];
    }
    return d;
}

inline BoxState reconstruct(const LocalDecomposition& d) {
    std::vector<Rational> weights;
    std::vector<BoxState> states;
    for (const auto& [id, w] : d) {
        weights.push_back(w);
        states.push_back(local_extremal(id));
    }
    return mix(weights, states);
}

/// ½ PR + ⅛ Σ_βδ L_{0β0δ}; checked against its decomposition ⅛ Σ_αβγ L_{αβγ(αγ⊕β)}.
inline BoxState noisy_pr_state() {
    std::vector<Rational> w1{Rational(1, 2)};
    std::vector<BoxState> s1{pr_state()};
    for (unsigned beta = 0; beta < 2; ++beta) {
        for (unsigned delta = 0; delta < 2; ++delta) {
            w1.emplace_back(1, 8);
            s1.push_back(local_extremal({0, beta, 0, delta}));
        }
    }
    auto noisy = mix(w1, s1);

    std::vector<Rational> w2;
    std::vector<BoxState> s2;
    for (unsigned alpha = 0; alpha < 2; ++alpha) {
        for (unsigned beta = 0; beta < 2; ++beta) {
            for (unsigned gamma = 0; gamma < 2; ++gamma) {
                w2.emplace_back(1, 8);
                s2.push_back(local_extremal({alpha, beta, gamma, (alpha & gamma) ^ beta}));
            }
        }
    }
    if (mix(w2, s2) != noisy) throw std::logic_error("noisy PR decompositions disagree");
    return noisy;
}

/// Positivity, normalization and no-signalling for two binary boxes, over the
/// 16 table entries in file order (input-major).
inline HRep two_box_no_signalling_hrep() {
    HRep h;
    h.ambient_dim = 16;
    auto idx = [](unsigned x, unsigned y, unsigned a, unsigned b) { return (x * 2 + y) * 4 + a * 2 + b; };
    for (std::size_t e = 0; e < 16; ++e) {
        Vector c(16);
        c[e] = -1;
        h.inequalities.push_back({std::move(c), 0});
    }
    for (unsigned x = 0; x < 2; ++x) {
        for (unsigned y = 0; y < 2; ++y) {
            Vector c(16);
            for (unsigned o = 0; o < 4; ++o) c[(x * 2 + y) * 4 + o] = 1;
            h.equalities.push_back({std::move(c), 1});
        }
    }
    // Bob's marginal independent of x, Alice's independent of y.
    for (unsigned y = 0; y < 2; ++y) {
        for (unsigned b = 0; b < 2; ++b) {
            Vector c(16);
            for (unsigned a = 0; a < 2; ++a) {
                c[idx(0, y, a, b)] += 1;
                c[idx(1, y, a, b)] -= 1;
            }
            h.equalities.push_back({std::move(c), 0});
        }
    }
    for (unsigned x = 0; x < 2; ++x) {
        for (unsigned a = 0; a < 2; ++a) {
            Vector c(16);
            for (unsigned b = 0; b < 2; ++b) {
                c[idx(x, 0, a, b)] += 1;
                c[idx(x, 1, a, b)] -= 1;
            }
            h.equalities.push_back({std::move(c), 0});
        }
    }
    return h;
}

}  // namespace nsbox
