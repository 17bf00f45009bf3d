#pragma once

// Couplers on two binary-input/binary-output boxes: linear maps
//   P'(b') = Σ_{b1 b2 y1 y2} χ(b', b1 b2 y1 y2) P(b1 b2 | y1 y2)
// from Bob's two-box state to a distribution over a single output b'.

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "nsbox/box_state.hpp"
#include "nsbox/catalog.hpp"
#include "nsbox/linalg.hpp"
#include "nsbox/polytope.hpp"
#include "nsbox/rational.hpp"

namespace nsbox {

constexpr std::size_t kChiEntries = 16;

/// Position of χ(·, b1 b2 y1 y2): the bits b1 b2 y1 y2 read as a 4-bit number.
constexpr std::size_t chi_index(unsigned b1, unsigned b2, unsigned y1, unsigned y2) {
    return b1 << 3 | b2 << 2 | y1 << 1 | y2;
}

/// Position of the matching P(b1 b2 | y1 y2) in a two-box table.
constexpr std::size_t table_index_of_chi(std::size_t k) {
    const auto b1 = k >> 3 & 1U, b2 = k >> 2 & 1U, y1 = k >> 1 & 1U, y2 = k & 1U;
    return (y1 * 2 + y2) * 4 + b1 * 2 + b2;
}

/// A two-box state as a vector in χ-index order, so that P'(b') = dot(χ_b', v).
inline Vector chi_coordinates(const BoxState& s) {
    require_binary_pair(s, "coupler action");
    Vector v(kChiEntries);
    for (std::size_t k = 0; k < kChiEntries; ++k) v[k] = s.table()[table_index_of_chi(k)];
    return v;
}

/// Coupler action fingerprint: P'(b') on each of the 24 extremal two-box
/// states. Linear maps agreeing on the vertices agree everywhere, so this is
/// the identity of a coupler.
struct CanonicalAction {
    std::vector<Vector> values;  // values[b'][extremal]

    friend bool operator==(const CanonicalAction&, const CanonicalAction&) = default;
    friend bool operator<(const CanonicalAction& a, const CanonicalAction& b) {
        return std::lexicographical_compare(
            a.values.begin(), a.values.end(), b.values.begin(), b.values.end(),
            [](const Vector& x, const Vector& y) {
                return std::lexicographical_compare(x.begin(), x.end(), y.begin(), y.end());
            });
    }
};

class Coupler {
public:
    /// rows[b'] holds the 16 coefficients χ(b', ·). Throws NotUniversal unless
    /// the action is a probability distribution on every extremal state.
    explicit Coupler(std::vector<Vector> rows) : rows_(std::move(rows)) {
        if (rows_.size() < 2) throw std::invalid_argument("a coupler needs at least two outputs");
        for (const auto& r : rows_) {
            if (r.size() != kChiEntries) throw std::invalid_argument("coupler rows need 16 coefficients");
        }
        const auto& ext = extremal_states();
        for (std::size_t v = 0; v < ext.size(); ++v) {
            const auto p = chi_coordinates(ext[v]);
            Rational total = 0;
            for (std::size_t b = 0; b < rows_.size(); ++b) {
                const auto out = dot(rows_[b], p);
                if (out < 0) {
                    throw NotUniversal("P'(" + std::to_string(b) + ") = " + to_string(out) + " on " +
                                       extremal_label(v));
                }
                total += out;
            }
            if (total != 1) {
                throw NotUniversal("output distribution sums to " + to_string(total) + " on " +
                                   extremal_label(v));
            }
        }
    }

    /// Binary coupler from χ(0, ·), with χ(1, ·) = 1/4 − χ(0, ·).
    static Coupler from_zero_row(const Vector& chi0) {
        Vector chi1(kChiEntries);
        for (std::size_t k = 0; k < kChiEntries; ++k) chi1[k] = Rational(1, 4) - chi0.at(k);
        return Coupler({chi0, std::move(chi1)});
    }

    std::size_t output_cardinality() const { return rows_.size(); }
    const std::vector<Vector>& rows() const { return rows_; }
    const Rational& chi(std::size_t b_out, unsigned b1, unsigned b2, unsigned y1, unsigned y2) const {
        return rows_.at(b_out)[chi_index(b1, b2, y1, y2)];
    }

private:
    std::vector<Vector> rows_;
};

/// Output distribution of the coupler on a two-box state.
inline Vector apply(const Coupler& c, const BoxState& state) {
    const auto p = chi_coordinates(state);
    Vector out;
    for (const auto& row : c.rows()) out.push_back(dot(row, p));
    return out;
}

inline CanonicalAction canonical_action(const Coupler& c) {
    CanonicalAction a;
    a.values.assign(c.output_cardinality(), Vector(kNumExtremals));
    const auto& ext = extremal_states();
    for (std::size_t v = 0; v < ext.size(); ++v) {
        const auto out = apply(c, ext[v]);
        for (std::size_t b = 0; b < out.size(); ++b) a.values[b][v] = out[b];
    }
    return a;
}

/// Equivalent couplers: identical action on every two-box state.
inline bool operator==(const Coupler& a, const Coupler& b) {
    return canonical_action(a) == canonical_action(b);
}

/// Applies the coupler to boxes `first` (playing b1, y1) and `second`
/// (playing b2, y2) of a larger state. The pair is replaced by one input-free
/// box carrying b', placed where the lower of the two indices was.
inline BoxState apply_embedded(const Coupler& c, const BoxState& state, std::size_t first,
                               std::size_t second) {
    const auto& sig = state.signature();
    if (first == second || first >= sig.size() || second >= sig.size()) {
        throw std::invalid_argument("coupler needs two distinct boxes of the state");
    }
    if (sig[first] != BoxShape{2, 2} || sig[second] != BoxShape{2, 2}) {
        throw BadSignature("coupler target boxes must be binary-input/binary-output");
    }
    std::vector<std::size_t> rest;
    for (std::size_t k = 0; k < sig.size(); ++k) {
        if (k != first && k != second) rest.push_back(k);
    }
    const std::size_t slot = static_cast<std::size_t>(
        std::count_if(rest.begin(), rest.end(), [&](auto k) { return k < std::min(first, second); }));

    std::vector<BoxShape> shapes;
    for (auto k : rest) shapes.push_back(sig[k]);
    shapes.insert(shapes.begin() + static_cast<std::ptrdiff_t>(slot), BoxShape{1, c.output_cardinality()});
    const BoxSignature out_sig(std::move(shapes));

    std::vector<std::size_t> rest_in_radices, rest_out_radices;
    for (auto k : rest) {
        rest_in_radices.push_back(sig[k].inputs);
        rest_out_radices.push_back(sig[k].outputs);
    }
    std::size_t rest_inputs = 1, rest_outputs = 1;
    for (auto k : rest) {
        rest_inputs *= sig[k].inputs;
        rest_outputs *= sig[k].outputs;
    }
    // Output index in the result for (rest outputs, b').
    std::vector<std::vector<std::size_t>> out_index(rest_outputs,
                                                    std::vector<std::size_t>(c.output_cardinality()));
    for (std::size_t orr = 0; orr < rest_outputs; ++orr) {
        for (std::size_t b = 0; b < c.output_cardinality(); ++b) {
            auto digits = detail::decode(orr, rest_out_radices);
            digits.insert(digits.begin() + static_cast<std::ptrdiff_t>(slot), b);
            out_index[orr][b] = out_sig.encode_outputs(digits);
        }
    }

    std::vector<Rational> table(rest_inputs * out_sig.joint_outputs());
    const auto no = out_sig.joint_outputs();
    for (std::size_t i = 0; i < sig.joint_inputs(); ++i) {
        const auto din = sig.decode_inputs(i);
        Digits rin;
        for (auto k : rest) rin.push_back(din[k]);
        const auto ir = detail::encode(rin, rest_in_radices);
        for (std::size_t o = 0; o < sig.joint_outputs(); ++o) {
            const auto& p = state.at(i, o);
            if (p.is_zero()) continue;
            const auto dout = sig.decode_outputs(o);
            Digits rout;
            for (auto k : rest) rout.push_back(dout[k]);
            const auto orr = detail::encode(rout, rest_out_radices);
            const auto k = chi_index(unsigned(dout[first]), unsigned(dout[second]), unsigned(din[first]),
                                     unsigned(din[second]));
            for (std::size_t b = 0; b < c.output_cardinality(); ++b) {
                const auto& w = c.rows()[b][k];
                if (!w.is_zero()) table[ir * no + out_index[orr][b]] += w * p;
            }
        }
    }
    return BoxState(out_sig, std::move(table));
}

/// Input/output relabelings of Bob's two boxes: NOT-gates on the wires and
/// exchanging which box plays b1/y1.
struct WireRelabeling {
    bool flip_y1 = false, flip_y2 = false, flip_b1 = false, flip_b2 = false;
    bool swap_boxes = false;

    static std::vector<WireRelabeling> all() {
        std::vector<WireRelabeling> out;
        for (unsigned m = 0; m < 32; ++m) {
            out.push_back({bool(m & 1U), bool(m & 2U), bool(m & 4U), bool(m & 8U), bool(m & 16U)});
        }
        return out;
    }
};

/// The coupler obtained by wiring `c` through the relabeling: the new coupler
/// applied to a state acts as `c` on the relabeled state.
inline Coupler relabel(const Coupler& c, const WireRelabeling& r) {
    std::vector<Vector> rows(c.output_cardinality(), Vector(kChiEntries));
    for (unsigned b1 = 0; b1 < 2; ++b1) {
        for (unsigned b2 = 0; b2 < 2; ++b2) {
            for (unsigned y1 = 0; y1 < 2; ++y1) {
                for (unsigned y2 = 0; y2 < 2; ++y2) {
                    unsigned nb1 = b1 ^ r.flip_b1, nb2 = b2 ^ r.flip_b2;
                    unsigned ny1 = y1 ^ r.flip_y1, ny2 = y2 ^ r.flip_y2;
                    if (r.swap_boxes) {
                        std::swap(nb1, nb2);
                        std::swap(ny1, ny2);
                    }
                    for (std::size_t b = 0; b < rows.size(); ++b) {
                        rows[b][chi_index(b1, b2, y1, y2)] = c.chi(b, nb1, nb2, ny1, ny2);
                    }
                }
            }
        }
    }
    return Coupler(std::move(rows));
}

/// The polytope of χ(0, ·) whose action lies in [0, 1] on all 24 extremal
/// states: one lower and one upper inequality per state, 48 in all.
inline HRep build_coupler_polytope() {
    HRep h;
    h.ambient_dim = kChiEntries;
    for (const auto& s : extremal_states()) {
        const auto p = chi_coordinates(s);
        Vector lower(kChiEntries);
        for (std::size_t k = 0; k < kChiEntries; ++k) lower[k] = -p[k];
        h.inequalities.push_back({std::move(lower), 0});
        h.inequalities.push_back({p, 1});
    }
    return h;
}

/// Merges all outputs other than `keep` into output 1; `keep` becomes output 0.
inline Coupler reduce_output_range(const Coupler& c, std::size_t keep) {
    if (keep >= c.output_cardinality()) throw std::out_of_range("output value out of range");
    Vector merged(kChiEntries);
    for (std::size_t b = 0; b < c.output_cardinality(); ++b) {
        if (b == keep) continue;
        for (std::size_t k = 0; k < kChiEntries; ++k) merged[k] += c.rows()[b][k];
    }
    return Coupler({c.rows()[keep], std::move(merged)});
}

namespace detail {

using ZeroOneFingerprint = std::array<std::uint8_t, kNumExtremals>;

/// 2 · P'(0) on each extremal state for every χ(0, ·) ∈ {0,1}^16.
inline const std::map<ZeroOneFingerprint, std::uint32_t>& zero_one_actions() {
    static const auto table = [] {
        std::array<std::array<std::uint8_t, kChiEntries>, kNumExtremals> doubled{};
        const auto& ext = extremal_states();
        for (std::size_t v = 0; v < kNumExtremals; ++v) {
            const auto p = chi_coordinates(ext[v]);
            for (std::size_t k = 0; k < kChiEntries; ++k) {
                doubled[v][k] = static_cast<std::uint8_t>(Rational(2 * p[k]).convert_to<int>());
            }
        }
        std::map<ZeroOneFingerprint, std::uint32_t> out;
        for (std::uint32_t mask = 0; mask < (1U << kChiEntries); ++mask) {
            ZeroOneFingerprint f{};
            for (std::size_t v = 0; v < kNumExtremals; ++v) {
                unsigned s = 0;
                for (std::size_t k = 0; k < kChiEntries; ++k) {
                    if (mask >> k & 1U) s += doubled[v][k];
                }
                f[v] = static_cast<std::uint8_t>(s);
            }
            out.emplace(f, mask);
        }
        return out;
    }();
    return table;
}

}  // namespace detail

/// A χ(0, ·) with entries in {0,1} acting like `c` on every state, if any.
inline std::optional<Vector> zero_one_representative(const Coupler& c) {
    if (c.output_cardinality() != 2) return std::nullopt;
    const auto action = canonical_action(c);
    detail::ZeroOneFingerprint f{};
    for (std::size_t v = 0; v < kNumExtremals; ++v) {
        const Rational twice = 2 * action.values[0][v];
        if (denominator(twice) != 1 || twice > 2) return std::nullopt;
        f[v] = static_cast<std::uint8_t>(twice.convert_to<int>());
    }
    const auto& table = detail::zero_one_actions();
    const auto it = table.find(f);
    if (it == table.end()) return std::nullopt;
    Vector chi0(kChiEntries);
    for (std::size_t k = 0; k < kChiEntries; ++k) chi0[k] = (it->second >> k & 1U) ? 1 : 0;
    return chi0;
}

/// Output demanded of the would-be swapping coupler on L_αβγδ: b' = αγ ⊕ β ⊕ δ.
constexpr unsigned naive_local_rule(LocalExtremalId id) {
    return (id.alpha & id.gamma) ^ id.beta ^ id.delta;
}

struct NaiveCouplerReport {
    /// Whether some χ reproduces the local rule on all 16 local states while
    /// staying a valid distribution on all 8 PR-type states.
    bool local_rule_chi_feasible = true;
    /// P'(1) on the noisy PR state is at least this, from ½ PR + ⅛ Σ L_{0β0δ}.
    Rational lower_bound;
    /// P'(1) on the noisy PR state forced by ⅛ Σ L_{αβγ(αγ⊕β)}.
    Rational forced_value;
    /// P'(b') on the PR state implied by linearity alone, b' = 0, 1.
    Vector affine_solution;
    bool affine_solution_unique = false;
    /// Rule output on the 8 local states of the second decomposition.
    std::vector<unsigned> local_decomposition_outputs;
};

inline NaiveCouplerReport analyze_naive_coupler() {
    NaiveCouplerReport r;
    const auto& ext = extremal_states();

    // χ(0, ·) reproducing the rule on local states, valid on PR-type states.
    HRep lp;
    lp.ambient_dim = kChiEntries;
    linalg::Matrix local_rows;
    Vector local_rhs;
    for (std::size_t k = 0; k < kNumLocalExtremals; ++k) {
        const auto p = chi_coordinates(ext[k]);
        const Rational target = naive_local_rule(LocalExtremalId::from_index(k)) == 0 ? 1 : 0;
        lp.equalities.push_back({p, target});
        local_rows.push_back(p);
        local_rhs.push_back(target);
    }
    for (std::size_t k = kNumLocalExtremals; k < kNumExtremals; ++k) {
        const auto p = chi_coordinates(ext[k]);
        Vector neg(kChiEntries);
        for (std::size_t j = 0; j < kChiEntries; ++j) neg[j] = -p[j];
        lp.inequalities.push_back({std::move(neg), 0});
        lp.inequalities.push_back({p, 1});
    }
    r.local_rule_chi_feasible = lp_feasible(lp).has_value();

    // The two decompositions of the noisy PR state.
    Rational noise_part = 0;
    for (unsigned beta = 0; beta < 2; ++beta) {
        for (unsigned delta = 0; delta < 2; ++delta) {
            if (naive_local_rule({0, beta, 0, delta}) == 1) noise_part += Rational(1, 8);
        }
    }
    // P'_PR(1) >= 0 makes the smallest value of ½ P'_PR(1) + noise_part equal noise_part.
    r.lower_bound = noise_part;
    r.forced_value = 0;
    for (unsigned alpha = 0; alpha < 2; ++alpha) {
        for (unsigned beta = 0; beta < 2; ++beta) {
            for (unsigned gamma = 0; gamma < 2; ++gamma) {
                const unsigned out = naive_local_rule({alpha, beta, gamma, (alpha & gamma) ^ beta});
                r.local_decomposition_outputs.push_back(out);
                if (out == 1) r.forced_value += Rational(1, 8);
            }
        }
    }

    // Without positivity, linearity fixes the PR action through the local equations.
    const auto chi0 = linalg::solve(local_rows, local_rhs, kChiEntries);
    if (chi0) {
        const auto pr = chi_coordinates(pr_state());
        const Rational p0 = dot(*chi0, pr);
        r.affine_solution = {p0, 1 - p0};
        auto with_pr = local_rows;
        with_pr.push_back(pr);
        r.affine_solution_unique = linalg::rank(with_pr) == linalg::rank(local_rows);
    }
    return r;
}

}  // namespace nsbox
