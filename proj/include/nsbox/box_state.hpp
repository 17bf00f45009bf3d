#pragma once

// Exact conditional probability tables P(O|I) over a list of boxes, plus the
// operations that move between them: marginals, collapse after an observed
// outcome, tensor products and mixtures.
//
// Joint inputs and joint outputs are enumerated in mixed radix with box 0 the
// most significant digit. Table entry (I, O) lives at I * joint_outputs + O.

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "nsbox/errors.hpp"
#include "nsbox/rational.hpp"

namespace nsbox {

struct BoxShape {
    std::size_t inputs = 2;
    std::size_t outputs = 2;

    friend bool operator==(const BoxShape&, const BoxShape&) = default;
};

using Digits = std::vector<std::size_t>;

namespace detail {

inline Digits decode(std::size_t index, const std::vector<std::size_t>& radices) {
    Digits digits(radices.size());
    for (std::size_t k = radices.size(); k-- > 0;) {
        digits[k] = index % radices[k];
        index /= radices[k];
    }
    return digits;
}

inline std::size_t encode(std::span<const std::size_t> digits,
                          const std::vector<std::size_t>& radices) {
    std::size_t index = 0;
    for (std::size_t k = 0; k < radices.size(); ++k) index = index * radices[k] + digits[k];
    return index;
}

}  // namespace detail

class BoxSignature {
public:
    BoxSignature() = default;

    explicit BoxSignature(std::vector<BoxShape> boxes) : boxes_(std::move(boxes)) {
        if (boxes_.empty()) throw BadSignature("a box signature needs at least one box");
        for (const auto& b : boxes_) {
            if (b.inputs == 0 || b.outputs == 0) {
                throw BadSignature("box cardinalities must be positive");
            }
        }
    }

    /// `n` boxes with binary input and binary output.
    static BoxSignature binary(std::size_t n) {
        return BoxSignature(std::vector<BoxShape>(n, BoxShape{2, 2}));
    }

    std::size_t size() const { return boxes_.size(); }
    const BoxShape& operator[](std::size_t k) const { return boxes_.at(k); }
    const std::vector<BoxShape>& boxes() const { return boxes_; }

    std::vector<std::size_t> input_radices() const {
        std::vector<std::size_t> r;
        for (const auto& b : boxes_) r.push_back(b.inputs);
        return r;
    }
    std::vector<std::size_t> output_radices() const {
        std::vector<std::size_t> r;
        for (const auto& b : boxes_) r.push_back(b.outputs);
        return r;
    }

    std::size_t joint_inputs() const {
        std::size_t n = 1;
        for (const auto& b : boxes_) n *= b.inputs;
        return n;
    }
    std::size_t joint_outputs() const {
        std::size_t n = 1;
        for (const auto& b : boxes_) n *= b.outputs;
        return n;
    }

    Digits decode_inputs(std::size_t index) const { return detail::decode(index, input_radices()); }
    Digits decode_outputs(std::size_t index) const { return detail::decode(index, output_radices()); }
    std::size_t encode_inputs(std::span<const std::size_t> d) const {
        return detail::encode(d, input_radices());
    }
    std::size_t encode_outputs(std::span<const std::size_t> d) const {
        return detail::encode(d, output_radices());
    }

    bool is_binary_pair() const { return boxes_ == std::vector<BoxShape>(2, BoxShape{2, 2}); }

    BoxSignature select(std::span<const std::size_t> keep) const {
        std::vector<BoxShape> out;
        for (auto k : keep) out.push_back(boxes_.at(k));
        return BoxSignature(std::move(out));
    }

    friend BoxSignature concat(const BoxSignature& a, const BoxSignature& b) {
        auto boxes = a.boxes_;
        boxes.insert(boxes.end(), b.boxes_.begin(), b.boxes_.end());
        return BoxSignature(std::move(boxes));
    }

    friend bool operator==(const BoxSignature&, const BoxSignature&) = default;

private:
    std::vector<BoxShape> boxes_;
};

/// A validated box state: non-negative entries, each input row sums to one.
class BoxState {
public:
    BoxState(BoxSignature signature, std::vector<Rational> table)
        : signature_(std::move(signature)), table_(std::move(table)) {
        const auto ni = signature_.joint_inputs();
        const auto no = signature_.joint_outputs();
        if (table_.size() != ni * no) {
            throw InvalidState("table has " + std::to_string(table_.size()) + " entries, expected " +
                               std::to_string(ni * no));
        }
        for (std::size_t i = 0; i < ni; ++i) {
            Rational row = 0;
            for (std::size_t o = 0; o < no; ++o) {
                const auto& p = table_[i * no + o];
                if (p < 0) {
                    throw InvalidState("negative probability " + to_string(p) + " at input " +
                                       std::to_string(i) + ", output " + std::to_string(o));
                }
                row += p;
            }
            if (row != 1) {
                throw InvalidState("outputs for joint input " + std::to_string(i) + " sum to " +
                                   to_string(row));
            }
        }
    }

    const BoxSignature& signature() const { return signature_; }
    std::size_t num_boxes() const { return signature_.size(); }
    const std::vector<Rational>& table() const { return table_; }

    const Rational& at(std::size_t input_index, std::size_t output_index) const {
        return table_.at(input_index * signature_.joint_outputs() + output_index);
    }

    /// P(outputs | inputs), one digit per box.
    const Rational& prob(std::span<const std::size_t> outputs, std::span<const std::size_t> inputs) const {
        return at(signature_.encode_inputs(inputs), signature_.encode_outputs(outputs));
    }

    friend bool operator==(const BoxState&, const BoxState&) = default;

private:
    BoxSignature signature_;
    std::vector<Rational> table_;
};

struct SignallingViolation {
    std::vector<std::size_t> senders;
    std::vector<std::size_t> receivers;
    Digits receiver_inputs;
    Digits receiver_outputs;
    Digits sender_inputs_first;
    Digits sender_inputs_second;
    Rational value_first;
    Rational value_second;
};

struct NoSignallingReport {
    bool ok = true;
    std::vector<SignallingViolation> violations;
};

namespace detail {

/// Splits joint indices of a signature into (kept, discarded) sub-indices.
struct Split {
    std::vector<std::size_t> kept;
    std::vector<std::size_t> dropped;
    std::vector<std::size_t> in_kept, in_dropped, out_kept, out_dropped;
    std::size_t n_in_kept = 1, n_in_dropped = 1, n_out_kept = 1, n_out_dropped = 1;

    Split(const BoxSignature& sig, std::span<const std::size_t> keep) {
        std::vector<bool> mask(sig.size(), false);
        for (auto k : keep) {
            if (k >= sig.size()) throw std::out_of_range("box index out of range");
            mask[k] = true;
        }
        for (std::size_t k = 0; k < sig.size(); ++k) (mask[k] ? kept : dropped).push_back(k);

        std::vector<std::size_t> rik, rid, rok, rod;
        for (auto k : kept) {
            rik.push_back(sig[k].inputs);
            rok.push_back(sig[k].outputs);
            n_in_kept *= sig[k].inputs;
            n_out_kept *= sig[k].outputs;
        }
        for (auto k : dropped) {
            rid.push_back(sig[k].inputs);
            rod.push_back(sig[k].outputs);
            n_in_dropped *= sig[k].inputs;
            n_out_dropped *= sig[k].outputs;
        }
        auto project = [](const Digits& d, const std::vector<std::size_t>& boxes,
                          const std::vector<std::size_t>& radices) {
            Digits sub;
            for (auto k : boxes) sub.push_back(d[k]);
            return encode(sub, radices);
        };
        for (std::size_t i = 0; i < sig.joint_inputs(); ++i) {
            const auto d = sig.decode_inputs(i);
            in_kept.push_back(project(d, kept, rik));
            in_dropped.push_back(project(d, dropped, rid));
        }
        for (std::size_t o = 0; o < sig.joint_outputs(); ++o) {
            const auto d = sig.decode_outputs(o);
            out_kept.push_back(project(d, kept, rok));
            out_dropped.push_back(project(d, dropped, rod));
        }
    }
};

/// Kept-box marginal table for every assignment of the dropped boxes' inputs.
inline std::vector<std::vector<Rational>> marginal_tables(const BoxState& s, const Split& sp) {
    std::vector<std::vector<Rational>> m(sp.n_in_dropped,
                                         std::vector<Rational>(sp.n_in_kept * sp.n_out_kept));
    const auto ni = s.signature().joint_inputs();
    const auto no = s.signature().joint_outputs();
    for (std::size_t i = 0; i < ni; ++i) {
        auto& table = m[sp.in_dropped[i]];
        for (std::size_t o = 0; o < no; ++o) {
            const auto& p = s.at(i, o);
            if (!p.is_zero()) table[sp.in_kept[i] * sp.n_out_kept + sp.out_kept[o]] += p;
        }
    }
    return m;
}

inline Digits sub_digits(std::size_t index, const BoxSignature& sig,
                         const std::vector<std::size_t>& boxes, bool inputs) {
    std::vector<std::size_t> radices;
    for (auto k : boxes) radices.push_back(inputs ? sig[k].inputs : sig[k].outputs);
    return decode(index, radices);
}

}  // namespace detail

/// Checks, for every sender/receiver bipartition, that the receiver's
/// marginal does not depend on the sender's inputs.
inline NoSignallingReport check_no_signalling(const BoxState& state) {
    NoSignallingReport report;
    const auto& sig = state.signature();
    const std::size_t n = sig.size();
    if (n < 2) return report;
    for (std::size_t mask = 1; mask + 1 < (std::size_t{1} << n); ++mask) {
        std::vector<std::size_t> receivers;
        for (std::size_t k = 0; k < n; ++k) {
            if (!(mask >> k & 1U)) receivers.push_back(k);
        }
        detail::Split sp(sig, receivers);
        const auto tables = detail::marginal_tables(state, sp);
        for (std::size_t s = 1; s < tables.size(); ++s) {
            for (std::size_t ir = 0; ir < sp.n_in_kept; ++ir) {
                for (std::size_t orr = 0; orr < sp.n_out_kept; ++orr) {
                    const auto idx = ir * sp.n_out_kept + orr;
                    if (tables[0][idx] == tables[s][idx]) continue;
                    report.ok = false;
                    report.violations.push_back(SignallingViolation{
                        sp.dropped, sp.kept,
                        detail::sub_digits(ir, sig, sp.kept, true),
                        detail::sub_digits(orr, sig, sp.kept, false),
                        detail::sub_digits(0, sig, sp.dropped, true),
                        detail::sub_digits(s, sig, sp.dropped, true),
                        tables[0][idx], tables[s][idx]});
                }
            }
        }
    }
    return report;
}

/// Reduced state on `keep` (returned in ascending box order).
inline BoxState marginal(const BoxState& state, std::span<const std::size_t> keep) {
    if (keep.empty()) throw std::invalid_argument("marginal needs at least one kept box");
    detail::Split sp(state.signature(), keep);
    const auto tables = detail::marginal_tables(state, sp);
    for (std::size_t s = 1; s < tables.size(); ++s) {
        if (tables[s] != tables[0]) {
            throw SignallingState("marginal on the kept boxes depends on the discarded boxes' inputs");
        }
    }
    return BoxState(state.signature().select(sp.kept), tables[0]);
}

inline BoxState marginal(const BoxState& state, std::initializer_list<std::size_t> keep) {
    return marginal(state, std::span<const std::size_t>(keep.begin(), keep.size()));
}

struct Observation {
    std::size_t box;
    std::size_t input;
    std::size_t output;
};

struct Conditioned {
    Rational probability;
    BoxState collapsed;
};

/// Probability of `output` given `input` on one box, and the renormalized
/// state of the other boxes given that outcome.
inline Conditioned condition(const BoxState& state, std::size_t box, std::size_t input,
                             std::size_t output) {
    const auto& sig = state.signature();
    if (box >= sig.size()) throw std::out_of_range("box index out of range");
    if (input >= sig[box].inputs || output >= sig[box].outputs) {
        throw std::out_of_range("input or output value out of range for box " + std::to_string(box));
    }
    if (sig.size() < 2) throw std::invalid_argument("cannot condition the only box of a state");

    const std::size_t single[] = {box};
    const auto local = marginal(state, single);
    const Rational p = local.at(input, output);
    if (p.is_zero()) {
        throw ZeroProbabilityOutcome("outcome " + std::to_string(output) + " for input " +
                                     std::to_string(input) + " on box " + std::to_string(box) +
                                     " has probability 0");
    }

    std::vector<std::size_t> rest;
    for (std::size_t k = 0; k < sig.size(); ++k) {
        if (k != box) rest.push_back(k);
    }
    const auto rest_sig = sig.select(rest);
    std::vector<Rational> table(rest_sig.joint_inputs() * rest_sig.joint_outputs());
    for (std::size_t ir = 0; ir < rest_sig.joint_inputs(); ++ir) {
        auto in_digits = rest_sig.decode_inputs(ir);
        in_digits.insert(in_digits.begin() + static_cast<std::ptrdiff_t>(box), input);
        const auto full_in = sig.encode_inputs(in_digits);
        for (std::size_t orr = 0; orr < rest_sig.joint_outputs(); ++orr) {
            auto out_digits = rest_sig.decode_outputs(orr);
            out_digits.insert(out_digits.begin() + static_cast<std::ptrdiff_t>(box), output);
            table[ir * rest_sig.joint_outputs() + orr] =
                state.at(full_in, sig.encode_outputs(out_digits)) / p;
        }
    }
    return {p, BoxState(rest_sig, std::move(table))};
}

/// Conditions on several outcomes in the given order. Box indices refer to the
/// original state; the result holds the joint probability of all outcomes.
inline Conditioned condition(const BoxState& state, std::span<const Observation> observations) {
    std::vector<std::size_t> removed;
    Rational probability = 1;
    BoxState current = state;
    for (const auto& obs : observations) {
        if (std::find(removed.begin(), removed.end(), obs.box) != removed.end()) {
            throw std::invalid_argument("box " + std::to_string(obs.box) + " conditioned twice");
        }
        const auto shift = static_cast<std::size_t>(
            std::count_if(removed.begin(), removed.end(), [&](auto r) { return r < obs.box; }));
        auto step = condition(current, obs.box - shift, obs.input, obs.output);
        probability *= step.probability;
        current = std::move(step.collapsed);
        removed.push_back(obs.box);
    }
    return {probability, std::move(current)};
}

inline Conditioned condition(const BoxState& state, std::initializer_list<Observation> observations) {
    return condition(state, std::span<const Observation>(observations.begin(), observations.size()));
}

/// Product state; the boxes of `a` come first.
inline BoxState tensor(const BoxState& a, const BoxState& b) {
    const auto sig = concat(a.signature(), b.signature());
    const auto nia = a.signature().joint_inputs(), noa = a.signature().joint_outputs();
    const auto nib = b.signature().joint_inputs(), nob = b.signature().joint_outputs();
    std::vector<Rational> table(sig.joint_inputs() * sig.joint_outputs());
    for (std::size_t ia = 0; ia < nia; ++ia) {
        for (std::size_t ib = 0; ib < nib; ++ib) {
            const auto i = ia * nib + ib;
            for (std::size_t oa = 0; oa < noa; ++oa) {
                const auto& pa = a.at(ia, oa);
                if (pa.is_zero()) continue;
                for (std::size_t ob = 0; ob < nob; ++ob) {
                    table[i * noa * nob + oa * nob + ob] = pa * b.at(ib, ob);
                }
            }
        }
    }
    return BoxState(sig, std::move(table));
}

/// Convex combination Σ w_k · s_k. Weights must be non-negative and sum to 1.
inline BoxState mix(std::span<const Rational> weights, std::span<const BoxState> states) {
    if (weights.size() != states.size() || states.empty()) {
        throw std::invalid_argument("mix needs one weight per state");
    }
    Rational total = 0;
    for (const auto& w : weights) {
        if (w < 0) throw InvalidState("negative mixture weight");
        total += w;
    }
    if (total != 1) throw InvalidState("mixture weights sum to " + to_string(total));
    std::vector<Rational> table(states[0].table().size());
    for (std::size_t k = 0; k < states.size(); ++k) {
        if (states[k].signature() != states[0].signature()) {
            throw BadSignature("cannot mix states with different signatures");
        }
        if (weights[k].is_zero()) continue;
        for (std::size_t e = 0; e < table.size(); ++e) table[e] += weights[k] * states[k].table()[e];
    }
    return BoxState(states[0].signature(), std::move(table));
}

/// Reorders boxes: box k of the result is box `order[k]` of `state`.
inline BoxState permute_boxes(const BoxState& state, std::span<const std::size_t> order) {
    const auto& sig = state.signature();
    std::vector<std::size_t> check(order.begin(), order.end());
    std::sort(check.begin(), check.end());
    std::vector<std::size_t> identity(sig.size());
    std::iota(identity.begin(), identity.end(), 0);
    if (check != identity) throw std::invalid_argument("permute_boxes needs a permutation");

    const auto out_sig = sig.select(order);
    std::vector<Rational> table(state.table().size());
    for (std::size_t i = 0; i < sig.joint_inputs(); ++i) {
        const auto din = sig.decode_inputs(i);
        Digits pin;
        for (auto k : order) pin.push_back(din[k]);
        const auto ni = out_sig.encode_inputs(pin);
        for (std::size_t o = 0; o < sig.joint_outputs(); ++o) {
            const auto dout = sig.decode_outputs(o);
            Digits pout;
            for (auto k : order) pout.push_back(dout[k]);
            table[ni * out_sig.joint_outputs() + out_sig.encode_outputs(pout)] = state.at(i, o);
        }
    }
    return BoxState(out_sig, std::move(table));
}

inline std::string describe(const SignallingViolation& v) {
    auto list = [](const std::vector<std::size_t>& xs) {
        std::ostringstream os;
        os << '{';
        for (std::size_t k = 0; k < xs.size(); ++k) os << (k ? "," : "") << xs[k];
        os << '}';
        return os.str();
    };
    std::ostringstream os;
    os << "senders " << list(v.senders) << " -> receivers " << list(v.receivers)
       << ": P(O_R=" << list(v.receiver_outputs) << " | I_R=" << list(v.receiver_inputs) << ") is "
       << to_string(v.value_first) << " when I_S=" << list(v.sender_inputs_first) << " but "
       << to_string(v.value_second) << " when I_S=" << list(v.sender_inputs_second);
    return os.str();
}

}  // namespace nsbox
