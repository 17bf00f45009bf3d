// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>

#include "test_util.hpp"

using namespace nsbox;
using nsbox::fixtures::Rng;

namespace {

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            if (pass) detail << "failed: ";
            else detail << "; ";
            detail << what;
            pass = false;
        }
    }
};

// 1. The two-box no-signalling polytope.
void ns_polytope(Outcome& r) {
    const auto v = enumerate_vertices(two_box_no_signalling_hrep());
    std::set<Vector> got(v.vertices.begin(), v.vertices.end()), expected;
    for (const auto& s : extremal_states()) expected.insert(s.table());
    r.require(v.vertices.size() == 24, "vertex count " + std::to_string(v.vertices.size()));
    r.require(v.dimension == 8, "dimension " + std::to_string(v.dimension));
    r.require(got == expected, "vertex set differs from the 16 local and 8 PR-type tables");
    r.detail << "24 vertices, dimension 8, vertex set = extremal tables";
}

// 2. CHSH values and the local bound.
void chsh(Outcome& r) {
    r.require(chsh_value(pr_state()) == 4, "CHSH(PR) = " + to_string(chsh_value(pr_state())));
    Rational best = -4;
    for (std::size_t k = 0; k < kNumLocalExtremals; ++k) best = std::max(best, chsh_value(extremal_states()[k]));
    r.require(best == 2, "local maximum " + to_string(best));
    Rng rng(1002);
    int checked = 0;
    for (int t = 0; t < 1000; ++t) {
        const auto s = fixtures::random_local_pair(rng);
        const auto d = local_membership(s);
        r.require(d.has_value(), "random local mixture rejected");
        if (!d) continue;
        r.require(reconstruct(*d) == s, "decomposition does not reconstruct");
        r.require(abs(chsh_value(s)) <= 2, "local state with |CHSH| > 2");
        ++checked;
    }
    r.detail << "CHSH(PR) = 4, local max = 2, " << checked << " random local mixtures within |CHSH| <= 2";
}

// 3. The coupler polytope.
void coupler_polytope(Outcome& r) {
    const auto h = build_coupler_polytope();
    const auto v = enumerate_vertices(h);
    r.require(h.inequalities.size() == 48, "inequality count");
    r.require(v.dimension == 9, "dimension " + std::to_string(v.dimension));
    r.require(v.vertices.size() == 82, "vertex count " + std::to_string(v.vertices.size()));
    r.require(v.linearities.size() == 7, "linearity count " + std::to_string(v.linearities.size()));
    std::size_t with_rep = 0;
    for (const auto& x : v.vertices) with_rep += zero_one_representative(Coupler::from_zero_row(x)).has_value();
    r.require(with_rep == v.vertices.size(), "vertices without a 0/1 representative");
    r.detail << "48 inequalities, " << v.vertices.size() << " vertices, dimension " << v.dimension << ", "
             << v.linearities.size() << " linearities, " << with_rep << " with 0/1 representatives";
}

// 4. Every vertex is a wiring.
void triviality(Outcome& r) {
    const auto tr = classify_triviality();
    r.require(tr.vertex_actions_equal_wiring_actions, "vertex actions != wiring actions");
    r.require(tr.wiring_action_count == 82, "wiring action count " + std::to_string(tr.wiring_action_count));
    r.require(tr.nontrivial_count == 0, "non-trivial count " + std::to_string(tr.nontrivial_count));
    r.require(tr.unlabeled_count == 0, "unlabeled vertices");
    const std::vector<std::size_t> expected{2, 8, 8, 32, 32};
    const std::vector<CouplerClass> order{CouplerClass::Deterministic, CouplerClass::OneSided, CouplerClass::XorGated,
                                          CouplerClass::AndGated, CouplerClass::Sequential};
    std::vector<std::size_t> got;
    for (auto c : order) got.push_back(tr.histogram.contains(c) ? tr.histogram.at(c) : 0);
    r.require(got == expected, "class histogram");
    r.detail << "action sets equal, histogram {";
    for (std::size_t k = 0; k < got.size(); ++k) r.detail << (k ? ", " : "") << got[k];
    r.detail << "}, non-trivial " << tr.nontrivial_count;
}

// 5. The naive coupler does not exist.
void naive(Outcome& r) {
    const auto n = analyze_naive_coupler();
    r.require(!n.local_rule_chi_feasible, "LP feasible");
    r.require(n.forced_value == 0, "forced value " + to_string(n.forced_value));
    r.require(n.lower_bound == Rational(1, 4), "lower bound " + to_string(n.lower_bound));
    bool affine = n.affine_solution.size() == 2 && n.affine_solution_unique;
    for (unsigned b = 0; affine && b < 2; ++b) affine = n.affine_solution[b] == Rational(3, 2) - 2 * Rational(b);
    r.require(affine, "affine solution is not uniquely 3/2 - 2b'");
    r.detail << "LP infeasible, forced P'(1) = " << to_string(n.forced_value) << " vs lower bound "
             << to_string(n.lower_bound) << ", unique affine action (3/2, -1/2)";
}

// 6. Swapping by wiring.
void swap_wiring(Outcome& r) {
    std::size_t branches = 0, local = 0;
    for (const auto& w : all_wirings()) {
        for (const auto& [bb, br] : swapping_by_wiring(w)) {
            ++branches;
            const auto [b1, b2] = bb;
            // The closed form for strategies that query the first box first.
            if (w.first_box == 0) {
                const auto literal = local_extremal({w.first_input, b1, (w.mu & b1) ^ w.nu, b2});
                r.require(br.alice_charlie == literal, w.describe() + " differs from the closed form");
            }
            r.require(br.alice_charlie == predicted_swap_state(w, b1, b2), w.describe() + " unexpected state");
            const auto d = local_membership(br.alice_charlie);
            r.require(d && reconstruct(*d) == br.alice_charlie, w.describe() + " non-local branch");
            local += d.has_value();
        }
    }
    r.require(branches == 4 * Wiring::kCount, "branch count " + std::to_string(branches));
    r.detail << "256 strategies, " << local << "/" << branches << " outcome branches local and as predicted";
}

// 7. Swapping by coupler.
void swap_coupler(Outcome& r) {
    std::size_t branches = 0, local = 0;
    const auto& vs = fixtures::vertex_couplers();
    r.require(vs.size() == 82, "vertex count");
    for (const auto& c : vs) {
        const auto after = apply_embedded(c, pr_pair_state(), 1, 2);
        for (unsigned b = 0; b < 2; ++b) {
            try {
                const auto cond = condition(after, 1, 0, b);
                ++branches;
                const auto d = local_membership(cond.collapsed);
                r.require(d && reconstruct(*d) == cond.collapsed, "non-local Alice-Charlie state");
                local += d.has_value();
            } catch (const ZeroProbabilityOutcome&) {
            }
        }
    }
    r.detail << vs.size() << " vertex couplers, " << local << "/" << branches << " nonzero outcomes local";
}

// 8a. Linearity on random mixtures of states.
void linearity(Outcome& r) {
    Rng rng(1008);
    std::uniform_int_distribution<std::size_t> terms(2, 6);
    for (int t = 0; t < 200; ++t) {
        const auto c = fixtures::random_coupler(rng);
        const auto n = terms(rng);
        const auto w = fixtures::random_weights(rng, n);
        std::vector<BoxState> states;
        for (std::size_t k = 0; k < n; ++k) states.push_back(fixtures::random_ns_pair(rng));
        Vector expected(2);
        for (std::size_t k = 0; k < n; ++k) {
            const auto p = apply(c, states[k]);
            for (std::size_t b = 0; b < 2; ++b) expected[b] += w[k] * p[b];
        }
        r.require(apply(c, mix(w, states)) == expected, "apply(mixture) != mixture of applies");
    }
    r.detail << "200 random mixtures, apply commutes with mixing";
}

// 8b. No-signalling preserved by embedded couplers.
void ns_preservation(Outcome& r) {
    Rng rng(1009);
    std::size_t checked = 0;
    for (int t = 0; t < 200; ++t) {
        const auto s = fixtures::random_ns_four(rng);
        for (int k = 0; k < 10; ++k) {
            const auto after = apply_embedded(fixtures::random_coupler(rng), s, 1, 2);
            r.require(check_no_signalling(after).ok, "embedded coupler output signals");
            ++checked;
        }
    }
    r.detail << checked << " embedded applications, all no-signalling";
}

// 8c. Timing invariance: Alice and Charlie condition before or after Bob's coupler.
void timing(Outcome& r) {
    Rng rng(1010);
    std::uniform_int_distribution<std::size_t> bit(0, 1);
    std::size_t compared = 0, skipped = 0;
    while (compared < 100) {
        const auto s = fixtures::random_ns_four(rng);
        const auto c = fixtures::random_coupler(rng);
        const Observation alice{0, bit(rng), bit(rng)}, charlie{3, bit(rng), bit(rng)};
        std::optional<Conditioned> after, before;
        try {
            // After embedding, Charlie's box sits at index 2.
            after = condition(apply_embedded(c, s, 1, 2), {alice, Observation{2, charlie.input, charlie.output}});
        } catch (const ZeroProbabilityOutcome&) {
        }
        try {
            auto first = condition(s, {alice, charlie});
            before = Conditioned{first.probability, apply_embedded(c, first.collapsed, 0, 1)};
        } catch (const ZeroProbabilityOutcome&) {
        }
        r.require(after.has_value() == before.has_value(), "outcome possible in one order only");
        if (!after || !before) {
            // Impossible outcomes have no collapsed state to compare; draw again.
            ++skipped;
            continue;
        }
        r.require(after->probability == before->probability, "outcome probabilities differ");
        r.require(after->collapsed == before->collapsed, "collapsed states differ");
        ++compared;
    }
    r.detail << compared << " random instances with nonzero outcome (" << skipped
             << " zero-probability draws redrawn), both orders agree";
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria{
        {"1  no-signalling polytope", ns_polytope},
        {"2  CHSH values and local bound", chsh},
        {"3  coupler polytope", coupler_polytope},
        {"4  triviality of all couplers", triviality},
        {"5  naive coupler impossibility", naive},
        {"6  swapping by wiring", swap_wiring},
        {"7  swapping by coupler", swap_coupler},
        {"8a linearity on mixtures", linearity},
        {"8b no-signalling preservation", ns_preservation},
        {"8c timing invariance", timing},
    };
    bool all = true;
    const auto start = std::chrono::steady_clock::now();
    for (const auto& [name, check] : criteria) {
        Outcome r;
        try {
            check(r);
        } catch (const std::exception& e) {
            r.require(false, std::string("exception: ") + e.what());
        }
        all = all && r.pass;
        std::cout << (r.pass ? "PASS " : "FAIL ") << name << ": " << r.detail.str() << std::endl;
    }
    const auto secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::cout << (all ? "ALL CRITERIA PASS" : "SOME CRITERIA FAIL") << " (" << secs << " s)" << std::endl;
    return all ? 0 : 1;
}
