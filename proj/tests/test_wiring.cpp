#include <gtest/gtest.h>

#include <set>

#include "test_util.hpp"

using namespace nsbox;
using nsbox::fixtures::Rng;

namespace {

Wiring make_wiring(unsigned first_box, unsigned lambda, unsigned mu, unsigned nu, std::array<unsigned, 4> table) {
    Wiring w;
    w.first_box = first_box;
    w.first_input = lambda;
    w.mu = mu;
    w.nu = nu;
    w.output_table = table;
    return w;
}

constexpr std::array<unsigned, 4> kOutB1{0, 0, 1, 1};
constexpr std::array<unsigned, 4> kOutB2{0, 1, 0, 1};
constexpr std::array<unsigned, 4> kOutXor{0, 1, 1, 0};

}  // namespace

TEST(Wiring, IndexRoundTrip) {
    for (std::size_t i = 0; i < Wiring::kCount; ++i) EXPECT_EQ(Wiring::from_index(i).index(), i);
    EXPECT_EQ(all_wirings().size(), 256u);
}

TEST(ApplyWiring, PrWithAdaptiveInputs) {
    // Bob's two boxes are his halves of PR x PR, so his reduced state is the
    // product of two uniform marginals.
    const auto bob = marginal(pr_pair_state(), {1, 2});
    const auto d = apply_wiring(bob, make_wiring(0, 1, 1, 1, kOutB2));
    for (unsigned b1 = 0; b1 < 2; ++b1) {
        for (unsigned b2 = 0; b2 < 2; ++b2) EXPECT_EQ(d[(b1 * 2 + b2) * 2] + d[(b1 * 2 + b2) * 2 + 1], Rational(1, 4));
    }
    // On a single PR state: y1 = 1, y2 = b1 xor 1. Oracle from the parity
    // relation: b1 = 0 gives y2 = 1 and b2 = 1, b1 = 1 gives y2 = 0 and b2 = 1.
    const auto p = apply_wiring(pr_state(), make_wiring(0, 1, 1, 1, kOutB2));
    const WiringDistribution expected{0, 0, 0, Rational(1, 2), 0, 0, 0, Rational(1, 2)};
    EXPECT_EQ(p, expected);
}

TEST(ApplyWiring, DeterministicInDeterministicOut) {
    for (const auto& w : all_wirings()) {
        const auto d = apply_wiring(local_extremal({0, 0, 0, 0}), w);
        int ones = 0;
        for (const auto& p : d) {
            EXPECT_TRUE(p == 0 || p == 1);
            ones += p == 1;
        }
        EXPECT_EQ(ones, 1);
    }
}

TEST(ApplyWiring, XorOfPrAtZeroInputs) {
    // Oracle: at y1 = y2 = 0 the PR table puts 1/2 on b1 = b2 = 0 and b1 = b2 = 1.
    const auto p = output_marginal(apply_wiring(pr_state(), make_wiring(0, 0, 0, 0, kOutXor)));
    const auto& pr = pr_state();
    EXPECT_EQ(p[0], pr.at(0, 0) + pr.at(0, 3));
    EXPECT_EQ(p[0], 1);
    EXPECT_EQ(p[1], 0);
}

TEST(WiringToCoupler, MatchesFamilies) {
    const auto xor_coupler = wiring_to_coupler(make_wiring(0, 0, 0, 0, kOutXor));
    const auto fam = match_family(canonical_action(xor_coupler));
    ASSERT_TRUE(fam);
    EXPECT_EQ(fam->label(), "X000");

    const auto seq = wiring_to_coupler(make_wiring(0, 0, 1, 0, kOutB2));
    const auto sfam = match_family(canonical_action(seq));
    ASSERT_TRUE(sfam);
    EXPECT_EQ(sfam->label(), "S00000");
}

TEST(WiringToCoupler, ActionEqualsApplyWiringOnRandomStates) {
    Rng rng(51);
    std::vector<Coupler> couplers;
    for (const auto& w : all_wirings()) couplers.push_back(wiring_to_coupler(w));
    for (int t = 0; t < 100; ++t) {
        const auto s = fixtures::random_ns_pair(rng);
        for (std::size_t k = 0; k < Wiring::kCount; ++k) {
            ASSERT_EQ(apply(couplers[k], s), output_marginal(apply_wiring(s, Wiring::from_index(k)))) << k;
        }
    }
}

TEST(EnumerateWiringCouplers, CountsAndClasses) {
    const auto ws = enumerate_wiring_couplers();
    EXPECT_EQ(ws.size(), 82u);
    std::map<CouplerClass, int> hist;
    for (const auto& w : ws) {
        const auto f = match_family(w.action);
        ASSERT_TRUE(f);
        ++hist[f->cls];
    }
    EXPECT_EQ(hist[CouplerClass::Deterministic], 2);
    EXPECT_EQ(hist[CouplerClass::OneSided], 8);
    EXPECT_EQ(hist[CouplerClass::XorGated], 8);
    EXPECT_EQ(hist[CouplerClass::AndGated], 32);
    EXPECT_EQ(hist[CouplerClass::Sequential], 32);
}

TEST(EnumerateWiringCouplers, DeterministicClassIsConstant) {
    int found = 0;
    for (const auto& w : enumerate_wiring_couplers()) {
        const auto f = match_family(w.action);
        if (!f || f->cls != CouplerClass::Deterministic) continue;
        ++found;
        const unsigned bit = f->params[0];
        for (const auto& v : w.action.values[bit]) EXPECT_EQ(v, 1);
        for (const auto& v : w.action.values[1 - bit]) EXPECT_EQ(v, 0);
    }
    EXPECT_EQ(found, 2);
}

TEST(EnumerateWiringCouplers, InvariantUnderNotGates) {
    std::set<CanonicalAction> base;
    for (const auto& w : enumerate_wiring_couplers()) base.insert(w.action);
    for (const auto& r : WireRelabeling::all()) {
        std::set<CanonicalAction> moved;
        for (const auto& w : enumerate_wiring_couplers()) moved.insert(canonical_action(relabel(w.coupler, r)));
        EXPECT_EQ(moved, base);
    }
    // Flipping the output wire too.
    std::set<CanonicalAction> flipped;
    for (const auto& w : enumerate_wiring_couplers()) {
        const auto& rows = w.coupler.rows();
        flipped.insert(canonical_action(Coupler({rows[1], rows[0]})));
    }
    EXPECT_EQ(flipped, base);
}

TEST(Swapping, AllZeroStrategy) {
    const auto w = make_wiring(0, 0, 0, 0, kOutB1);
    const auto branches = swapping_by_wiring(w);
    ASSERT_TRUE(branches.contains({0, 0}));
    EXPECT_EQ(branches.at({0, 0}).alice_charlie, local_extremal({0, 0, 0, 0}));
}

TEST(Swapping, AdaptiveStrategyByDirectConditioning) {
    const auto w = make_wiring(0, 1, 1, 1, kOutB1);
    const auto branches = swapping_by_wiring(w);
    // Oracle: condition the four-box table on y1 = 1, b1 = 1, y2 = 1·1 ⊕ 1 = 0, b2 = 0.
    const auto direct = condition(pr_pair_state(), {Observation{1, 1, 1}, Observation{2, 0, 0}});
    ASSERT_TRUE(branches.contains({1, 0}));
    EXPECT_EQ(branches.at({1, 0}).alice_charlie, direct.collapsed);
    EXPECT_EQ(direct.collapsed, local_extremal({1, 1, 0, 0}));
}

TEST(Swapping, EveryStrategyAndOutcomeIsLocal) {
    for (const auto& w : all_wirings()) {
        const auto branches = swapping_by_wiring(w);
        EXPECT_EQ(branches.size(), 4u);
        Rational total = 0;
        for (const auto& [bb, br] : branches) {
            total += br.probability;
            EXPECT_EQ(br.alice_charlie, predicted_swap_state(w, bb.first, bb.second));
            const auto d = local_membership(br.alice_charlie);
            ASSERT_TRUE(d);
            EXPECT_EQ(reconstruct(*d), br.alice_charlie);
        }
        EXPECT_EQ(total, 1);
        for (const auto& [b, br] : swapping_by_announced_output(w)) {
            EXPECT_TRUE(local_membership(br.alice_charlie)) << w.describe() << " b'=" << b;
        }
    }
}

TEST(Swapping, RejectsWrongBoxCount) {
    EXPECT_THROW(swapping_by_wiring(Wiring{}, pr_state()), BadSignature);
}
