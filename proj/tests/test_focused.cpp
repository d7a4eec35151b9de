#include "lg/focused.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

using namespace lg;

namespace {

const char* sov_goal = "subj:((np/n)*n) .*. (tv:((np\\s)/np) .*. (det:(np/n) .*. noun:n)) |- [s]";

Sequent S(const std::string& s) { return parse_sequent(s); }
Term V(const std::string& s) { return parse_term(s, Sort::Value); }

bool contains_equivalent(const std::vector<Term>& ts, const Term& t) {
    for (auto& u : ts)
        if (equivalent_terms(u, t)) return true;
    return false;
}

} // namespace

TEST(Focused, Identities) {
    BiasMap neg;
    auto r = fprove(S("x:p |- a:p"), neg);
    ASSERT_EQ(r.proofs.size(), 1u);
    EXPECT_EQ(to_string(r.proofs[0].term()), "<x | a>");
    BiasMap pos = BiasMap::parse("p=+");
    r = fprove(S("x:p |- [p]"), pos);
    ASSERT_EQ(r.proofs.size(), 1u);
    EXPECT_EQ(to_string(r.proofs[0].term()), "x");
    r = fprove(S("x:p |- [p]"), neg);
    ASSERT_EQ(r.proofs.size(), 1u);
    EXPECT_EQ(to_string(r.proofs[0].term()), "mu a1. <x | a1>");
}

TEST(Focused, SovAllNegative) {
    auto r = fprove(S(sov_goal), BiasMap{});
    ASSERT_EQ(r.proofs.size(), 1u);
    Term expected = V("mu b. case subj of (y * z). <tv | ((mu g. <y | (g / mu g2. <z | g2>)> \\ b) / "
                      "mu a. <det | (a / mu a2. <noun | a2>)>)>");
    EXPECT_TRUE(equivalent_terms(r.proofs[0].term(), expected)) << to_string(r.proofs[0].term());
}

TEST(Focused, SovPositiveArguments) {
    auto r = fprove(S(sov_goal), BiasMap::parse("np=+,n=+,s=-"));
    ASSERT_EQ(r.proofs.size(), 2u);
    auto ts = r.terms();
    EXPECT_TRUE(contains_equivalent(
        ts, V("mu a. case subj of (x2 * z). <x2 | (comu x. <det | (comu y. <tv | ((x \\ a) / y)> / noun)> / z)>")));
    EXPECT_TRUE(contains_equivalent(
        ts, V("mu a. case subj of (x2 * z). <det | (comu y. <x2 | (comu x. <tv | ((x \\ a) / y)> / z)> / noun)>")));
}

TEST(Focused, ProofsCheck) {
    for (std::string b : {"", "np=+,n=+,s=-", "np=+,n=+,s=+"}) {
        BiasMap bias = BiasMap::parse(b);
        auto r = fprove(S(sov_goal), bias);
        for (auto& p : r.proofs) {
            auto c = check_focused_proof(p, bias);
            EXPECT_TRUE(c.ok) << c.error;
            EXPECT_TRUE(check_term(p.conclusion(), p.term(), bias));
            EXPECT_TRUE(is_linear(p.term()));
            auto rebuilt = proof_of_term(p.conclusion(), p.term(), bias);
            ASSERT_TRUE(rebuilt);
            EXPECT_TRUE(check_focused_proof(*rebuilt, bias).ok);
            EXPECT_EQ(rebuilt->term(), p.term());
        }
    }
}

TEST(Focused, CheckTermRejectsMutations) {
    BiasMap bias = BiasMap::parse("np=+,n=+,s=-");
    Sequent s = S(sov_goal);
    auto good = V("mu a. case subj of (x2 * z). <x2 | (comu x. <det | (comu y. <tv | ((x \\ a) / y)> / noun)> / z)>");
    EXPECT_TRUE(check_term(s, good, bias));
    // swapped arguments of the verb
    EXPECT_FALSE(check_term(
        s, V("mu a. case subj of (x2 * z). <x2 | (comu x. <det | (comu y. <tv | ((y \\ a) / x)> / noun)> / z)>"), bias));
    // wrong polarity: all-negative bias forbids comu on np
    EXPECT_FALSE(check_term(s, good, BiasMap{}));
    // unknown hypothesis
    EXPECT_FALSE(check_term(
        s, V("mu a. case subj of (x2 * z). <x2 | (comu x. <det | (comu y. <tv | ((x \\ a) / y)> / noun2)> / z)>"), bias));
    // non-linear
    EXPECT_FALSE(check_term(
        s, V("mu a. case subj of (x2 * z). <x2 | (comu x. <det | (comu y. <tv | ((x \\ a) / y)> / noun)> / x2)>"), bias));
}

TEST(Focused, ShiftsRoundTrip) {
    for (std::string b : {"", "np=+,n=+,s=-"}) {
        BiasMap bias = BiasMap::parse(b);
        for (auto& p : fprove(S(sov_goal), bias).proofs) {
            FocusedProof folded = fold_shifts(p);
            EXPECT_LT(folded.size(), p.size());
            EXPECT_TRUE(check_focused_proof(folded, bias).ok);
            EXPECT_EQ(folded.term(), p.term());
            EXPECT_EQ(unfold_shifts(folded), p);
        }
    }
    auto r = fprove(S("x:p |- [p]"), BiasMap{});
    FocusedProof shifted = focus_shift(r.proofs[0]);
    EXPECT_EQ(shifted.rule(), FRule::ShiftRL);
    EXPECT_THROW(focus_shift(shifted.premises()[0]), std::invalid_argument);
}

TEST(Focused, AgreesWithSequentCalculus) {
    std::vector<BiasMap> biases = {BiasMap{}, BiasMap::parse("p=+,q=+"), BiasMap::parse("p=+,q=-")};
    int checked = 0;
    for (int n = 0; n <= 3; ++n)
        for (int k = 0; k <= n; ++k)
            for (auto& a : lgtest::all_formulas(k, {"p", "q"}))
                for (auto& b : lgtest::all_formulas(n - k, {"p", "q"})) {
                    if (n == 3 && (a.hash() + b.hash()) % 4 != 0) continue;
                    Sequent s(leaf(a), leaf(b));
                    bool expected = provable(s);
                    for (auto& bias : biases) EXPECT_EQ(fprovable(s, bias), expected) << to_string(s);
                    ++checked;
                }
    EXPECT_GT(checked, 300);
}

TEST(Focused, TermsAreLinearAndCheck) {
    std::mt19937 rng(7);
    BiasMap bias = BiasMap::parse("p=+");
    int proved = 0;
    for (int i = 0; i < 300; ++i) {
        Formula a = lgtest::random_formula(rng, 1 + i % 3, {"p", "q"});
        Sequent s = i % 2 ? Sequent(leaf(a), leaf(a)) : Sequent(leaf(a), leaf(lgtest::random_formula(rng, 1, {"p", "q"})));
        auto r = fprove(s, bias);
        for (auto& p : r.proofs) {
            EXPECT_TRUE(is_linear(p.term())) << to_string(p.term());
            EXPECT_TRUE(check_term(p.conclusion(), p.term(), bias)) << to_string(p.term());
            EXPECT_TRUE(check_focused_proof(p, bias).ok);
        }
        proved += !r.proofs.empty();
    }
    EXPECT_GT(proved, 150);
}

TEST(Focused, DepthLimit) {
    SearchConfig cfg;
    cfg.max_logical_depth = 1;
    auto r = fprove(S(sov_goal), BiasMap{}, cfg);
    EXPECT_EQ(r.status(), SearchStatus::DepthExhausted);
}
