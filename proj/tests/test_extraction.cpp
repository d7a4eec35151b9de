#include "lg/extraction.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

using namespace lg;

namespace {

Formula F(const std::string& s) { return parse_formula(s); }

const std::vector<Formula> sov_hyps = {F("(np/n)*n"), F("(np\\s)/np"), F("np/n"), F("n")};
const ExtractOptions sov_opt{{"subj", "tv", "det", "noun"}, {}, {ExitPoint::Kind::Conclusion, 0}};
const char* sov_goal = "subj:((np/n)*n) .*. (tv:((np\\s)/np) .*. (det:(np/n) .*. noun:n)) |- [s]";

ProofStructure only_net(const std::vector<Formula>& hyps, const std::vector<Formula>& concls, bool word_order = false) {
    std::vector<ProofStructure> nets;
    for (auto& an : analyze_judgement(hyps, concls))
        if (an.result.is_net() && (!word_order || an.word_order())) nets.push_back(an.structure);
    if (nets.size() != 1) throw std::runtime_error("expected exactly one net");
    return nets[0];
}

std::set<std::string> canonical_set(const std::vector<Term>& ts) {
    std::set<std::string> out;
    for (auto& t : ts) out.insert(to_string(canonical_term(t)));
    return out;
}

} // namespace

TEST(Extraction, SingleVertex) {
    ProofStructure net = only_net({F("p")}, {F("p")});
    for (auto bias : {BiasMap{}, BiasMap::parse("p=+")}) {
        auto cg = build_composition_graph(net, bias);
        EXPECT_EQ(cg.commands.size(), 1u);
        EXPECT_TRUE(cg.mus.empty());
        auto ts = extract_terms(cg);
        ASSERT_EQ(ts.size(), 1u);
        EXPECT_EQ(to_string(ts[0].term), "<x0 | a0>");
    }
    ExtractOptions value{{}, {}, {ExitPoint::Kind::Conclusion, 0}};
    auto pos = extract_terms(net, BiasMap::parse("p=+"), value);
    ASSERT_EQ(pos.size(), 1u);
    EXPECT_EQ(to_string(pos[0].term), "x0");
    auto neg = extract_terms(net, BiasMap{}, value);
    ASSERT_EQ(neg.size(), 1u);
    EXPECT_TRUE(equivalent_terms(neg[0].term, parse_term("mu a. <x0 | a>")));
}

TEST(Extraction, ApplicationUnderProduct) {
    ProofStructure net = only_net({F("(a/b)*b")}, {F("a")});
    BiasMap bias = BiasMap::parse("b=+");
    auto cg = build_composition_graph(net, bias, {{"z"}, {}, {ExitPoint::Kind::Conclusion, 0}});
    EXPECT_EQ(rooted_components(cg).size(), 1u);
    EXPECT_EQ(cg.commands.size(), 1u);
    EXPECT_EQ(cg.mus.size(), 1u);
    auto ts = extract_terms(cg);
    ASSERT_EQ(ts.size(), 1u);
    EXPECT_TRUE(equivalent_terms(ts[0].term, parse_term("mu c. case z of (x * y). <x | (c / y)>"))) << to_string(ts[0].term);
    EXPECT_EQ(ts[0].pairing, (Pairing{{0, 0}}));
}

TEST(Extraction, SovComponents) {
    ProofStructure net = only_net(sov_hyps, {F("s")}, true);
    auto cg = build_composition_graph(net, BiasMap{}, sov_opt);
    EXPECT_EQ(rooted_components(cg).size(), 3u);
    EXPECT_EQ(cg.commands.size(), 5u);
    EXPECT_EQ(cg.mus.size(), 5u);
    auto pos = build_composition_graph(net, BiasMap::parse("np=+,n=+,s=-"), sov_opt);
    EXPECT_EQ(pos.commands.size(), 3u);
    EXPECT_EQ(pos.mus.size(), 3u);
}

TEST(Extraction, SovMatchesFocusedProver) {
    Sequent goal = parse_sequent(sov_goal);
    for (std::string b : {"", "np=+,n=+,s=-", "np=+,n=+,s=+", "np=-,n=+,s=-"}) {
        BiasMap bias = BiasMap::parse(b);
        auto extracted = extract_judgement_terms(sov_hyps, {F("s")}, bias, sov_opt, true);
        EXPECT_EQ(canonical_set(extracted), canonical_set(fprove(goal, bias).terms())) << b;
        for (auto& t : extracted) EXPECT_TRUE(check_term(goal, t, bias)) << to_string(t);
    }
    auto two = extract_terms(only_net(sov_hyps, {F("s")}, true), BiasMap::parse("np=+,n=+,s=-"), sov_opt);
    ASSERT_EQ(two.size(), 2u);
    EXPECT_NE(two[0].pairing, two[1].pairing);
}

TEST(Extraction, AgreesWithFocusedProver) {
    std::vector<BiasMap> biases = {BiasMap{}, BiasMap::parse("p=+,q=+"), BiasMap::parse("p=+,q=-")};
    int provable = 0;
    for (int n = 0; n <= 3; ++n)
        for (int k = 0; k <= n; ++k)
            for (auto& a : lgtest::all_formulas(k, {"p", "q"}))
                for (auto& b : lgtest::all_formulas(n - k, {"p", "q"})) {
                    Sequent s(leaf(a, "x0"), leaf(b, "a0"));
                    for (auto& bias : biases) {
                        auto extracted = extract_judgement_terms({a}, {b}, bias);
                        auto expected = fprove(s, bias).terms();
                        EXPECT_EQ(canonical_set(extracted), canonical_set(expected)) << to_string(s);
                        for (auto& t : extracted) EXPECT_TRUE(check_term(s, t, bias)) << to_string(t);
                        provable += !expected.empty();
                    }
                }
    EXPECT_GT(provable, 100);
}

TEST(Extraction, RandomLargerJudgements) {
    std::mt19937 rng(11);
    BiasMap bias = BiasMap::parse("p=+");
    int provable = 0;
    for (int i = 0; i < 400; ++i) {
        Formula a = lgtest::random_formula(rng, 1 + rng() % 3, {"p", "q"});
        Formula b = i % 3 ? lgtest::random_formula(rng, 5 - a.size() / 2, {"p", "q"}) : a;
        Sequent s(leaf(a, "x0"), leaf(b, "a0"));
        auto expected = fprove(s, bias).terms();
        EXPECT_EQ(canonical_set(extract_judgement_terms({a}, {b}, bias)), canonical_set(expected)) << to_string(s);
        provable += !expected.empty();
    }
    EXPECT_GT(provable, 100);
}
