#include "lg/proofnet.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

using namespace lg;

namespace {

Formula F(const std::string& s) { return parse_formula(s); }

// Occurrences of each atom as (hypothesis side, conclusion side).
void polarity_count(const Formula& f, bool hyp, std::map<std::string, std::pair<int, int>>& n) {
    if (f.is_atom()) {
        (hyp ? n[f.name()].first : n[f.name()].second)++;
        return;
    }
    bool flip_left = f.conn() == Conn::Under || f.conn() == Conn::LDiff;
    bool flip_right = f.conn() == Conn::Over || f.conn() == Conn::RDiff;
    polarity_count(f.left(), flip_left ? !hyp : hyp, n);
    polarity_count(f.right(), flip_right ? !hyp : hyp, n);
}

} // namespace

TEST(ProofNet, UnfoldOver) {
    auto ps = unfold(F("np/n"), Position::Hypothesis);
    ASSERT_EQ(ps.vertex_count(), 3);
    ASSERT_EQ(ps.links.size(), 1u);
    const Link& k = ps.links[0];
    EXPECT_EQ(k.kind, LinkKind::Tensor);
    EXPECT_EQ(k.premises, (std::vector<int>{0, 2}));
    EXPECT_EQ(k.conclusions, (std::vector<int>{1}));
    EXPECT_EQ(ps.labels[1], F("np"));
    EXPECT_EQ(ps.labels[2], F("n"));
    EXPECT_TRUE(ps.well_formed());
}

TEST(ProofNet, UnfoldShapes) {
    struct Case {
        std::string f;
        Position pos;
        LinkKind kind;
        std::size_t prem, concl;
    };
    std::vector<Case> cases = {
        {"a*b", Position::Hypothesis, LinkKind::Cotensor, 1, 2}, {"a*b", Position::Conclusion, LinkKind::Tensor, 2, 1},
        {"a\\b", Position::Hypothesis, LinkKind::Tensor, 2, 1},  {"a\\b", Position::Conclusion, LinkKind::Cotensor, 1, 2},
        {"a(+)b", Position::Hypothesis, LinkKind::Tensor, 1, 2}, {"a(+)b", Position::Conclusion, LinkKind::Cotensor, 2, 1},
        {"a(/)b", Position::Hypothesis, LinkKind::Cotensor, 2, 1}, {"a(/)b", Position::Conclusion, LinkKind::Tensor, 1, 2},
        {"a(\\)b", Position::Hypothesis, LinkKind::Cotensor, 2, 1}, {"a(\\)b", Position::Conclusion, LinkKind::Tensor, 1, 2},
    };
    for (auto& c : cases) {
        auto ps = unfold(F(c.f), c.pos);
        ASSERT_EQ(ps.links.size(), 1u) << c.f;
        EXPECT_EQ(ps.links[0].kind, c.kind) << c.f;
        EXPECT_EQ(ps.links[0].premises.size(), c.prem) << c.f;
        EXPECT_EQ(ps.links[0].conclusions.size(), c.concl) << c.f;
        EXPECT_EQ(ps.links[0].main, 0) << c.f;
    }
}

TEST(ProofNet, UnfoldingAtomsMatchPolarity) {
    std::mt19937 rng(7);
    for (int i = 0; i < 300; ++i) {
        Formula f = lgtest::random_formula(rng, 1 + i % 5, {"p", "q", "r"});
        for (auto pos : {Position::Hypothesis, Position::Conclusion}) {
            auto ps = unfold(f, pos);
            ASSERT_TRUE(ps.well_formed());
            EXPECT_EQ(static_cast<std::size_t>(ps.vertex_count()), 2 * ps.links.size() + 1);
            std::map<std::string, std::pair<int, int>> want, got;
            polarity_count(f, pos == Position::Hypothesis, want);
            // an atomic hypothesis of the structure must be matched with a
            // conclusion-side occurrence and vice versa
            auto [cs, hs] = open_atoms(ps);
            for (int v : cs) got[ps.labels[v].name()].first++;
            for (int v : hs) got[ps.labels[v].name()].second++;
            if (f.is_atom()) continue;
            EXPECT_EQ(got, want) << to_string(f);
        }
    }
}

TEST(ProofNet, MatchingCounts) {
    EXPECT_EQ(enumerate_matchings({F("np")}, {F("np")}).size(), 1u);
    EXPECT_EQ(enumerate_matchings({F("np")}, {F("s")}).size(), 0u);
    EXPECT_EQ(enumerate_matchings({F("(s(/)s)(\\)np")}, {F("s/(np\\s)")}).size(), 2u);
    // two np pairs and two n pairs
    EXPECT_EQ(enumerate_matchings({F("(np/n)*n"), F("(np\\s)/np"), F("np/n"), F("n")}, {F("s")}).size(), 4u);
}

TEST(ProofNet, AbstractIdentity) {
    auto ms = enumerate_matchings({F("a")}, {F("a")});
    ASSERT_EQ(ms.size(), 1u);
    Aps a = to_abstract(ms[0]);
    ASSERT_EQ(a.vertex_count, 1);
    EXPECT_TRUE(a.links.empty());
    ASSERT_TRUE(a.hyp[0] && a.con[0]);
    EXPECT_EQ(a.hyp[0]->formula, F("a"));
    EXPECT_TRUE(is_tree(a));
}

TEST(ProofNet, AbstractLabelsFollowJudgementOrder) {
    auto ms = enumerate_matchings({F("np/n"), F("n")}, {F("np")});
    ASSERT_EQ(ms.size(), 1u);
    Aps a = to_abstract(ms[0]);
    std::vector<std::string> hyps(2);
    for (int v = 0; v < a.vertex_count; ++v)
        if (a.hyp[v]) hyps.at(a.hyp[v]->index) = to_string(a.hyp[v]->formula);
    EXPECT_EQ(hyps, (std::vector<std::string>{"np/n", "n"}));
    EXPECT_TRUE(is_tree(a));
    for (auto& k : a.links) EXPECT_EQ(k.main, -1);
}

TEST(ProofNet, CanonicalKeyIgnoresNumbering) {
    auto a = to_abstract(enumerate_matchings({F("np/n"), F("n")}, {F("np")})[0]);
    Aps b = a;
    std::reverse(b.links.begin(), b.links.end());
    EXPECT_TRUE(isomorphic(a, b));
    auto ms = enumerate_matchings({F("(s(/)s)(\\)np")}, {F("s/(np\\s)")});
    EXPECT_FALSE(isomorphic(to_abstract(ms[0]), to_abstract(ms[1])));
}

TEST(ProofNet, MirrorKeepsLinkShapes) {
    std::mt19937 rng(11);
    auto shapes = [](const ProofStructure& ps) {
        std::multiset<std::pair<int, std::size_t>> out;
        for (auto& k : ps.links) out.insert({static_cast<int>(k.kind), k.premises.size()});
        return out;
    };
    for (int i = 0; i < 100; ++i) {
        Formula f = lgtest::random_formula(rng, 3, {"p", "q"});
        for (auto pos : {Position::Hypothesis, Position::Conclusion})
            EXPECT_EQ(shapes(unfold(f, pos)), shapes(unfold(mirror(f), pos))) << to_string(f);
    }
}

TEST(ProofNet, DotOutput) {
    auto ps = enumerate_matchings({F("a\\b")}, {F("a\\b")})[0];
    std::string d = to_dot(ps);
    EXPECT_NE(d.find("digraph"), std::string::npos);
    EXPECT_NE(d.find("a\\\\b"), std::string::npos);
    std::string e = to_dot(to_abstract(ps));
    EXPECT_NE(e.find("fillcolor=black"), std::string::npos);
}
