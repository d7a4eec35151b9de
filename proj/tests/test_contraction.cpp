#include "lg/contraction.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

using namespace lg;

namespace {

Formula F(const std::string& s) { return parse_formula(s); }

std::multiset<std::string> kinds(const std::vector<RewriteStep>& trace) {
    std::multiset<std::string> out;
    for (auto& s : trace) out.insert(step_name(s.kind));
    return out;
}

std::multiset<std::string> labels(const Aps& a) {
    std::multiset<std::string> out;
    for (int v = 0; v < a.vertex_count; ++v) {
        if (!a.alive[v]) continue;
        if (a.hyp[v]) out.insert("h" + std::to_string(a.hyp[v]->index) + to_string(a.hyp[v]->formula));
        if (a.con[v]) out.insert("c" + std::to_string(a.con[v]->index) + to_string(a.con[v]->formula));
    }
    return out;
}

// All abstract structures of A |- B with up to n connectives in total.
std::vector<Aps> small_structures(int n, const std::vector<std::string>& atoms) {
    std::vector<Aps> out;
    for (int i = 0; i <= n; ++i)
        for (int j = 0; i + j <= n; ++j)
            for (auto& a : lgtest::all_formulas(i, atoms))
                for (auto& b : lgtest::all_formulas(j, atoms))
                    for (auto& ps : enumerate_matchings({a}, {b})) out.push_back(to_abstract(ps));
    return out;
}

const std::vector<std::string> grishin_hyp = {"(s(/)s)(\\)np"};

} // namespace

TEST(Contraction, StepNames) {
    for (int i = 0; i <= static_cast<int>(StepKind::GenLLDiff); ++i) {
        auto k = static_cast<StepKind>(i);
        EXPECT_EQ(parse_step_name(step_name(k)), k);
        EXPECT_EQ(parse_step_name(step_unicode(k)), k);
    }
    EXPECT_EQ(step_unicode(StepKind::LLDiff), "L⊘̸");
}

TEST(Contraction, LambekIdentityContracts) {
    // b\a |- b\a: one tensor, one cotensor, one R\ contraction.
    auto ms = enumerate_matchings({F("b\\a")}, {F("b\\a")});
    ASSERT_EQ(ms.size(), 1u);
    auto r = is_proof_net(ms[0]);
    ASSERT_TRUE(r.is_net());
    EXPECT_EQ(kinds(r.trace), (std::multiset<std::string>{"R\\"}));
    EXPECT_EQ(r.final_tree().live_vertices(), 1);
}

TEST(Contraction, EachContractionFires) {
    std::map<std::string, std::string> first = {
        {"a/b", "R/"}, {"a*b", "L*"}, {"b\\a", "R\\"}, {"a(/)b", "L(/)"}, {"a(+)b", "R(+)"}, {"b(\\)a", "L(\\)"}};
    for (auto& [f, kind] : first) {
        auto ms = enumerate_matchings({F(f)}, {F(f)});
        ASSERT_EQ(ms.size(), 1u) << f;
        auto r = is_proof_net(ms[0]);
        ASSERT_TRUE(r.is_net()) << f;
        EXPECT_EQ(kinds(r.trace), (std::multiset<std::string>{kind})) << f;
    }
}

TEST(Contraction, GrishinInteractionExample) {
    auto res = analyze_judgement({F(grishin_hyp[0])}, {F("s/(np\\s)")});
    ASSERT_EQ(res.size(), 2u);
    int nets = 0;
    for (auto& m : res) {
        if (!m.result.is_net()) continue;
        ++nets;
        EXPECT_EQ(kinds(m.result.trace), (std::multiset<std::string>{"G1", "L(\\)", "R/"}));
        auto proof = sequentialize(m.result);
        ASSERT_TRUE(proof);
        EXPECT_TRUE(check_proof(*proof).ok);
        EXPECT_EQ(proof->conclusion(), parse_sequent("(s(/)s)(\\)np |- s/(np\\s)"));
        EXPECT_EQ(grishin_usage(*proof), (std::array<int, 4>{1, 0, 0, 0}));
    }
    EXPECT_EQ(nets, 1);
}

TEST(Contraction, SovWordOrder) {
    auto res = analyze_judgement({F("(np/n)*n"), F("(np\\s)/np"), F("np/n"), F("n")}, {F("s")});
    int ordered = 0;
    for (auto& m : res)
        if (m.result.is_net() && m.word_order()) {
            ++ordered;
            auto proof = sequentialize(m.result);
            ASSERT_TRUE(proof);
            EXPECT_TRUE(check_proof(*proof).ok);
        }
    EXPECT_EQ(ordered, 1);
}

TEST(Contraction, WordOrderCheck) {
    Sequent s = parse_sequent("h0:a .*. h1:b |- c0:c");
    EXPECT_TRUE(respects_word_order(s, 2, 1));
    EXPECT_FALSE(respects_word_order(parse_sequent("h1:b .*. h0:a |- c0:c"), 2, 1));
    EXPECT_TRUE(respects_word_order(parse_sequent("h1:b |- h0:a .\\. c0:c"), 2, 1));
}

TEST(Contraction, NetsAgreeWithSequentCalculus) {
    int checked = 0;
    for (int n = 0; n <= 3; ++n)
        for (int i = 0; i <= n; ++i)
            for (auto& a : lgtest::all_formulas(i, {"p", "q"}))
                for (auto& b : lgtest::all_formulas(n - i, {"p", "q"})) {
                    if (!atoms_balanced({a}, {b})) continue;
                    bool net = net_derivable(a, b) == NetStatus::Net;
                    bool seq = provable(Sequent(leaf(a), leaf(b)));
                    EXPECT_EQ(net, seq) << to_string(a) << " |- " << to_string(b);
                    ++checked;
                }
    EXPECT_GT(checked, 500);
}

TEST(Contraction, EagerAgreesWithFullSearch) {
    NetConfig full;
    full.eager_contraction = false;
    for (auto& a : small_structures(3, {"p"}))
        EXPECT_EQ(is_proof_net(a).is_net(), is_proof_net(a, full).is_net());
}

TEST(Contraction, LabelsAndLinksAccounted) {
    for (auto& a : small_structures(3, {"p", "q"})) {
        auto r = is_proof_net(a);
        if (!r.is_net()) continue;
        const Aps* prev = &r.initial;
        for (auto& s : r.trace) {
            EXPECT_EQ(labels(s.result), labels(*prev));
            long dt = static_cast<long>(s.result.count(LinkKind::Tensor)) - static_cast<long>(prev->count(LinkKind::Tensor));
            long dc = static_cast<long>(s.result.count(LinkKind::Cotensor)) - static_cast<long>(prev->count(LinkKind::Cotensor));
            if (is_interaction(s.kind)) {
                EXPECT_EQ(dt, 0);
                EXPECT_EQ(dc, 0);
                EXPECT_EQ(s.result.live_vertices(), prev->live_vertices());
            } else {
                EXPECT_EQ(dt, -1);
                EXPECT_EQ(dc, -1);
                EXPECT_EQ(s.result.live_vertices(), prev->live_vertices() - 3);
            }
            prev = &s.result;
        }
        EXPECT_TRUE(is_tree(*prev));
    }
}

TEST(Contraction, GeneralizedMatchesDerivedSequence) {
    int seen = 0;
    std::map<StepKind, int> by_kind;
    for (auto& a : small_structures(4, {"p"})) {
        // states reached by a few interactions
        std::vector<Aps> frontier{a};
        for (int depth = 0; depth < 2; ++depth) {
            std::vector<Aps> next;
            for (auto& s : frontier) {
                for (auto& g : generalized_steps(s)) {
                    auto seq = expand_generalized(s, g);
                    EXPECT_EQ(seq.size(), g.redex.size() - 1);
                    EXPECT_TRUE(isomorphic(seq.back().result, g.result));
                    EXPECT_EQ(labels(seq.back().result), labels(g.result));
                    ++seen;
                    ++by_kind[g.kind];
                }
                for (auto& i : interaction_steps(s)) next.push_back(i.result);
            }
            frontier = std::move(next);
        }
    }
    EXPECT_GT(seen, 0);
    EXPECT_EQ(by_kind.size(), 4u);
}

TEST(Contraction, GeneralizedSearchAgrees) {
    NetConfig gen;
    gen.generalized = true;
    for (auto& a : small_structures(3, {"p", "q"})) EXPECT_EQ(is_proof_net(a).is_net(), is_proof_net(a, gen).is_net());
}

TEST(Contraction, ReductionTreeReplay) {
    int nontrivial = 0;
    for (auto& a : small_structures(4, {"p"})) {
        auto r = is_proof_net(a);
        if (!r.is_net() || r.trace.empty()) continue;
        auto tree = reduction_tree(r.initial, r.trace);
        EXPECT_TRUE(tree.ok);
        auto order = tree_order(tree);
        ASSERT_EQ(order.size(), r.trace.size());
        auto again = replay(r.initial, r.trace, order);
        ASSERT_TRUE(again);
        EXPECT_TRUE(isomorphic(again->back().result, r.final_tree()));
        if (order != std::vector<std::size_t>(order.size()) ) ++nontrivial;
    }
    EXPECT_GT(nontrivial, 0);
}

TEST(Contraction, ActiveComponents) {
    auto ms = enumerate_matchings({F("a/b")}, {F("a/b")});
    Aps a = to_abstract(ms[0]);
    EXPECT_EQ(tensor_components(a).size(), 1u);
    EXPECT_EQ(active_components(a).size(), 1u);
    auto ms2 = enumerate_matchings({F("a*b")}, {F("a*b")});
    Aps b = to_abstract(ms2[0]);
    // the cotensor's main vertex is a hypothesis outside the tensor part
    EXPECT_EQ(active_components(b).size(), 1u);
}

TEST(Contraction, Preconditions) {
    auto ms = enumerate_matchings({F("a*b")}, {F("b*a")});
    ASSERT_EQ(ms.size(), 1u);
    auto r = is_proof_net(ms[0]);
    EXPECT_FALSE(r.is_net());
    EXPECT_EQ(r.status, NetStatus::NotNet);
}

TEST(Contraction, BudgetExhaustion) {
    NetConfig tiny;
    tiny.budget = 0;
    auto res = analyze_judgement({F(grishin_hyp[0])}, {F("s/(np\\s)")}, tiny);
    bool exhausted = false;
    for (auto& m : res) exhausted |= m.result.status == NetStatus::BudgetExhausted;
    EXPECT_TRUE(exhausted);
}
