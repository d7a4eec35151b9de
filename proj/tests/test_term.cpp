#include "lg/term.hpp"

#include <gtest/gtest.h>

using namespace lg;

namespace {

Term V(const std::string& s) { return parse_term(s, Sort::Value); }
Term C(const std::string& s) { return parse_term(s, Sort::Command); }

} // namespace

TEST(Term, ParsePrintRoundTrip) {
    for (std::string s : {"x", "mu a. <x | a>", "(x * y)", "(x (/) a)", "(a (\\) x)", "mu a. <x | ((y \\ a) / z)>",
                          "mu a. case z of (x * y). <x | (comu w. <w | a> / y)>"}) {
        Term t = V(s);
        EXPECT_EQ(to_string(t), s);
        EXPECT_EQ(V(to_string(t)), t);
    }
}

TEST(Term, Sorts) {
    EXPECT_EQ(V("x").sort(), Sort::Value);
    EXPECT_EQ(parse_term("a", Sort::Context).sort(), Sort::Context);
    EXPECT_EQ(parse_term("(a (+) b)", Sort::Context).sort(), Sort::Context);
    EXPECT_EQ(parse_term("(x \\ a)", Sort::Context).left().kind(), TermKind::Var);
    EXPECT_EQ(parse_term("(a / x)", Sort::Context).left().kind(), TermKind::CoVar);
    EXPECT_EQ(C("<x | a>").sort(), Sort::Command);
    EXPECT_THROW(parse_term("(x * y)", Sort::Context), ParseError);
    EXPECT_THROW(V("mu a. x"), ParseError);
}

TEST(Term, FreeNamesAndLinearity) {
    std::multiset<std::string> f;
    free_names(V("mu a. case z of (x * y). <x | (b / y)>"), f);
    EXPECT_EQ(f, (std::multiset<std::string>{"b", "z"}));
    EXPECT_TRUE(is_linear(V("mu a. <x | a>")));
    EXPECT_FALSE(is_linear(V("mu a. <x | b>")));           // a unused
    EXPECT_FALSE(is_linear(V("mu a. <(x * x) | a>")));     // x twice
    EXPECT_TRUE(is_linear(C("<(x * y) | a>")));
}

TEST(Term, AlphaEquivalence) {
    EXPECT_TRUE(equivalent_terms(V("mu a. <x | a>"), V("mu b. <x | b>")));
    EXPECT_FALSE(equivalent_terms(V("mu a. <x | a>"), V("mu a. <y | a>")));
    EXPECT_TRUE(equivalent_terms(V("mu a. case z of (x * y). <x | (a / y)>"), V("mu b. case z of (u * w). <u | (b / w)>")));
    EXPECT_FALSE(equivalent_terms(V("mu a. case z of (x * y). <x | (a / y)>"), V("mu a. case z of (x * y). <y | (a / x)>")));
}

TEST(Term, IndependentCasesCommute) {
    Term a = C("case z of (x * y). case w of (u * v). <(x * u) | (y (+) v)>");
    Term b = C("case w of (u * v). case z of (x * y). <(x * u) | (y (+) v)>");
    EXPECT_NE(a, b);
    EXPECT_TRUE(equivalent_terms(a, b));
    // A dependent case cannot move above the one binding its scrutinee.
    Term d = C("case z of (x * y). case x of (u * v). <u | a>");
    EXPECT_EQ(canonical_term(d).kind(), TermKind::Case);
    EXPECT_EQ(canonical_term(d).name(), "z");
}

TEST(Term, RenameFree) {
    Term t = V("mu a. <x | (a / y)>");
    EXPECT_EQ(rename_free(t, {{"x", "w"}, {"a", "b"}}), V("mu a. <w | (a / y)>"));
}
