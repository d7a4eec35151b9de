#include "lg/structure.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

using namespace lg;

TEST(Formula, ParseSingleConnective) {
    EXPECT_EQ(parse_formula("np \\ s"), under(atom("np"), atom("s")));
}

TEST(Formula, ParseLexicalUnfoldingExample) {
    EXPECT_EQ(parse_formula("(s (/) s) (\\) np"), ldiff(rdiff(atom("s"), atom("s")), atom("np")));
}

TEST(Formula, ParseQuantifierNounPhrase) {
    EXPECT_EQ(parse_formula("(np/n)*n"), prod(over(atom("np"), atom("n")), atom("n")));
}

TEST(Formula, ParseUnicodeTokens) {
    EXPECT_EQ(parse_formula("(s⊘s)⊘̸np"), parse_formula("(s(/)s)(\\)np"));
    EXPECT_EQ(parse_formula("a⊕b"), coprod(atom("a"), atom("b")));
}

TEST(Formula, ParseErrorsCarryPosition) {
    try {
        parse_formula("a * b * c");
        FAIL() << "expected a parse error";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.position(), 6u);
    }
    EXPECT_THROW(parse_formula("(a * b"), ParseError);
    EXPECT_THROW(parse_formula("A"), ParseError);
    EXPECT_THROW(parse_formula(""), ParseError);
    EXPECT_THROW(parse_formula("a b"), ParseError);
    EXPECT_THROW(parse_formula("(+) a"), ParseError);
}

TEST(Formula, PrintParseRoundTrip) {
    std::mt19937 rng(7);
    for (int i = 0; i < 1000; ++i) {
        Formula f = lgtest::random_formula(rng, i % 7, {"a", "b", "np", "s1"});
        EXPECT_EQ(parse_formula(to_string(f)), f);
        EXPECT_EQ(parse_formula(to_unicode(f)), f);
        EXPECT_EQ(to_string(parse_formula(to_string(f))), to_string(f));
    }
}

TEST(Formula, MirrorTable) {
    Formula a = atom("a"), b = atom("b");
    EXPECT_EQ(mirror(atom("s")), atom("s"));
    EXPECT_EQ(mirror(prod(a, b)), prod(b, a));
    EXPECT_EQ(mirror(over(a, b)), under(b, a));
    EXPECT_EQ(mirror(coprod(a, b)), coprod(b, a));
    EXPECT_EQ(mirror(rdiff(a, b)), ldiff(b, a));
    EXPECT_EQ(mirror(under(b, a)), over(a, b));
    EXPECT_EQ(mirror(ldiff(b, a)), rdiff(a, b));
}

TEST(Formula, DualTable) {
    Formula a = atom("a"), b = atom("b");
    EXPECT_EQ(dual(atom("np")), atom("np"));
    EXPECT_EQ(dual(over(a, b)), ldiff(b, a));
    EXPECT_EQ(dual(prod(a, b)), coprod(b, a));
    EXPECT_EQ(dual(under(b, a)), rdiff(a, b));
    EXPECT_EQ(dual(ldiff(b, a)), over(a, b));
    EXPECT_EQ(dual(coprod(b, a)), prod(a, b));
    EXPECT_EQ(dual(rdiff(a, b)), under(b, a));
}

TEST(Formula, SymmetriesAreCommutingInvolutions) {
    std::mt19937 rng(11);
    BiasMap bias;
    for (int i = 0; i < 1000; ++i) {
        Formula f = lgtest::random_formula(rng, i % 8, {"p", "q", "r"});
        EXPECT_EQ(mirror(mirror(f)), f);
        EXPECT_EQ(dual(dual(f)), f);
        EXPECT_EQ(mirror(dual(f)), dual(mirror(f)));
        EXPECT_EQ(polarity(mirror(f), bias), polarity(f, bias));
        EXPECT_EQ(mirror(f).connectives(), f.connectives());
    }
}

TEST(Formula, Polarity) {
    BiasMap neg;
    EXPECT_EQ(polarity(prod(atom("np"), atom("n")), neg), Polarity::Positive);
    EXPECT_EQ(polarity(prod(atom("np"), atom("n")), BiasMap(Polarity::Positive)), Polarity::Positive);
    EXPECT_EQ(polarity(under(atom("np"), atom("s")), neg), Polarity::Negative);
    EXPECT_EQ(polarity(atom("s"), neg), Polarity::Negative);
    for (Conn c : {Conn::RDiff, Conn::LDiff}) EXPECT_EQ(polarity(Formula::binary(c, atom("a"), atom("b")), neg), Polarity::Positive);
    for (Conn c : {Conn::Coprod, Conn::Over}) EXPECT_EQ(polarity(Formula::binary(c, atom("a"), atom("b")), neg), Polarity::Negative);
}

TEST(Formula, BiasParsing) {
    BiasMap b = BiasMap::parse("np=+,s=-");
    EXPECT_EQ(b.of("np"), Polarity::Positive);
    EXPECT_EQ(b.of("s"), Polarity::Negative);
    EXPECT_EQ(b.of("n"), Polarity::Negative);
    BiasMap c = BiasMap::parse("+,s=-");
    EXPECT_EQ(c.of("n"), Polarity::Positive);
    EXPECT_EQ(c.of("s"), Polarity::Negative);
    EXPECT_THROW(BiasMap::parse("np=x"), ParseError);
}

TEST(Structure, ToFormula) {
    Formula a = atom("a"), b = atom("b"), c = atom("c"), d = atom("d");
    EXPECT_EQ(structure_to_formula(leaf(a)), a);
    EXPECT_EQ(structure_to_formula(sprod(leaf(a), leaf(b))), prod(a, b));
    EXPECT_EQ(structure_to_formula(sover(scoprod(leaf(c), leaf(d)), leaf(b)), Side::Output), over(coprod(c, d), b));
    EXPECT_THROW(structure_to_formula(sover(leaf(a), leaf(b)), Side::Input), StructureError);
}

namespace {

// Independent oracle: collapse by printing with logical tokens and reparsing.
Formula collapse_by_text(const Structure& s) {
    std::function<std::string(const Structure&)> go = [&](const Structure& x) -> std::string {
        if (x.is_leaf()) return "(" + to_string(x.formula()) + ")";
        return "(" + go(x.left()) + ascii_token(x.conn()) + go(x.right()) + ")";
    };
    return parse_formula(go(s));
}

Structure random_structure(std::mt19937& rng, int depth, Side side) {
    if (depth == 0 || rng() % 3 == 0) return leaf(lgtest::random_formula(rng, rng() % 3, {"a", "b"}));
    std::vector<Conn> conns = side == Side::Input ? std::vector<Conn>{Conn::Prod, Conn::RDiff, Conn::LDiff}
                                                  : std::vector<Conn>{Conn::Coprod, Conn::Under, Conn::Over};
    Conn c = conns[rng() % 3];
    auto [ls, rs] = operand_sides(c);
    return Structure::binary(c, random_structure(rng, depth - 1, ls), random_structure(rng, depth - 1, rs));
}

} // namespace

TEST(Structure, ToFormulaMatchesTextOracle) {
    std::mt19937 rng(3);
    for (int i = 0; i < 500; ++i) {
        Side side = i % 2 ? Side::Input : Side::Output;
        Structure s = random_structure(rng, 4, side);
        ASSERT_TRUE(validate_structure(s, side));
        EXPECT_EQ(structure_to_formula(s, side), collapse_by_text(s));
    }
}

TEST(Structure, ValidateCorpus) {
    Structure A = leaf(atom("a"));
    // accepted
    EXPECT_TRUE(validate_structure(A, Side::Input));
    EXPECT_TRUE(validate_structure(A, Side::Output));
    EXPECT_TRUE(validate_structure(sprod(A, A), Side::Input));
    EXPECT_TRUE(validate_structure(srdiff(A, scoprod(A, A)), Side::Input));
    EXPECT_TRUE(validate_structure(sldiff(sunder(A, A), sprod(A, A)), Side::Input));
    EXPECT_TRUE(validate_structure(scoprod(A, sover(A, A)), Side::Output));
    EXPECT_TRUE(validate_structure(sunder(sprod(A, A), A), Side::Output));
    EXPECT_TRUE(validate_structure(sover(A, srdiff(A, A)), Side::Output));
    // rejected
    EXPECT_FALSE(validate_structure(sprod(A, A), Side::Output));
    EXPECT_FALSE(validate_structure(scoprod(A, A), Side::Input));
    EXPECT_FALSE(validate_structure(sprod(A, scoprod(A, A)), Side::Input));
    EXPECT_FALSE(validate_structure(srdiff(scoprod(A, A), A), Side::Input));
    EXPECT_FALSE(validate_structure(sldiff(A, scoprod(A, A)), Side::Input));
    EXPECT_FALSE(validate_structure(sunder(scoprod(A, A), A), Side::Output));
    EXPECT_FALSE(validate_structure(sover(A, scoprod(A, A)), Side::Output));
    EXPECT_FALSE(validate_structure(Structure(), Side::Input));
}

TEST(Structure, ParseSequent) {
    Sequent s = parse_sequent("(np/n .*. n) .*. ((np\\s)/np .*. (np/n .*. n)) |- s");
    EXPECT_TRUE(validate_sequent(s));
    EXPECT_EQ(s.ant.leaf_count(), 5u);
    EXPECT_EQ(parse_sequent(to_string(s)), s);
    Sequent t = parse_sequent("x:np .*. y:(np\\s) |- a:s");
    EXPECT_EQ(t.ant.left().tag(), "x");
    EXPECT_EQ(t.ant.right().formula(), under(atom("np"), atom("s")));
    EXPECT_EQ(parse_sequent(to_string(t)), t);
    EXPECT_EQ(parse_sequent("a*(a\\b) |- b").ant, leaf(prod(atom("a"), under(atom("a"), atom("b")))));
    EXPECT_THROW(parse_sequent("a .(+). b |- c"), ParseError);
    EXPECT_THROW(parse_sequent("a |- b .*. c"), ParseError);
    EXPECT_THROW(parse_sequent("a b"), ParseError);
    EXPECT_THROW(parse_sequent("(a .*. b) * c |- d"), ParseError);
}
