#pragma once

#include "lg/formula.hpp"

#include <array>

namespace lg {

enum class ArrowRule {
    Id,
    Comp,
    ResOver,
    ResOverInv,
    ResUnder,
    ResUnderInv,
    CoResLDiff,
    CoResLDiffInv,
    CoResRDiff,
    CoResRDiffInv,
    AxD,
    AxQ,
    AxB,
    AxP,
    // Images of the four distributivity axioms under the arrow-reversing
    // symmetry. Each is derivable from d, q, b, p (see expand_dual_axiom).
    AxDDual,
    AxQDual,
    AxBDual,
    AxPDual,
};

inline const char* rule_name(ArrowRule r) {
    switch (r) {
    case ArrowRule::Id: return "id";
    case ArrowRule::Comp: return "comp";
    case ArrowRule::ResOver: return "res_over";
    case ArrowRule::ResOverInv: return "res_over_inv";
    case ArrowRule::ResUnder: return "res_under";
    case ArrowRule::ResUnderInv: return "res_under_inv";
    case ArrowRule::CoResLDiff: return "cores_ldiff";
    case ArrowRule::CoResLDiffInv: return "cores_ldiff_inv";
    case ArrowRule::CoResRDiff: return "cores_rdiff";
    case ArrowRule::CoResRDiffInv: return "cores_rdiff_inv";
    case ArrowRule::AxD: return "d";
    case ArrowRule::AxQ: return "q";
    case ArrowRule::AxB: return "b";
    case ArrowRule::AxP: return "p";
    case ArrowRule::AxDDual: return "d_dual";
    case ArrowRule::AxQDual: return "q_dual";
    case ArrowRule::AxBDual: return "b_dual";
    case ArrowRule::AxPDual: return "p_dual";
    }
    return "?";
}

inline bool is_axiom(ArrowRule r) { return r >= ArrowRule::AxD; }
inline bool is_unary(ArrowRule r) { return r >= ArrowRule::ResOver && r <= ArrowRule::CoResRDiffInv; }

// Combinator proof term of the arrow calculus. Comp(g, f) stores g first,
// matching the written order g∘f.
class ArrowProof {
public:
    struct Node {
        ArrowRule rule = ArrowRule::Id;
        std::array<Formula, 3> params;
        std::shared_ptr<const Node> first, second;
    };

    ArrowProof() = default;

    static ArrowProof id(Formula a) {
        auto n = std::make_shared<Node>();
        n->rule = ArrowRule::Id;
        n->params[0] = std::move(a);
        return ArrowProof(std::move(n));
    }
    static ArrowProof comp(const ArrowProof& g, const ArrowProof& f) {
        auto n = std::make_shared<Node>();
        n->rule = ArrowRule::Comp;
        n->first = g.n_;
        n->second = f.n_;
        return ArrowProof(std::move(n));
    }
    static ArrowProof unary(ArrowRule r, const ArrowProof& f) {
        auto n = std::make_shared<Node>();
        n->rule = r;
        n->first = f.n_;
        return ArrowProof(std::move(n));
    }
    static ArrowProof axiom(ArrowRule r, Formula a, Formula b, Formula c) {
        auto n = std::make_shared<Node>();
        n->rule = r;
        n->params = {std::move(a), std::move(b), std::move(c)};
        return ArrowProof(std::move(n));
    }

    bool valid() const { return static_cast<bool>(n_); }
    ArrowRule rule() const { return n_->rule; }
    const Formula& param(std::size_t i) const { return n_->params[i]; }
    // For Comp: first() is g and second() is f in g∘f. For unary rules: first().
    ArrowProof first() const { return ArrowProof(n_->first); }
    ArrowProof second() const { return ArrowProof(n_->second); }

    friend bool operator==(const ArrowProof& a, const ArrowProof& b) {
        if (a.n_ == b.n_) return true;
        if (!a.n_ || !b.n_) return false;
        if (a.n_->rule != b.n_->rule) return false;
        for (int i = 0; i < 3; ++i)
            if (a.n_->params[i] != b.n_->params[i]) return false;
        return a.first() == b.first() && a.second() == b.second();
    }
    friend bool operator!=(const ArrowProof& a, const ArrowProof& b) { return !(a == b); }

    std::size_t size() const {
        if (!n_) return 0;
        return 1 + first().size() + second().size();
    }

private:
    explicit ArrowProof(std::shared_ptr<const Node> n) : n_(std::move(n)) {}
    std::shared_ptr<const Node> n_;
};

inline ArrowProof id_arrow(Formula a) { return ArrowProof::id(std::move(a)); }
inline ArrowProof comp(const ArrowProof& g, const ArrowProof& f) { return ArrowProof::comp(g, f); }
inline ArrowProof res_over(const ArrowProof& f) { return ArrowProof::unary(ArrowRule::ResOver, f); }
inline ArrowProof res_over_inv(const ArrowProof& f) { return ArrowProof::unary(ArrowRule::ResOverInv, f); }
inline ArrowProof res_under(const ArrowProof& f) { return ArrowProof::unary(ArrowRule::ResUnder, f); }
inline ArrowProof res_under_inv(const ArrowProof& f) { return ArrowProof::unary(ArrowRule::ResUnderInv, f); }
inline ArrowProof cores_ldiff(const ArrowProof& f) { return ArrowProof::unary(ArrowRule::CoResLDiff, f); }
inline ArrowProof cores_ldiff_inv(const ArrowProof& f) { return ArrowProof::unary(ArrowRule::CoResLDiffInv, f); }
inline ArrowProof cores_rdiff(const ArrowProof& f) { return ArrowProof::unary(ArrowRule::CoResRDiff, f); }
inline ArrowProof cores_rdiff_inv(const ArrowProof& f) { return ArrowProof::unary(ArrowRule::CoResRDiffInv, f); }
inline ArrowProof ax_d(Formula a, Formula b, Formula c) { return ArrowProof::axiom(ArrowRule::AxD, a, b, c); }
inline ArrowProof ax_q(Formula a, Formula b, Formula c) { return ArrowProof::axiom(ArrowRule::AxQ, a, b, c); }
inline ArrowProof ax_b(Formula a, Formula b, Formula c) { return ArrowProof::axiom(ArrowRule::AxB, a, b, c); }
inline ArrowProof ax_p(Formula a, Formula b, Formula c) { return ArrowProof::axiom(ArrowRule::AxP, a, b, c); }

struct ArrowType {
    Formula source, target;
    friend bool operator==(const ArrowType& a, const ArrowType& b) { return a.source == b.source && a.target == b.target; }
};

// Type of an axiom instance from its three parameters.
inline ArrowType axiom_type(ArrowRule r, const Formula& a, const Formula& b, const Formula& c) {
    switch (r) {
    case ArrowRule::AxD: return {prod(ldiff(a, b), c), ldiff(a, prod(b, c))};        // (A(\)B)*C -> A(\)(B*C)
    case ArrowRule::AxQ: return {prod(c, ldiff(a, b)), ldiff(a, prod(c, b))};        // C*(A(\)B) -> A(\)(C*B)
    case ArrowRule::AxB: return {prod(c, rdiff(b, a)), rdiff(prod(c, b), a)};        // C*(B(/)A) -> (C*B)(/)A
    case ArrowRule::AxP: return {prod(rdiff(b, a), c), rdiff(prod(b, c), a)};        // (B(/)A)*C -> (B*C)(/)A
    case ArrowRule::AxDDual: return {over(coprod(c, b), a), coprod(c, over(b, a))};  // (C(+)B)/A -> C(+)(B/A)
    case ArrowRule::AxQDual: return {over(coprod(b, c), a), coprod(over(b, a), c)};  // (B(+)C)/A -> (B/A)(+)C
    case ArrowRule::AxBDual: return {under(a, coprod(b, c)), coprod(under(a, b), c)}; // A\(B(+)C) -> (A\B)(+)C
    case ArrowRule::AxPDual: return {under(a, coprod(c, b)), coprod(c, under(a, b))}; // A\(C(+)B) -> C(+)(A\B)
    default: break;
    }
    throw std::logic_error("not an axiom");
}

struct CheckResult {
    std::optional<ArrowType> type;
    std::string error;  // first ill-typed node, empty on success
    explicit operator bool() const { return type.has_value(); }
};

inline std::string to_string(const ArrowProof& p);

namespace detail {

inline CheckResult fail_at(const ArrowProof& p, const std::string& why) {
    CheckResult r;
    r.error = std::string(rule_name(p.rule())) + ": " + why + " in " + to_string(p);
    return r;
}

} // namespace detail

// Recomputes source and target bottom-up; reports the first ill-typed node.
inline CheckResult infer(const ArrowProof& p) {
    using detail::fail_at;
    if (!p.valid()) {
        CheckResult r;
        r.error = "empty proof";
        return r;
    }
    CheckResult out;
    switch (p.rule()) {
    case ArrowRule::Id:
        if (!p.param(0).valid()) return fail_at(p, "missing formula");
        out.type = ArrowType{p.param(0), p.param(0)};
        return out;
    case ArrowRule::Comp: {
        auto g = infer(p.first());
        if (!g) return g;
        auto f = infer(p.second());
        if (!f) return f;
        if (f.type->target != g.type->source)
            return fail_at(p, "codomain " + to_string(f.type->target) + " differs from domain " + to_string(g.type->source));
        out.type = ArrowType{f.type->source, g.type->target};
        return out;
    }
    default: break;
    }
    if (is_axiom(p.rule())) {
        for (int i = 0; i < 3; ++i)
            if (!p.param(i).valid()) return fail_at(p, "missing axiom parameter");
        out.type = axiom_type(p.rule(), p.param(0), p.param(1), p.param(2));
        return out;
    }
    auto sub = infer(p.first());
    if (!sub) return sub;
    const Formula& s = sub.type->source;
    const Formula& t = sub.type->target;
    switch (p.rule()) {
    case ArrowRule::ResOver:  // A*B -> C  gives  A -> C/B
        if (!s.is(Conn::Prod)) return fail_at(p, "premise source is not a product");
        out.type = ArrowType{s.left(), over(t, s.right())};
        return out;
    case ArrowRule::ResUnder:  // A*B -> C  gives  B -> A\C
        if (!s.is(Conn::Prod)) return fail_at(p, "premise source is not a product");
        out.type = ArrowType{s.right(), under(s.left(), t)};
        return out;
    case ArrowRule::ResOverInv:  // A -> C/B  gives  A*B -> C
        if (!t.is(Conn::Over)) return fail_at(p, "premise target is not a right division");
        out.type = ArrowType{prod(s, t.right()), t.left()};
        return out;
    case ArrowRule::ResUnderInv:  // B -> A\C  gives  A*B -> C
        if (!t.is(Conn::Under)) return fail_at(p, "premise target is not a left division");
        out.type = ArrowType{prod(t.left(), s), t.right()};
        return out;
    case ArrowRule::CoResLDiff:  // C -> B(+)A  gives  B(\)C -> A
        if (!t.is(Conn::Coprod)) return fail_at(p, "premise target is not a coproduct");
        out.type = ArrowType{ldiff(t.left(), s), t.right()};
        return out;
    case ArrowRule::CoResRDiff:  // C -> B(+)A  gives  C(/)A -> B
        if (!t.is(Conn::Coprod)) return fail_at(p, "premise target is not a coproduct");
        out.type = ArrowType{rdiff(s, t.right()), t.left()};
        return out;
    case ArrowRule::CoResLDiffInv:  // B(\)C -> A  gives  C -> B(+)A
        if (!s.is(Conn::LDiff)) return fail_at(p, "premise source is not a left difference");
        out.type = ArrowType{s.right(), coprod(s.left(), t)};
        return out;
    case ArrowRule::CoResRDiffInv:  // C(/)A -> B  gives  C -> B(+)A
        if (!s.is(Conn::RDiff)) return fail_at(p, "premise source is not a right difference");
        out.type = ArrowType{s.left(), coprod(t, s.right())};
        return out;
    default: break;
    }
    return fail_at(p, "unknown rule");
}

struct Arrow {
    Formula source, target;
    ArrowProof proof;
};

inline bool check(const Arrow& a) {
    auto r = infer(a.proof);
    return r && r.type->source == a.source && r.type->target == a.target;
}

inline CheckResult check_diagnostic(const Arrow& a) {
    auto r = infer(a.proof);
    if (!r) return r;
    if (r.type->source != a.source || r.type->target != a.target) {
        CheckResult bad;
        bad.error = "declared type " + to_string(a.source) + " -> " + to_string(a.target) + " but proof has " +
                    to_string(r.type->source) + " -> " + to_string(r.type->target);
        return bad;
    }
    return r;
}

class ArrowError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Wraps a proof with its inferred type; throws if ill-typed.
inline Arrow make_arrow(const ArrowProof& p) {
    auto r = infer(p);
    if (!r) throw ArrowError(r.error);
    return Arrow{r.type->source, r.type->target, p};
}

inline ArrowRule mirror_rule(ArrowRule r) {
    switch (r) {
    case ArrowRule::ResOver: return ArrowRule::ResUnder;
    case ArrowRule::ResUnder: return ArrowRule::ResOver;
    case ArrowRule::ResOverInv: return ArrowRule::ResUnderInv;
    case ArrowRule::ResUnderInv: return ArrowRule::ResOverInv;
    case ArrowRule::CoResLDiff: return ArrowRule::CoResRDiff;
    case ArrowRule::CoResRDiff: return ArrowRule::CoResLDiff;
    case ArrowRule::CoResLDiffInv: return ArrowRule::CoResRDiffInv;
    case ArrowRule::CoResRDiffInv: return ArrowRule::CoResLDiffInv;
    case ArrowRule::AxD: return ArrowRule::AxB;
    case ArrowRule::AxB: return ArrowRule::AxD;
    case ArrowRule::AxQ: return ArrowRule::AxP;
    case ArrowRule::AxP: return ArrowRule::AxQ;
    case ArrowRule::AxDDual: return ArrowRule::AxBDual;
    case ArrowRule::AxBDual: return ArrowRule::AxDDual;
    case ArrowRule::AxQDual: return ArrowRule::AxPDual;
    case ArrowRule::AxPDual: return ArrowRule::AxQDual;
    default: return r;
    }
}

inline ArrowRule dual_rule(ArrowRule r) {
    switch (r) {
    case ArrowRule::ResOver: return ArrowRule::CoResLDiff;
    case ArrowRule::CoResLDiff: return ArrowRule::ResOver;
    case ArrowRule::ResUnder: return ArrowRule::CoResRDiff;
    case ArrowRule::CoResRDiff: return ArrowRule::ResUnder;
    case ArrowRule::ResOverInv: return ArrowRule::CoResLDiffInv;
    case ArrowRule::CoResLDiffInv: return ArrowRule::ResOverInv;
    case ArrowRule::ResUnderInv: return ArrowRule::CoResRDiffInv;
    case ArrowRule::CoResRDiffInv: return ArrowRule::ResUnderInv;
    case ArrowRule::AxD: return ArrowRule::AxDDual;
    case ArrowRule::AxDDual: return ArrowRule::AxD;
    case ArrowRule::AxQ: return ArrowRule::AxQDual;
    case ArrowRule::AxQDual: return ArrowRule::AxQ;
    case ArrowRule::AxB: return ArrowRule::AxBDual;
    case ArrowRule::AxBDual: return ArrowRule::AxB;
    case ArrowRule::AxP: return ArrowRule::AxPDual;
    case ArrowRule::AxPDual: return ArrowRule::AxP;
    default: return r;
    }
}

// f : A -> B  gives  mirror f : mirror A -> mirror B.
inline ArrowProof mirror_proof(const ArrowProof& p) {
    switch (p.rule()) {
    case ArrowRule::Id: return id_arrow(mirror(p.param(0)));
    case ArrowRule::Comp: return comp(mirror_proof(p.first()), mirror_proof(p.second()));
    default: break;
    }
    if (is_axiom(p.rule()))
        return ArrowProof::axiom(mirror_rule(p.rule()), mirror(p.param(0)), mirror(p.param(1)), mirror(p.param(2)));
    return ArrowProof::unary(mirror_rule(p.rule()), mirror_proof(p.first()));
}

// f : A -> B  gives  dual f : dual B -> dual A; composition is reversed.
inline ArrowProof dual_proof(const ArrowProof& p) {
    switch (p.rule()) {
    case ArrowRule::Id: return id_arrow(dual(p.param(0)));
    case ArrowRule::Comp: return comp(dual_proof(p.second()), dual_proof(p.first()));
    default: break;
    }
    if (is_axiom(p.rule()))
        return ArrowProof::axiom(dual_rule(p.rule()), dual(p.param(0)), dual(p.param(1)), dual(p.param(2)));
    return ArrowProof::unary(dual_rule(p.rule()), dual_proof(p.first()));
}

inline Arrow mirror_proof(const Arrow& a) { return Arrow{mirror(a.source), mirror(a.target), mirror_proof(a.proof)}; }
inline Arrow dual_proof(const Arrow& a) { return Arrow{dual(a.target), dual(a.source), dual_proof(a.proof)}; }

// Derivation of a dual-form axiom from the primitive d, q, b, p.
inline ArrowProof expand_dual_axiom(const ArrowProof& p) {
    const Formula &a = p.param(0), &b = p.param(1), &c = p.param(2);
    switch (p.rule()) {
    case ArrowRule::AxDDual: {
        Formula x = over(coprod(c, b), a);
        return cores_ldiff_inv(res_over(comp(cores_ldiff(res_over_inv(id_arrow(x))), ax_d(c, x, a))));
    }
    case ArrowRule::AxQDual: {
        Formula x = over(coprod(b, c), a);
        return cores_rdiff_inv(res_over(comp(cores_rdiff(res_over_inv(id_arrow(x))), ax_p(c, x, a))));
    }
    case ArrowRule::AxBDual:
        return mirror_proof(expand_dual_axiom(ArrowProof::axiom(ArrowRule::AxDDual, mirror(a), mirror(b), mirror(c))));
    case ArrowRule::AxPDual:
        return mirror_proof(expand_dual_axiom(ArrowProof::axiom(ArrowRule::AxQDual, mirror(a), mirror(b), mirror(c))));
    default: break;
    }
    throw ArrowError("not a dual-form axiom");
}

// Replaces every dual-form axiom by its derivation.
inline ArrowProof expand_dual_axioms(const ArrowProof& p) {
    switch (p.rule()) {
    case ArrowRule::Id: return p;
    case ArrowRule::Comp: return comp(expand_dual_axioms(p.first()), expand_dual_axioms(p.second()));
    case ArrowRule::AxDDual:
    case ArrowRule::AxQDual:
    case ArrowRule::AxBDual:
    case ArrowRule::AxPDual: return expand_dual_axiom(p);
    default: break;
    }
    if (is_axiom(p.rule())) return p;
    return ArrowProof::unary(p.rule(), expand_dual_axioms(p.first()));
}

// Derived monotonicity. Variances: (up*up) (up/down) (down\up)
// (up(+)up) (up(/)down) (down(\)up). f acts on the left operand, g on the
// right. For an isotone position f : X -> X' maps X to X'; for an
// antitone one the operand goes from the target of f to its source.
inline Arrow mono(Conn conn, const Arrow& f, const Arrow& g) {
    if (!check(f) || !check(g)) throw ArrowError("mono: ill-typed argument");
    switch (conn) {
    case Conn::Over: {
        // f/g = (res_over(f . res_over_inv 1_{A/B})) . (res_over res_under_inv((res_under res_over_inv 1_{A/B'}) . g))
        const Formula &a = f.source, &b = g.source, &b2 = g.target;
        ArrowProof left = res_over(comp(f.proof, res_over_inv(id_arrow(over(a, b)))));
        ArrowProof right = res_over(res_under_inv(comp(res_under(res_over_inv(id_arrow(over(a, b2)))), g.proof)));
        return make_arrow(comp(left, right));
    }
    case Conn::Under: {
        Arrow m = mono(Conn::Over, mirror_proof(g), mirror_proof(f));
        return mirror_proof(m);
    }
    case Conn::LDiff: {
        Arrow m = mono(Conn::Over, dual_proof(g), dual_proof(f));
        return dual_proof(m);
    }
    case Conn::RDiff: {
        Arrow m = mono(Conn::LDiff, mirror_proof(g), mirror_proof(f));
        return mirror_proof(m);
    }
    case Conn::Prod: {
        Formula target = prod(f.target, g.target);
        ArrowProof step = res_over_inv(comp(res_over(id_arrow(target)), f.proof));
        return make_arrow(res_under_inv(comp(res_under(step), g.proof)));
    }
    case Conn::Coprod: {
        Arrow m = mono(Conn::Prod, dual_proof(g), dual_proof(f));
        return dual_proof(m);
    }
    }
    throw ArrowError("mono: unknown connective");
}

enum class GRule { G1, G2, G3, G4 };

inline const char* grule_name(GRule g) {
    switch (g) {
    case GRule::G1: return "G1";
    case GRule::G2: return "G2";
    case GRule::G3: return "G3";
    case GRule::G4: return "G4";
    }
    return "?";
}

// Rule form of the distributivity axioms. From f : X*Y -> Z(+)W:
//   G1: Z(\)X -> W/Y   via d      G2: Z(\)Y -> X\W   via q
//   G3: Y(/)W -> X\Z   via b      G4: X(/)W -> Z/Y   via p
inline Arrow distributivity_rule(const Arrow& f, GRule which = GRule::G1) {
    if (!check(f)) throw ArrowError("distributivity_rule: ill-typed premise");
    if (!f.source.is(Conn::Prod)) throw ArrowError("distributivity_rule: source is not a product");
    if (!f.target.is(Conn::Coprod)) throw ArrowError("distributivity_rule: target is not a coproduct");
    Formula x = f.source.left(), y = f.source.right(), z = f.target.left(), w = f.target.right();
    switch (which) {
    case GRule::G1: return make_arrow(res_over(comp(cores_ldiff(f.proof), ax_d(z, x, y))));
    case GRule::G2: return make_arrow(res_under(comp(cores_ldiff(f.proof), ax_q(z, y, x))));
    case GRule::G3: return make_arrow(res_under(comp(cores_rdiff(f.proof), ax_b(w, y, x))));
    case GRule::G4: return make_arrow(res_over(comp(cores_rdiff(f.proof), ax_p(w, x, y))));
    }
    throw ArrowError("distributivity_rule: unknown rule");
}

// The eight expanding/contracting patterns for atoms or formulas a, b.
struct NamedArrow {
    std::string name;
    Arrow arrow;
};

inline std::vector<NamedArrow> coapplication_theorems(const Formula& a, const Formula& b) {
    std::vector<NamedArrow> out;
    // A*(A\B) -> B
    out.push_back({"A*(A\\B) -> B", make_arrow(res_under_inv(id_arrow(under(a, b))))});
    // B -> A\(A*B)
    out.push_back({"B -> A\\(A*B)", make_arrow(res_under(id_arrow(prod(a, b))))});
    // (B/A)*A -> B
    out.push_back({"(B/A)*A -> B", make_arrow(res_over_inv(id_arrow(over(b, a))))});
    // B -> (B*A)/A
    out.push_back({"B -> (B*A)/A", make_arrow(res_over(id_arrow(prod(b, a))))});
    // (B(+)A)(/)A -> B
    out.push_back({"(B(+)A)(/)A -> B", make_arrow(cores_rdiff(id_arrow(coprod(b, a))))});
    // B -> (B(/)A)(+)A
    out.push_back({"B -> (B(/)A)(+)A", make_arrow(cores_rdiff_inv(id_arrow(rdiff(b, a))))});
    // A(\)(A(+)B) -> B
    out.push_back({"A(\\)(A(+)B) -> B", make_arrow(cores_ldiff(id_arrow(coprod(a, b))))});
    // B -> A(+)(A(\)B)
    out.push_back({"B -> A(+)(A(\\)B)", make_arrow(cores_ldiff_inv(id_arrow(ldiff(a, b))))});
    return out;
}

namespace detail {

inline void print_arrow(const ArrowProof& p, std::string& out, bool unicode, bool top) {
    auto fm = [&](const Formula& f) { return unicode ? to_unicode(f) : to_string(f); };
    switch (p.rule()) {
    case ArrowRule::Id:
        out += unicode ? "1_{" : "id_{";
        out += fm(p.param(0)) + "}";
        return;
    case ArrowRule::Comp:
        if (!top) out += "(";
        print_arrow(p.first(), out, unicode, false);
        out += unicode ? " ∘ " : " . ";
        print_arrow(p.second(), out, unicode, false);
        if (!top) out += ")";
        return;
    default: break;
    }
    if (is_axiom(p.rule())) {
        out += rule_name(p.rule());
        out += "_{" + fm(p.param(0)) + "," + fm(p.param(1)) + "," + fm(p.param(2)) + "}";
        return;
    }
    const char* sym = "?";
    switch (p.rule()) {
    case ArrowRule::ResOver: sym = unicode ? "⇀" : "rho/"; break;
    case ArrowRule::ResOverInv: sym = unicode ? "⇀⁻¹" : "rho/~"; break;
    case ArrowRule::ResUnder: sym = unicode ? "↼" : "rho\\"; break;
    case ArrowRule::ResUnderInv: sym = unicode ? "↼⁻¹" : "rho\\~"; break;
    case ArrowRule::CoResLDiff: sym = unicode ? "⇁" : "cor(\\)"; break;
    case ArrowRule::CoResLDiffInv: sym = unicode ? "⇁⁻¹" : "cor(\\)~"; break;
    case ArrowRule::CoResRDiff: sym = unicode ? "↽" : "cor(/)"; break;
    case ArrowRule::CoResRDiffInv: sym = unicode ? "↽⁻¹" : "cor(/)~"; break;
    default: break;
    }
    out += sym;
    ArrowProof sub = p.first();
    bool atomic = sub.rule() == ArrowRule::Id || is_axiom(sub.rule()) || is_unary(sub.rule());
    if (!unicode || !atomic) out += "(";
    print_arrow(sub, out, unicode, true);
    if (!unicode || !atomic) out += ")";
}

} // namespace detail

inline std::string to_string(const ArrowProof& p) {
    std::string s;
    if (!p.valid()) return "<empty>";
    detail::print_arrow(p, s, false, true);
    return s;
}

inline std::string to_unicode(const ArrowProof& p) {
    std::string s;
    if (!p.valid()) return "<empty>";
    detail::print_arrow(p, s, true, true);
    return s;
}

} // namespace lg
