#pragma once

#include "lg/focused.hpp"

namespace lg {

// ---- target types ----

enum class TypeKind { Atom, Pair, Arrow };

// Types of the linear target (atoms, the response type "bot", products and
// negation A -> bot) and of the intuitionistic lexical level (e, t, x, ->).
class TargetType {
public:
    struct Node {
        TypeKind kind = TypeKind::Atom;
        std::string name;
        std::shared_ptr<const Node> a, b;
    };

    TargetType() = default;
    static TargetType atom(std::string n) { return make(TypeKind::Atom, std::move(n), {}, {}); }
    static TargetType bot() { return atom("bot"); }
    static TargetType pair(const TargetType& a, const TargetType& b) { return make(TypeKind::Pair, {}, a.n_, b.n_); }
    static TargetType arrow(const TargetType& a, const TargetType& b) { return make(TypeKind::Arrow, {}, a.n_, b.n_); }
    static TargetType neg(const TargetType& a) { return arrow(a, bot()); }

    bool valid() const { return static_cast<bool>(n_); }
    TypeKind kind() const { return n_->kind; }
    const std::string& name() const { return n_->name; }
    TargetType left() const { return TargetType(n_->a); }
    TargetType right() const { return TargetType(n_->b); }
    bool is_bot() const { return kind() == TypeKind::Atom && name() == "bot"; }
    bool is_neg() const { return kind() == TypeKind::Arrow && right().is_bot(); }

    friend bool operator==(const TargetType& x, const TargetType& y) {
        if (x.n_ == y.n_) return true;
        if (!x.n_ || !y.n_) return false;
        return x.n_->kind == y.n_->kind && x.n_->name == y.n_->name && TargetType(x.n_->a) == TargetType(y.n_->a) &&
               TargetType(x.n_->b) == TargetType(y.n_->b);
    }
    friend bool operator!=(const TargetType& x, const TargetType& y) { return !(x == y); }

private:
    explicit TargetType(std::shared_ptr<const Node> n) : n_(std::move(n)) {}
    static TargetType make(TypeKind k, std::string name, std::shared_ptr<const Node> a, std::shared_ptr<const Node> b) {
        auto n = std::make_shared<Node>();
        n->kind = k;
        n->name = std::move(name);
        n->a = std::move(a);
        n->b = std::move(b);
        return TargetType(std::move(n));
    }
    std::shared_ptr<const Node> n_;
};

// Linear notation: A * B, A^ for A -> bot. Intuitionistic: A x B, A -> B.
inline std::string to_string(const TargetType& t, bool linear = true, bool unicode = false) {
    switch (t.kind()) {
    case TypeKind::Atom: return unicode && t.is_bot() ? "⊥" : t.name();
    case TypeKind::Pair: {
        std::string op = linear ? (unicode ? " ⊗ " : " * ") : (unicode ? " × " : " x ");
        return "(" + to_string(t.left(), linear, unicode) + op + to_string(t.right(), linear, unicode) + ")";
    }
    case TypeKind::Arrow:
        if (linear && t.is_neg()) {
            std::string inner = to_string(t.left(), linear, unicode);
            return inner + (unicode ? "^⊥" : "^");
        }
        return "(" + to_string(t.left(), linear, unicode) + (unicode ? " → " : " -> ") + to_string(t.right(), linear, unicode) + ")";
    }
    return "?";
}

namespace detail {

inline TargetType parse_type_at(Cursor& c);

inline TargetType parse_type_atom(Cursor& c) {
    c.skip_ws();
    TargetType t;
    if (c.accept("(")) {
        t = parse_type_at(c);
        c.expect(")");
    } else {
        t = TargetType::atom(c.identifier());
    }
    while (c.accept("^")) t = TargetType::neg(t);
    return t;
}

inline TargetType parse_type_product(Cursor& c) {
    TargetType t = parse_type_atom(c);
    while (true) {
        c.skip_ws();
        // "x" as product only when followed by a space, so atoms named x... still parse
        if (c.accept("*") || c.accept("×") || c.accept("⊗") || (c.starts_with("x ") && c.accept("x")))
            t = TargetType::pair(t, parse_type_atom(c));
        else
            return t;
    }
}

inline TargetType parse_type_at(Cursor& c) {
    TargetType t = parse_type_product(c);
    if (c.accept("->") || c.accept("→")) return TargetType::arrow(t, parse_type_at(c));
    return t;
}

} // namespace detail

// Reads either notation: products with * or x, arrows with -> (right
// associative), postfix ^ for negation.
inline TargetType parse_type(const std::string& text) {
    detail::Cursor c(text);
    TargetType t = detail::parse_type_at(c);
    if (!c.at_end()) c.fail("trailing input");
    return t;
}

// Source type translation: positive atoms map to themselves, negative ones
// to their negation; a complex type maps to the product of its operands,
// each taken at the type of its value or context occurrence.
inline TargetType cps_type(const Formula& f, const BiasMap& bias);

inline TargetType cps_value_type(const Formula& f, const BiasMap& bias) {
    TargetType t = cps_type(f, bias);
    return is_positive(f, bias) ? t : TargetType::neg(t);
}

inline TargetType cps_context_type(const Formula& f, const BiasMap& bias) {
    TargetType t = cps_type(f, bias);
    return is_positive(f, bias) ? TargetType::neg(t) : t;
}

inline TargetType cps_type(const Formula& f, const BiasMap& bias) {
    if (f.is_atom()) {
        TargetType a = TargetType::atom(f.name());
        return bias.of(f.name()) == Polarity::Positive ? a : TargetType::neg(a);
    }
    auto [ls, rs] = pair_component_sorts(f.conn());
    auto side = [&](const Formula& g, Sort s) { return s == Sort::Value ? cps_value_type(g, bias) : cps_context_type(g, bias); };
    return TargetType::pair(side(f.left(), ls), side(f.right(), rs));
}

// Second mapping to the intuitionistic lexical level: bot becomes t, the
// given atoms their images, negation an arrow into t.
struct LexTypeMap {
    std::map<std::string, TargetType> atoms = {
        {"np", TargetType::atom("e")},
        {"s", TargetType::atom("t")},
        {"n", TargetType::arrow(TargetType::atom("e"), TargetType::atom("t"))},
        {"bot", TargetType::atom("t")},
    };
};

inline TargetType lex_type(const TargetType& t, const LexTypeMap& m = {}) {
    switch (t.kind()) {
    case TypeKind::Atom: {
        auto it = m.atoms.find(t.name());
        return it == m.atoms.end() ? t : it->second;
    }
    case TypeKind::Pair: return TargetType::pair(lex_type(t.left(), m), lex_type(t.right(), m));
    case TypeKind::Arrow: return TargetType::arrow(lex_type(t.left(), m), lex_type(t.right(), m));
    }
    return t;
}

// ---- target terms ----

enum class TargetKind { Var, Const, Lam, App, Pair, Case };

class TargetTerm {
public:
    struct Node {
        TargetKind kind = TargetKind::Var;
        std::string name;          // Var/Const name, Lam binder
        std::string bind1, bind2;  // Case binders
        std::shared_ptr<const Node> a, b;
    };

    TargetTerm() = default;
    static TargetTerm var(std::string x) { return make(TargetKind::Var, std::move(x), {}, {}, {}, {}); }
    static TargetTerm constant(std::string c) { return make(TargetKind::Const, std::move(c), {}, {}, {}, {}); }
    static TargetTerm lam(std::string x, const TargetTerm& body) { return make(TargetKind::Lam, std::move(x), {}, {}, body.n_, {}); }
    static TargetTerm app(const TargetTerm& f, const TargetTerm& a) { return make(TargetKind::App, {}, {}, {}, f.n_, a.n_); }
    static TargetTerm pair(const TargetTerm& l, const TargetTerm& r) { return make(TargetKind::Pair, {}, {}, {}, l.n_, r.n_); }
    static TargetTerm case_of(const TargetTerm& scrutinee, std::string x, std::string y, const TargetTerm& body) {
        return make(TargetKind::Case, {}, std::move(x), std::move(y), scrutinee.n_, body.n_);
    }

    bool valid() const { return static_cast<bool>(n_); }
    TargetKind kind() const { return n_->kind; }
    const std::string& name() const { return n_->name; }
    const std::string& bind1() const { return n_->bind1; }
    const std::string& bind2() const { return n_->bind2; }
    TargetTerm body() const { return TargetTerm(n_->kind == TargetKind::Case ? n_->b : n_->a); }  // Lam, Case
    TargetTerm fun() const { return TargetTerm(n_->a); }                                           // App
    TargetTerm arg() const { return TargetTerm(n_->b); }                                           // App
    TargetTerm left() const { return TargetTerm(n_->a); }                                          // Pair
    TargetTerm right() const { return TargetTerm(n_->b); }                                         // Pair
    TargetTerm scrutinee() const { return TargetTerm(n_->a); }                                     // Case

    friend bool operator==(const TargetTerm& x, const TargetTerm& y) {
        if (x.n_ == y.n_) return true;
        if (!x.n_ || !y.n_) return false;
        const Node &p = *x.n_, &q = *y.n_;
        return p.kind == q.kind && p.name == q.name && p.bind1 == q.bind1 && p.bind2 == q.bind2 && TargetTerm(p.a) == TargetTerm(q.a) &&
               TargetTerm(p.b) == TargetTerm(q.b);
    }
    friend bool operator!=(const TargetTerm& x, const TargetTerm& y) { return !(x == y); }

private:
    explicit TargetTerm(std::shared_ptr<const Node> n) : n_(std::move(n)) {}
    static TargetTerm make(TargetKind k, std::string name, std::string b1, std::string b2, std::shared_ptr<const Node> a,
                           std::shared_ptr<const Node> b) {
        auto n = std::make_shared<Node>();
        n->kind = k;
        n->name = std::move(name);
        n->bind1 = std::move(b1);
        n->bind2 = std::move(b2);
        n->a = std::move(a);
        n->b = std::move(b);
        return TargetTerm(std::move(n));
    }
    std::shared_ptr<const Node> n_;
};

// ASCII: \x.M, (M N), <M, N>, case M of <x, y>. N. Unicode uses λ.
inline std::string to_string(const TargetTerm& t, bool unicode = false) {
    switch (t.kind()) {
    case TargetKind::Var:
    case TargetKind::Const: return t.name();
    case TargetKind::Lam: return (unicode ? "λ" : "\\") + t.name() + "." + to_string(t.body(), unicode);
    case TargetKind::App: return "(" + to_string(t.fun(), unicode) + " " + to_string(t.arg(), unicode) + ")";
    case TargetKind::Pair: return "<" + to_string(t.left(), unicode) + ", " + to_string(t.right(), unicode) + ">";
    case TargetKind::Case:
        return "case " + to_string(t.scrutinee(), unicode) + " of <" + t.bind1() + ", " + t.bind2() + ">. " + to_string(t.body(), unicode);
    }
    return "?";
}

inline std::string to_latex(const TargetTerm& t) {
    static const std::map<std::string, std::string> symbols = {
        {"forall", "\\forall"}, {"exists", "\\exists"}, {"and", "\\wedge"}, {"implies", "\\Rightarrow"}, {"or", "\\vee"}};
    auto name = [](const std::string& n) {
        std::string out;
        for (char ch : n) out += ch == '_' ? std::string("\\_") : ch == '#' ? std::string("'") : std::string(1, ch);
        return out;
    };
    switch (t.kind()) {
    case TargetKind::Var: return name(t.name());
    case TargetKind::Const: {
        auto it = symbols.find(t.name());
        return it != symbols.end() ? it->second : "\\textsc{" + name(t.name()) + "}";
    }
    case TargetKind::Lam: return "\\lambda " + name(t.name()) + "." + to_latex(t.body());
    case TargetKind::App: return "(" + to_latex(t.fun()) + "\\ " + to_latex(t.arg()) + ")";
    case TargetKind::Pair: return "\\langle " + to_latex(t.left()) + ", " + to_latex(t.right()) + "\\rangle";
    case TargetKind::Case:
        return "\\textsf{case}\\ " + to_latex(t.scrutinee()) + "\\ \\textsf{of}\\ \\langle " + name(t.bind1()) + ", " +
               name(t.bind2()) + "\\rangle.(" + to_latex(t.body()) + ")";
    }
    return "?";
}

namespace detail {

struct TargetParser {
    Cursor c;
    std::vector<std::string> scope;
    int fresh = 0;

    std::set<std::string> free_vars;

    TargetParser(const std::string& text, std::set<std::string> fv) : c(text), free_vars(std::move(fv)) {}

    bool bound(const std::string& n) const {
        return free_vars.count(n) || std::find(scope.rbegin(), scope.rend(), n) != scope.rend();
    }

    bool lambda() { return c.accept("\\") || c.accept("λ"); }

    // \x.M or \<p, q>.M with nested patterns, the latter as a case on a
    // fresh binder.
    TargetTerm abstraction() {
        c.skip_ws();
        if (c.starts_with("<")) {
            std::string p = "_p" + std::to_string(++fresh);
            scope.push_back(p);
            TargetTerm body = pattern_body(TargetTerm::var(p));
            scope.pop_back();
            return TargetTerm::lam(p, body);
        }
        std::string x = c.identifier();
        c.expect(".");
        scope.push_back(x);
        TargetTerm body = term();
        scope.pop_back();
        return TargetTerm::lam(x, body);
    }

    // Destructures scrutinee by the pattern at the cursor, then parses the body.
    TargetTerm pattern_body(const TargetTerm& scrutinee) {
        c.expect("<");
        auto component = [&](std::string& name, std::optional<int>& nested) {
            c.skip_ws();
            if (c.starts_with("<")) {
                name = "_p" + std::to_string(++fresh);
                nested = 1;
            } else {
                name = c.identifier();
            }
        };
        std::string x, y;
        std::optional<int> nx, ny;
        c.skip_ws();
        std::size_t save_x = c.pos, save_y = 0;
        component(x, nx);
        if (nx) skip_pattern();
        c.expect(",");
        c.skip_ws();
        save_y = c.pos;
        component(y, ny);
        if (ny) skip_pattern();
        c.expect(">");
        c.expect(".");
        scope.push_back(x);
        scope.push_back(y);
        std::size_t after = c.pos;
        TargetTerm body;
        if (nx || ny) {
            // Re-read nested patterns in order, then the body.
            std::vector<std::pair<std::string, std::size_t>> nested;
            if (nx) nested.push_back({x, save_x});
            if (ny) nested.push_back({y, save_y});
            body = nested_body(nested, 0, after);
        } else {
            body = term();
        }
        scope.pop_back();
        scope.pop_back();
        return TargetTerm::case_of(scrutinee, x, y, body);
    }

    TargetTerm nested_body(const std::vector<std::pair<std::string, std::size_t>>& nested, std::size_t i, std::size_t body_pos) {
        if (i == nested.size()) {
            c.pos = body_pos;
            return term();
        }
        c.pos = nested[i].second;
        c.expect("<");
        std::string x, y;
        std::optional<std::size_t> px, py;
        c.skip_ws();
        if (c.starts_with("<")) {
            px = c.pos;
            x = "_p" + std::to_string(++fresh);
            skip_pattern();
        } else {
            x = c.identifier();
        }
        c.expect(",");
        c.skip_ws();
        if (c.starts_with("<")) {
            py = c.pos;
            y = "_p" + std::to_string(++fresh);
            skip_pattern();
        } else {
            y = c.identifier();
        }
        c.expect(">");
        scope.push_back(x);
        scope.push_back(y);
        std::vector<std::pair<std::string, std::size_t>> more(nested.begin() + static_cast<long>(i) + 1, nested.end());
        if (px) more.push_back({x, *px});
        if (py) more.push_back({y, *py});
        TargetTerm body = nested_body(more, 0, body_pos);
        scope.pop_back();
        scope.pop_back();
        return TargetTerm::case_of(TargetTerm::var(nested[i].first), x, y, body);
    }

    void skip_pattern() {
        int depth = 0;
        c.skip_ws();
        do {
            if (c.pos >= c.text.size()) c.fail("unterminated pattern");
            char ch = c.text[c.pos++];
            if (ch == '<') ++depth;
            if (ch == '>') --depth;
        } while (depth > 0);
    }

    TargetTerm atom() {
        c.skip_ws();
        if (lambda()) return abstraction();
        if (c.accept("(")) {
            TargetTerm t = term();
            c.expect(")");
            return t;
        }
        if (c.accept("<")) {
            TargetTerm l = term();
            c.expect(",");
            TargetTerm r = term();
            c.expect(">");
            return TargetTerm::pair(l, r);
        }
        std::size_t save = c.pos;
        std::string id = c.identifier();
        if (id == "case") {
            TargetTerm s = term();
            c.skip_ws();
            if (c.identifier() != "of") c.fail("expected 'of'");
            return pattern_body(s);
        }
        if (id == "of") {
            c.pos = save;
            c.fail("unexpected 'of'");
        }
        return bound(id) ? TargetTerm::var(id) : TargetTerm::constant(id);
    }

    bool starts_atom() {
        c.skip_ws();
        if (c.pos >= c.text.size()) return false;
        if (c.starts_with("\\") || c.starts_with("λ") || c.starts_with("(") || c.starts_with("<")) return true;
        if (!atom_start(c.text[c.pos])) return false;
        return !c.starts_with("of ") && !c.starts_with("of<");
    }

    // Application by juxtaposition, left associative; a lambda extends as
    // far right as possible.
    TargetTerm term() {
        TargetTerm t = atom();
        while (starts_atom()) t = TargetTerm::app(t, atom());
        return t;
    }
};

} // namespace detail

// Identifiers bound by an enclosing lambda or pattern, or listed in
// free_vars, are variables; all others constants.
inline TargetTerm parse_target(const std::string& text, std::set<std::string> free_vars = {}) {
    detail::TargetParser p(text, std::move(free_vars));
    TargetTerm t = p.term();
    if (!p.c.at_end()) p.c.fail("trailing input");
    return t;
}

// ---- free names, substitution, normalization ----

inline void target_free_vars(const TargetTerm& t, std::multiset<std::string>& out, std::set<std::string> bound = {}) {
    switch (t.kind()) {
    case TargetKind::Var:
        if (!bound.count(t.name())) out.insert(t.name());
        return;
    case TargetKind::Const: return;
    case TargetKind::Lam:
        bound.insert(t.name());
        target_free_vars(t.body(), out, bound);
        return;
    case TargetKind::App:
        target_free_vars(t.fun(), out, bound);
        target_free_vars(t.arg(), out, bound);
        return;
    case TargetKind::Pair:
        target_free_vars(t.left(), out, bound);
        target_free_vars(t.right(), out, bound);
        return;
    case TargetKind::Case:
        target_free_vars(t.scrutinee(), out, bound);
        bound.insert(t.bind1());
        bound.insert(t.bind2());
        target_free_vars(t.body(), out, bound);
        return;
    }
}

// Each bound variable used exactly once and each free one at most once.
inline bool target_is_linear(const TargetTerm& t) {
    std::multiset<std::string> f;
    target_free_vars(t, f);
    for (auto& n : f)
        if (f.count(n) > 1) return false;
    switch (t.kind()) {
    case TargetKind::Var:
    case TargetKind::Const: return true;
    case TargetKind::Lam: {
        std::multiset<std::string> b;
        target_free_vars(t.body(), b);
        return b.count(t.name()) == 1 && target_is_linear(t.body());
    }
    case TargetKind::App: return target_is_linear(t.fun()) && target_is_linear(t.arg());
    case TargetKind::Pair: return target_is_linear(t.left()) && target_is_linear(t.right());
    case TargetKind::Case: {
        std::multiset<std::string> b;
        target_free_vars(t.body(), b);
        return b.count(t.bind1()) == 1 && b.count(t.bind2()) == 1 && target_is_linear(t.scrutinee()) && target_is_linear(t.body());
    }
    }
    return true;
}

namespace detail {

class Substituter {
public:
    explicit Substituter(int& counter) : counter_(counter) {}

    // Capture-avoiding: every binder passed is renamed apart.
    TargetTerm run(const TargetTerm& t, const std::map<std::string, TargetTerm>& s) {
        switch (t.kind()) {
        case TargetKind::Var: {
            auto it = s.find(t.name());
            return it == s.end() ? t : it->second;
        }
        case TargetKind::Const: return t;
        case TargetKind::Lam: {
            std::string x = fresh(t.name());
            auto inner = s;
            inner[t.name()] = TargetTerm::var(x);
            return TargetTerm::lam(x, run(t.body(), inner));
        }
        case TargetKind::App: return TargetTerm::app(run(t.fun(), s), run(t.arg(), s));
        case TargetKind::Pair: return TargetTerm::pair(run(t.left(), s), run(t.right(), s));
        case TargetKind::Case: {
            std::string x = fresh(t.bind1()), y = fresh(t.bind2());
            auto inner = s;
            inner[t.bind1()] = TargetTerm::var(x);
            inner[t.bind2()] = TargetTerm::var(y);
            return TargetTerm::case_of(run(t.scrutinee(), s), x, y, run(t.body(), inner));
        }
        }
        return t;
    }

private:
    std::string fresh(const std::string& base) {
        std::string stem = base.substr(0, base.find('#'));
        return stem + "#" + std::to_string(++counter_);
    }
    int& counter_;
};

class Normalizer {
public:
    explicit Normalizer(std::size_t budget) : budget_(budget) {}

    TargetTerm norm(const TargetTerm& t) {
        switch (t.kind()) {
        case TargetKind::Var:
        case TargetKind::Const: return t;
        case TargetKind::Lam: return TargetTerm::lam(t.name(), norm(t.body()));
        case TargetKind::Pair: return TargetTerm::pair(norm(t.left()), norm(t.right()));
        case TargetKind::App: {
            TargetTerm f = norm(t.fun());
            if (f.kind() == TargetKind::Lam) {
                tick();
                return norm(subst(f.body(), {{f.name(), t.arg()}}));
            }
            if (f.kind() == TargetKind::Case) {  // (case s of <x,y>. M) N  ~>  case s of <x,y>. (M N)
                tick();
                TargetTerm g = rename_case(f);
                return norm(TargetTerm::case_of(g.scrutinee(), g.bind1(), g.bind2(), TargetTerm::app(g.body(), t.arg())));
            }
            return TargetTerm::app(f, norm(t.arg()));
        }
        case TargetKind::Case: {
            TargetTerm s = norm(t.scrutinee());
            if (s.kind() == TargetKind::Pair) {
                tick();
                return norm(subst(t.body(), {{t.bind1(), s.left()}, {t.bind2(), s.right()}}));
            }
            if (s.kind() == TargetKind::Case) {  // case (case s0 of <u,v>. M) of <x,y>. N  ~>  case s0 of <u,v>. case M of <x,y>. N
                tick();
                TargetTerm g = rename_case(s);
                TargetTerm me = rename_case(TargetTerm::case_of(g.body(), t.bind1(), t.bind2(), t.body()));
                return norm(TargetTerm::case_of(g.scrutinee(), g.bind1(), g.bind2(), me));
            }
            return TargetTerm::case_of(s, t.bind1(), t.bind2(), norm(t.body()));
        }
        }
        return t;
    }

private:
    void tick() {
        if (steps_++ >= budget_) throw std::runtime_error("normalize: step budget exhausted");
    }
    TargetTerm subst(const TargetTerm& t, const std::map<std::string, TargetTerm>& s) { return Substituter(counter_).run(t, s); }
    // Renames the binders of a case apart from everything else.
    TargetTerm rename_case(const TargetTerm& c) {
        TargetTerm lam = TargetTerm::lam("_", c);
        TargetTerm r = subst(lam, {});
        return r.body();
    }

    std::size_t budget_;
    std::size_t steps_ = 0;
    int counter_ = 0;
};

} // namespace detail

// Simultaneous capture-avoiding substitution for free variables.
inline TargetTerm substitute(const TargetTerm& t, const std::map<std::string, TargetTerm>& s) {
    int counter = 0;
    return detail::Substituter(counter).run(t, s);
}

// beta, case-of-pair and the two case-commuting conversions, to normal form.
inline TargetTerm normalize(const TargetTerm& t, std::size_t budget = 1000000) { return detail::Normalizer(budget).norm(t); }

inline bool is_normal(const TargetTerm& t) {
    switch (t.kind()) {
    case TargetKind::Var:
    case TargetKind::Const: return true;
    case TargetKind::Lam: return is_normal(t.body());
    case TargetKind::App:
        return t.fun().kind() != TargetKind::Lam && t.fun().kind() != TargetKind::Case && is_normal(t.fun()) && is_normal(t.arg());
    case TargetKind::Pair: return is_normal(t.left()) && is_normal(t.right());
    case TargetKind::Case:
        return t.scrutinee().kind() != TargetKind::Pair && t.scrutinee().kind() != TargetKind::Case && is_normal(t.scrutinee()) &&
               is_normal(t.body());
    }
    return true;
}

// Bound variables renamed to _1, _2, ... in binding order.
inline TargetTerm canonical_target(const TargetTerm& t) {
    int counter = 0;
    std::function<TargetTerm(const TargetTerm&, const std::map<std::string, std::string>&)> go =
        [&](const TargetTerm& u, const std::map<std::string, std::string>& env) -> TargetTerm {
        switch (u.kind()) {
        case TargetKind::Var: {
            auto it = env.find(u.name());
            return TargetTerm::var(it == env.end() ? u.name() : it->second);
        }
        case TargetKind::Const: return u;
        case TargetKind::Lam: {
            auto inner = env;
            std::string x = "_" + std::to_string(++counter);
            inner[u.name()] = x;
            return TargetTerm::lam(x, go(u.body(), inner));
        }
        case TargetKind::App: return TargetTerm::app(go(u.fun(), env), go(u.arg(), env));
        case TargetKind::Pair: return TargetTerm::pair(go(u.left(), env), go(u.right(), env));
        case TargetKind::Case: {
            TargetTerm s = go(u.scrutinee(), env);
            auto inner = env;
            std::string x = "_" + std::to_string(++counter), y = "_" + std::to_string(++counter);
            inner[u.bind1()] = x;
            inner[u.bind2()] = y;
            return TargetTerm::case_of(s, x, y, go(u.body(), inner));
        }
        }
        return u;
    };
    return go(t, {});
}

// Bound names reduced to their stems (renaming suffixes dropped), with a
// numeric suffix only where a stem would be captured or shadowed.
inline TargetTerm tidy_names(const TargetTerm& t) {
    std::multiset<std::string> free;
    target_free_vars(t, free);
    std::set<std::string> taken(free.begin(), free.end());
    std::function<void(const TargetTerm&)> consts = [&](const TargetTerm& u) {
        switch (u.kind()) {
        case TargetKind::Const: taken.insert(u.name()); return;
        case TargetKind::Var: return;
        case TargetKind::Lam: consts(u.body()); return;
        case TargetKind::App: consts(u.fun()); consts(u.arg()); return;
        case TargetKind::Pair: consts(u.left()); consts(u.right()); return;
        case TargetKind::Case: consts(u.scrutinee()); consts(u.body()); return;
        }
    };
    consts(t);
    auto pick = [](const std::string& base, const std::set<std::string>& avoid) {
        std::string stem = base.substr(0, base.find('#'));
        if (stem.empty() || stem[0] == '_') stem = "v";
        if (!avoid.count(stem)) return stem;
        for (int i = 1;; ++i)
            if (!avoid.count(stem + std::to_string(i))) return stem + std::to_string(i);
    };
    std::function<TargetTerm(const TargetTerm&, std::map<std::string, std::string>, std::set<std::string>)> go =
        [&](const TargetTerm& u, std::map<std::string, std::string> env, std::set<std::string> avoid) -> TargetTerm {
        switch (u.kind()) {
        case TargetKind::Var: {
            auto it = env.find(u.name());
            return it == env.end() ? u : TargetTerm::var(it->second);
        }
        case TargetKind::Const: return u;
        case TargetKind::Lam: {
            std::string x = pick(u.name(), avoid);
            env[u.name()] = x;
            avoid.insert(x);
            return TargetTerm::lam(x, go(u.body(), env, avoid));
        }
        case TargetKind::App: return TargetTerm::app(go(u.fun(), env, avoid), go(u.arg(), env, avoid));
        case TargetKind::Pair: return TargetTerm::pair(go(u.left(), env, avoid), go(u.right(), env, avoid));
        case TargetKind::Case: {
            TargetTerm sc = go(u.scrutinee(), env, avoid);
            std::string x = pick(u.bind1(), avoid);
            avoid.insert(x);
            std::string y = pick(u.bind2(), avoid);
            avoid.insert(y);
            env[u.bind1()] = x;
            env[u.bind2()] = y;
            return TargetTerm::case_of(sc, x, y, go(u.body(), env, avoid));
        }
        }
        return u;
    };
    return go(t, {}, taken);
}

inline bool alpha_equivalent(const TargetTerm& a, const TargetTerm& b) { return canonical_target(a) == canonical_target(b); }

// ---- type checking ----

class TypeError : public std::runtime_error {
public:
    TypeError(const std::string& msg, const std::string& path) : std::runtime_error(msg + " at " + (path.empty() ? "root" : path)), path_(path) {}
    const std::string& path() const { return path_; }

private:
    std::string path_;
};

using TypeContext = std::map<std::string, TargetType>;

namespace detail {

class TypeChecker {
public:
    TypeChecker(const TypeContext& consts) : consts_(consts) {}

    TargetType infer(const TargetTerm& t, TypeContext& ctx, const std::string& path) {
        switch (t.kind()) {
        case TargetKind::Var: {
            auto it = ctx.find(t.name());
            if (it == ctx.end()) throw TypeError("unbound variable " + t.name(), path);
            return it->second;
        }
        case TargetKind::Const: {
            auto it = consts_.find(t.name());
            if (it == consts_.end()) throw TypeError("unknown constant " + t.name(), path);
            return it->second;
        }
        case TargetKind::App: {
            TargetType f = infer(t.fun(), ctx, path + "/fun");
            if (f.kind() != TypeKind::Arrow) throw TypeError("applying a non-function of type " + to_string(f), path);
            check(t.arg(), f.left(), ctx, path + "/arg");
            return f.right();
        }
        case TargetKind::Pair:
            return TargetType::pair(infer(t.left(), ctx, path + "/fst"), infer(t.right(), ctx, path + "/snd"));
        case TargetKind::Case: {
            TargetType s = bind_case(t, ctx, path);
            TargetType r = infer(t.body(), ctx, path + "/body");
            unbind_case(t, ctx, s);
            return r;
        }
        case TargetKind::Lam: throw TypeError("cannot infer the type of an abstraction", path);
        }
        throw TypeError("bad term", path);
    }

    void check(const TargetTerm& t, const TargetType& want, TypeContext& ctx, const std::string& path) {
        switch (t.kind()) {
        case TargetKind::Lam: {
            if (want.kind() != TypeKind::Arrow) throw TypeError("abstraction checked against " + to_string(want), path);
            auto saved = ctx.find(t.name()) == ctx.end() ? std::optional<TargetType>() : ctx[t.name()];
            ctx[t.name()] = want.left();
            check(t.body(), want.right(), ctx, path + "/" + t.name());
            if (saved) ctx[t.name()] = *saved;
            else ctx.erase(t.name());
            return;
        }
        case TargetKind::Pair:
            if (want.kind() != TypeKind::Pair) throw TypeError("pair checked against " + to_string(want), path);
            check(t.left(), want.left(), ctx, path + "/fst");
            check(t.right(), want.right(), ctx, path + "/snd");
            return;
        case TargetKind::Case: {
            TargetType s = bind_case(t, ctx, path);
            check(t.body(), want, ctx, path + "/body");
            unbind_case(t, ctx, s);
            return;
        }
        default: {
            TargetType got = infer(t, ctx, path);
            if (got != want) throw TypeError("expected " + to_string(want) + ", found " + to_string(got), path);
        }
        }
    }

private:
    TargetType bind_case(const TargetTerm& t, TypeContext& ctx, const std::string& path) {
        TargetType s = infer(t.scrutinee(), ctx, path + "/scrutinee");
        if (s.kind() != TypeKind::Pair) throw TypeError("case on a non-pair of type " + to_string(s), path);
        saved_.push_back({ctx.count(t.bind1()) ? std::optional<TargetType>(ctx[t.bind1()]) : std::nullopt,
                          ctx.count(t.bind2()) ? std::optional<TargetType>(ctx[t.bind2()]) : std::nullopt});
        ctx[t.bind1()] = s.left();
        ctx[t.bind2()] = s.right();
        return s;
    }
    void unbind_case(const TargetTerm& t, TypeContext& ctx, const TargetType&) {
        auto [a, b] = saved_.back();
        saved_.pop_back();
        if (b) ctx[t.bind2()] = *b;
        else ctx.erase(t.bind2());
        if (a) ctx[t.bind1()] = *a;
        else ctx.erase(t.bind1());
    }

    const TypeContext& consts_;
    std::vector<std::pair<std::optional<TargetType>, std::optional<TargetType>>> saved_;
};

} // namespace detail

// Checks t against want (or infers when want is empty); throws TypeError
// with the path to the offending subterm.
inline TargetType typecheck_target(const TargetTerm& t, const TypeContext& ctx, const TargetType& want = {},
                                   const TypeContext& constants = {}) {
    TypeContext env = ctx;
    detail::TypeChecker tc(constants);
    if (want.valid()) {
        tc.check(t, want, env, "");
        return want;
    }
    return tc.infer(t, env, "");
}

// ---- the translation ----

// Typing statement of a sequent: (co)variables with their target types and
// the type of the term (bot for commands).
struct CpsJudgement {
    std::vector<std::pair<std::string, TargetType>> context;
    TargetType result;

    TypeContext as_context() const { return TypeContext(context.begin(), context.end()); }
};

inline CpsJudgement cps_sequent(const Sequent& s, const BiasMap& bias) {
    CpsJudgement j;
    std::function<void(const Structure&, Side)> walk = [&](const Structure& st, Side side) {
        if (st.is_leaf()) {
            if (st.tag().empty()) return;
            j.context.push_back({st.tag(), side == Side::Input ? cps_value_type(st.formula(), bias) : cps_context_type(st.formula(), bias)});
            return;
        }
        auto [l, r] = operand_sides(st.conn());
        walk(st.left(), l);
        walk(st.right(), r);
    };
    walk(s.ant, Side::Input);
    walk(s.suc, Side::Output);
    switch (s.focus) {
    case Focus::None: j.result = TargetType::bot(); break;
    case Focus::Right: j.result = cps_value_type(s.suc.formula(), bias); break;
    case Focus::Left: j.result = cps_context_type(s.ant.formula(), bias); break;
    }
    return j;
}

// Focusing steps become applications, mu/comu abstractions, synchronous
// rules pairs and invertible rules case analyses.
inline TargetTerm cps_proof(const FocusedProof& p) {
    const auto& ps = p.premises();
    const Term& t = p.term();
    switch (p.rule()) {
    case FRule::Ax:
    case FRule::CoAx: return TargetTerm::var(t.name());
    case FRule::Mu:
    case FRule::CoMu: return TargetTerm::lam(t.name(), cps_proof(ps[0]));
    case FRule::MuStar: return TargetTerm::app(TargetTerm::var(t.right().name()), cps_proof(ps[0]));
    case FRule::CoMuStar: return TargetTerm::app(TargetTerm::var(t.left().name()), cps_proof(ps[0]));
    case FRule::Structural: return cps_proof(ps[0]);
    case FRule::ShiftRL:
    case FRule::ShiftRR:
    case FRule::ShiftLR:
    case FRule::ShiftLL: return cps_proof(unfold_shifts(p));
    default:
        if (is_invertible_rule(p.rule())) return TargetTerm::case_of(TargetTerm::var(t.name()), t.bind1(), t.bind2(), cps_proof(ps[0]));
        return TargetTerm::pair(cps_proof(ps[0]), cps_proof(ps[1]));
    }
}

// The translation of a source term, read through its focused proof.
inline TargetTerm cps_term(const Term& t, const Sequent& s, const BiasMap& bias) {
    auto p = proof_of_term(s, t, bias);
    if (!p) throw std::invalid_argument("cps_term: " + to_string(t) + " is not a term of " + to_string(s));
    return cps_proof(*p);
}

// ---- lexical semantics ----

struct LexEntry {
    std::string word;
    Formula formula;
    TargetTerm semantics;
};

// Types of the logical and lexical constants at the intuitionistic level.
inline TypeContext default_constants() {
    TypeContext c;
    auto t = [](const std::string& s) { return parse_type(s); };
    for (auto q : {"forall", "exists"}) c[q] = t("(e -> t) -> t");
    for (auto b : {"and", "implies", "or"}) c[b] = t("t -> t -> t");
    for (auto p : {"person", "unicorn", "man", "woman"}) c[p] = t("e -> t");
    for (auto r : {"likes", "finds", "find", "loves", "sees"}) c[r] = t("e -> e -> t");
    for (auto r : {"needs", "need", "seeks", "seek"}) c[r] = t("((e -> t) -> t) -> e -> t");
    return c;
}

// Lexical type of a word used with the given formula: its value type
// pushed through the second mapping.
inline TargetType lexical_type(const Formula& f, const BiasMap& bias, const LexTypeMap& m = {}) {
    return lex_type(cps_value_type(f, bias), m);
}

// Substitutes the recipes for the free variables they name and normalizes.
inline TargetTerm substitute_and_normalize(const TargetTerm& t, const std::map<std::string, TargetTerm>& recipes,
                                           std::size_t budget = 1000000) {
    std::multiset<std::string> free;
    target_free_vars(t, free);
    for (auto& n : free)
        if (!recipes.count(n)) throw std::invalid_argument("substitute_and_normalize: no recipe for " + n);
    return normalize(substitute(t, recipes), budget);
}

inline TargetTerm substitute_and_normalize(const TargetTerm& t, const std::vector<std::string>& tags, const std::vector<LexEntry>& lex,
                                           std::size_t budget = 1000000) {
    if (tags.size() != lex.size()) throw std::invalid_argument("substitute_and_normalize: tag and lexicon sizes differ");
    std::map<std::string, TargetTerm> recipes;
    for (std::size_t i = 0; i < tags.size(); ++i) recipes[tags[i]] = lex[i].semantics;
    return substitute_and_normalize(t, recipes, budget);
}

} // namespace lg
