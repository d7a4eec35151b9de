#pragma once

#include "lg/formula.hpp"

namespace lg {

// A structure is a leaf formula (optionally tagged with a (co)variable
// name) or a structural connective over two substructures.
class Structure {
public:
    struct Node {
        bool leaf = true;
        Formula formula;
        std::string tag;
        Conn conn = Conn::Prod;
        std::shared_ptr<const Node> left, right;
        std::size_t hash = 0;
        std::size_t leaves = 1;
    };

    Structure() = default;

    static Structure leaf(Formula f, std::string tag = {}) {
        auto n = std::make_shared<Node>();
        n->leaf = true;
        n->hash = f.hash() * 31u + std::hash<std::string>{}(tag);
        n->formula = std::move(f);
        n->tag = std::move(tag);
        return Structure(std::move(n));
    }
    static Structure binary(Conn c, Structure l, Structure r) {
        auto n = std::make_shared<Node>();
        n->leaf = false;
        n->conn = c;
        n->hash = (l.hash() * 1000033u) ^ (r.hash() * 7001u + 0x7f4a7c15u) ^ (static_cast<std::size_t>(c) + 11) * 104729u;
        n->leaves = l.leaf_count() + r.leaf_count();
        n->left = std::move(l.n_);
        n->right = std::move(r.n_);
        return Structure(std::move(n));
    }

    bool valid() const { return static_cast<bool>(n_); }
    bool is_leaf() const { return n_->leaf; }
    const Formula& formula() const { return n_->formula; }
    const std::string& tag() const { return n_->tag; }
    Conn conn() const { return n_->conn; }
    Structure left() const { return Structure(n_->left); }
    Structure right() const { return Structure(n_->right); }
    bool is(Conn c) const { return !n_->leaf && n_->conn == c; }
    std::size_t hash() const { return n_ ? n_->hash : 0; }
    std::size_t leaf_count() const { return n_ ? n_->leaves : 0; }

    friend bool operator==(const Structure& a, const Structure& b) {
        if (a.n_ == b.n_) return true;
        if (!a.n_ || !b.n_) return false;
        if (a.n_->hash != b.n_->hash || a.n_->leaf != b.n_->leaf) return false;
        if (a.n_->leaf) return a.n_->formula == b.n_->formula && a.n_->tag == b.n_->tag;
        return a.n_->conn == b.n_->conn && a.left() == b.left() && a.right() == b.right();
    }
    friend bool operator!=(const Structure& a, const Structure& b) { return !(a == b); }

private:
    explicit Structure(std::shared_ptr<const Node> n) : n_(std::move(n)) {}
    std::shared_ptr<const Node> n_;
};

inline Structure leaf(Formula f, std::string tag = {}) { return Structure::leaf(std::move(f), std::move(tag)); }
inline Structure sprod(Structure a, Structure b) { return Structure::binary(Conn::Prod, std::move(a), std::move(b)); }
inline Structure sunder(Structure a, Structure b) { return Structure::binary(Conn::Under, std::move(a), std::move(b)); }
inline Structure sover(Structure a, Structure b) { return Structure::binary(Conn::Over, std::move(a), std::move(b)); }
inline Structure scoprod(Structure a, Structure b) { return Structure::binary(Conn::Coprod, std::move(a), std::move(b)); }
inline Structure srdiff(Structure a, Structure b) { return Structure::binary(Conn::RDiff, std::move(a), std::move(b)); }
inline Structure sldiff(Structure a, Structure b) { return Structure::binary(Conn::LDiff, std::move(a), std::move(b)); }

enum class Side { Input, Output };

inline Side flip(Side s) { return s == Side::Input ? Side::Output : Side::Input; }

// Expected sides of the two operands of a structural connective.
inline std::pair<Side, Side> operand_sides(Conn c) {
    switch (c) {
    case Conn::Prod: return {Side::Input, Side::Input};
    case Conn::RDiff: return {Side::Input, Side::Output};
    case Conn::LDiff: return {Side::Output, Side::Input};
    case Conn::Coprod: return {Side::Output, Side::Output};
    case Conn::Under: return {Side::Input, Side::Output};
    case Conn::Over: return {Side::Output, Side::Input};
    }
    return {Side::Input, Side::Input};
}

inline Side conn_side(Conn c) { return positive_conn(c) ? Side::Input : Side::Output; }

// Input: F | I.*.I | I.(/).O | O.(\).I ; output: F | O.(+).O | I.\.O | O./.I
inline bool validate_structure(const Structure& s, Side side) {
    if (!s.valid()) return false;
    if (s.is_leaf()) return s.formula().valid();
    if (conn_side(s.conn()) != side) return false;
    auto [l, r] = operand_sides(s.conn());
    return validate_structure(s.left(), l) && validate_structure(s.right(), r);
}

class StructureError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline Formula structure_to_formula(const Structure& s) {
    if (s.is_leaf()) return s.formula();
    return Formula::binary(s.conn(), structure_to_formula(s.left()), structure_to_formula(s.right()));
}

inline Formula structure_to_formula(const Structure& s, Side side) {
    if (!validate_structure(s, side)) throw StructureError("invalid structure for its side");
    return structure_to_formula(s);
}

inline void collect_leaves(const Structure& s, std::vector<Structure>& out) {
    if (s.is_leaf()) {
        out.push_back(s);
        return;
    }
    collect_leaves(s.left(), out);
    collect_leaves(s.right(), out);
}

inline std::size_t structure_connectives(const Structure& s) {
    if (s.is_leaf()) return s.formula().connectives();
    return structure_connectives(s.left()) + structure_connectives(s.right());
}

inline void print_structure(const Structure& s, std::string& out, bool unicode, bool top) {
    if (s.is_leaf()) {
        if (!s.tag().empty()) out += s.tag() + ":";
        bool paren = !s.formula().is_atom() && (!top || !s.tag().empty());
        if (paren) out += '(';
        print_formula(s.formula(), out, unicode, true);
        if (paren) out += ')';
        return;
    }
    if (!top) out += '(';
    print_structure(s.left(), out, unicode, false);
    if (unicode) {
        out += " ·";
        out += unicode_token(s.conn());
        out += "· ";
    } else {
        out += " .";
        out += ascii_token(s.conn());
        out += ". ";
    }
    print_structure(s.right(), out, unicode, false);
    if (!top) out += ')';
}

inline std::string to_string(const Structure& s) {
    std::string o;
    print_structure(s, o, false, true);
    return o;
}

inline std::string to_unicode(const Structure& s) {
    std::string o;
    print_structure(s, o, true, true);
    return o;
}

enum class Focus { None, Left, Right };

struct Sequent {
    Structure ant;
    Structure suc;
    Focus focus = Focus::None;

    Sequent() = default;
    Sequent(Structure a, Structure s, Focus f = Focus::None) : ant(std::move(a)), suc(std::move(s)), focus(f) {}

    friend bool operator==(const Sequent& a, const Sequent& b) {
        return a.focus == b.focus && a.ant == b.ant && a.suc == b.suc;
    }
    friend bool operator!=(const Sequent& a, const Sequent& b) { return !(a == b); }
    std::size_t hash() const { return ant.hash() * 1315423911u ^ (suc.hash() + static_cast<std::size_t>(focus)); }
};

struct SequentHash {
    std::size_t operator()(const Sequent& s) const { return s.hash(); }
};

inline bool validate_sequent(const Sequent& s) {
    if (!validate_structure(s.ant, Side::Input) || !validate_structure(s.suc, Side::Output)) return false;
    if (s.focus == Focus::Left && !s.ant.is_leaf()) return false;
    if (s.focus == Focus::Right && !s.suc.is_leaf()) return false;
    return true;
}

inline std::string to_string(const Sequent& s) {
    std::string a = to_string(s.ant), b = to_string(s.suc);
    if (s.focus == Focus::Left) a = "[" + a + "]";
    if (s.focus == Focus::Right) b = "[" + b + "]";
    return a + " |- " + b;
}

inline std::string to_unicode(const Sequent& s) {
    std::string a = to_unicode(s.ant), b = to_unicode(s.suc);
    if (s.focus == Focus::Left) a = "[" + a + "]";
    if (s.focus == Focus::Right) b = "[" + b + "]";
    return a + " ⊢ " + b;
}

namespace detail {

// Either a formula (no structural connective yet) or a structure.
struct Mixed {
    std::optional<Formula> formula;
    std::optional<Structure> structure;
    Structure as_structure() const { return structure ? *structure : leaf(*formula); }
};

inline std::optional<Conn> structural_op(Cursor& c) {
    static const std::pair<const char*, Conn> ops[] = {
        {".(+).", Conn::Coprod}, {".(/).", Conn::RDiff}, {".(\\).", Conn::LDiff},
        {".*.", Conn::Prod}, {".\\.", Conn::Under}, {"./.", Conn::Over},
        {"·⊗·", Conn::Prod}, {"·⊕·", Conn::Coprod}, {"·⊘̸·", Conn::LDiff}, {"·⊘·", Conn::RDiff},
        {"·\\·", Conn::Under}, {"·/·", Conn::Over},
    };
    c.skip_ws();
    for (auto& [tok, conn] : ops)
        if (c.accept(tok)) return conn;
    return std::nullopt;
}

inline Mixed parse_mixed(Cursor& c);

inline Mixed parse_mixed_primary(Cursor& c) {
    c.skip_ws();
    if (c.pos >= c.text.size()) c.fail("unexpected end of input");
    if (c.starts_with("(+)") || c.starts_with("(/)") || c.starts_with("(\\)")) c.fail("operator without left operand");
    if (c.accept("(")) {
        Mixed m = parse_mixed(c);
        c.expect(")");
        return m;
    }
    if (!atom_start(c.text[c.pos])) c.fail(std::string("unexpected character '") + c.text[c.pos] + "'");
    std::string id = c.identifier();
    std::size_t save = c.pos;
    c.skip_ws();
    if (c.pos < c.text.size() && c.text[c.pos] == ':') {
        ++c.pos;
        std::size_t fpos = c.pos;
        Mixed inner = parse_mixed_primary(c);
        if (!inner.formula) {
            c.pos = fpos;
            c.fail("tag must label a formula");
        }
        Mixed m;
        m.structure = leaf(*inner.formula, id);
        return m;
    }
    c.pos = save;
    Mixed m;
    m.formula = atom(id);
    return m;
}

// Logical connectives bind tighter than structural ones, so
// "np/n .*. n" reads as (np/n) .*. n.
inline Mixed parse_logical(Cursor& c) {
    Mixed l = parse_mixed_primary(c);
    std::size_t before = c.pos;
    if (structural_op(c)) {
        c.pos = before;
        return l;
    }
    c.pos = before;
    std::optional<Conn> op = formula_op(c);
    if (!op) {
        c.pos = before;
        return l;
    }
    std::size_t rpos = c.pos;
    Mixed r = parse_mixed_primary(c);
    std::size_t after = c.pos;
    c.skip_ws();
    std::size_t save = c.pos;
    if (!structural_op(c)) {
        c.pos = save;
        if (formula_op(c)) {
            c.pos = save;
            c.fail("operators are non-associative; parenthesize");
        }
    }
    c.pos = after;
    if (!l.formula || !r.formula) {
        c.pos = rpos;
        c.fail("logical connective applied to a structure");
    }
    Mixed m;
    m.formula = Formula::binary(*op, *l.formula, *r.formula);
    return m;
}

inline Mixed parse_mixed(Cursor& c) {
    Mixed l = parse_logical(c);
    std::size_t before = c.pos;
    std::optional<Conn> op = structural_op(c);
    if (!op) {
        c.pos = before;
        return l;
    }
    Mixed r = parse_logical(c);
    std::size_t after = c.pos;
    c.skip_ws();
    std::size_t save = c.pos;
    if (structural_op(c)) {
        c.pos = save;
        c.fail("structural operators are non-associative; parenthesize");
    }
    c.pos = after;
    Mixed m;
    m.structure = Structure::binary(*op, l.as_structure(), r.as_structure());
    return m;
}

} // namespace detail

inline Structure parse_structure(const std::string& text) {
    detail::Cursor c(text);
    detail::Mixed m = detail::parse_mixed(c);
    if (!c.at_end()) c.fail("trailing input");
    return m.as_structure();
}

// Parses "X |- Y" (or with the unicode turnstile). Both sides are checked
// against the input/output grammar.
inline Sequent parse_sequent(const std::string& text) {
    std::size_t p = text.find("|-");
    std::size_t len = 2;
    if (p == std::string::npos) {
        p = text.find("⊢");
        len = std::string("⊢").size();
    }
    if (p == std::string::npos) throw ParseError("expected '|-'", text.size());
    std::string lhs = text.substr(0, p), rhs = text.substr(p + len);
    // A bracketed side "[A]" is the formula in focus.
    auto strip_focus = [](std::string& side) {
        std::size_t i = side.find_first_not_of(" \t"), j = side.find_last_not_of(" \t");
        if (i == std::string::npos || side[i] != '[' || side[j] != ']') return false;
        side = side.substr(i + 1, j - i - 1);
        return true;
    };
    Focus focus = Focus::None;
    if (strip_focus(lhs)) focus = Focus::Left;
    if (strip_focus(rhs)) {
        if (focus != Focus::None) throw ParseError("at most one side can be in focus", p);
        focus = Focus::Right;
    }
    Structure a, b;
    try {
        a = parse_structure(lhs);
    } catch (const ParseError& e) {
        throw ParseError("antecedent: " + e.message(), e.position());
    }
    try {
        b = parse_structure(rhs);
    } catch (const ParseError& e) {
        throw ParseError("succedent: " + e.message(), p + len + e.position());
    }
    if (!validate_structure(a, Side::Input)) throw ParseError("antecedent is not an input structure", 0);
    if (!validate_structure(b, Side::Output)) throw ParseError("succedent is not an output structure", p + len);
    if (focus == Focus::Left && !a.is_leaf()) throw ParseError("focused antecedent must be a formula", 0);
    if (focus == Focus::Right && !b.is_leaf()) throw ParseError("focused succedent must be a formula", p + len);
    return Sequent(a, b, focus);
}

} // namespace lg
