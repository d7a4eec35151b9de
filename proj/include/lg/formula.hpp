#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace lg {

// Binary connectives. Operands are always stored in print order, so
// Under(B,A) prints as B\A and LDiff(B,A) as B(\)A.
enum class Conn { Prod, Under, Over, Coprod, RDiff, LDiff };

enum class Polarity { Positive, Negative };

inline const char* ascii_token(Conn c) {
    switch (c) {
    case Conn::Prod: return "*";
    case Conn::Under: return "\\";
    case Conn::Over: return "/";
    case Conn::Coprod: return "(+)";
    case Conn::RDiff: return "(/)";
    case Conn::LDiff: return "(\\)";
    }
    return "?";
}

inline const char* unicode_token(Conn c) {
    switch (c) {
    case Conn::Prod: return "⊗";
    case Conn::Under: return "\\";
    case Conn::Over: return "/";
    case Conn::Coprod: return "⊕";
    case Conn::RDiff: return "⊘";
    case Conn::LDiff: return "⊘̸";
    }
    return "?";
}

inline const char* conn_name(Conn c) {
    switch (c) {
    case Conn::Prod: return "prod";
    case Conn::Under: return "under";
    case Conn::Over: return "over";
    case Conn::Coprod: return "coprod";
    case Conn::RDiff: return "rdiff";
    case Conn::LDiff: return "ldiff";
    }
    return "?";
}

// The product family {*, \, /} versus the coproduct family {(+), (/), (\)}.
inline bool lambek_family(Conn c) { return c == Conn::Prod || c == Conn::Under || c == Conn::Over; }

// Connectives whose left rule is invertible.
inline bool positive_conn(Conn c) { return c == Conn::Prod || c == Conn::RDiff || c == Conn::LDiff; }

class Formula {
public:
    struct Node {
        bool atomic = true;
        std::string atom;
        Conn conn = Conn::Prod;
        std::shared_ptr<const Node> left, right;
        std::size_t size = 1;
        std::size_t hash = 0;
    };

    Formula() = default;

    static Formula atom(const std::string& name) {
        auto n = std::make_shared<Node>();
        n->atomic = true;
        n->atom = name;
        n->hash = std::hash<std::string>{}(name);
        return Formula(std::move(n));
    }
    static Formula binary(Conn c, Formula l, Formula r) {
        auto n = std::make_shared<Node>();
        n->atomic = false;
        n->conn = c;
        n->size = 1 + l.size() + r.size();
        n->hash = (l.hash() * 1000003u) ^ (r.hash() * 9176u + 0x9e3779b9u) ^ (static_cast<std::size_t>(c) + 1) * 7919u;
        n->left = std::move(l.n_);
        n->right = std::move(r.n_);
        return Formula(std::move(n));
    }

    bool valid() const { return static_cast<bool>(n_); }
    bool is_atom() const { return n_->atomic; }
    const std::string& name() const { return n_->atom; }
    Conn conn() const { return n_->conn; }
    Formula left() const { return Formula(n_->left); }
    Formula right() const { return Formula(n_->right); }
    bool is(Conn c) const { return !n_->atomic && n_->conn == c; }
    // Number of nodes; connective count is (size-1)/2.
    std::size_t size() const { return n_ ? n_->size : 0; }
    std::size_t connectives() const { return n_ ? (n_->size - 1) / 2 : 0; }
    std::size_t hash() const { return n_ ? n_->hash : 0; }

    friend bool operator==(const Formula& a, const Formula& b) {
        if (a.n_ == b.n_) return true;
        if (!a.n_ || !b.n_) return false;
        if (a.n_->hash != b.n_->hash || a.n_->size != b.n_->size) return false;
        if (a.n_->atomic != b.n_->atomic) return false;
        if (a.n_->atomic) return a.n_->atom == b.n_->atom;
        return a.n_->conn == b.n_->conn && a.left() == b.left() && a.right() == b.right();
    }
    friend bool operator!=(const Formula& a, const Formula& b) { return !(a == b); }
    friend bool operator<(const Formula& a, const Formula& b) { return compare(a, b) < 0; }

    static int compare(const Formula& a, const Formula& b) {
        if (a.n_ == b.n_) return 0;
        if (!a.n_) return -1;
        if (!b.n_) return 1;
        if (a.n_->atomic != b.n_->atomic) return a.n_->atomic ? -1 : 1;
        if (a.n_->atomic) return a.n_->atom.compare(b.n_->atom);
        if (a.n_->conn != b.n_->conn) return a.n_->conn < b.n_->conn ? -1 : 1;
        int l = compare(a.left(), b.left());
        return l != 0 ? l : compare(a.right(), b.right());
    }

private:
    explicit Formula(std::shared_ptr<const Node> n) : n_(std::move(n)) {}
    std::shared_ptr<const Node> n_;
};

inline Formula atom(const std::string& n) { return Formula::atom(n); }
inline Formula prod(Formula a, Formula b) { return Formula::binary(Conn::Prod, std::move(a), std::move(b)); }
inline Formula under(Formula b, Formula a) { return Formula::binary(Conn::Under, std::move(b), std::move(a)); }
inline Formula over(Formula a, Formula b) { return Formula::binary(Conn::Over, std::move(a), std::move(b)); }
inline Formula coprod(Formula a, Formula b) { return Formula::binary(Conn::Coprod, std::move(a), std::move(b)); }
inline Formula rdiff(Formula a, Formula b) { return Formula::binary(Conn::RDiff, std::move(a), std::move(b)); }
inline Formula ldiff(Formula b, Formula a) { return Formula::binary(Conn::LDiff, std::move(b), std::move(a)); }

struct FormulaHash {
    std::size_t operator()(const Formula& f) const { return f.hash(); }
};

inline void print_formula(const Formula& f, std::string& out, bool unicode, bool top) {
    if (f.is_atom()) {
        out += f.name();
        return;
    }
    if (!top) out += '(';
    print_formula(f.left(), out, unicode, false);
    if (unicode) {
        out += unicode_token(f.conn());
    } else {
        out += ascii_token(f.conn());
    }
    print_formula(f.right(), out, unicode, false);
    if (!top) out += ')';
}

inline std::string to_string(const Formula& f) {
    std::string s;
    print_formula(f, s, false, true);
    return s;
}

inline std::string to_unicode(const Formula& f) {
    std::string s;
    print_formula(f, s, true, true);
    return s;
}

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& msg, std::size_t pos)
        : std::runtime_error(msg + " at position " + std::to_string(pos)), msg_(msg), pos_(pos) {}
    std::size_t position() const { return pos_; }
    const std::string& message() const { return msg_; }

private:
    std::string msg_;
    std::size_t pos_;
};

inline bool atom_start(char c) { return c >= 'a' && c <= 'z'; }
inline bool atom_char(char c) { return atom_start(c) || (c >= '0' && c <= '9') || c == '_'; }

inline bool valid_atom_name(const std::string& s) {
    if (s.empty() || !atom_start(s[0])) return false;
    for (char c : s)
        if (!atom_char(c)) return false;
    return true;
}

namespace detail {

// Shared cursor for the formula, structure and sequent grammars.
struct Cursor {
    const std::string& text;
    std::size_t pos = 0;

    explicit Cursor(const std::string& t) : text(t) {}

    void skip_ws() {
        while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t' || text[pos] == '\n' || text[pos] == '\r')) ++pos;
    }
    bool at_end() {
        skip_ws();
        return pos >= text.size();
    }
    bool starts_with(const std::string& tok) {
        skip_ws();
        return text.compare(pos, tok.size(), tok) == 0;
    }
    bool accept(const std::string& tok) {
        if (starts_with(tok)) {
            pos += tok.size();
            return true;
        }
        return false;
    }
    void expect(const std::string& tok) {
        if (!accept(tok)) fail("expected '" + tok + "'");
    }
    [[noreturn]] void fail(const std::string& msg) { throw ParseError(msg, pos); }

    std::string identifier() {
        skip_ws();
        std::size_t start = pos;
        if (pos >= text.size() || !atom_start(text[pos])) fail("expected identifier");
        while (pos < text.size() && atom_char(text[pos])) ++pos;
        return text.substr(start, pos - start);
    }
};

// Binary formula operators; circled tokens are tried before the plain ones.
inline std::optional<Conn> formula_op(Cursor& c) {
    static const std::pair<const char*, Conn> ops[] = {
        {"(+)", Conn::Coprod}, {"(/)", Conn::RDiff}, {"(\\)", Conn::LDiff},
        {"⊗", Conn::Prod}, {"⊕", Conn::Coprod}, {"⊘̸", Conn::LDiff}, {"⊘", Conn::RDiff},
        {"*", Conn::Prod}, {"\\", Conn::Under}, {"/", Conn::Over},
    };
    c.skip_ws();
    for (auto& [tok, conn] : ops) {
        if (c.accept(tok)) return conn;
    }
    return std::nullopt;
}

inline Formula parse_form(Cursor& c);

inline Formula parse_primary(Cursor& c) {
    c.skip_ws();
    if (c.pos >= c.text.size()) c.fail("unexpected end of input");
    if (c.starts_with("(+)") || c.starts_with("(/)") || c.starts_with("(\\)")) c.fail("operator without left operand");
    if (c.accept("(")) {
        Formula f = parse_form(c);
        c.expect(")");
        return f;
    }
    if (atom_start(c.text[c.pos])) return atom(c.identifier());
    c.fail(std::string("unexpected character '") + c.text[c.pos] + "'");
}

inline Formula parse_form(Cursor& c) {
    Formula l = parse_primary(c);
    std::size_t before = c.pos;
    auto op = formula_op(c);
    if (!op) {
        c.pos = before;
        return l;
    }
    Formula r = parse_primary(c);
    std::size_t after = c.pos;
    c.skip_ws();
    std::size_t save = c.pos;
    if (formula_op(c)) {
        c.pos = save;
        c.fail("operators are non-associative; parenthesize");
    }
    c.pos = after;
    return Formula::binary(*op, std::move(l), std::move(r));
}

} // namespace detail

inline Formula parse_formula(const std::string& text) {
    detail::Cursor c(text);
    Formula f = detail::parse_form(c);
    if (!c.at_end()) c.fail("trailing input");
    return f;
}

// Left-right symmetry.
inline Formula mirror(const Formula& f) {
    if (f.is_atom()) return f;
    Formula l = mirror(f.left()), r = mirror(f.right());
    switch (f.conn()) {
    case Conn::Prod: return prod(r, l);
    case Conn::Coprod: return coprod(r, l);
    case Conn::Over: return under(r, l);   // A/B -> B\A
    case Conn::Under: return over(r, l);   // B\A -> A/B
    case Conn::RDiff: return ldiff(r, l);  // A(/)B -> B(\)A
    case Conn::LDiff: return rdiff(r, l);  // B(\)A -> A(/)B
    }
    return f;
}

// Arrow-reversing symmetry.
inline Formula dual(const Formula& f) {
    if (f.is_atom()) return f;
    Formula l = dual(f.left()), r = dual(f.right());
    switch (f.conn()) {
    case Conn::Prod: return coprod(r, l);  // A*B -> B(+)A
    case Conn::Coprod: return prod(r, l);  // A(+)B -> B*A
    case Conn::Over: return ldiff(r, l);   // A/B -> B(\)A
    case Conn::LDiff: return over(r, l);   // B(\)A -> A/B
    case Conn::Under: return rdiff(r, l);  // B\A -> A(/)B
    case Conn::RDiff: return under(r, l);  // A(/)B -> B\A
    }
    return f;
}

class BiasMap {
public:
    BiasMap() = default;
    explicit BiasMap(Polarity def) : default_(def) {}

    Polarity of(const std::string& atom) const {
        auto it = overrides_.find(atom);
        return it == overrides_.end() ? default_ : it->second;
    }
    void set(const std::string& atom, Polarity p) { overrides_[atom] = p; }
    Polarity default_polarity() const { return default_; }
    void set_default(Polarity p) { default_ = p; }
    const std::map<std::string, Polarity>& overrides() const { return overrides_; }

    // Parses "np=+,s=-"; a bare "+" or "-" entry sets the default.
    static BiasMap parse(const std::string& text, Polarity def = Polarity::Negative) {
        BiasMap b(def);
        std::size_t i = 0;
        while (i < text.size()) {
            std::size_t j = text.find(',', i);
            if (j == std::string::npos) j = text.size();
            std::string item = text.substr(i, j - i);
            while (!item.empty() && item.front() == ' ') item.erase(item.begin());
            while (!item.empty() && item.back() == ' ') item.pop_back();
            if (!item.empty()) {
                auto eq = item.find('=');
                std::string name = eq == std::string::npos ? "" : item.substr(0, eq);
                std::string val = eq == std::string::npos ? item : item.substr(eq + 1);
                Polarity p;
                if (val == "+" || val == "pos" || val == "positive") {
                    p = Polarity::Positive;
                } else if (val == "-" || val == "neg" || val == "negative") {
                    p = Polarity::Negative;
                } else {
                    throw ParseError("bad polarity '" + val + "'", i);
                }
                if (name.empty() || name == "*") {
                    b.set_default(p);
                } else {
                    if (!valid_atom_name(name)) throw ParseError("bad atom '" + name + "'", i);
                    b.set(name, p);
                }
            }
            i = j + 1;
        }
        return b;
    }

    std::string to_string() const {
        std::string s = default_ == Polarity::Positive ? "+" : "-";
        for (auto& [k, v] : overrides_) s += "," + k + (v == Polarity::Positive ? "=+" : "=-");
        return s;
    }

private:
    Polarity default_ = Polarity::Negative;
    std::map<std::string, Polarity> overrides_;
};

inline Polarity polarity(const Formula& f, const BiasMap& bias) {
    if (f.is_atom()) return bias.of(f.name());
    return positive_conn(f.conn()) ? Polarity::Positive : Polarity::Negative;
}

inline bool is_positive(const Formula& f, const BiasMap& bias) { return polarity(f, bias) == Polarity::Positive; }

inline void collect_atoms(const Formula& f, std::vector<std::string>& out) {
    if (f.is_atom()) {
        out.push_back(f.name());
        return;
    }
    collect_atoms(f.left(), out);
    collect_atoms(f.right(), out);
}

} // namespace lg

template <>
struct std::hash<lg::Formula> {
    std::size_t operator()(const lg::Formula& f) const { return f.hash(); }
};
