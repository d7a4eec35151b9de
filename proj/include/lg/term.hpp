#pragma once

#include "lg/formula.hpp"

#include <set>

namespace lg {

// Proof terms of the focused calculus. Values and contexts share one node
// type; the sort of a pair follows from its connective.
enum class TermKind { Var, CoVar, Mu, CoMu, Pair, Cmd, Case };

enum class Sort { Value, Context, Command };

// Positive connectives build values, negative ones contexts.
inline Sort pair_sort(Conn c) { return positive_conn(c) ? Sort::Value : Sort::Context; }

// Sorts of a pair's two components in print order.
inline std::pair<Sort, Sort> pair_component_sorts(Conn c) {
    switch (c) {
    case Conn::Prod: return {Sort::Value, Sort::Value};
    case Conn::RDiff: return {Sort::Value, Sort::Context};
    case Conn::LDiff: return {Sort::Context, Sort::Value};
    case Conn::Coprod: return {Sort::Context, Sort::Context};
    case Conn::Under: return {Sort::Value, Sort::Context};
    case Conn::Over: return {Sort::Context, Sort::Value};
    }
    return {Sort::Value, Sort::Value};
}

// Sorts of the two names a case binds (variable = Value, covariable =
// Context) and of its scrutinee.
struct CaseSorts {
    Sort first, second, scrutinee;
};

inline CaseSorts case_sorts(Conn c) {
    switch (c) {
    case Conn::Prod: return {Sort::Value, Sort::Value, Sort::Value};
    case Conn::RDiff: return {Sort::Value, Sort::Context, Sort::Value};
    case Conn::LDiff: return {Sort::Context, Sort::Value, Sort::Value};
    case Conn::Coprod: return {Sort::Context, Sort::Context, Sort::Context};
    case Conn::Under: return {Sort::Value, Sort::Context, Sort::Context};
    case Conn::Over: return {Sort::Context, Sort::Value, Sort::Context};
    }
    return {Sort::Value, Sort::Value, Sort::Value};
}

class Term {
public:
    struct Node {
        TermKind kind = TermKind::Var;
        Conn conn = Conn::Prod;
        std::string name;           // Var/CoVar name, Mu/CoMu binder, Case scrutinee
        std::string bind1, bind2;   // Case binders
        std::shared_ptr<const Node> a, b;
    };

    Term() = default;

    static Term var(std::string x) { return make(TermKind::Var, Conn::Prod, std::move(x), {}, {}, {}, {}); }
    static Term covar(std::string a) { return make(TermKind::CoVar, Conn::Prod, std::move(a), {}, {}, {}, {}); }
    static Term mu(std::string a, Term c) { return make(TermKind::Mu, Conn::Prod, std::move(a), {}, {}, c.n_, {}); }
    static Term comu(std::string x, Term c) { return make(TermKind::CoMu, Conn::Prod, std::move(x), {}, {}, c.n_, {}); }
    static Term pair(Conn k, Term l, Term r) { return make(TermKind::Pair, k, {}, {}, {}, l.n_, r.n_); }
    static Term cmd(Term v, Term e) { return make(TermKind::Cmd, Conn::Prod, {}, {}, {}, v.n_, e.n_); }
    static Term case_of(Conn k, std::string first, std::string second, std::string scrutinee, Term body) {
        return make(TermKind::Case, k, std::move(scrutinee), std::move(first), std::move(second), body.n_, {});
    }

    bool valid() const { return static_cast<bool>(n_); }
    TermKind kind() const { return n_->kind; }
    Conn conn() const { return n_->conn; }
    const std::string& name() const { return n_->name; }
    const std::string& bind1() const { return n_->bind1; }
    const std::string& bind2() const { return n_->bind2; }
    Term body() const { return Term(n_->a); }      // Mu, CoMu, Case
    Term left() const { return Term(n_->a); }      // Pair, Cmd (the value)
    Term right() const { return Term(n_->b); }     // Pair, Cmd (the context)

    Sort sort() const {
        switch (n_->kind) {
        case TermKind::Var:
        case TermKind::Mu: return Sort::Value;
        case TermKind::CoVar:
        case TermKind::CoMu: return Sort::Context;
        case TermKind::Pair: return pair_sort(n_->conn);
        default: return Sort::Command;
        }
    }

    friend bool operator==(const Term& x, const Term& y) {
        if (x.n_ == y.n_) return true;
        if (!x.n_ || !y.n_) return false;
        const Node &p = *x.n_, &q = *y.n_;
        return p.kind == q.kind && p.conn == q.conn && p.name == q.name && p.bind1 == q.bind1 && p.bind2 == q.bind2 &&
               Term(p.a) == Term(q.a) && Term(p.b) == Term(q.b);
    }
    friend bool operator!=(const Term& x, const Term& y) { return !(x == y); }

private:
    explicit Term(std::shared_ptr<const Node> n) : n_(std::move(n)) {}
    static Term make(TermKind k, Conn c, std::string name, std::string b1, std::string b2, std::shared_ptr<const Node> a,
                     std::shared_ptr<const Node> b) {
        auto n = std::make_shared<Node>();
        n->kind = k;
        n->conn = c;
        n->name = std::move(name);
        n->bind1 = std::move(b1);
        n->bind2 = std::move(b2);
        n->a = std::move(a);
        n->b = std::move(b);
        return Term(std::move(n));
    }
    std::shared_ptr<const Node> n_;
};

// ---- printing ----

namespace detail {

inline void print_term(const Term& t, std::string& out, bool unicode) {
    switch (t.kind()) {
    case TermKind::Var:
    case TermKind::CoVar: out += t.name(); return;
    case TermKind::Mu:
    case TermKind::CoMu:
        if (unicode) out += t.kind() == TermKind::Mu ? "μ" : "μ̃";
        else out += t.kind() == TermKind::Mu ? "mu " : "comu ";
        out += t.name() + ". ";
        print_term(t.body(), out, unicode);
        return;
    case TermKind::Pair:
        out += "(";
        print_term(t.left(), out, unicode);
        out += std::string(" ") + (unicode ? unicode_token(t.conn()) : ascii_token(t.conn())) + " ";
        print_term(t.right(), out, unicode);
        out += ")";
        return;
    case TermKind::Cmd:
        out += unicode ? "⟨" : "<";
        print_term(t.left(), out, unicode);
        out += " | ";
        print_term(t.right(), out, unicode);
        out += unicode ? "⟩" : ">";
        return;
    case TermKind::Case:
        out += "case " + t.name() + " of (" + t.bind1() + " " + (unicode ? unicode_token(t.conn()) : ascii_token(t.conn())) +
               " " + t.bind2() + "). ";
        print_term(t.body(), out, unicode);
        return;
    }
}

} // namespace detail

inline std::string to_string(const Term& t) {
    std::string s;
    detail::print_term(t, s, false);
    return s;
}

inline std::string to_unicode(const Term& t) {
    std::string s;
    detail::print_term(t, s, true);
    return s;
}

// ---- parsing ----

namespace detail {

inline Term parse_term_at(Cursor& c, Sort want);
inline Term coerce(Cursor& c, const Term& t, Sort s);

inline std::string term_name(Cursor& c) {
    c.skip_ws();
    std::string id = c.identifier();
    if (id.empty()) c.fail("expected a name");
    return id;
}

inline Term parse_command(Cursor& c) {
    c.skip_ws();
    if (c.accept("<")) {
        Term v = parse_term_at(c, Sort::Value);
        c.expect("|");
        Term e = parse_term_at(c, Sort::Context);
        c.expect(">");
        return Term::cmd(v, e);
    }
    std::size_t save = c.pos;
    std::string kw = c.identifier();
    if (kw != "case") {
        c.pos = save;
        c.fail("expected a command");
    }
    std::string z = term_name(c);
    if (term_name(c) != "of") c.fail("expected 'of'");
    c.expect("(");
    std::string x = term_name(c);
    auto op = formula_op(c);
    if (!op) c.fail("expected a connective");
    std::string y = term_name(c);
    c.expect(")");
    c.expect(".");
    return Term::case_of(*op, x, y, z, parse_command(c));
}

// Names parse as variables until their position fixes the sort.
inline Term parse_any(Cursor& c) {
    c.skip_ws();
    if (c.accept("(")) {
        Term l = parse_any(c);
        auto op = formula_op(c);
        if (!op) c.fail("expected a connective");
        Term r = parse_any(c);
        c.expect(")");
        auto [ls, rs] = pair_component_sorts(*op);
        return Term::pair(*op, coerce(c, l, ls), coerce(c, r, rs));
    }
    std::string id = c.identifier();
    if (id == "mu" || id == "comu") {
        std::string a = term_name(c);
        c.expect(".");
        Term body = parse_command(c);
        return id == "mu" ? Term::mu(a, body) : Term::comu(a, body);
    }
    return Term::var(id);
}

inline Term coerce(Cursor& c, const Term& t, Sort s) {
    if (t.kind() == TermKind::Var && s == Sort::Context) return Term::covar(t.name());
    if (t.sort() != s) c.fail(s == Sort::Value ? "expected a value" : "expected a context");
    return t;
}

inline Term parse_term_at(Cursor& c, Sort want) {
    if (want == Sort::Command) return parse_command(c);
    return coerce(c, parse_any(c), want);
}

} // namespace detail

// Reads the ASCII syntax printed by to_string; want selects the sort of the
// whole term.
inline Term parse_term(const std::string& text, Sort want = Sort::Value) {
    detail::Cursor c(text);
    Term t = detail::parse_term_at(c, want);
    c.skip_ws();
    if (c.pos != text.size()) c.fail("trailing input");
    return t;
}

// ---- names ----

inline void free_names(const Term& t, std::multiset<std::string>& out, std::set<std::string> bound = {}) {
    switch (t.kind()) {
    case TermKind::Var:
    case TermKind::CoVar:
        if (!bound.count(t.name())) out.insert(t.name());
        return;
    case TermKind::Mu:
    case TermKind::CoMu:
        bound.insert(t.name());
        free_names(t.body(), out, bound);
        return;
    case TermKind::Pair:
    case TermKind::Cmd:
        free_names(t.left(), out, bound);
        free_names(t.right(), out, bound);
        return;
    case TermKind::Case:
        if (!bound.count(t.name())) out.insert(t.name());
        bound.insert(t.bind1());
        bound.insert(t.bind2());
        free_names(t.body(), out, bound);
        return;
    }
}

// Every bound name occurs exactly once in its scope and no free name occurs
// twice.
inline bool is_linear(const Term& t) {
    std::multiset<std::string> fv;
    free_names(t, fv);
    for (auto& n : fv)
        if (fv.count(n) != 1) return false;
    std::function<bool(const Term&)> walk = [&](const Term& u) -> bool {
        auto once = [&](const Term& body, const std::string& n) {
            std::multiset<std::string> f;
            free_names(body, f);
            return f.count(n) == 1;
        };
        switch (u.kind()) {
        case TermKind::Var:
        case TermKind::CoVar: return true;
        case TermKind::Mu:
        case TermKind::CoMu: return once(u.body(), u.name()) && walk(u.body());
        case TermKind::Pair:
        case TermKind::Cmd: return walk(u.left()) && walk(u.right());
        case TermKind::Case: return once(u.body(), u.bind1()) && once(u.body(), u.bind2()) && walk(u.body());
        }
        return false;
    };
    return walk(t);
}

inline Term rename_free(const Term& t, const std::map<std::string, std::string>& m) {
    auto r = [&](const std::string& n) {
        auto it = m.find(n);
        return it == m.end() ? n : it->second;
    };
    auto without = [&](std::initializer_list<std::string> names) {
        auto m2 = m;
        for (auto& n : names) m2.erase(n);
        return m2;
    };
    switch (t.kind()) {
    case TermKind::Var: return Term::var(r(t.name()));
    case TermKind::CoVar: return Term::covar(r(t.name()));
    case TermKind::Mu: return Term::mu(t.name(), rename_free(t.body(), without({t.name()})));
    case TermKind::CoMu: return Term::comu(t.name(), rename_free(t.body(), without({t.name()})));
    case TermKind::Pair: return Term::pair(t.conn(), rename_free(t.left(), m), rename_free(t.right(), m));
    case TermKind::Cmd: return Term::cmd(rename_free(t.left(), m), rename_free(t.right(), m));
    case TermKind::Case:
        return Term::case_of(t.conn(), t.bind1(), t.bind2(), r(t.name()), rename_free(t.body(), without({t.bind1(), t.bind2()})));
    }
    return t;
}

// Canonical representative up to renaming of bound names and reordering of
// adjacent independent case prefixes: within a run of cases, the one whose
// scrutinee has the least canonical name goes first; bound names become
// _1, _2, ... in order of binding.
inline Term canonical_term(const Term& t) {
    int counter = 0;
    std::function<Term(const Term&, std::map<std::string, std::string>&)> go =
        [&](const Term& u, std::map<std::string, std::string>& env) -> Term {
        auto lookup = [&](const std::string& n) {
            auto it = env.find(n);
            return it == env.end() ? n : it->second;
        };
        auto fresh = [&](const std::string& n) {
            std::string c = "_" + std::to_string(++counter);
            env[n] = c;
            return c;
        };
        switch (u.kind()) {
        case TermKind::Var: return Term::var(lookup(u.name()));
        case TermKind::CoVar: return Term::covar(lookup(u.name()));
        case TermKind::Mu:
        case TermKind::CoMu: {
            auto saved = env;
            std::string b = fresh(u.name());
            Term body = go(u.body(), env);
            env = saved;
            return u.kind() == TermKind::Mu ? Term::mu(b, body) : Term::comu(b, body);
        }
        case TermKind::Pair: return Term::pair(u.conn(), go(u.left(), env), go(u.right(), env));
        case TermKind::Cmd: return Term::cmd(go(u.left(), env), go(u.right(), env));
        case TermKind::Case: {
            std::vector<Term> run;
            Term cur = u;
            while (cur.kind() == TermKind::Case) {
                run.push_back(cur);
                cur = cur.body();
            }
            auto saved = env;
            std::vector<std::tuple<Conn, std::string, std::string, std::string>> emitted;
            std::vector<bool> used(run.size(), false);
            std::set<std::string> pending;  // names bound by cases not yet emitted
            for (auto& c : run) {
                pending.insert(c.bind1());
                pending.insert(c.bind2());
            }
            for (std::size_t k = 0; k < run.size(); ++k) {
                int best = -1;
                std::string best_key;
                for (std::size_t i = 0; i < run.size(); ++i) {
                    if (used[i] || pending.count(run[i].name())) continue;
                    std::string key = lookup(run[i].name());
                    if (best < 0 || key < best_key) best = static_cast<int>(i), best_key = key;
                }
                if (best < 0) break;  // cyclic dependency cannot arise in typed terms
                used[best] = true;
                const Term& c = run[best];
                pending.erase(c.bind1());
                pending.erase(c.bind2());
                std::string z = lookup(c.name());
                std::string b1 = fresh(c.bind1()), b2 = fresh(c.bind2());
                emitted.emplace_back(c.conn(), b1, b2, z);
            }
            Term body = go(cur, env);
            env = saved;
            for (auto it = emitted.rbegin(); it != emitted.rend(); ++it)
                body = Term::case_of(std::get<0>(*it), std::get<1>(*it), std::get<2>(*it), std::get<3>(*it), body);
            return body;
        }
        }
        return u;
    };
    std::map<std::string, std::string> env;
    return go(t, env);
}

inline bool equivalent_terms(const Term& a, const Term& b) { return canonical_term(a) == canonical_term(b); }

} // namespace lg
