#pragma once

#include "lg/display.hpp"
#include "lg/term.hpp"

#include <set>
#include <unordered_map>

namespace lg {

enum class FRule {
    Ax, CoAx, Mu, CoMu, MuStar, CoMuStar,
    ProdL, RDiffL, LDiffL, CoprodR, UnderR, OverR,
    CoprodL, UnderL, OverL, ProdR, RDiffR, LDiffR,
    Structural,
    ShiftRL, ShiftRR, ShiftLR, ShiftLL
};

inline const char* frule_name(FRule r) {
    switch (r) {
    case FRule::Ax: return "Ax";
    case FRule::CoAx: return "CoAx";
    case FRule::Mu: return "mu";
    case FRule::CoMu: return "comu";
    case FRule::MuStar: return "mu*";
    case FRule::CoMuStar: return "comu*";
    case FRule::ProdL: return "*L";
    case FRule::RDiffL: return "(/)L";
    case FRule::LDiffL: return "(\\)L";
    case FRule::CoprodR: return "(+)R";
    case FRule::UnderR: return "\\R";
    case FRule::OverR: return "/R";
    case FRule::CoprodL: return "(+)L";
    case FRule::UnderL: return "\\L";
    case FRule::OverL: return "/L";
    case FRule::ProdR: return "*R";
    case FRule::RDiffR: return "(/)R";
    case FRule::LDiffR: return "(\\)R";
    case FRule::Structural: return "struct";
    case FRule::ShiftRL: return "shift-rl";
    case FRule::ShiftRR: return "shift-rr";
    case FRule::ShiftLR: return "shift-lr";
    case FRule::ShiftLL: return "shift-ll";
    }
    return "?";
}

inline std::string frule_unicode(FRule r) {
    switch (r) {
    case FRule::Mu: return "μ";
    case FRule::CoMu: return "μ̃";
    case FRule::MuStar: return "μ*";
    case FRule::CoMuStar: return "μ̃*";
    case FRule::ShiftRL: return "⇋";
    case FRule::ShiftRR: return "⇉";
    case FRule::ShiftLR: return "⇌";
    case FRule::ShiftLL: return "⇇";
    default: return frule_name(r);
    }
}

inline bool is_invertible_rule(FRule r) { return r >= FRule::ProdL && r <= FRule::OverR; }
inline bool is_synchronous_rule(FRule r) { return r >= FRule::CoprodL && r <= FRule::LDiffR; }
inline bool is_shift_rule(FRule r) { return r >= FRule::ShiftRL; }

inline FRule invertible_rule(Conn c) {
    switch (c) {
    case Conn::Prod: return FRule::ProdL;
    case Conn::RDiff: return FRule::RDiffL;
    case Conn::LDiff: return FRule::LDiffL;
    case Conn::Coprod: return FRule::CoprodR;
    case Conn::Under: return FRule::UnderR;
    case Conn::Over: return FRule::OverR;
    }
    return FRule::ProdL;
}

inline FRule synchronous_rule(Conn c) {
    switch (c) {
    case Conn::Prod: return FRule::ProdR;
    case Conn::RDiff: return FRule::RDiffR;
    case Conn::LDiff: return FRule::LDiffR;
    case Conn::Coprod: return FRule::CoprodL;
    case Conn::Under: return FRule::UnderL;
    case Conn::Over: return FRule::OverL;
    }
    return FRule::ProdR;
}

// A focused derivation; every node carries the term of its conclusion.
// Shift nodes keep the segment they replace for unfolding.
class FocusedProof {
public:
    struct Segment {
        Sequent conclusion;
        FRule rule;
        SRule srule;
        Term term;
    };
    struct Node {
        Sequent conclusion;
        FRule rule = FRule::Ax;
        SRule srule = SRule::Ax;  // for Structural
        std::vector<FocusedProof> premises;
        Term term;
        std::vector<Segment> segment;  // shift nodes: top (mu/comu) first
    };

    FocusedProof() = default;
    FocusedProof(Sequent s, FRule r, std::vector<FocusedProof> premises, Term t, SRule sr = SRule::Ax,
                 std::vector<Segment> seg = {}) {
        auto n = std::make_shared<Node>();
        n->conclusion = std::move(s);
        n->rule = r;
        n->srule = sr;
        n->premises = std::move(premises);
        n->term = std::move(t);
        n->segment = std::move(seg);
        n_ = std::move(n);
    }

    bool valid() const { return static_cast<bool>(n_); }
    const Sequent& conclusion() const { return n_->conclusion; }
    FRule rule() const { return n_->rule; }
    SRule srule() const { return n_->srule; }
    const std::vector<FocusedProof>& premises() const { return n_->premises; }
    const Term& term() const { return n_->term; }
    const std::vector<Segment>& segment() const { return n_->segment; }

    std::size_t size() const {
        std::size_t n = 1;
        for (auto& p : n_->premises) n += p.size();
        return n;
    }
    std::string rule_label(bool unicode = false) const {
        if (n_->rule == FRule::Structural) return unicode ? rule_unicode(n_->srule) : rule_name(n_->srule);
        return unicode ? frule_unicode(n_->rule) : frule_name(n_->rule);
    }

    friend bool operator==(const FocusedProof& a, const FocusedProof& b) {
        if (a.n_ == b.n_) return true;
        if (!a.n_ || !b.n_) return false;
        return a.n_->rule == b.n_->rule && a.n_->srule == b.n_->srule && a.n_->conclusion == b.n_->conclusion &&
               a.n_->term == b.n_->term && a.n_->premises == b.n_->premises;
    }

private:
    std::shared_ptr<const Node> n_;
};

namespace detail {

inline std::string frule_key(FRule r) { return frule_name(r); }

class NameSupply {
public:
    explicit NameSupply(std::set<std::string> taken = {}) : taken_(std::move(taken)) {}
    std::string var() { return next("x", nv_); }
    std::string covar() { return next("a", nc_); }
    void reserve(const std::string& n) { taken_.insert(n); }

private:
    std::string next(const char* prefix, int& counter) {
        std::string n;
        do n = prefix + std::to_string(++counter);
        while (taken_.count(n));
        taken_.insert(n);
        return n;
    }
    std::set<std::string> taken_;
    int nv_ = 0, nc_ = 0;
};

inline void collect_tags(const Structure& s, std::set<std::string>& out) {
    if (s.is_leaf()) {
        if (!s.tag().empty()) out.insert(s.tag());
        return;
    }
    collect_tags(s.left(), out);
    collect_tags(s.right(), out);
}

inline Structure label_structure(const Structure& s, Side side, NameSupply& names) {
    if (s.is_leaf()) {
        if (!s.tag().empty()) return s;
        return leaf(s.formula(), side == Side::Input ? names.var() : names.covar());
    }
    auto [l, r] = operand_sides(s.conn());
    return Structure::binary(s.conn(), label_structure(s.left(), l, names), label_structure(s.right(), r, names));
}

inline Structure strip_tags(const Structure& s) {
    if (s.is_leaf()) return s.tag().empty() ? s : leaf(s.formula());
    return Structure::binary(s.conn(), strip_tags(s.left()), strip_tags(s.right()));
}

// The first leaf (antecedent before succedent, pre-order) holding a formula
// with an invertible rule on its side.
struct Redex {
    bool found = false;
    Formula formula;
    std::string tag;
};

inline bool invertible_here(const Formula& f, Side side) {
    if (f.is_atom()) return false;
    return positive_conn(f.conn()) == (side == Side::Input);
}

inline void find_redex(const Structure& s, Side side, Redex& r) {
    if (r.found) return;
    if (s.is_leaf()) {
        if (invertible_here(s.formula(), side)) r = Redex{true, s.formula(), s.tag()};
        return;
    }
    auto [l, rs] = operand_sides(s.conn());
    find_redex(s.left(), l, r);
    find_redex(s.right(), rs, r);
}

// Replaces the first redex leaf by its structural counterpart with the given
// binder tags.
inline Structure rewrite_leaf(const Structure& s, Side side, const std::string& b1, const std::string& b2, bool& done) {
    if (done) return s;
    if (s.is_leaf()) {
        if (!invertible_here(s.formula(), side)) return s;
        done = true;
        const Formula& f = s.formula();
        return Structure::binary(f.conn(), leaf(f.left(), b1), leaf(f.right(), b2));
    }
    auto [l, r] = operand_sides(s.conn());
    Structure nl = rewrite_leaf(s.left(), l, b1, b2, done);
    Structure nr = rewrite_leaf(s.right(), r, b1, b2, done);
    return Structure::binary(s.conn(), nl, nr);
}

// Replaces the leaf tagged z (if an invertible redex) by the counterpart.
inline Structure rewrite_tagged(const Structure& s, Side side, const std::string& z, Conn c, const std::string& b1,
                                const std::string& b2, bool& done) {
    if (done) return s;
    if (s.is_leaf()) {
        if (s.tag() != z || !invertible_here(s.formula(), side) || s.formula().conn() != c) return s;
        done = true;
        return Structure::binary(c, leaf(s.formula().left(), b1), leaf(s.formula().right(), b2));
    }
    auto [l, r] = operand_sides(s.conn());
    Structure nl = rewrite_tagged(s.left(), l, z, c, b1, b2, done);
    Structure nr = rewrite_tagged(s.right(), r, z, c, b1, b2, done);
    return Structure::binary(s.conn(), nl, nr);
}

inline bool has_redex(const Sequent& s) {
    Redex r;
    find_redex(s.ant, Side::Input, r);
    find_redex(s.suc, Side::Output, r);
    return r.found;
}

inline constexpr std::array<SRule, 12> structural_rules = {SRule::Rp1, SRule::Rp2, SRule::Rp3, SRule::Rp4,
                                                           SRule::Drp1, SRule::Drp2, SRule::Drp3, SRule::Drp4,
                                                           SRule::G1, SRule::G2, SRule::G3, SRule::G4};

struct OrbitEntry {
    Sequent seq;
    int parent = -1;
    SRule via = SRule::Ax;
};

// Everything reachable from s by backward display and distributivity steps.
inline std::vector<OrbitEntry> structural_orbit(const Sequent& s) {
    std::vector<OrbitEntry> orbit{{s, -1, SRule::Ax}};
    std::unordered_set<Sequent, SequentHash> seen{s};
    for (std::size_t i = 0; i < orbit.size(); ++i)
        for (SRule r : structural_rules)
            if (auto p = backward(r, orbit[i].seq); p && seen.insert(p->front()).second)
                orbit.push_back({p->front(), static_cast<int>(i), r});
    return orbit;
}

} // namespace detail

struct FocusedResult {
    std::vector<FocusedProof> proofs;  // distinct terms up to equivalence
    bool depth_exhausted = false;

    SearchStatus status() const {
        if (!proofs.empty()) return SearchStatus::Proved;
        return depth_exhausted ? SearchStatus::DepthExhausted : SearchStatus::NoProof;
    }
    std::vector<Term> terms() const {
        std::vector<Term> out;
        for (auto& p : proofs) out.push_back(p.term());
        return out;
    }
};

namespace detail {

// Backward focused search. With terms off, leaves stay untagged, at most one
// proof is kept per goal and goals are memoized.
class FocusedSearch {
public:
    FocusedSearch(const BiasMap& bias, const SearchConfig& cfg, bool terms, NameSupply names)
        : bias_(bias), cfg_(cfg), terms_(terms), names_(std::move(names)) {}

    bool depth_exhausted = false;

    std::vector<FocusedProof> solve(const Sequent& s, std::size_t depth) {
        if (!terms_) {
            auto it = memo_.find(s);
            if (it != memo_.end()) return it->second;
        }
        std::vector<FocusedProof> out;
        switch (s.focus) {
        case Focus::None: out = command(s, depth); break;
        case Focus::Right: out = right(s, depth); break;
        case Focus::Left: out = left(s, depth); break;
        }
        if (!terms_) memo_[s] = out;
        return out;
    }

private:
    bool positive(const Formula& f) const { return is_positive(f, bias_); }
    std::string var() { return terms_ ? names_.var() : std::string{}; }
    std::string covar() { return terms_ ? names_.covar() : std::string{}; }
    bool enough(const std::vector<FocusedProof>& v) const { return !terms_ && !v.empty(); }

    std::vector<FocusedProof> command(const Sequent& s, std::size_t depth) {
        std::vector<FocusedProof> out;
        Redex r;
        find_redex(s.ant, Side::Input, r);
        find_redex(s.suc, Side::Output, r);
        if (r.found) {
            Conn c = r.formula.conn();
            CaseSorts cs = case_sorts(c);
            std::string b1 = cs.first == Sort::Value ? var() : covar();
            std::string b2 = cs.second == Sort::Value ? var() : covar();
            bool done = false;
            Structure a = rewrite_leaf(s.ant, Side::Input, b1, b2, done);
            Structure b = rewrite_leaf(s.suc, Side::Output, b1, b2, done);
            for (auto& p : solve(Sequent(a, b), depth)) {
                Term t = terms_ ? Term::case_of(c, b1, b2, r.tag, p.term()) : Term();
                out.emplace_back(s, invertible_rule(c), std::vector<FocusedProof>{p}, t);
            }
            return out;
        }
        if (depth >= cfg_.max_logical_depth) {
            depth_exhausted = true;
            return out;
        }
        auto orbit = structural_orbit(s);
        for (std::size_t i = 0; i < orbit.size() && !enough(out); ++i) {
            const Sequent& m = orbit[i].seq;
            if (m.ant.is_leaf() && !positive(m.ant.formula())) {
                for (auto& p : solve(Sequent(leaf(m.ant.formula()), m.suc, Focus::Left), depth + 1)) {
                    Term t = terms_ ? Term::cmd(Term::var(m.ant.tag()), p.term()) : Term();
                    out.push_back(wrap_path(orbit, i, FocusedProof(m, FRule::CoMuStar, {p}, t)));
                }
            }
            if (enough(out)) break;
            if (m.suc.is_leaf() && positive(m.suc.formula())) {
                for (auto& p : solve(Sequent(m.ant, leaf(m.suc.formula()), Focus::Right), depth + 1)) {
                    Term t = terms_ ? Term::cmd(p.term(), Term::covar(m.suc.tag())) : Term();
                    out.push_back(wrap_path(orbit, i, FocusedProof(m, FRule::MuStar, {p}, t)));
                }
            }
        }
        return out;
    }

    static FocusedProof wrap_path(const std::vector<OrbitEntry>& orbit, std::size_t i, FocusedProof p) {
        while (orbit[i].parent >= 0) {
            const OrbitEntry& e = orbit[i];
            p = FocusedProof(orbit[e.parent].seq, FRule::Structural, {p}, p.term(), e.via);
            i = static_cast<std::size_t>(e.parent);
        }
        return p;
    }

    template <class Make>
    void product(const Sequent& s, FRule rule, const Sequent& g1, const Sequent& g2, std::size_t depth,
                 std::vector<FocusedProof>& out, Make make) {
        auto l = solve(g1, depth);
        if (l.empty()) return;
        auto r = solve(g2, depth);
        for (auto& p : l)
            for (auto& q : r) {
                out.emplace_back(s, rule, std::vector<FocusedProof>{p, q}, terms_ ? make(p.term(), q.term()) : Term());
                if (enough(out)) return;
            }
    }

    std::vector<FocusedProof> right(const Sequent& s, std::size_t depth) {
        std::vector<FocusedProof> out;
        const Formula& a = s.suc.formula();
        const Structure& x = s.ant;
        if (!positive(a)) {
            std::string alpha = covar();
            for (auto& p : solve(Sequent(x, leaf(a, alpha)), depth))
                out.emplace_back(s, FRule::Mu, std::vector<FocusedProof>{p}, terms_ ? Term::mu(alpha, p.term()) : Term());
            return out;
        }
        if (a.is_atom()) {
            if (x.is_leaf() && x.formula() == a) out.emplace_back(s, FRule::Ax, std::vector<FocusedProof>{}, terms_ ? Term::var(x.tag()) : Term());
            return out;
        }
        Conn c = a.conn();
        if (!x.is(c)) return out;
        auto mk = [c](const Term& l, const Term& r) { return Term::pair(c, l, r); };
        switch (c) {
        case Conn::Prod:
            product(s, FRule::ProdR, Sequent(x.left(), leaf(a.left()), Focus::Right),
                    Sequent(x.right(), leaf(a.right()), Focus::Right), depth, out, mk);
            break;
        case Conn::RDiff:
            product(s, FRule::RDiffR, Sequent(x.left(), leaf(a.left()), Focus::Right),
                    Sequent(leaf(a.right()), x.right(), Focus::Left), depth, out, mk);
            break;
        case Conn::LDiff:
            product(s, FRule::LDiffR, Sequent(leaf(a.left()), x.left(), Focus::Left),
                    Sequent(x.right(), leaf(a.right()), Focus::Right), depth, out, mk);
            break;
        default: break;
        }
        return out;
    }

    std::vector<FocusedProof> left(const Sequent& s, std::size_t depth) {
        std::vector<FocusedProof> out;
        const Formula& a = s.ant.formula();
        const Structure& y = s.suc;
        if (positive(a)) {
            std::string x = var();
            for (auto& p : solve(Sequent(leaf(a, x), y), depth))
                out.emplace_back(s, FRule::CoMu, std::vector<FocusedProof>{p}, terms_ ? Term::comu(x, p.term()) : Term());
            return out;
        }
        if (a.is_atom()) {
            if (y.is_leaf() && y.formula() == a) out.emplace_back(s, FRule::CoAx, std::vector<FocusedProof>{}, terms_ ? Term::covar(y.tag()) : Term());
            return out;
        }
        Conn c = a.conn();
        if (!y.is(c)) return out;
        auto mk = [c](const Term& l, const Term& r) { return Term::pair(c, l, r); };
        switch (c) {
        case Conn::Coprod:
            product(s, FRule::CoprodL, Sequent(leaf(a.left()), y.left(), Focus::Left),
                    Sequent(leaf(a.right()), y.right(), Focus::Left), depth, out, mk);
            break;
        case Conn::Under:
            product(s, FRule::UnderL, Sequent(y.left(), leaf(a.left()), Focus::Right),
                    Sequent(leaf(a.right()), y.right(), Focus::Left), depth, out, mk);
            break;
        case Conn::Over:
            product(s, FRule::OverL, Sequent(leaf(a.left()), y.left(), Focus::Left),
                    Sequent(y.right(), leaf(a.right()), Focus::Right), depth, out, mk);
            break;
        default: break;
        }
        return out;
    }

    const BiasMap& bias_;
    SearchConfig cfg_;
    bool terms_;
    NameSupply names_;
    std::unordered_map<Sequent, std::vector<FocusedProof>, SequentHash> memo_;
};

} // namespace detail

// Untagged input leaves get variables x1, x2, ..., output leaves covariables
// a1, a2, ...; existing tags are kept.
inline Sequent label_leaves(const Sequent& s) {
    std::set<std::string> taken;
    detail::collect_tags(s.ant, taken);
    detail::collect_tags(s.suc, taken);
    detail::NameSupply names(taken);
    Structure a = s.focus == Focus::Left ? s.ant : detail::label_structure(s.ant, Side::Input, names);
    Structure b = s.focus == Focus::Right ? s.suc : detail::label_structure(s.suc, Side::Output, names);
    return Sequent(a, b, s.focus);
}

// All focused proofs of s with pairwise inequivalent terms. The sequent may
// be unfocused (terms are commands) or focused on one side (values or
// contexts); untagged leaves are labelled first.
inline FocusedResult fprove(const Sequent& s, const BiasMap& bias, const SearchConfig& cfg = {}) {
    Sequent goal = label_leaves(s);
    if (!validate_sequent(goal)) throw std::invalid_argument("fprove: ill-formed sequent " + to_string(s));
    std::set<std::string> taken;
    detail::collect_tags(goal.ant, taken);
    detail::collect_tags(goal.suc, taken);
    detail::FocusedSearch search(bias, cfg, true, detail::NameSupply(taken));
    FocusedResult res;
    std::set<std::string> seen;
    for (auto& p : search.solve(goal, 0)) {
        if (!seen.insert(to_string(canonical_term(p.term()))).second) continue;
        res.proofs.push_back(p);
        if (cfg.max_proofs && res.proofs.size() >= cfg.max_proofs) break;
    }
    res.depth_exhausted = search.depth_exhausted;
    return res;
}

// Provability only: tags ignored, goals memoized.
inline bool fprovable(const Sequent& s, const BiasMap& bias) {
    SearchConfig cfg;
    detail::FocusedSearch search(bias, cfg, false, detail::NameSupply());
    Sequent g(detail::strip_tags(s.ant), detail::strip_tags(s.suc), s.focus);
    return !search.solve(g, 0).empty();
}

// ---- checking ----

namespace detail {

class ProofBuilder {
public:
    explicit ProofBuilder(const BiasMap& bias) : bias_(bias) {}

    std::optional<FocusedProof> build(const Sequent& s, const Term& t) {
        switch (s.focus) {
        case Focus::None: return t.sort() == Sort::Command ? command(s, t) : std::nullopt;
        case Focus::Right: return t.sort() == Sort::Value ? right(s.ant, s.suc.formula(), t) : std::nullopt;
        case Focus::Left: return t.sort() == Sort::Context ? left(s.ant.formula(), s.suc, t) : std::nullopt;
        }
        return std::nullopt;
    }

private:
    using Result = std::optional<FocusedProof>;

    bool positive(const Formula& f) const { return is_positive(f, bias_); }

    Result command(const Sequent& s, const Term& t) {
        if (t.kind() == TermKind::Case) {
            bool done = false;
            Structure a = rewrite_tagged(s.ant, Side::Input, t.name(), t.conn(), t.bind1(), t.bind2(), done);
            Structure b = rewrite_tagged(s.suc, Side::Output, t.name(), t.conn(), t.bind1(), t.bind2(), done);
            if (!done) return std::nullopt;
            auto p = command(Sequent(a, b), t.body());
            if (!p) return std::nullopt;
            return FocusedProof(s, invertible_rule(t.conn()), {*p}, t);
        }
        if (t.kind() != TermKind::Cmd || has_redex(s)) return std::nullopt;
        Term v = t.left(), e = t.right();
        auto orbit = structural_orbit(s);
        for (std::size_t i = 0; i < orbit.size(); ++i) {
            const Sequent& q = orbit[i].seq;
            if (v.kind() == TermKind::Var && q.ant.is_leaf() && q.ant.tag() == v.name() && !positive(q.ant.formula()))
                if (auto p = left(q.ant.formula(), q.suc, e))
                    return wrap(orbit, i, FocusedProof(q, FRule::CoMuStar, {*p}, t));
            if (e.kind() == TermKind::CoVar && q.suc.is_leaf() && q.suc.tag() == e.name() && positive(q.suc.formula()))
                if (auto p = right(q.ant, q.suc.formula(), v))
                    return wrap(orbit, i, FocusedProof(q, FRule::MuStar, {*p}, t));
        }
        return std::nullopt;
    }

    static FocusedProof wrap(const std::vector<OrbitEntry>& orbit, std::size_t i, FocusedProof p) {
        while (orbit[i].parent >= 0) {
            const OrbitEntry& e = orbit[i];
            p = FocusedProof(orbit[e.parent].seq, FRule::Structural, {p}, p.term(), e.via);
            i = static_cast<std::size_t>(e.parent);
        }
        return p;
    }

    Result pair(const Sequent& s, const Term& t, const Sequent& g1, const Sequent& g2) {
        auto p = build(g1, t.left());
        if (!p) return std::nullopt;
        auto q = build(g2, t.right());
        if (!q) return std::nullopt;
        return FocusedProof(s, synchronous_rule(t.conn()), {*p, *q}, t);
    }

    Result right(const Structure& x, const Formula& a, const Term& v) {
        Sequent s(x, leaf(a), Focus::Right);
        switch (v.kind()) {
        case TermKind::Var:
            if (positive(a) && a.is_atom() && x.is_leaf() && x.tag() == v.name() && x.formula() == a) return FocusedProof(s, FRule::Ax, {}, v);
            return std::nullopt;
        case TermKind::Mu: {
            if (positive(a)) return std::nullopt;
            auto p = command(Sequent(x, leaf(a, v.name())), v.body());
            if (!p) return std::nullopt;
            return FocusedProof(s, FRule::Mu, {*p}, v);
        }
        case TermKind::Pair:
            if (a.is_atom() || a.conn() != v.conn() || !positive(a) || !x.is(a.conn())) return std::nullopt;
            switch (a.conn()) {
            case Conn::Prod:
                return pair(s, v, Sequent(x.left(), leaf(a.left()), Focus::Right), Sequent(x.right(), leaf(a.right()), Focus::Right));
            case Conn::RDiff:
                return pair(s, v, Sequent(x.left(), leaf(a.left()), Focus::Right), Sequent(leaf(a.right()), x.right(), Focus::Left));
            case Conn::LDiff:
                return pair(s, v, Sequent(leaf(a.left()), x.left(), Focus::Left), Sequent(x.right(), leaf(a.right()), Focus::Right));
            default: return std::nullopt;
            }
        default: return std::nullopt;
        }
    }

    Result left(const Formula& a, const Structure& y, const Term& e) {
        Sequent s(leaf(a), y, Focus::Left);
        switch (e.kind()) {
        case TermKind::CoVar:
            if (!positive(a) && a.is_atom() && y.is_leaf() && y.tag() == e.name() && y.formula() == a) return FocusedProof(s, FRule::CoAx, {}, e);
            return std::nullopt;
        case TermKind::CoMu: {
            if (!positive(a)) return std::nullopt;
            auto p = command(Sequent(leaf(a, e.name()), y), e.body());
            if (!p) return std::nullopt;
            return FocusedProof(s, FRule::CoMu, {*p}, e);
        }
        case TermKind::Pair:
            if (a.is_atom() || a.conn() != e.conn() || positive(a) || !y.is(a.conn())) return std::nullopt;
            switch (a.conn()) {
            case Conn::Coprod:
                return pair(s, e, Sequent(leaf(a.left()), y.left(), Focus::Left), Sequent(leaf(a.right()), y.right(), Focus::Left));
            case Conn::Under:
                return pair(s, e, Sequent(y.left(), leaf(a.left()), Focus::Right), Sequent(leaf(a.right()), y.right(), Focus::Left));
            case Conn::Over:
                return pair(s, e, Sequent(leaf(a.left()), y.left(), Focus::Left), Sequent(y.right(), leaf(a.right()), Focus::Right));
            default: return std::nullopt;
            }
        default: return std::nullopt;
        }
    }

    const BiasMap& bias_;
};

} // namespace detail

// The focused proof of s whose term is t, if there is one. Leaves must
// carry the term's free names as tags.
inline std::optional<FocusedProof> proof_of_term(const Sequent& s, const Term& t, const BiasMap& bias) {
    if (!validate_sequent(s) || !is_linear(t)) return std::nullopt;
    return detail::ProofBuilder(bias).build(s, t);
}

inline bool check_term(const Sequent& s, const Term& t, const BiasMap& bias) { return proof_of_term(s, t, bias).has_value(); }

// Local validity of every node, including the polarity side conditions and
// the exhaustive asynchronous phase at each focusing step.
inline ProofCheck check_focused_proof(const FocusedProof& p, const BiasMap& bias) {
    auto bad = [&](const std::string& why) { return ProofCheck{false, p.rule_label() + " at " + to_string(p.conclusion()) + ": " + why}; };
    for (auto& q : p.premises())
        if (auto c = check_focused_proof(q, bias); !c.ok) return c;
    const Sequent& s = p.conclusion();
    const auto& ps = p.premises();
    const Term& t = p.term();
    auto pos = [&](const Formula& f) { return is_positive(f, bias); };
    if (!validate_sequent(s)) return bad("ill-formed conclusion");
    switch (p.rule()) {
    case FRule::Ax:
        if (s.focus != Focus::Right || !s.ant.is_leaf() || !s.suc.formula().is_atom() || !pos(s.suc.formula()) ||
            s.ant.formula() != s.suc.formula() || t != Term::var(s.ant.tag()))
            return bad("not a positive atomic axiom");
        break;
    case FRule::CoAx:
        if (s.focus != Focus::Left || !s.suc.is_leaf() || !s.ant.formula().is_atom() || pos(s.ant.formula()) ||
            s.ant.formula() != s.suc.formula() || t != Term::covar(s.suc.tag()))
            return bad("not a negative atomic coaxiom");
        break;
    case FRule::Mu:
        if (s.focus != Focus::Right || pos(s.suc.formula()) || ps.size() != 1 || t.kind() != TermKind::Mu ||
            ps[0].conclusion() != Sequent(s.ant, leaf(s.suc.formula(), t.name())) || t.body() != ps[0].term())
            return bad("bad mu");
        break;
    case FRule::CoMu:
        if (s.focus != Focus::Left || !pos(s.ant.formula()) || ps.size() != 1 || t.kind() != TermKind::CoMu ||
            ps[0].conclusion() != Sequent(leaf(s.ant.formula(), t.name()), s.suc) || t.body() != ps[0].term())
            return bad("bad comu");
        break;
    case FRule::MuStar:
        if (s.focus != Focus::None || !s.suc.is_leaf() || !pos(s.suc.formula()) || ps.size() != 1 ||
            ps[0].conclusion() != Sequent(s.ant, leaf(s.suc.formula()), Focus::Right) ||
            t != Term::cmd(ps[0].term(), Term::covar(s.suc.tag())) || detail::has_redex(s))
            return bad("bad mu*");
        break;
    case FRule::CoMuStar:
        if (s.focus != Focus::None || !s.ant.is_leaf() || pos(s.ant.formula()) || ps.size() != 1 ||
            ps[0].conclusion() != Sequent(leaf(s.ant.formula()), s.suc, Focus::Left) ||
            t != Term::cmd(Term::var(s.ant.tag()), ps[0].term()) || detail::has_redex(s))
            return bad("bad comu*");
        break;
    case FRule::Structural: {
        if (s.focus != Focus::None || ps.size() != 1 || !is_structural_rule(p.srule()) || t != ps[0].term()) return bad("bad structural step");
        auto prem = backward(p.srule(), s);
        if (!prem || prem->front() != ps[0].conclusion()) return bad("structural rule does not apply");
        break;
    }
    case FRule::ShiftRL:
    case FRule::ShiftRR:
    case FRule::ShiftLR:
    case FRule::ShiftLL: {
        if (ps.size() != 1 || p.segment().empty()) return bad("shift without segment");
        // Rebuild the segment and check it as an ordinary derivation.
        const auto& seg = p.segment();
        FocusedProof cur = ps[0];
        for (auto it = seg.rbegin(); it != seg.rend(); ++it) cur = FocusedProof(it->conclusion, it->rule, {cur}, it->term, it->srule);
        if (auto c = check_focused_proof(cur, bias); !c.ok) return c;
        if (cur.conclusion() != s || cur.term() != t) return bad("segment does not match");
        break;
    }
    default:
        if (is_invertible_rule(p.rule())) {
            if (s.focus != Focus::None || ps.size() != 1 || t.kind() != TermKind::Case || invertible_rule(t.conn()) != p.rule() ||
                t.body() != ps[0].term())
                return bad("bad rewrite");
            bool done = false;
            Structure a = detail::rewrite_tagged(s.ant, Side::Input, t.name(), t.conn(), t.bind1(), t.bind2(), done);
            Structure b = detail::rewrite_tagged(s.suc, Side::Output, t.name(), t.conn(), t.bind1(), t.bind2(), done);
            if (!done || ps[0].conclusion() != Sequent(a, b)) return bad("rewrite does not match premise");
        } else if (is_synchronous_rule(p.rule())) {
            if (ps.size() != 2 || t.kind() != TermKind::Pair || synchronous_rule(t.conn()) != p.rule() || t.left() != ps[0].term() ||
                t.right() != ps[1].term())
                return bad("bad synchronous step");
            Conn c = t.conn();
            bool rightside = positive_conn(c);
            const Formula& a = rightside ? s.suc.formula() : s.ant.formula();
            const Structure& x = rightside ? s.ant : s.suc;
            if (s.focus != (rightside ? Focus::Right : Focus::Left) || a.is_atom() || a.conn() != c || !x.is(c))
                return bad("focused formula does not match");
            auto sides = pair_component_sorts(c);
            auto goal = [&](Sort so, const Formula& f, const Structure& st) {
                return so == Sort::Value ? Sequent(st, leaf(f), Focus::Right) : Sequent(leaf(f), st, Focus::Left);
            };
            if (ps[0].conclusion() != goal(sides.first, a.left(), x.left()) || ps[1].conclusion() != goal(sides.second, a.right(), x.right()))
                return bad("premises do not match");
        } else {
            return bad("unknown rule");
        }
    }
    return {true, {}};
}

// ---- focus shifting ----

namespace detail {

inline std::optional<FRule> shift_kind(FRule top, FRule star) {
    if (top == FRule::Mu && star == FRule::CoMuStar) return FRule::ShiftRL;
    if (top == FRule::Mu && star == FRule::MuStar) return FRule::ShiftRR;
    if (top == FRule::CoMu && star == FRule::MuStar) return FRule::ShiftLR;
    if (top == FRule::CoMu && star == FRule::CoMuStar) return FRule::ShiftLL;
    return std::nullopt;
}

} // namespace detail

// Collapses every mu/comu node whose premise chain of rewrites and
// structural steps ends in a mu*/comu* into one shift node.
inline FocusedProof fold_shifts(const FocusedProof& p) {
    if (p.rule() == FRule::Mu || p.rule() == FRule::CoMu) {
        std::vector<FocusedProof::Segment> seg{{p.conclusion(), p.rule(), p.srule(), p.term()}};
        FocusedProof cur = p.premises().front();
        while (cur.rule() == FRule::Structural || is_invertible_rule(cur.rule())) {
            seg.push_back({cur.conclusion(), cur.rule(), cur.srule(), cur.term()});
            cur = cur.premises().front();
        }
        if (auto k = detail::shift_kind(p.rule(), cur.rule())) {
            seg.push_back({cur.conclusion(), cur.rule(), cur.srule(), cur.term()});
            return FocusedProof(p.conclusion(), *k, {fold_shifts(cur.premises().front())}, p.term(), SRule::Ax, std::move(seg));
        }
    }
    std::vector<FocusedProof> ps;
    for (auto& q : p.premises()) ps.push_back(fold_shifts(q));
    return FocusedProof(p.conclusion(), p.rule(), std::move(ps), p.term(), p.srule(), p.segment());
}

inline FocusedProof unfold_shifts(const FocusedProof& p) {
    std::vector<FocusedProof> ps;
    for (auto& q : p.premises()) ps.push_back(unfold_shifts(q));
    if (!is_shift_rule(p.rule())) return FocusedProof(p.conclusion(), p.rule(), std::move(ps), p.term(), p.srule(), p.segment());
    FocusedProof cur = ps.front();
    const auto& seg = p.segment();
    for (auto it = seg.rbegin(); it != seg.rend(); ++it) cur = FocusedProof(it->conclusion, it->rule, {cur}, it->term, it->srule);
    return cur;
}

// One shift: the segment whose top is p itself. Throws on shape mismatch.
inline FocusedProof focus_shift(const FocusedProof& p) {
    if (p.rule() != FRule::Mu && p.rule() != FRule::CoMu) throw std::invalid_argument("focus_shift: not a mu/comu node");
    std::vector<FocusedProof::Segment> seg{{p.conclusion(), p.rule(), p.srule(), p.term()}};
    FocusedProof cur = p.premises().front();
    while (cur.rule() == FRule::Structural || is_invertible_rule(cur.rule())) {
        seg.push_back({cur.conclusion(), cur.rule(), cur.srule(), cur.term()});
        cur = cur.premises().front();
    }
    auto k = detail::shift_kind(p.rule(), cur.rule());
    if (!k) throw std::invalid_argument("focus_shift: segment does not end in mu*/comu*");
    seg.push_back({cur.conclusion(), cur.rule(), cur.srule(), cur.term()});
    return FocusedProof(p.conclusion(), *k, {cur.premises().front()}, p.term(), SRule::Ax, std::move(seg));
}

// ---- printing ----

inline void print_focused(const FocusedProof& p, std::string& out, bool unicode, int indent) {
    out += std::string(2 * indent, ' ') + p.rule_label(unicode) + "  " + (unicode ? to_unicode(p.conclusion()) : to_string(p.conclusion())) +
           "\n";
    for (auto& q : p.premises()) print_focused(q, out, unicode, indent + 1);
}

inline std::string to_string(const FocusedProof& p) {
    std::string s;
    print_focused(p, s, false, 0);
    return s;
}

inline std::string to_unicode(const FocusedProof& p) {
    std::string s;
    print_focused(p, s, true, 0);
    return s;
}

} // namespace lg
