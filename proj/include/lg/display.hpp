#pragma once

#include "lg/arrow.hpp"
#include "lg/structure.hpp"

#include <array>
#include <cstdint>
#include <deque>
#include <limits>
#include <unordered_map>
#include <unordered_set>

namespace lg {

enum class SRule {
    Ax, Cut,
    Rp1, Rp2, Rp3, Rp4, Drp1, Drp2, Drp3, Drp4,
    G1, G2, G3, G4,
    ProdL, RDiffL, LDiffL, CoprodR, UnderR, OverR,
    ProdR, CoprodL, UnderL, OverL, RDiffR, LDiffR,
};

inline constexpr std::array<SRule, 28> all_srules = {
    SRule::Ax, SRule::Cut,
    SRule::Rp1, SRule::Rp2, SRule::Rp3, SRule::Rp4, SRule::Drp1, SRule::Drp2, SRule::Drp3, SRule::Drp4,
    SRule::G1, SRule::G2, SRule::G3, SRule::G4,
    SRule::ProdL, SRule::RDiffL, SRule::LDiffL, SRule::CoprodR, SRule::UnderR, SRule::OverR,
    SRule::ProdR, SRule::CoprodL, SRule::UnderL, SRule::OverL, SRule::RDiffR, SRule::LDiffR,
};

inline const char* rule_name(SRule r) {
    switch (r) {
    case SRule::Ax: return "Ax";
    case SRule::Cut: return "Cut";
    case SRule::Rp1: return "rp1";
    case SRule::Rp2: return "rp2";
    case SRule::Rp3: return "rp3";
    case SRule::Rp4: return "rp4";
    case SRule::Drp1: return "drp1";
    case SRule::Drp2: return "drp2";
    case SRule::Drp3: return "drp3";
    case SRule::Drp4: return "drp4";
    case SRule::G1: return "G1";
    case SRule::G2: return "G2";
    case SRule::G3: return "G3";
    case SRule::G4: return "G4";
    case SRule::ProdL: return "*L";
    case SRule::RDiffL: return "(/)L";
    case SRule::LDiffL: return "(\\)L";
    case SRule::CoprodR: return "(+)R";
    case SRule::UnderR: return "\\R";
    case SRule::OverR: return "/R";
    case SRule::ProdR: return "*R";
    case SRule::CoprodL: return "(+)L";
    case SRule::UnderL: return "\\L";
    case SRule::OverL: return "/L";
    case SRule::RDiffR: return "(/)R";
    case SRule::LDiffR: return "(\\)R";
    }
    return "?";
}

inline std::string rule_unicode(SRule r) {
    switch (r) {
    case SRule::ProdL: return "⊗L";
    case SRule::RDiffL: return "⊘L";
    case SRule::LDiffL: return "⊘̸L";
    case SRule::CoprodR: return "⊕R";
    case SRule::ProdR: return "⊗R";
    case SRule::CoprodL: return "⊕L";
    case SRule::RDiffR: return "⊘R";
    case SRule::LDiffR: return "⊘̸R";
    default: return rule_name(r);
    }
}

inline std::optional<SRule> parse_rule_name(const std::string& s) {
    for (SRule r : all_srules)
        if (s == rule_name(r) || s == rule_unicode(r)) return r;
    return std::nullopt;
}

inline bool is_display_rule(SRule r) { return r >= SRule::Rp1 && r <= SRule::Drp4; }
inline bool is_grishin_rule(SRule r) { return r >= SRule::G1 && r <= SRule::G4; }
inline bool is_structural_rule(SRule r) { return is_display_rule(r) || is_grishin_rule(r); }
inline bool is_rewrite_rule(SRule r) { return r >= SRule::ProdL && r <= SRule::OverR; }
inline bool is_two_premise_rule(SRule r) { return r >= SRule::ProdR; }
inline bool is_logical_rule(SRule r) { return is_rewrite_rule(r) || is_two_premise_rule(r); }

inline GRule to_grule(SRule r) { return static_cast<GRule>(static_cast<int>(r) - static_cast<int>(SRule::G1)); }
inline SRule from_grule(GRule g) { return static_cast<SRule>(static_cast<int>(SRule::G1) + static_cast<int>(g)); }

// The rewrite rule exchanging connective c for its structural twin, and
// the two-premise rule introducing c on the other side.
inline SRule rewrite_rule(Conn c) {
    switch (c) {
    case Conn::Prod: return SRule::ProdL;
    case Conn::RDiff: return SRule::RDiffL;
    case Conn::LDiff: return SRule::LDiffL;
    case Conn::Coprod: return SRule::CoprodR;
    case Conn::Under: return SRule::UnderR;
    case Conn::Over: return SRule::OverR;
    }
    return SRule::Ax;
}

inline SRule two_premise_rule(Conn c) {
    switch (c) {
    case Conn::Prod: return SRule::ProdR;
    case Conn::RDiff: return SRule::RDiffR;
    case Conn::LDiff: return SRule::LDiffR;
    case Conn::Coprod: return SRule::CoprodL;
    case Conn::Under: return SRule::UnderL;
    case Conn::Over: return SRule::OverL;
    }
    return SRule::Ax;
}

inline Conn rule_conn(SRule r) {
    for (Conn c : {Conn::Prod, Conn::Under, Conn::Over, Conn::Coprod, Conn::RDiff, Conn::LDiff})
        if (rewrite_rule(c) == r || two_premise_rule(c) == r) return c;
    throw std::invalid_argument("rule has no main connective");
}

class SequentProof {
public:
    struct Node {
        Sequent conclusion;
        SRule rule = SRule::Ax;
        std::vector<SequentProof> premises;
    };

    SequentProof() = default;
    SequentProof(Sequent conclusion, SRule rule, std::vector<SequentProof> premises = {})
        : n_(std::make_shared<Node>(Node{std::move(conclusion), rule, std::move(premises)})) {}

    bool valid() const { return static_cast<bool>(n_); }
    const Sequent& conclusion() const { return n_->conclusion; }
    SRule rule() const { return n_->rule; }
    const std::vector<SequentProof>& premises() const { return n_->premises; }

    std::size_t size() const {
        std::size_t k = 1;
        for (auto& p : n_->premises) k += p.size();
        return k;
    }

    friend bool operator==(const SequentProof& a, const SequentProof& b) {
        if (a.n_ == b.n_) return true;
        if (!a.n_ || !b.n_) return false;
        return a.rule() == b.rule() && a.conclusion() == b.conclusion() && a.premises() == b.premises();
    }
    friend bool operator!=(const SequentProof& a, const SequentProof& b) { return !(a == b); }

private:
    std::shared_ptr<const Node> n_;
};

namespace detail {

inline bool leaf_with(const Structure& s, Conn c) { return s.is_leaf() && s.formula().is(c); }
inline Structure bare(const Formula& f) { return leaf(f); }

} // namespace detail

// Premises of rule r read backwards from the given conclusion, or nullopt
// when r does not apply. Cut is not handled (its cut formula is free).
inline std::optional<std::vector<Sequent>> backward(SRule r, const Sequent& s) {
    using detail::bare;
    using detail::leaf_with;
    const Structure &a = s.ant, &y = s.suc;
    auto one = [](Structure l, Structure r) { return std::vector<Sequent>{Sequent(std::move(l), std::move(r))}; };
    auto two = [](Sequent p, Sequent q) { return std::vector<Sequent>{std::move(p), std::move(q)}; };
    if (s.focus != Focus::None) return std::nullopt;
    switch (r) {
    case SRule::Ax:
        if (a.is_leaf() && y.is_leaf() && a.formula() == y.formula()) return std::vector<Sequent>{};
        return std::nullopt;
    case SRule::Cut: return std::nullopt;
    // X |- Z./.Y  from  X.*.Y |- Z
    case SRule::Rp1:
        if (y.is(Conn::Over)) return one(sprod(a, y.right()), y.left());
        return std::nullopt;
    case SRule::Rp2:
        if (a.is(Conn::Prod)) return one(a.left(), sover(y, a.right()));
        return std::nullopt;
    // Y |- X.\.Z  from  X.*.Y |- Z
    case SRule::Rp3:
        if (y.is(Conn::Under)) return one(sprod(y.left(), a), y.right());
        return std::nullopt;
    case SRule::Rp4:
        if (a.is(Conn::Prod)) return one(a.right(), sunder(a.left(), y));
        return std::nullopt;
    // Y.(\).Z |- X  from  Z |- Y.(+).X
    case SRule::Drp1:
        if (a.is(Conn::LDiff)) return one(a.right(), scoprod(a.left(), y));
        return std::nullopt;
    case SRule::Drp2:
        if (y.is(Conn::Coprod)) return one(sldiff(y.left(), a), y.right());
        return std::nullopt;
    // Z.(/).X |- Y  from  Z |- Y.(+).X
    case SRule::Drp3:
        if (a.is(Conn::RDiff)) return one(a.left(), scoprod(y, a.right()));
        return std::nullopt;
    case SRule::Drp4:
        if (y.is(Conn::Coprod)) return one(srdiff(a, y.right()), y.left());
        return std::nullopt;
    // All four conclude from X.*.Y |- Z.(+).W.
    case SRule::G1:  // Z.(\).X |- W./.Y
        if (a.is(Conn::LDiff) && y.is(Conn::Over)) return one(sprod(a.right(), y.right()), scoprod(a.left(), y.left()));
        return std::nullopt;
    case SRule::G2:  // Z.(\).Y |- X.\.W
        if (a.is(Conn::LDiff) && y.is(Conn::Under)) return one(sprod(y.left(), a.right()), scoprod(a.left(), y.right()));
        return std::nullopt;
    case SRule::G3:  // Y.(/).W |- X.\.Z
        if (a.is(Conn::RDiff) && y.is(Conn::Under)) return one(sprod(y.left(), a.left()), scoprod(y.right(), a.right()));
        return std::nullopt;
    case SRule::G4:  // X.(/).W |- Z./.Y
        if (a.is(Conn::RDiff) && y.is(Conn::Over)) return one(sprod(a.left(), y.right()), scoprod(y.left(), a.right()));
        return std::nullopt;
    case SRule::ProdL:
    case SRule::RDiffL:
    case SRule::LDiffL: {
        Conn c = rule_conn(r);
        if (!leaf_with(a, c)) return std::nullopt;
        return one(Structure::binary(c, bare(a.formula().left()), bare(a.formula().right())), y);
    }
    case SRule::CoprodR:
    case SRule::UnderR:
    case SRule::OverR: {
        Conn c = rule_conn(r);
        if (!leaf_with(y, c)) return std::nullopt;
        return one(a, Structure::binary(c, bare(y.formula().left()), bare(y.formula().right())));
    }
    // X.*.Y |- A*B  from  X |- A, Y |- B
    case SRule::ProdR:
        if (a.is(Conn::Prod) && leaf_with(y, Conn::Prod))
            return two(Sequent(a.left(), bare(y.formula().left())), Sequent(a.right(), bare(y.formula().right())));
        return std::nullopt;
    // A(+)B |- X.(+).Y  from  A |- X, B |- Y
    case SRule::CoprodL:
        if (leaf_with(a, Conn::Coprod) && y.is(Conn::Coprod))
            return two(Sequent(bare(a.formula().left()), y.left()), Sequent(bare(a.formula().right()), y.right()));
        return std::nullopt;
    // A\B |- X.\.Y  from  X |- A, B |- Y
    case SRule::UnderL:
        if (leaf_with(a, Conn::Under) && y.is(Conn::Under))
            return two(Sequent(y.left(), bare(a.formula().left())), Sequent(bare(a.formula().right()), y.right()));
        return std::nullopt;
    // B/A |- Y./.X  from  B |- Y, X |- A
    case SRule::OverL:
        if (leaf_with(a, Conn::Over) && y.is(Conn::Over))
            return two(Sequent(bare(a.formula().left()), y.left()), Sequent(y.right(), bare(a.formula().right())));
        return std::nullopt;
    // X.(/).Y |- A(/)B  from  X |- A, B |- Y
    case SRule::RDiffR:
        if (a.is(Conn::RDiff) && leaf_with(y, Conn::RDiff))
            return two(Sequent(a.left(), bare(y.formula().left())), Sequent(bare(y.formula().right()), a.right()));
        return std::nullopt;
    // Y.(\).X |- B(\)A  from  B |- Y, X |- A
    case SRule::LDiffR:
        if (a.is(Conn::LDiff) && leaf_with(y, Conn::LDiff))
            return two(Sequent(bare(y.formula().left()), a.left()), Sequent(a.right(), bare(y.formula().right())));
        return std::nullopt;
    }
    return std::nullopt;
}

// Conclusion of rule r applied forwards to the given premises.
inline std::optional<Sequent> forward(SRule r, const std::vector<Sequent>& ps) {
    auto need = [&](std::size_t n) { return ps.size() == n; };
    auto mk = [](Structure a, Structure b) { return std::optional<Sequent>(Sequent(std::move(a), std::move(b))); };
    auto formula_of = [](const Structure& s) -> std::optional<Formula> {
        if (!s.is_leaf()) return std::nullopt;
        return s.formula();
    };
    if (r == SRule::Ax || !need(is_two_premise_rule(r) || r == SRule::Cut ? 2 : 1)) return std::nullopt;
    for (auto& p : ps)
        if (p.focus != Focus::None) return std::nullopt;
    if (r == SRule::Cut) {
        if (!ps[0].suc.is_leaf() || !ps[1].ant.is_leaf() || ps[0].suc.formula() != ps[1].ant.formula()) return std::nullopt;
        return mk(ps[0].ant, ps[1].suc);
    }
    const Structure &a = ps[0].ant, &y = ps[0].suc;
    switch (r) {
    case SRule::Rp1:
        if (a.is(Conn::Prod)) return mk(a.left(), sover(y, a.right()));
        break;
    case SRule::Rp2:
        if (y.is(Conn::Over)) return mk(sprod(a, y.right()), y.left());
        break;
    case SRule::Rp3:
        if (a.is(Conn::Prod)) return mk(a.right(), sunder(a.left(), y));
        break;
    case SRule::Rp4:
        if (y.is(Conn::Under)) return mk(sprod(y.left(), a), y.right());
        break;
    case SRule::Drp1:
        if (y.is(Conn::Coprod)) return mk(sldiff(y.left(), a), y.right());
        break;
    case SRule::Drp2:
        if (a.is(Conn::LDiff)) return mk(a.right(), scoprod(a.left(), y));
        break;
    case SRule::Drp3:
        if (y.is(Conn::Coprod)) return mk(srdiff(a, y.right()), y.left());
        break;
    case SRule::Drp4:
        if (a.is(Conn::RDiff)) return mk(a.left(), scoprod(y, a.right()));
        break;
    case SRule::G1:
    case SRule::G2:
    case SRule::G3:
    case SRule::G4: {
        if (!a.is(Conn::Prod) || !y.is(Conn::Coprod)) break;
        Structure x = a.left(), yy = a.right(), z = y.left(), w = y.right();
        if (r == SRule::G1) return mk(sldiff(z, x), sover(w, yy));
        if (r == SRule::G2) return mk(sldiff(z, yy), sunder(x, w));
        if (r == SRule::G3) return mk(srdiff(yy, w), sunder(x, z));
        return mk(srdiff(x, w), sover(z, yy));
    }
    case SRule::ProdL:
    case SRule::RDiffL:
    case SRule::LDiffL: {
        Conn c = rule_conn(r);
        if (!a.is(c) || !a.left().is_leaf() || !a.right().is_leaf()) break;
        return mk(leaf(Formula::binary(c, a.left().formula(), a.right().formula())), y);
    }
    case SRule::CoprodR:
    case SRule::UnderR:
    case SRule::OverR: {
        Conn c = rule_conn(r);
        if (!y.is(c) || !y.left().is_leaf() || !y.right().is_leaf()) break;
        return mk(a, leaf(Formula::binary(c, y.left().formula(), y.right().formula())));
    }
    default: {
        // two-premise rules
        const Sequent &p = ps[0], &q = ps[1];
        switch (r) {
        case SRule::ProdR: {
            auto l = formula_of(p.suc), rr = formula_of(q.suc);
            if (l && rr) return mk(sprod(p.ant, q.ant), leaf(prod(*l, *rr)));
            break;
        }
        case SRule::CoprodL: {
            auto l = formula_of(p.ant), rr = formula_of(q.ant);
            if (l && rr) return mk(leaf(coprod(*l, *rr)), scoprod(p.suc, q.suc));
            break;
        }
        case SRule::UnderL: {
            auto l = formula_of(p.suc), rr = formula_of(q.ant);
            if (l && rr) return mk(leaf(under(*l, *rr)), sunder(p.ant, q.suc));
            break;
        }
        case SRule::OverL: {
            auto l = formula_of(p.ant), rr = formula_of(q.suc);
            if (l && rr) return mk(leaf(over(*l, *rr)), sover(p.suc, q.ant));
            break;
        }
        case SRule::RDiffR: {
            auto l = formula_of(p.suc), rr = formula_of(q.ant);
            if (l && rr) return mk(srdiff(p.ant, q.suc), leaf(rdiff(*l, *rr)));
            break;
        }
        case SRule::LDiffR: {
            auto l = formula_of(p.ant), rr = formula_of(q.suc);
            if (l && rr) return mk(sldiff(p.suc, q.ant), leaf(ldiff(*l, *rr)));
            break;
        }
        default: break;
        }
        break;
    }
    }
    return std::nullopt;
}

class ProofError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline SequentProof axiom_proof(const Formula& f) { return SequentProof(Sequent(leaf(f), leaf(f)), SRule::Ax); }

// Builds a proof node from its premises, computing the conclusion.
inline SequentProof derive(SRule r, std::vector<SequentProof> premises) {
    std::vector<Sequent> ps;
    for (auto& p : premises) ps.push_back(p.conclusion());
    auto c = forward(r, ps);
    if (!c) throw ProofError(std::string("rule ") + rule_name(r) + " does not apply");
    return SequentProof(*c, r, std::move(premises));
}

struct ProofCheck {
    bool ok = true;
    std::string error;
    explicit operator bool() const { return ok; }
};

// Local validity of every node against the rule schemas.
inline ProofCheck check_proof(const SequentProof& p, bool allow_cut = true) {
    if (!p.valid()) return {false, "empty proof"};
    const Sequent& s = p.conclusion();
    auto bad = [&](const std::string& why) {
        return ProofCheck{false, std::string(rule_name(p.rule())) + " at " + to_string(s) + ": " + why};
    };
    if (!validate_sequent(s) || s.focus != Focus::None) return bad("conclusion is not a well-formed sequent");
    if (p.rule() == SRule::Cut) {
        if (!allow_cut) return bad("cut not allowed");
        if (p.premises().size() != 2) return bad("expected two premises");
        std::vector<Sequent> ps = {p.premises()[0].conclusion(), p.premises()[1].conclusion()};
        auto c = forward(SRule::Cut, ps);
        if (!c || *c != s) return bad("premises do not match");
    } else {
        auto want = backward(p.rule(), s);
        if (!want) return bad("rule does not apply");
        if (want->size() != p.premises().size()) return bad("wrong number of premises");
        for (std::size_t i = 0; i < want->size(); ++i)
            if ((*want)[i] != p.premises()[i].conclusion())
                return bad("premise " + std::to_string(i + 1) + " should be " + to_string((*want)[i]));
    }
    for (auto& q : p.premises())
        if (auto r = check_proof(q, allow_cut); !r) return r;
    return {};
}

inline bool uses_cut(const SequentProof& p) {
    if (p.rule() == SRule::Cut) return true;
    for (auto& q : p.premises())
        if (uses_cut(q)) return true;
    return false;
}

// Number of G1..G4 applications in a proof.
inline std::array<int, 4> grishin_usage(const SequentProof& p) {
    std::array<int, 4> u{};
    if (is_grishin_rule(p.rule())) ++u[static_cast<int>(to_grule(p.rule()))];
    for (auto& q : p.premises()) {
        auto v = grishin_usage(q);
        for (int i = 0; i < 4; ++i) u[i] += v[i];
    }
    return u;
}

inline std::size_t sequent_connectives(const Sequent& s) {
    return structure_connectives(s.ant) + structure_connectives(s.suc);
}

inline std::vector<Sequent> display_closure(const Sequent& s) {
    std::vector<Sequent> out{s};
    std::unordered_set<Sequent, SequentHash> seen{s};
    for (std::size_t i = 0; i < out.size(); ++i) {
        for (SRule r : {SRule::Rp1, SRule::Rp2, SRule::Rp3, SRule::Rp4, SRule::Drp1, SRule::Drp2, SRule::Drp3, SRule::Drp4}) {
            auto p = backward(r, out[i]);
            if (p && seen.insert(p->front()).second) out.push_back(p->front());
        }
    }
    return out;
}

// One backward G1..G4 step on each member of the display closure.
inline std::vector<Sequent> grishin_moves(const Sequent& s) {
    std::vector<Sequent> out;
    std::unordered_set<Sequent, SequentHash> seen;
    for (const Sequent& m : display_closure(s))
        for (SRule r : {SRule::G1, SRule::G2, SRule::G3, SRule::G4})
            if (auto p = backward(r, m); p && seen.insert(p->front()).second) out.push_back(p->front());
    return out;
}

struct SearchConfig {
    std::size_t max_logical_depth = std::numeric_limits<std::size_t>::max();
    // Cut is never generated by search; this flag only governs the checker.
    bool allow_cut = false;
    std::size_t max_proofs = 0;  // 0 = unlimited
    // When false, the search stops as soon as max_proofs proofs are found and
    // the reported count is only a lower bound.
    bool count_all = true;
    // When set, only proofs using exactly this many G1..G4 steps are returned.
    std::optional<std::array<int, 4>> grishin_budget;
};

enum class SearchStatus { Proved, NoProof, DepthExhausted };

struct SearchResult {
    std::vector<SequentProof> proofs;
    std::uint64_t count = 0;  // saturating
    bool depth_exhausted = false;

    SearchStatus status() const {
        if (count > 0) return SearchStatus::Proved;
        return depth_exhausted ? SearchStatus::DepthExhausted : SearchStatus::NoProof;
    }
};

inline const char* status_name(SearchStatus s) {
    switch (s) {
    case SearchStatus::Proved: return "proved";
    case SearchStatus::NoProof: return "no proof";
    case SearchStatus::DepthExhausted: return "depth exhausted";
    }
    return "?";
}

namespace detail {

inline std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) {
    return a > std::numeric_limits<std::uint64_t>::max() - b ? std::numeric_limits<std::uint64_t>::max() : a + b;
}

inline std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
    if (a == 0 || b == 0) return 0;
    return a > std::numeric_limits<std::uint64_t>::max() / b ? std::numeric_limits<std::uint64_t>::max() : a * b;
}

using Budget = std::array<int, 4>;

class DisplaySearch {
public:
    explicit DisplaySearch(const SearchConfig& cfg)
        : cfg_(cfg), cap_(cfg.max_proofs == 0 ? std::numeric_limits<std::size_t>::max() : cfg.max_proofs) {}

    SearchResult run(const Sequent& s) {
        Budget b = cfg_.grishin_budget ? *cfg_.grishin_budget : Budget{};
        return *solve(s, cfg_.max_logical_depth, b);
    }

private:
    struct Key {
        Sequent s;
        std::size_t depth;
        Budget budget;
        bool operator==(const Key& o) const { return depth == o.depth && budget == o.budget && s == o.s; }
    };
    struct KeyHash {
        std::size_t operator()(const Key& k) const {
            std::size_t h = k.s.hash() ^ (k.depth * 0x9e3779b97f4a7c15ull);
            for (int x : k.budget) h = h * 31 + static_cast<std::size_t>(x);
            return h;
        }
    };
    struct State {
        Sequent s;
        Budget budget;
        std::size_t parent;
        SRule rule;
    };
    struct StateHash {
        std::size_t operator()(const std::pair<Sequent, Budget>& k) const {
            std::size_t h = k.first.hash();
            for (int x : k.second) h = h * 31 + static_cast<std::size_t>(x);
            return h;
        }
    };

    bool budgeted() const { return cfg_.grishin_budget.has_value(); }
    bool full(const SearchResult& r) const { return !cfg_.count_all && r.proofs.size() >= cap_; }

    // Structural orbit: display moves in both directions plus backward G steps.
    std::vector<State> orbit(const Sequent& s, const Budget& b) {
        std::vector<State> out{{s, b, SIZE_MAX, SRule::Ax}};
        std::unordered_set<std::pair<Sequent, Budget>, StateHash> seen{{s, b}};
        for (std::size_t i = 0; i < out.size(); ++i) {
            for (SRule r : {SRule::Rp1, SRule::Rp2, SRule::Rp3, SRule::Rp4, SRule::Drp1, SRule::Drp2, SRule::Drp3,
                            SRule::Drp4, SRule::G1, SRule::G2, SRule::G3, SRule::G4}) {
                Budget nb = out[i].budget;
                if (is_grishin_rule(r) && budgeted()) {
                    int& k = nb[static_cast<int>(to_grule(r))];
                    if (k == 0) continue;
                    --k;
                }
                auto p = backward(r, out[i].s);
                if (!p) continue;
                if (seen.insert({p->front(), nb}).second) out.push_back({p->front(), nb, i, r});
            }
        }
        return out;
    }

    static SequentProof wrap(const std::vector<State>& orb, std::size_t i, SequentProof p) {
        while (orb[i].parent != SIZE_MAX) {
            std::size_t up = orb[i].parent;
            p = SequentProof(orb[up].s, orb[i].rule, {std::move(p)});
            i = up;
        }
        return p;
    }

    void add(SearchResult& out, std::uint64_t n, std::vector<SequentProof> ps, const std::vector<State>& orb, std::size_t i) {
        out.count = sat_add(out.count, n);
        for (auto& p : ps) {
            if (out.proofs.size() >= cap_) break;
            out.proofs.push_back(wrap(orb, i, std::move(p)));
        }
    }

    // All ways of splitting a budget between two premises.
    std::vector<std::pair<Budget, Budget>> splits(const Budget& b) const {
        std::vector<std::pair<Budget, Budget>> out;
        if (!budgeted()) {
            out.push_back({b, b});
            return out;
        }
        Budget l{};
        std::function<void(int)> go = [&](int k) {
            if (k == 4) {
                Budget r;
                for (int i = 0; i < 4; ++i) r[i] = b[i] - l[i];
                out.push_back({l, r});
                return;
            }
            for (l[k] = 0; l[k] <= b[k]; ++l[k]) go(k + 1);
        };
        go(0);
        return out;
    }

    std::shared_ptr<SearchResult> solve(const Sequent& s, std::size_t depth, const Budget& b) {
        depth = std::min(depth, sequent_connectives(s));
        Key key{s, depth, b};
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;
        auto res = std::make_shared<SearchResult>();
        auto orb = orbit(s, b);
        for (std::size_t i = 0; i < orb.size() && !full(*res); ++i) {
            const Sequent& m = orb[i].s;
            const Budget& mb = orb[i].budget;
            if (m.ant.is_leaf() && m.suc.is_leaf() && m.ant.formula().is_atom() && m.ant.formula() == m.suc.formula() &&
                (!budgeted() || mb == Budget{})) {
                add(*res, 1, {SequentProof(m, SRule::Ax)}, orb, i);
            }
            for (SRule r : all_srules) {
                if (!is_logical_rule(r) || full(*res)) continue;
                auto prem = backward(r, m);
                if (!prem) continue;
                if (depth == 0) {
                    res->depth_exhausted = true;
                    continue;
                }
                if (prem->size() == 1) {
                    auto sub = solve(prem->front(), depth - 1, mb);
                    res->depth_exhausted |= sub->depth_exhausted;
                    std::vector<SequentProof> ps;
                    for (auto& q : sub->proofs) ps.push_back(SequentProof(m, r, {q}));
                    add(*res, sub->count, std::move(ps), orb, i);
                    continue;
                }
                for (auto& [lb, rb] : splits(mb)) {
                    auto left = solve((*prem)[0], depth - 1, lb);
                    res->depth_exhausted |= left->depth_exhausted;
                    if (left->count == 0) continue;
                    auto right = solve((*prem)[1], depth - 1, rb);
                    res->depth_exhausted |= right->depth_exhausted;
                    if (right->count == 0) continue;
                    std::vector<SequentProof> ps;
                    std::size_t room = cap_ - std::min(cap_, res->proofs.size());
                    for (auto& x : left->proofs) {
                        for (auto& y : right->proofs) {
                            if (ps.size() >= room) break;
                            ps.push_back(SequentProof(m, r, {x, y}));
                        }
                        if (ps.size() >= room) break;
                    }
                    add(*res, sat_mul(left->count, right->count), std::move(ps), orb, i);
                }
            }
        }
        if (!cfg_.count_all) res->count = res->proofs.size();
        memo_.emplace(std::move(key), res);
        return res;
    }

    SearchConfig cfg_;
    std::size_t cap_;
    std::unordered_map<Key, std::shared_ptr<SearchResult>, KeyHash> memo_;
};

} // namespace detail

// Cut-free backward search over the structural orbit of s.
inline SearchResult prove(const Sequent& s, const SearchConfig& cfg = {}) {
    if (!validate_sequent(s) || s.focus != Focus::None) throw std::invalid_argument("prove: ill-formed sequent " + to_string(s));
    return detail::DisplaySearch(cfg).run(s);
}

inline bool provable(const Sequent& s) {
    SearchConfig cfg;
    cfg.max_proofs = 1;
    cfg.count_all = false;
    return prove(s, cfg).status() == SearchStatus::Proved;
}

// ---- arrows and sequent proofs ----

namespace detail {

// From A$B |- Y to A.$.B |- Y (or dually on the right) by a cut against
// the two-premise rule applied to axioms.
inline SequentProof unrewrite(const SequentProof& p, bool left_side) {
    const Sequent& s = p.conclusion();
    const Structure& side = left_side ? s.ant : s.suc;
    if (!side.is_leaf() || side.formula().is_atom()) throw ProofError("nothing to unfold");
    const Formula& f = side.formula();
    if (positive_conn(f.conn()) != left_side) throw ProofError("connective on the wrong side");
    SequentProof intro = derive(two_premise_rule(f.conn()), {axiom_proof(f.left()), axiom_proof(f.right())});
    return left_side ? derive(SRule::Cut, {intro, p}) : derive(SRule::Cut, {p, intro});
}

inline SequentProof grishin_axiom_proof(ArrowRule r, const Formula& a, const Formula& b, const Formula& c) {
    auto ax = axiom_proof;
    switch (r) {
    case ArrowRule::AxD: {  // (a(\)b)*c |- a(\)(b*c)
        SequentProof bc = derive(SRule::ProdR, {ax(b), ax(c)});
        SequentProof p = derive(SRule::LDiffR, {ax(a), bc});
        p = derive(SRule::Drp2, {p});
        p = derive(SRule::G1, {p});
        p = derive(SRule::LDiffL, {p});
        p = derive(SRule::Rp2, {p});
        return derive(SRule::ProdL, {p});
    }
    case ArrowRule::AxQ: {  // c*(a(\)b) |- a(\)(c*b)
        SequentProof cb = derive(SRule::ProdR, {ax(c), ax(b)});
        SequentProof p = derive(SRule::LDiffR, {ax(a), cb});
        p = derive(SRule::Drp2, {p});
        p = derive(SRule::G2, {p});
        p = derive(SRule::LDiffL, {p});
        p = derive(SRule::Rp4, {p});
        return derive(SRule::ProdL, {p});
    }
    case ArrowRule::AxB: {  // c*(b(/)a) |- (c*b)(/)a
        SequentProof cb = derive(SRule::ProdR, {ax(c), ax(b)});
        SequentProof p = derive(SRule::RDiffR, {cb, ax(a)});
        p = derive(SRule::Drp4, {p});
        p = derive(SRule::G3, {p});
        p = derive(SRule::RDiffL, {p});
        p = derive(SRule::Rp4, {p});
        return derive(SRule::ProdL, {p});
    }
    case ArrowRule::AxP: {  // (b(/)a)*c |- (b*c)(/)a
        SequentProof bc = derive(SRule::ProdR, {ax(b), ax(c)});
        SequentProof p = derive(SRule::RDiffR, {bc, ax(a)});
        p = derive(SRule::Drp4, {p});
        p = derive(SRule::G4, {p});
        p = derive(SRule::RDiffL, {p});
        p = derive(SRule::Rp2, {p});
        return derive(SRule::ProdL, {p});
    }
    default: break;
    }
    throw ProofError("not a primitive axiom");
}

inline SequentProof arrow_proof_to_sequent(const ArrowProof& f) {
    auto sub = [&] { return arrow_proof_to_sequent(f.first()); };
    switch (f.rule()) {
    case ArrowRule::Id: return axiom_proof(f.param(0));
    case ArrowRule::Comp: return derive(SRule::Cut, {arrow_proof_to_sequent(f.second()), sub()});
    // f : A*B -> C  gives  A |- C/B
    case ArrowRule::ResOver: return derive(SRule::OverR, {derive(SRule::Rp1, {unrewrite(sub(), true)})});
    case ArrowRule::ResOverInv: return derive(SRule::ProdL, {derive(SRule::Rp2, {unrewrite(sub(), false)})});
    case ArrowRule::ResUnder: return derive(SRule::UnderR, {derive(SRule::Rp3, {unrewrite(sub(), true)})});
    case ArrowRule::ResUnderInv: return derive(SRule::ProdL, {derive(SRule::Rp4, {unrewrite(sub(), false)})});
    case ArrowRule::CoResLDiff: return derive(SRule::LDiffL, {derive(SRule::Drp1, {unrewrite(sub(), false)})});
    case ArrowRule::CoResLDiffInv: return derive(SRule::CoprodR, {derive(SRule::Drp2, {unrewrite(sub(), true)})});
    case ArrowRule::CoResRDiff: return derive(SRule::RDiffL, {derive(SRule::Drp3, {unrewrite(sub(), false)})});
    case ArrowRule::CoResRDiffInv: return derive(SRule::CoprodR, {derive(SRule::Drp4, {unrewrite(sub(), true)})});
    case ArrowRule::AxD:
    case ArrowRule::AxQ:
    case ArrowRule::AxB:
    case ArrowRule::AxP: return grishin_axiom_proof(f.rule(), f.param(0), f.param(1), f.param(2));
    default: return arrow_proof_to_sequent(expand_dual_axiom(f));
    }
}

} // namespace detail

inline SequentProof arrow_to_proof(const Arrow& a) {
    if (!check(a)) throw ArrowError("arrow_to_proof: ill-typed arrow");
    return detail::arrow_proof_to_sequent(a.proof);
}

inline Arrow proof_to_arrow(const SequentProof& p) {
    if (auto c = check_proof(p, true); !c) throw ProofError("proof_to_arrow: " + c.error);
    std::function<Arrow(const SequentProof&)> go = [&](const SequentProof& q) -> Arrow {
        const Sequent& s = q.conclusion();
        Formula x = structure_to_formula(s.ant), y = structure_to_formula(s.suc);
        auto sub = [&](std::size_t i) { return go(q.premises()[i]); };
        auto wrap = [&](ArrowProof pr) { return Arrow{x, y, pr}; };
        switch (q.rule()) {
        case SRule::Ax: return wrap(id_arrow(x));
        case SRule::Cut: return wrap(comp(sub(1).proof, sub(0).proof));
        case SRule::Rp1: return wrap(res_over(sub(0).proof));
        case SRule::Rp2: return wrap(res_over_inv(sub(0).proof));
        case SRule::Rp3: return wrap(res_under(sub(0).proof));
        case SRule::Rp4: return wrap(res_under_inv(sub(0).proof));
        case SRule::Drp1: return wrap(cores_ldiff(sub(0).proof));
        case SRule::Drp2: return wrap(cores_ldiff_inv(sub(0).proof));
        case SRule::Drp3: return wrap(cores_rdiff(sub(0).proof));
        case SRule::Drp4: return wrap(cores_rdiff_inv(sub(0).proof));
        case SRule::G1:
        case SRule::G2:
        case SRule::G3:
        case SRule::G4: return wrap(distributivity_rule(sub(0), to_grule(q.rule())).proof);
        default: break;
        }
        if (is_rewrite_rule(q.rule())) return wrap(sub(0).proof);
        return wrap(mono(rule_conn(q.rule()), sub(0), sub(1)).proof);
    };
    Arrow a = go(p);
    if (!check(a)) throw ArrowError("proof_to_arrow produced an ill-typed arrow: " + check_diagnostic(a).error);
    return a;
}

// ---- text serialization ----

inline void print_proof(const SequentProof& p, std::string& out, bool unicode, int indent) {
    out.append(static_cast<std::size_t>(indent) * 2, ' ');
    out += unicode ? rule_unicode(p.rule()) : rule_name(p.rule());
    out += "  ";
    out += unicode ? to_unicode(p.conclusion()) : to_string(p.conclusion());
    out += '\n';
    for (auto& q : p.premises()) print_proof(q, out, unicode, indent + 1);
}

inline std::string to_string(const SequentProof& p) {
    std::string o;
    print_proof(p, o, false, 0);
    return o;
}

inline std::string to_unicode(const SequentProof& p) {
    std::string o;
    print_proof(p, o, true, 0);
    return o;
}

} // namespace lg
