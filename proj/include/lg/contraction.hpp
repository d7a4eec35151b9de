#pragma once

#include "lg/display.hpp"
#include "lg/proofnet.hpp"

#include <set>
#include <unordered_set>

namespace lg {

enum class StepKind {
    ROver, LProd, RUnder, LRDiff, RCoprod, LLDiff,
    G1, G2, G3, G4,
    GenROver, GenRUnder, GenLRDiff, GenLLDiff
};

inline const char* step_name(StepKind k) {
    switch (k) {
    case StepKind::ROver: return "R/";
    case StepKind::LProd: return "L*";
    case StepKind::RUnder: return "R\\";
    case StepKind::LRDiff: return "L(/)";
    case StepKind::RCoprod: return "R(+)";
    case StepKind::LLDiff: return "L(\\)";
    case StepKind::G1: return "G1";
    case StepKind::G2: return "G2";
    case StepKind::G3: return "G3";
    case StepKind::G4: return "G4";
    case StepKind::GenROver: return "gen-R/";
    case StepKind::GenRUnder: return "gen-R\\";
    case StepKind::GenLRDiff: return "gen-L(/)";
    case StepKind::GenLLDiff: return "gen-L(\\)";
    }
    return "?";
}

inline std::string step_unicode(StepKind k) {
    switch (k) {
    case StepKind::LProd: return "L⊗";
    case StepKind::LRDiff: return "L⊘";
    case StepKind::RCoprod: return "R⊕";
    case StepKind::LLDiff: return "L⊘̸";
    case StepKind::GenLRDiff: return "gen-L⊘";
    case StepKind::GenLLDiff: return "gen-L⊘̸";
    default: return step_name(k);
    }
}

inline std::optional<StepKind> parse_step_name(const std::string& s) {
    for (int i = 0; i <= static_cast<int>(StepKind::GenLLDiff); ++i) {
        auto k = static_cast<StepKind>(i);
        if (s == step_name(k) || s == step_unicode(k)) return k;
    }
    return std::nullopt;
}

inline bool is_contraction(StepKind k) { return k <= StepKind::LLDiff; }
inline bool is_interaction(StepKind k) { return k >= StepKind::G1 && k <= StepKind::G4; }
inline bool is_generalized(StepKind k) { return k >= StepKind::GenROver; }

// Redex link ids: (tensor, cotensor) for contractions, (Lambek tensor,
// Grishin tensor) for interactions, (tensor, path links..., cotensor) for
// generalized contractions, whose sides give the branch taken at each path
// link. merged is the surviving vertex of a contraction.
struct RewriteStep {
    StepKind kind = StepKind::ROver;
    std::vector<int> redex;
    std::vector<int> sides;
    int merged = -1;
    Aps result;
};

namespace detail {

inline bool all_distinct(std::vector<int> v) {
    std::sort(v.begin(), v.end());
    return std::adjacent_find(v.begin(), v.end()) == v.end();
}

inline void replace_vertex(Aps& a, int from, int to) {
    for (auto& k : a.links) {
        for (int& v : k.premises)
            if (v == from) v = to;
        for (int& v : k.conclusions)
            if (v == from) v = to;
        if (k.main == from) k.main = to;
    }
}

inline void erase_link(Aps& a, int id) { a.links.erase(a.links.begin() + a.link_index(id)); }

inline void kill(Aps& a, int v) {
    a.alive[v] = false;
    a.hyp[v].reset();
    a.con[v].reset();
}

// Removes both links and the two middle vertices, then merges drop into
// keep; keep takes drop's conclusion label.
inline Aps contract(const Aps& a, int tensor, int cotensor, int keep, int drop, int mid1, int mid2) {
    Aps r = a;
    erase_link(r, tensor);
    erase_link(r, cotensor);
    kill(r, mid1);
    kill(r, mid2);
    if (r.con[drop]) r.con[keep] = r.con[drop];
    if (r.hyp[drop] && !r.hyp[keep]) r.hyp[keep] = r.hyp[drop];
    kill(r, drop);
    replace_vertex(r, drop, keep);
    return r;
}

struct ContractionShape {
    StepKind kind;
    int keep, drop, mid1, mid2;
};

inline std::optional<ContractionShape> contraction_shape(const Link& t, const Link& c) {
    if (t.kind != LinkKind::Tensor || c.kind != LinkKind::Cotensor) return std::nullopt;
    std::optional<ContractionShape> s;
    if (t.lambek_shape() && c.grishin_shape() && t.conclusions[0] == c.premises[0]) {
        int ab = c.premises[0];
        if (t.premises[1] == c.conclusions[1] && c.main == c.conclusions[0])
            s = ContractionShape{StepKind::ROver, t.premises[0], c.conclusions[0], ab, t.premises[1]};
        else if (t.premises[0] == c.conclusions[0] && c.main == c.conclusions[1])
            s = ContractionShape{StepKind::RUnder, t.premises[1], c.conclusions[1], ab, t.premises[0]};
    } else if (t.lambek_shape() && c.premises.size() == 1 && c.conclusions.size() == 2 && c.main == c.premises[0] &&
               t.premises == c.conclusions) {
        s = ContractionShape{StepKind::LProd, c.premises[0], t.conclusions[0], t.premises[0], t.premises[1]};
    } else if (t.grishin_shape() && c.lambek_shape() && c.conclusions[0] == t.premises[0]) {
        int ab = t.premises[0];
        if (c.premises[1] == t.conclusions[1] && c.main == c.premises[0])
            s = ContractionShape{StepKind::LRDiff, c.premises[0], t.conclusions[0], ab, c.premises[1]};
        else if (c.premises[0] == t.conclusions[0] && c.main == c.premises[1])
            s = ContractionShape{StepKind::LLDiff, c.premises[1], t.conclusions[1], ab, c.premises[0]};
    } else if (t.grishin_shape() && c.premises.size() == 2 && c.conclusions.size() == 1 && c.main == c.conclusions[0] &&
               t.conclusions == c.premises) {
        s = ContractionShape{StepKind::RCoprod, t.premises[0], c.conclusions[0], t.conclusions[0], t.conclusions[1]};
    }
    if (s && !all_distinct({s->keep, s->drop, s->mid1, s->mid2})) s.reset();
    return s;
}

} // namespace detail

inline std::vector<RewriteStep> contraction_steps(const Aps& a, bool first_only = false) {
    std::vector<RewriteStep> out;
    for (auto& c : a.links) {
        if (c.kind != LinkKind::Cotensor) continue;
        for (auto& t : a.links) {
            auto s = detail::contraction_shape(t, c);
            if (!s) continue;
            out.push_back({s->kind, {t.id, c.id}, {}, s->keep, detail::contract(a, t.id, c.id, s->keep, s->drop, s->mid1, s->mid2)});
            if (first_only) return out;
        }
    }
    return out;
}

namespace detail {

// The interaction rewires a Lambek tensor [x,y]->[m] over a Grishin tensor
// [m]->[v,w]; the new middle vertex reuses m, the Lambek-shaped result keeps
// the Lambek link's id and the Grishin-shaped result the Grishin link's.
inline Aps interact(const Aps& a, StepKind kind, int lambek, int grishin) {
    Aps r = a;
    Link& l = r.links[r.link_index(lambek)];
    Link& g = r.links[r.link_index(grishin)];
    int x = l.premises[0], y = l.premises[1], m = l.conclusions[0];
    int v = g.conclusions[0], w = g.conclusions[1];
    switch (kind) {
    case StepKind::G1:
        g.premises = {x}, g.conclusions = {v, m};
        l.premises = {m, y}, l.conclusions = {w};
        break;
    case StepKind::G2:
        g.premises = {x}, g.conclusions = {m, w};
        l.premises = {m, y}, l.conclusions = {v};
        break;
    case StepKind::G3:
        g.premises = {y}, g.conclusions = {m, w};
        l.premises = {x, m}, l.conclusions = {v};
        break;
    case StepKind::G4:
        g.premises = {y}, g.conclusions = {v, m};
        l.premises = {x, m}, l.conclusions = {w};
        break;
    default: throw std::invalid_argument("not an interaction");
    }
    return r;
}

inline bool interaction_redex(const Link& l, const Link& g) {
    return l.kind == LinkKind::Tensor && g.kind == LinkKind::Tensor && l.lambek_shape() && g.grishin_shape() &&
           l.conclusions[0] == g.premises[0] &&
           all_distinct({l.premises[0], l.premises[1], l.conclusions[0], g.conclusions[0], g.conclusions[1]});
}

} // namespace detail

inline std::vector<RewriteStep> interaction_steps(const Aps& a) {
    std::vector<RewriteStep> out;
    Incidence inc = a.incidence();
    for (auto& l : a.links) {
        if (l.kind != LinkKind::Tensor || !l.lambek_shape()) continue;
        int below = inc.below[l.conclusions[0]];
        if (below < 0 || !detail::interaction_redex(l, a.links[below])) continue;
        int g = a.links[below].id;
        for (auto k : {StepKind::G1, StepKind::G2, StepKind::G3, StepKind::G4})
            out.push_back({k, {l.id, g}, {}, -1, detail::interact(a, k, l.id, g)});
    }
    return out;
}

// ---- generalized contractions ----

namespace detail {

inline StepKind path_interaction(StepKind gen, int side) {
    switch (gen) {
    case StepKind::GenROver: return side == 1 ? StepKind::G1 : StepKind::G2;
    case StepKind::GenRUnder: return side == 0 ? StepKind::G3 : StepKind::G4;
    case StepKind::GenLRDiff: return side == 0 ? StepKind::G2 : StepKind::G3;
    case StepKind::GenLLDiff: return side == 0 ? StepKind::G1 : StepKind::G4;
    default: throw std::invalid_argument("not a generalized contraction");
    }
}

inline StepKind base_contraction(StepKind gen) {
    switch (gen) {
    case StepKind::GenROver: return StepKind::ROver;
    case StepKind::GenRUnder: return StepKind::RUnder;
    case StepKind::GenLRDiff: return StepKind::LRDiff;
    case StepKind::GenLLDiff: return StepKind::LLDiff;
    default: throw std::invalid_argument("not a generalized contraction");
    }
}

// Lambek tensor whose conclusion reaches the cotensor through a downward
// path of Grishin tensors. Each path link keeps its off-path conclusion; the
// chain of path vertices shifts up by one link.
inline Aps generalized_right(const Aps& a, int tensor, const std::vector<int>& path, const std::vector<int>& sides,
                             int cotensor, int hyp, int shared, int& merged) {
    Aps r = a;
    std::vector<int> m;
    for (int id : path) m.push_back(r.links[r.link_index(id)].premises[0]);
    int p = r.links[r.link_index(path.back())].conclusions[sides.back()];
    const Link& c = r.links[r.link_index(cotensor)];
    int drop = c.main;
    int prev = hyp;
    for (std::size_t j = 0; j < path.size(); ++j) {
        Link& g = r.links[r.link_index(path[j])];
        g.premises = {prev};
        g.conclusions[sides[j]] = m[j];
        prev = m[j];
    }
    erase_link(r, tensor);
    erase_link(r, cotensor);
    kill(r, p);
    kill(r, shared);
    r.con[prev] = r.con[drop];
    kill(r, drop);
    replace_vertex(r, drop, prev);
    merged = prev;
    return r;
}

// Grishin tensor whose premise reaches the cotensor through an upward path
// of Lambek tensors.
inline Aps generalized_left(const Aps& a, int tensor, const std::vector<int>& path, const std::vector<int>& sides,
                            int cotensor, int concl, int shared, int& merged) {
    Aps r = a;
    std::vector<int> m;
    for (int id : path) m.push_back(r.links[r.link_index(id)].conclusions[0]);
    int p = r.links[r.link_index(path.back())].premises[sides.back()];
    const Link& c = r.links[r.link_index(cotensor)];
    int keep = c.main;
    int prev = concl;
    for (std::size_t j = 0; j < path.size(); ++j) {
        Link& l = r.links[r.link_index(path[j])];
        l.conclusions = {prev};
        l.premises[sides[j]] = j + 1 == path.size() ? keep : m[j];
        prev = m[j];
    }
    erase_link(r, tensor);
    erase_link(r, cotensor);
    kill(r, p);
    kill(r, shared);
    int drop = m.back();
    if (r.con[drop]) r.con[keep] = r.con[drop];
    kill(r, drop);
    merged = keep;
    return r;
}

} // namespace detail

// Contractions reached through at least one interaction, performed in one
// step.
inline std::vector<RewriteStep> generalized_steps(const Aps& a) {
    std::vector<RewriteStep> out;
    Incidence inc = a.incidence();
    auto link_at = [&](int li) -> const Link* { return li < 0 ? nullptr : &a.links[li]; };
    for (auto& t : a.links) {
        if (t.kind != LinkKind::Tensor) continue;
        if (t.lambek_shape()) {
            for (StepKind kind : {StepKind::GenROver, StepKind::GenRUnder}) {
                bool over = kind == StepKind::GenROver;
                int shared = over ? t.premises[1] : t.premises[0];
                int hyp = over ? t.premises[0] : t.premises[1];
                std::vector<int> path, sides, verts{hyp, shared};
                std::function<void(int)> walk = [&](int v) {
                    verts.push_back(v);
                    const Link* k = link_at(inc.below[v]);
                    if (k && k->kind == LinkKind::Cotensor && k->grishin_shape() && !path.empty()) {
                        int b = over ? k->conclusions[1] : k->conclusions[0];
                        int main = over ? k->conclusions[0] : k->conclusions[1];
                        auto vs = verts;
                        vs.push_back(main);
                        if (b == shared && k->main == main && detail::all_distinct(vs)) {
                            int merged = -1;
                            Aps res = detail::generalized_right(a, t.id, path, sides, k->id, hyp, shared, merged);
                            std::vector<int> redex{t.id};
                            redex.insert(redex.end(), path.begin(), path.end());
                            redex.push_back(k->id);
                            out.push_back({kind, redex, sides, merged, std::move(res)});
                        }
                    } else if (k && k->kind == LinkKind::Tensor && k->grishin_shape() &&
                               std::find(path.begin(), path.end(), k->id) == path.end()) {
                        for (int s : {0, 1}) {
                            path.push_back(k->id);
                            sides.push_back(s);
                            verts.push_back(k->conclusions[1 - s]);
                            walk(k->conclusions[s]);
                            verts.pop_back();
                            path.pop_back();
                            sides.pop_back();
                        }
                    }
                    verts.pop_back();
                };
                walk(t.conclusions[0]);
            }
        } else if (t.grishin_shape()) {
            for (StepKind kind : {StepKind::GenLRDiff, StepKind::GenLLDiff}) {
                bool rdiff = kind == StepKind::GenLRDiff;
                int shared = rdiff ? t.conclusions[1] : t.conclusions[0];
                int concl = rdiff ? t.conclusions[0] : t.conclusions[1];
                std::vector<int> path, sides, verts{concl, shared};
                std::function<void(int)> walk = [&](int v) {
                    verts.push_back(v);
                    const Link* k = link_at(inc.above[v]);
                    if (k && k->kind == LinkKind::Cotensor && k->lambek_shape() && !path.empty()) {
                        int b = rdiff ? k->premises[1] : k->premises[0];
                        int main = rdiff ? k->premises[0] : k->premises[1];
                        auto vs = verts;
                        vs.push_back(main);
                        if (b == shared && k->main == main && detail::all_distinct(vs)) {
                            int merged = -1;
                            Aps res = detail::generalized_left(a, t.id, path, sides, k->id, concl, shared, merged);
                            std::vector<int> redex{t.id};
                            redex.insert(redex.end(), path.begin(), path.end());
                            redex.push_back(k->id);
                            out.push_back({kind, redex, sides, merged, std::move(res)});
                        }
                    } else if (k && k->kind == LinkKind::Tensor && k->lambek_shape() &&
                               std::find(path.begin(), path.end(), k->id) == path.end()) {
                        for (int s : {0, 1}) {
                            path.push_back(k->id);
                            sides.push_back(s);
                            verts.push_back(k->premises[1 - s]);
                            walk(k->premises[s]);
                            verts.pop_back();
                            path.pop_back();
                            sides.pop_back();
                        }
                    }
                    verts.pop_back();
                };
                walk(t.premises[0]);
            }
        }
    }
    return out;
}

// The same generalized contraction as a sequence of interactions followed by
// the plain contraction.
inline std::vector<RewriteStep> expand_generalized(const Aps& a, const RewriteStep& g) {
    std::vector<RewriteStep> out;
    Aps cur = a;
    int tensor = g.redex.front(), cotensor = g.redex.back();
    bool right = g.kind == StepKind::GenROver || g.kind == StepKind::GenRUnder;
    for (std::size_t j = 0; j + 2 < g.redex.size(); ++j) {
        int path_link = g.redex[j + 1];
        StepKind k = detail::path_interaction(g.kind, g.sides[j]);
        int lambek = right ? tensor : path_link, grishin = right ? path_link : tensor;
        const Link& l = cur.links[cur.link_index(lambek)];
        const Link& gr = cur.links[cur.link_index(grishin)];
        if (!detail::interaction_redex(l, gr)) throw std::logic_error("generalized contraction path is not interactive");
        Aps next = detail::interact(cur, k, lambek, grishin);
        out.push_back({k, {lambek, grishin}, {}, -1, next});
        cur = std::move(next);
    }
    const Link& t = cur.links[cur.link_index(tensor)];
    const Link& c = cur.links[cur.link_index(cotensor)];
    auto s = detail::contraction_shape(t, c);
    if (!s || s->kind != detail::base_contraction(g.kind)) throw std::logic_error("generalized contraction does not end in a redex");
    out.push_back({s->kind, {tensor, cotensor}, {}, s->keep, detail::contract(cur, tensor, cotensor, s->keep, s->drop, s->mid1, s->mid2)});
    return out;
}

// Re-applies a recorded step to a structure by link ids.
inline std::optional<RewriteStep> apply_step(const Aps& a, StepKind kind, const std::vector<int>& redex,
                                             const std::vector<int>& sides = {}) {
    std::vector<RewriteStep> cands;
    if (is_contraction(kind)) cands = contraction_steps(a);
    else if (is_interaction(kind)) cands = interaction_steps(a);
    else cands = generalized_steps(a);
    for (auto& s : cands)
        if (s.kind == kind && s.redex == redex && s.sides == sides) return s;
    return std::nullopt;
}

// ---- net recognition ----

// Invariants every net satisfies: connected, and the link/vertex balance
// that contraction preserves and the final tree attains.
inline bool net_preconditions(const Aps& a) {
    if (!is_connected(a)) return false;
    long links = static_cast<long>(a.links.size()), verts = a.live_vertices();
    return 2 * links - verts == static_cast<long>(a.count(LinkKind::Cotensor)) - 1;
}

enum class NetStatus { Net, NotNet, BudgetExhausted };

inline const char* net_status_name(NetStatus s) {
    switch (s) {
    case NetStatus::Net: return "net";
    case NetStatus::NotNet: return "not a net";
    case NetStatus::BudgetExhausted: return "budget exhausted";
    }
    return "?";
}

struct NetConfig {
    std::size_t budget = 100000;  // distinct states explored
    // Commit to the first available contraction instead of branching.
    bool eager_contraction = true;
    bool generalized = false;
};

struct NetResult {
    NetStatus status = NetStatus::NotNet;
    Aps initial;
    std::vector<RewriteStep> trace;
    std::size_t states = 0;

    bool is_net() const { return status == NetStatus::Net; }
    const Aps& final_tree() const { return trace.empty() ? initial : trace.back().result; }
};

inline std::vector<RewriteStep> rewrite_moves(const Aps& a, const NetConfig& cfg) {
    auto moves = contraction_steps(a, cfg.eager_contraction);
    if (cfg.eager_contraction && !moves.empty()) return moves;
    if (cfg.generalized)
        for (auto& g : generalized_steps(a)) moves.push_back(std::move(g));
    for (auto& i : interaction_steps(a)) moves.push_back(std::move(i));
    return moves;
}

// Depth-first search for a conversion sequence ending in a tensor tree,
// with a memo of visited states up to isomorphism.
inline NetResult is_proof_net(const Aps& a, const NetConfig& cfg = {}) {
    NetResult res;
    res.initial = a;
    if (!net_preconditions(a)) return res;
    if (is_tree(a)) {
        res.status = NetStatus::Net;
        return res;
    }
    std::unordered_set<std::vector<int>, KeyHash> seen{canonical_key(a)};
    struct Frame {
        std::vector<RewriteStep> moves;
        std::size_t next = 0;
    };
    std::vector<Frame> stack;
    stack.push_back({rewrite_moves(a, cfg)});
    while (!stack.empty()) {
        Frame& f = stack.back();
        if (f.next == f.moves.size()) {
            stack.pop_back();
            if (!res.trace.empty()) res.trace.pop_back();
            continue;
        }
        RewriteStep step = f.moves[f.next++];
        if (!seen.insert(canonical_key(step.result)).second) continue;
        if (++res.states > cfg.budget) {
            res.status = NetStatus::BudgetExhausted;
            res.trace.clear();
            return res;
        }
        if (is_tree(step.result)) {
            res.trace.push_back(std::move(step));
            res.status = NetStatus::Net;
            return res;
        }
        auto moves = rewrite_moves(step.result, cfg);
        res.trace.push_back(std::move(step));
        stack.push_back({std::move(moves)});
    }
    return res;
}

inline NetResult is_proof_net(const ProofStructure& ps, const NetConfig& cfg = {}) { return is_proof_net(to_abstract(ps), cfg); }

// Interactions used by a trace, generalized steps counted by their paths.
inline std::array<int, 4> interaction_usage(const std::vector<RewriteStep>& trace) {
    std::array<int, 4> n{};
    for (auto& s : trace) {
        if (is_interaction(s.kind)) ++n[static_cast<int>(s.kind) - static_cast<int>(StepKind::G1)];
        if (is_generalized(s.kind))
            for (int side : s.sides) ++n[static_cast<int>(detail::path_interaction(s.kind, side)) - static_cast<int>(StepKind::G1)];
    }
    return n;
}

// ---- components and reduction trees ----

// Connected components after erasing cotensor links, as sets of tensor link
// ids; vertices not touched by any tensor link form no component.
inline std::vector<std::vector<int>> tensor_components(const Aps& a) {
    std::vector<int> parent(a.vertex_count);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
    for (auto& k : a.links) {
        if (k.kind != LinkKind::Tensor) continue;
        int first = k.premises.front();
        for (int v : k.premises) parent[find(v)] = find(first);
        for (int v : k.conclusions) parent[find(v)] = find(first);
    }
    std::map<int, std::vector<int>> by_root;
    for (auto& k : a.links)
        if (k.kind == LinkKind::Tensor) by_root[find(k.premises.front())].push_back(k.id);
    std::vector<std::vector<int>> out;
    for (auto& [r, ids] : by_root) out.push_back(std::move(ids));
    return out;
}

inline std::vector<int> component_vertices(const Aps& a, const std::vector<int>& ids) {
    std::vector<int> vs;
    for (int id : ids) {
        const Link& k = a.links[a.link_index(id)];
        vs.insert(vs.end(), k.premises.begin(), k.premises.end());
        vs.insert(vs.end(), k.conclusions.begin(), k.conclusions.end());
    }
    std::sort(vs.begin(), vs.end());
    vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
    return vs;
}

// Components no cotensor points into with its main tentacle.
inline std::vector<std::vector<int>> active_components(const Aps& a) {
    std::vector<bool> is_main(a.vertex_count, false);
    for (auto& k : a.links)
        if (k.kind == LinkKind::Cotensor && k.main >= 0) is_main[k.main] = true;
    std::vector<std::vector<int>> out;
    for (auto& comp : tensor_components(a)) {
        auto vs = component_vertices(a, comp);
        if (std::none_of(vs.begin(), vs.end(), [&](int v) { return is_main[v]; })) out.push_back(comp);
    }
    return out;
}

// Leaves are the initial components; each contraction makes a node whose
// children are the components it joins. steps holds the trace indices of the
// interactions performed inside a node's component.
struct ReductionNode {
    std::vector<int> children;
    std::vector<int> links;  // initial link ids, leaves only
    std::optional<std::size_t> contraction;
    std::vector<std::size_t> steps;
};

struct ReductionTree {
    std::vector<ReductionNode> nodes;
    int root = -1;
    bool ok = true;  // every interaction stayed within one component
};

inline ReductionTree reduction_tree(const Aps& initial, const std::vector<RewriteStep>& trace) {
    ReductionTree tree;
    std::map<int, int> node_of;  // tensor link id -> current node
    for (auto& comp : tensor_components(initial)) {
        ReductionNode n;
        n.links = comp;
        for (int id : comp) node_of[id] = static_cast<int>(tree.nodes.size());
        tree.nodes.push_back(std::move(n));
    }
    for (std::size_t i = 0; i < trace.size(); ++i) {
        const RewriteStep& s = trace[i];
        if (is_interaction(s.kind)) {
            int n0 = node_of.at(s.redex[0]), n1 = node_of.at(s.redex[1]);
            if (n0 != n1) tree.ok = false;
            tree.nodes[n0].steps.push_back(i);
        } else {
            std::vector<int> tensors{s.redex.front()};
            if (is_generalized(s.kind)) tensors.insert(tensors.end(), s.redex.begin() + 1, s.redex.end() - 1);
            std::set<int> kids;
            for (int id : tensors) kids.insert(node_of.at(id));
            Incidence inc = s.result.incidence();
            for (int li : {inc.above[s.merged], inc.below[s.merged]})
                if (li >= 0 && s.result.links[li].kind == LinkKind::Tensor) kids.insert(node_of.at(s.result.links[li].id));
            ReductionNode n;
            n.children.assign(kids.begin(), kids.end());
            n.contraction = i;
            int id = static_cast<int>(tree.nodes.size());
            for (auto& [link, node] : node_of)
                if (kids.count(node)) node = id;
            tree.nodes.push_back(std::move(n));
        }
    }
    std::set<int> live;
    for (auto& [link, node] : node_of)
        if (trace.empty() || trace.back().result.link_index(link) >= 0) live.insert(node);
    if (live.size() == 1) tree.root = *live.begin();
    else if (live.empty() && !tree.nodes.empty()) tree.root = static_cast<int>(tree.nodes.size()) - 1;
    else if (live.size() > 1) tree.ok = false;
    return tree;
}

// The trace reordered along the reduction tree: each component's
// conversions, then the contraction joining it to its parent.
inline std::vector<std::size_t> tree_order(const ReductionTree& tree) {
    std::vector<std::size_t> order;
    std::vector<bool> done(tree.nodes.size(), false);
    std::function<void(int)> visit = [&](int n) {
        if (done[n]) return;
        done[n] = true;
        for (int c : tree.nodes[n].children) visit(c);
        if (tree.nodes[n].contraction) order.push_back(*tree.nodes[n].contraction);
        order.insert(order.end(), tree.nodes[n].steps.begin(), tree.nodes[n].steps.end());
    };
    if (tree.root >= 0) visit(tree.root);
    for (int n = 0; n < static_cast<int>(tree.nodes.size()); ++n) visit(n);
    return order;
}

// Replays trace steps in the given order; nullopt when some step no longer
// applies.
inline std::optional<std::vector<RewriteStep>> replay(const Aps& initial, const std::vector<RewriteStep>& trace,
                                                      const std::vector<std::size_t>& order) {
    std::vector<RewriteStep> out;
    const Aps* cur = &initial;
    for (std::size_t i : order) {
        auto s = apply_step(*cur, trace[i].kind, trace[i].redex, trace[i].sides);
        if (!s) return std::nullopt;
        out.push_back(std::move(*s));
        cur = &out.back().result;
    }
    return out;
}

// ---- from tensor trees to sequents ----

namespace detail {

struct TreeReader {
    const Aps& a;
    Incidence inc;
    bool tagged;

    Structure hyp_leaf(int v) const {
        const Label& l = *a.hyp[v];
        return leaf(l.formula, tagged ? "h" + std::to_string(l.index) : std::string{});
    }
    Structure con_leaf(int v) const {
        const Label& l = *a.con[v];
        return leaf(l.formula, tagged ? "c" + std::to_string(l.index) : std::string{});
    }
    Structure in(int v) const {
        int li = inc.above[v];
        if (li < 0) return hyp_leaf(v);
        const Link& k = a.links[li];
        if (k.lambek_shape()) return sprod(in(k.premises[0]), in(k.premises[1]));
        if (k.conclusions[0] == v) return srdiff(in(k.premises[0]), out(k.conclusions[1]));
        return sldiff(out(k.conclusions[0]), in(k.premises[0]));
    }
    Structure out(int v) const {
        int li = inc.below[v];
        if (li < 0) return con_leaf(v);
        const Link& k = a.links[li];
        if (k.grishin_shape()) return scoprod(out(k.conclusions[0]), out(k.conclusions[1]));
        if (k.premises[0] == v) return sover(out(k.conclusions[0]), in(k.premises[1]));
        return sunder(in(k.premises[0]), out(k.conclusions[0]));
    }
};

} // namespace detail

// The sequent read off a tensor tree at its first conclusion. Tagged leaves
// carry h<i> / c<i> naming the judgement position they came from.
inline Sequent tree_sequent(const Aps& tree, bool tagged = false) {
    if (!is_tree(tree)) throw std::invalid_argument("not a tensor tree");
    for (int v = 0; v < tree.vertex_count; ++v)
        if (tree.alive[v] && tree.con[v] && tree.con[v]->index == 0) {
            detail::TreeReader r{tree, tree.incidence(), tagged};
            return Sequent(r.in(v), r.out(v));
        }
    throw std::invalid_argument("tree has no first conclusion");
}

// The cyclic order of leaves (antecedent left to right, succedent right to
// left) is the judgement's order h0..h(m-1), c(n-1)..c0.
inline bool respects_word_order(const Sequent& tagged, int hyps, int concls) {
    std::vector<Structure> ant, suc;
    collect_leaves(tagged.ant, ant);
    collect_leaves(tagged.suc, suc);
    std::vector<std::string> seen, want;
    for (auto& l : ant) seen.push_back(l.tag());
    for (auto it = suc.rbegin(); it != suc.rend(); ++it) seen.push_back(it->tag());
    for (int i = 0; i < hyps; ++i) want.push_back("h" + std::to_string(i));
    for (int i = concls - 1; i >= 0; --i) want.push_back("c" + std::to_string(i));
    if (seen.size() != want.size()) return false;
    for (std::size_t r = 0; r < want.size(); ++r) {
        bool ok = true;
        for (std::size_t i = 0; i < want.size() && ok; ++i) ok = seen[(i + r) % seen.size()] == want[i];
        if (ok) return true;
    }
    return want.empty();
}

// An sLG proof of the net's tree sequent, searched with exactly the Grishin
// steps the trace used; falls back to unrestricted search.
inline std::optional<SequentProof> sequentialize(const NetResult& r) {
    if (!r.is_net()) throw std::invalid_argument("sequentialize needs a net");
    Sequent goal = tree_sequent(r.final_tree());
    SearchConfig cfg;
    cfg.max_proofs = 1;
    cfg.count_all = false;
    cfg.grishin_budget = interaction_usage(r.trace);
    auto res = prove(goal, cfg);
    if (res.proofs.empty()) {
        cfg.grishin_budget.reset();
        res = prove(goal, cfg);
    }
    if (res.proofs.empty()) return std::nullopt;
    return res.proofs.front();
}

// ---- judgements ----

struct MatchingAnalysis {
    ProofStructure structure;
    Matching matching;
    NetResult result;
    std::optional<Sequent> tagged_sequent;  // set for nets
    int hyps = 0, concls = 0;

    bool word_order() const { return tagged_sequent && respects_word_order(*tagged_sequent, hyps, concls); }
};

// Cheap necessary condition on atoms: every atom occurs as often in
// hypothesis position as in conclusion position.
inline bool atoms_balanced(const std::vector<Formula>& hyps, const std::vector<Formula>& concls) {
    std::map<std::string, int> n;
    std::function<void(const Formula&, bool)> walk = [&](const Formula& f, bool hyp) {
        if (f.is_atom()) {
            n[f.name()] += hyp ? 1 : -1;
            return;
        }
        switch (f.conn()) {
        case Conn::Prod:
        case Conn::Coprod:
            walk(f.left(), hyp);
            walk(f.right(), hyp);
            break;
        case Conn::Over:
        case Conn::RDiff:
            walk(f.left(), hyp);
            walk(f.right(), !hyp);
            break;
        case Conn::Under:
        case Conn::LDiff:
            walk(f.left(), !hyp);
            walk(f.right(), hyp);
            break;
        }
    };
    for (auto& h : hyps) walk(h, true);
    for (auto& c : concls) walk(c, false);
    return std::all_of(n.begin(), n.end(), [](auto& p) { return p.second == 0; });
}

inline std::vector<MatchingAnalysis> analyze_judgement(const std::vector<Formula>& hyps, const std::vector<Formula>& concls,
                                                       const NetConfig& cfg = {}) {
    std::vector<MatchingAnalysis> out;
    if (!atoms_balanced(hyps, concls)) return out;
    for_each_matching(hyps, concls, [&](const ProofStructure& ps, const Matching& m) {
        MatchingAnalysis an;
        an.structure = ps;
        an.matching = m;
        an.result = is_proof_net(ps, cfg);
        an.hyps = static_cast<int>(hyps.size());
        an.concls = static_cast<int>(concls.size());
        if (an.result.is_net()) an.tagged_sequent = tree_sequent(an.result.final_tree(), true);
        out.push_back(std::move(an));
    });
    return out;
}

// Whether some matching of A |- B is a net; BudgetExhausted when none is
// and some search gave up.
inline NetStatus net_derivable(const Formula& a, const Formula& b, const NetConfig& cfg = {}) {
    if (!atoms_balanced({a}, {b})) return NetStatus::NotNet;
    NetStatus st = NetStatus::NotNet;
    bool found = false;
    for_each_matching({a}, {b}, [&](const ProofStructure& ps, const Matching&) {
        if (found) return;
        auto r = is_proof_net(ps, cfg);
        if (r.is_net()) found = true;
        else if (r.status == NetStatus::BudgetExhausted) st = NetStatus::BudgetExhausted;
    });
    return found ? NetStatus::Net : st;
}

} // namespace lg
