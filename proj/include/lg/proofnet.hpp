#pragma once

#include "lg/formula.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>

namespace lg {

enum class LinkKind { Tensor, Cotensor };

// A hyperedge: ordered premises above, ordered conclusions below. For
// cotensor links main marks the arrowed tentacle; tensor links in a proof
// structure record their main formula too, abstract structures drop it.
struct Link {
    LinkKind kind = LinkKind::Tensor;
    std::vector<int> premises, conclusions;
    int main = -1;
    std::optional<Conn> conn;
    int id = -1;  // stable across rewriting

    bool lambek_shape() const { return premises.size() == 2 && conclusions.size() == 1; }
    bool grishin_shape() const { return premises.size() == 1 && conclusions.size() == 2; }

    friend bool operator==(const Link& a, const Link& b) {
        return a.kind == b.kind && a.premises == b.premises && a.conclusions == b.conclusions && a.main == b.main &&
               a.conn == b.conn && a.id == b.id;
    }
};

enum class Position { Hypothesis, Conclusion };

// Per-vertex incident links: above = the link it concludes, below = the
// link it is a premise of (-1 when absent).
struct Incidence {
    std::vector<int> above, below;
    bool ok = true;  // each vertex at most once premise and once conclusion

    Incidence(int n, const std::vector<Link>& links) : above(n, -1), below(n, -1) {
        for (int i = 0; i < static_cast<int>(links.size()); ++i) {
            for (int v : links[i].premises) {
                if (below[v] != -1) ok = false;
                below[v] = i;
            }
            for (int v : links[i].conclusions) {
                if (above[v] != -1) ok = false;
                above[v] = i;
            }
        }
    }
};

struct ProofStructure {
    std::vector<Formula> labels;  // vertex id -> formula
    std::vector<Link> links;
    std::vector<int> hyp_roots, concl_roots;  // the judgement's formulas, in order

    int vertex_count() const { return static_cast<int>(labels.size()); }
    std::vector<int> hypotheses() const {
        Incidence inc(vertex_count(), links);
        std::vector<int> out;
        for (int v = 0; v < vertex_count(); ++v)
            if (inc.above[v] == -1) out.push_back(v);
        return out;
    }
    std::vector<int> conclusions() const {
        Incidence inc(vertex_count(), links);
        std::vector<int> out;
        for (int v = 0; v < vertex_count(); ++v)
            if (inc.below[v] == -1) out.push_back(v);
        return out;
    }
    bool well_formed() const { return Incidence(vertex_count(), links).ok; }
};

namespace detail {

inline int add_vertex(ProofStructure& ps, const Formula& f) {
    ps.labels.push_back(f);
    return ps.vertex_count() - 1;
}

// Unfolds the formula at vertex v. A new vertex that is a conclusion of the
// link continues as a hypothesis-side formula and vice versa.
inline void unfold_at(ProofStructure& ps, int v, Position pos) {
    const Formula f = ps.labels[v];
    if (f.is_atom()) return;
    Conn c = f.conn();
    int l = add_vertex(ps, f.left());
    int r = add_vertex(ps, f.right());
    Link k;
    bool hyp = pos == Position::Hypothesis;
    switch (c) {
    case Conn::Over:  // A/B
        if (hyp) k = Link{LinkKind::Tensor, {v, r}, {l}, v, c};
        else k = Link{LinkKind::Cotensor, {l}, {v, r}, v, c};
        break;
    case Conn::Prod:
        if (hyp) k = Link{LinkKind::Cotensor, {v}, {l, r}, v, c};
        else k = Link{LinkKind::Tensor, {l, r}, {v}, v, c};
        break;
    case Conn::Under:  // B\A
        if (hyp) k = Link{LinkKind::Tensor, {l, v}, {r}, v, c};
        else k = Link{LinkKind::Cotensor, {r}, {l, v}, v, c};
        break;
    case Conn::RDiff:  // A(/)B
        if (hyp) k = Link{LinkKind::Cotensor, {v, r}, {l}, v, c};
        else k = Link{LinkKind::Tensor, {l}, {v, r}, v, c};
        break;
    case Conn::Coprod:
        if (hyp) k = Link{LinkKind::Tensor, {v}, {l, r}, v, c};
        else k = Link{LinkKind::Cotensor, {l, r}, {v}, v, c};
        break;
    case Conn::LDiff:  // B(\)A
        if (hyp) k = Link{LinkKind::Cotensor, {l, v}, {r}, v, c};
        else k = Link{LinkKind::Tensor, {r}, {l, v}, v, c};
        break;
    }
    k.id = static_cast<int>(ps.links.size());
    ps.links.push_back(k);
    auto side_of = [&](int u) {
        const Link& me = ps.links.back();
        return std::find(me.conclusions.begin(), me.conclusions.end(), u) != me.conclusions.end() ? Position::Hypothesis
                                                                                                     : Position::Conclusion;
    };
    Position pl = side_of(l), pr = side_of(r);
    unfold_at(ps, l, pl);
    unfold_at(ps, r, pr);
}

inline void append(ProofStructure& into, const ProofStructure& from) {
    int off = into.vertex_count();
    into.labels.insert(into.labels.end(), from.labels.begin(), from.labels.end());
    for (Link k : from.links) {
        for (int& v : k.premises) v += off;
        for (int& v : k.conclusions) v += off;
        if (k.main >= 0) k.main += off;
        k.id = static_cast<int>(into.links.size());
        into.links.push_back(std::move(k));
    }
    for (int v : from.hyp_roots) into.hyp_roots.push_back(v + off);
    for (int v : from.concl_roots) into.concl_roots.push_back(v + off);
}

} // namespace detail

inline ProofStructure unfold(const Formula& f, Position pos) {
    ProofStructure ps;
    int root = detail::add_vertex(ps, f);
    if (pos == Position::Hypothesis) ps.hyp_roots.push_back(root);
    else ps.concl_roots.push_back(root);
    detail::unfold_at(ps, root, pos);
    return ps;
}

// Disjoint union of the unfoldings of a judgement, before any matching.
inline ProofStructure unfold_judgement(const std::vector<Formula>& hyps, const std::vector<Formula>& concls) {
    ProofStructure ps;
    for (auto& h : hyps) detail::append(ps, unfold(h, Position::Hypothesis));
    for (auto& c : concls) detail::append(ps, unfold(c, Position::Conclusion));
    return ps;
}

// Pairs (atomic conclusion vertex, atomic hypothesis vertex) of the
// unmatched unfolding, identified to form axiomatic formulas.
struct Matching {
    std::vector<std::pair<int, int>> pairs;
};

// Identifies each pair's hypothesis vertex with its conclusion vertex and
// renumbers the survivors in increasing order.
inline ProofStructure apply_matching(const ProofStructure& ps, const Matching& m) {
    std::vector<int> rep(ps.vertex_count());
    std::iota(rep.begin(), rep.end(), 0);
    for (auto [c, h] : m.pairs) {
        if (ps.labels[c] != ps.labels[h]) throw std::invalid_argument("matching pairs different atoms");
        rep[h] = c;
    }
    std::vector<int> id(ps.vertex_count(), -1);
    ProofStructure out;
    for (int v = 0; v < ps.vertex_count(); ++v)
        if (rep[v] == v) {
            id[v] = out.vertex_count();
            out.labels.push_back(ps.labels[v]);
        }
    auto map = [&](int v) { return id[rep[v]]; };
    for (Link k : ps.links) {
        for (int& v : k.premises) v = map(v);
        for (int& v : k.conclusions) v = map(v);
        if (k.main >= 0) k.main = map(k.main);
        out.links.push_back(std::move(k));
    }
    for (int v : ps.hyp_roots) out.hyp_roots.push_back(map(v));
    for (int v : ps.concl_roots) out.concl_roots.push_back(map(v));
    return out;
}

// Atomic vertices still to be matched: (conclusions, hypotheses), roots of
// the judgement excluded.
inline std::pair<std::vector<int>, std::vector<int>> open_atoms(const ProofStructure& ps) {
    Incidence inc(ps.vertex_count(), ps.links);
    std::vector<int> cs, hs;
    auto is_root = [](const std::vector<int>& roots, int v) { return std::find(roots.begin(), roots.end(), v) != roots.end(); };
    for (int v = 0; v < ps.vertex_count(); ++v) {
        if (!ps.labels[v].is_atom()) continue;
        if (inc.below[v] == -1 && !is_root(ps.concl_roots, v)) cs.push_back(v);
        if (inc.above[v] == -1 && !is_root(ps.hyp_roots, v)) hs.push_back(v);
    }
    return {cs, hs};
}

// Calls fn for every complete matching (per-atom products of bijections).
inline void for_each_matching(const std::vector<Formula>& hyps, const std::vector<Formula>& concls,
                              const std::function<void(const ProofStructure&, const Matching&)>& fn) {
    ProofStructure base = unfold_judgement(hyps, concls);
    auto [cs, hs] = open_atoms(base);
    std::map<std::string, std::pair<std::vector<int>, std::vector<int>>> by_atom;
    for (int v : cs) by_atom[base.labels[v].name()].first.push_back(v);
    for (int v : hs) by_atom[base.labels[v].name()].second.push_back(v);
    std::vector<std::pair<std::vector<int>, std::vector<int>>> groups;
    for (auto& [name, g] : by_atom) {
        if (g.first.size() != g.second.size()) return;
        groups.push_back(g);
    }
    Matching m;
    std::function<void(std::size_t)> go = [&](std::size_t gi) {
        if (gi == groups.size()) {
            fn(apply_matching(base, m), m);
            return;
        }
        auto& [gc, gh] = groups[gi];
        std::vector<int> perm = gh;
        do {
            std::size_t mark = m.pairs.size();
            for (std::size_t i = 0; i < gc.size(); ++i) m.pairs.push_back({gc[i], perm[i]});
            go(gi + 1);
            m.pairs.resize(mark);
        } while (std::next_permutation(perm.begin(), perm.end()));
    };
    go(0);
}

inline std::vector<ProofStructure> enumerate_matchings(const std::vector<Formula>& hyps, const std::vector<Formula>& concls) {
    std::vector<ProofStructure> out;
    for_each_matching(hyps, concls, [&](const ProofStructure& ps, const Matching&) { out.push_back(ps); });
    return out;
}

// ---- abstract proof structures ----

struct Label {
    Formula formula;
    int index = 0;  // position in the judgement's hypothesis or conclusion list
    friend bool operator==(const Label& a, const Label& b) { return a.index == b.index && a.formula == b.formula; }
};

// Vertex ids and link ids stay fixed under rewriting; removed vertices are
// marked dead rather than renumbered.
struct Aps {
    int vertex_count = 0;
    std::vector<bool> alive;
    std::vector<Link> links;
    std::vector<std::optional<Label>> hyp, con;  // h and c, per vertex

    Incidence incidence() const { return Incidence(vertex_count, links); }
    int live_vertices() const { return static_cast<int>(std::count(alive.begin(), alive.end(), true)); }
    std::size_t count(LinkKind k) const {
        return static_cast<std::size_t>(std::count_if(links.begin(), links.end(), [&](const Link& l) { return l.kind == k; }));
    }
    int link_index(int id) const {
        for (int i = 0; i < static_cast<int>(links.size()); ++i)
            if (links[i].id == id) return i;
        return -1;
    }
};

inline Aps to_abstract(const ProofStructure& ps) {
    Aps a;
    a.vertex_count = ps.vertex_count();
    a.alive.assign(a.vertex_count, true);
    a.hyp.assign(a.vertex_count, std::nullopt);
    a.con.assign(a.vertex_count, std::nullopt);
    for (Link k : ps.links) {
        if (k.kind == LinkKind::Tensor) k.main = -1;
        k.conn.reset();
        a.links.push_back(std::move(k));
    }
    Incidence inc = a.incidence();
    int next_h = static_cast<int>(ps.hyp_roots.size()), next_c = static_cast<int>(ps.concl_roots.size());
    for (int i = 0; i < static_cast<int>(ps.hyp_roots.size()); ++i) a.hyp[ps.hyp_roots[i]] = Label{ps.labels[ps.hyp_roots[i]], i};
    for (int i = 0; i < static_cast<int>(ps.concl_roots.size()); ++i)
        a.con[ps.concl_roots[i]] = Label{ps.labels[ps.concl_roots[i]], i};
    for (int v = 0; v < a.vertex_count; ++v) {
        if (inc.above[v] == -1 && !a.hyp[v]) a.hyp[v] = Label{ps.labels[v], next_h++};
        if (inc.below[v] == -1 && !a.con[v]) a.con[v] = Label{ps.labels[v], next_c++};
    }
    return a;
}

// Same structure with dead vertices removed and the rest renumbered.
inline Aps compact(const Aps& a) {
    std::vector<int> id(a.vertex_count, -1);
    Aps out;
    for (int v = 0; v < a.vertex_count; ++v)
        if (a.alive[v]) {
            id[v] = out.vertex_count++;
            out.alive.push_back(true);
            out.hyp.push_back(a.hyp[v]);
            out.con.push_back(a.con[v]);
        }
    for (Link k : a.links) {
        for (int& v : k.premises) v = id[v];
        for (int& v : k.conclusions) v = id[v];
        if (k.main >= 0) k.main = id[k.main];
        out.links.push_back(std::move(k));
    }
    return out;
}

inline bool is_connected(const Aps& a) {
    std::vector<int> parent(a.vertex_count);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
    for (auto& k : a.links) {
        int first = k.premises.empty() ? k.conclusions.front() : k.premises.front();
        for (int v : k.premises) parent[find(v)] = find(first);
        for (int v : k.conclusions) parent[find(v)] = find(first);
    }
    int root = -1;
    for (int v = 0; v < a.vertex_count; ++v) {
        if (!a.alive[v]) continue;
        if (root == -1) root = find(v);
        else if (find(v) != root) return false;
    }
    return root != -1;
}

// Acyclic, connected, tensor links only. Acyclicity of the incidence graph
// (vertices plus link nodes) of a connected structure means its tentacle
// count is one less than its node count.
inline bool is_tree(const Aps& a) {
    if (a.count(LinkKind::Cotensor) > 0 || !is_connected(a)) return false;
    std::size_t tentacles = 0;
    for (auto& k : a.links) tentacles += k.premises.size() + k.conclusions.size();
    return tentacles + 1 == static_cast<std::size_t>(a.live_vertices()) + a.links.size();
}

// Canonical encoding up to vertex renaming and link ids: vertices are
// numbered by a traversal that starts from the labelled vertices in label
// order and follows tentacles in their fixed order.
inline std::vector<int> canonical_key(const Aps& a) {
    Incidence inc = a.incidence();
    std::vector<int> order(a.vertex_count, -1);
    std::vector<int> queue;
    auto visit = [&](int v) {
        if (v >= 0 && a.alive[v] && order[v] == -1) {
            order[v] = static_cast<int>(queue.size());
            queue.push_back(v);
        }
    };
    std::vector<std::pair<int, int>> starts;
    for (int v = 0; v < a.vertex_count; ++v) {
        if (!a.alive[v]) continue;
        if (a.hyp[v]) starts.push_back({a.hyp[v]->index, v});
        if (a.con[v]) starts.push_back({1000000 + a.con[v]->index, v});
    }
    std::sort(starts.begin(), starts.end());
    std::size_t head = 0;
    auto drain = [&] {
        for (; head < queue.size(); ++head) {
            int v = queue[head];
            for (int li : {inc.below[v], inc.above[v]}) {
                if (li < 0) continue;
                for (int u : a.links[li].premises) visit(u);
                for (int u : a.links[li].conclusions) visit(u);
            }
        }
    };
    for (auto& s : starts) {
        visit(s.second);
        drain();
    }
    for (int v = 0; v < a.vertex_count; ++v) {
        visit(v);
        drain();
    }
    std::vector<int> key{static_cast<int>(queue.size())};
    for (int v : queue) {
        key.push_back(a.hyp[v] ? a.hyp[v]->index : -1);
        key.push_back(a.con[v] ? a.con[v]->index : -1);
    }
    std::vector<std::vector<int>> ls;
    for (auto& k : a.links) {
        std::vector<int> e{static_cast<int>(k.kind), k.main < 0 ? -1 : order[k.main], static_cast<int>(k.premises.size())};
        for (int v : k.premises) e.push_back(order[v]);
        for (int v : k.conclusions) e.push_back(order[v]);
        ls.push_back(std::move(e));
    }
    std::sort(ls.begin(), ls.end());
    for (auto& e : ls) {
        key.push_back(static_cast<int>(e.size()));
        key.insert(key.end(), e.begin(), e.end());
    }
    return key;
}

struct KeyHash {
    std::size_t operator()(const std::vector<int>& k) const {
        std::size_t h = k.size();
        for (int x : k) h = h * 1000003u ^ static_cast<std::size_t>(x + 7);
        return h;
    }
};

inline bool isomorphic(const Aps& a, const Aps& b) { return canonical_key(a) == canonical_key(b); }

// ---- DOT export ----

namespace detail {

inline std::string dot_escape(const std::string& s) {
    std::string o;
    for (char ch : s) {
        if (ch == '"' || ch == '\\') o += '\\';
        o += ch;
    }
    return o;
}

inline void dot_links(std::ostringstream& out, const std::vector<Link>& links) {
    for (std::size_t i = 0; i < links.size(); ++i) {
        const Link& k = links[i];
        bool co = k.kind == LinkKind::Cotensor;
        out << "  l" << i << " [shape=circle,width=0.15,label=\"\",style=filled,fillcolor="
            << (co ? "black" : "white") << "];\n";
        for (int v : k.premises) {
            out << "  v" << v << " -> l" << i;
            if (co && v == k.main) out << " [dir=back,arrowtail=normal]";
            else out << " [arrowhead=none]";
            out << ";\n";
        }
        for (int v : k.conclusions) {
            out << "  l" << i << " -> v" << v;
            if (!(co && v == k.main)) out << " [arrowhead=none]";
            out << ";\n";
        }
    }
}

} // namespace detail

inline std::string to_dot(const ProofStructure& ps) {
    std::ostringstream out;
    out << "digraph proof_structure {\n  node [shape=plaintext];\n";
    for (int v = 0; v < ps.vertex_count(); ++v)
        out << "  v" << v << " [label=\"" << detail::dot_escape(to_unicode(ps.labels[v])) << "\"];\n";
    detail::dot_links(out, ps.links);
    out << "}\n";
    return out.str();
}

inline std::string to_dot(const Aps& a) {
    std::ostringstream out;
    out << "digraph abstract_proof_structure {\n  node [shape=plaintext];\n";
    for (int v = 0; v < a.vertex_count; ++v) {
        if (!a.alive[v]) continue;
        std::string label;
        if (a.hyp[v]) label += detail::dot_escape(to_unicode(a.hyp[v]->formula));
        label += a.hyp[v] || a.con[v] ? "\\n•\\n" : "•";
        if (a.con[v]) label += detail::dot_escape(to_unicode(a.con[v]->formula));
        out << "  v" << v << " [label=\"" << label << "\"];\n";
    }
    detail::dot_links(out, a.links);
    out << "}\n";
    return out.str();
}

} // namespace lg
