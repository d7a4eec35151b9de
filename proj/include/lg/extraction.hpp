#pragma once

#include "lg/contraction.hpp"
#include "lg/focused.hpp"

#include <numeric>

namespace lg {

// Where a term is read off: a command for the whole net, a value for a
// designated conclusion or a context for a designated hypothesis.
struct ExitPoint {
    enum class Kind { Command, Conclusion, Hypothesis } kind = Kind::Command;
    int index = 0;
};

struct ExtractOptions {
    std::vector<std::string> hyp_tags;    // default x<i>
    std::vector<std::string> concl_tags;  // default a<i>
    ExitPoint exit;
};

// Term-labelled net with every vertex expanded into axiom edges and the
// substitution edges collapsed. Variables are named by their (merged) class.
struct CompositionGraph {
    // Where a value or context comes from once substitutions are collapsed.
    struct Source {
        bool producer = false;
        std::string name;  // variable or covariable
        int tensor = -1;   // index into tensors
    };
    struct Tensor {
        int link = -1;  // link id in the net
        Conn conn = Conn::Prod;
        Sort sort = Sort::Value;
        int left = -1, right = -1;  // consumers
    };
    struct Cotensor {
        int link = -1;
        Conn conn = Conn::Prod;
        std::string scrutinee, first, second;
    };
    struct Consumer {
        Sort sort = Sort::Value;
        bool mu = false;  // else substituted from source
        Source source;
        int mu_edge = -1;
    };
    struct CommandEdge {
        int vertex = -1;
        Source value, context;
    };
    struct MuEdge {
        int vertex = -1;
        int consumer = -1;
        std::string binder;  // covariable for a value consumer, variable otherwise
    };

    std::vector<Tensor> tensors;
    std::vector<Cotensor> cotensors;
    std::vector<Consumer> consumers;
    std::vector<CommandEdge> commands;
    std::vector<MuEdge> mus;
    std::vector<std::string> free_names;  // hypothesis and conclusion names not at the exit
    int exit = -1;                        // consumer at the exit, -1 for commands
    Sort exit_sort = Sort::Command;
};

namespace detail {

// Left and right operand vertices of a link, following the tentacle layout
// of the unfolding.
inline std::pair<int, int> link_operands(const Link& k) {
    std::vector<int> same, other;
    bool main_above = std::find(k.premises.begin(), k.premises.end(), k.main) != k.premises.end();
    for (int v : k.premises)
        if (v != k.main) (main_above ? same : other).push_back(v);
    for (int v : k.conclusions)
        if (v != k.main) (main_above ? other : same).push_back(v);
    if (same.size() == 2) return {same[0], same[1]};
    if (other.size() == 2) return {other[0], other[1]};
    Conn c = *k.conn;
    if (c == Conn::Over || c == Conn::RDiff) return {other[0], same[0]};
    return {same[0], other[0]};
}

inline std::string default_tag(const std::vector<std::string>& tags, std::size_t i, const char* prefix) {
    return i < tags.size() ? tags[i] : prefix + std::to_string(i);
}

} // namespace detail

// Expands the net (a proof structure with its atoms matched) into its
// composition graph. Atomic vertices get a variable of the sort their
// polarity dictates, so every axiom edge is typed.
inline CompositionGraph build_composition_graph(const ProofStructure& net, const BiasMap& bias, const ExtractOptions& opt = {}) {
    using CG = CompositionGraph;
    enum class PortKind { Var, Producer, Consumer };
    struct Port {
        PortKind kind;
        Sort sort;
        int vertex;
        int link = -1;
        int operand = -1;
        std::string tag;
    };
    Incidence inc(net.vertex_count(), net.links);
    if (!inc.ok) throw std::invalid_argument("build_composition_graph: ill-formed structure");
    std::vector<Port> ports;
    std::vector<std::pair<int, int>> edges;
    std::vector<int> edge_vertex;
    auto add = [&](PortKind kind, Sort sort, int v, int link = -1, int operand = -1, std::string tag = {}) {
        ports.push_back(Port{kind, sort, v, link, operand, std::move(tag)});
        return static_cast<int>(ports.size()) - 1;
    };
    std::map<int, int> hyp_index, concl_index;
    for (std::size_t i = 0; i < net.hyp_roots.size(); ++i) hyp_index[net.hyp_roots[i]] = static_cast<int>(i);
    for (std::size_t i = 0; i < net.concl_roots.size(); ++i) concl_index[net.concl_roots[i]] = static_cast<int>(i);

    // link -> ports of its main, left and right tentacles
    std::vector<std::array<int, 3>> link_ports(net.links.size(), {-1, -1, -1});
    int exit_port = -1;
    auto end_port = [&](int v, int li, bool upper) -> int {
        if (li < 0) {
            if (upper) {
                auto it = hyp_index.find(v);
                if (it == hyp_index.end()) throw std::invalid_argument("build_composition_graph: unmatched atom");
                if (opt.exit.kind == ExitPoint::Kind::Hypothesis && opt.exit.index == it->second)
                    return exit_port = add(PortKind::Consumer, Sort::Context, v);
                return add(PortKind::Var, Sort::Value, v, -1, -1, detail::default_tag(opt.hyp_tags, it->second, "x"));
            }
            auto it = concl_index.find(v);
            if (it == concl_index.end()) throw std::invalid_argument("build_composition_graph: unmatched atom");
            if (opt.exit.kind == ExitPoint::Kind::Conclusion && opt.exit.index == it->second)
                return exit_port = add(PortKind::Consumer, Sort::Value, v);
            return add(PortKind::Var, Sort::Context, v, -1, -1, detail::default_tag(opt.concl_tags, it->second, "a"));
        }
        const Link& k = net.links[li];
        Conn c = *k.conn;
        bool tensor = k.kind == LinkKind::Tensor;
        int p;
        if (k.main == v) {
            Sort s = positive_conn(c) ? Sort::Value : Sort::Context;
            p = add(tensor ? PortKind::Producer : PortKind::Var, s, v, li, 0);
            link_ports[li][0] = p;
        } else {
            auto [l, r] = detail::link_operands(k);
            int op = v == l ? 1 : 2;
            auto sorts = pair_component_sorts(c);
            Sort s = op == 1 ? sorts.first : sorts.second;
            p = add(tensor ? PortKind::Consumer : PortKind::Var, s, v, li, op);
            link_ports[li][op] = p;
        }
        return p;
    };
    for (int v = 0; v < net.vertex_count(); ++v) {
        int up = end_port(v, inc.above[v], true);
        int down = end_port(v, inc.below[v], false);
        if (net.labels[v].is_atom()) {
            Sort s = is_positive(net.labels[v], bias) ? Sort::Value : Sort::Context;
            int a = add(PortKind::Var, s, v);
            edges.push_back({up, a});
            edges.push_back({a, down});
            edge_vertex.push_back(v);
            edge_vertex.push_back(v);
        } else {
            edges.push_back({up, down});
            edge_vertex.push_back(v);
        }
    }

    // merge variable ports joined by same-sort edges
    std::vector<int> parent(ports.size());
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
    for (auto [a, b] : edges)
        if (ports[a].kind == PortKind::Var && ports[b].kind == PortKind::Var && ports[a].sort == ports[b].sort) parent[find(a)] = find(b);
    std::set<std::string> taken;
    for (auto& p : ports)
        if (!p.tag.empty()) taken.insert(p.tag);
    std::map<int, std::string> class_name;
    for (std::size_t i = 0; i < ports.size(); ++i) {
        if (ports[i].kind != PortKind::Var || ports[i].tag.empty()) continue;
        int r = find(static_cast<int>(i));
        if (class_name.count(r)) throw std::invalid_argument("build_composition_graph: two names for one variable");
        class_name[r] = ports[i].tag;
    }
    detail::NameSupply names(taken);
    auto var_name = [&](int p) {
        int r = find(p);
        auto it = class_name.find(r);
        if (it != class_name.end()) return it->second;
        return class_name[r] = ports[p].sort == Sort::Value ? names.var() : names.covar();
    };

    CG cg;
    std::map<int, int> tensor_of_link, consumer_of_port;
    for (std::size_t li = 0; li < net.links.size(); ++li) {
        const Link& k = net.links[li];
        if (k.kind == LinkKind::Tensor) {
            tensor_of_link[static_cast<int>(li)] = static_cast<int>(cg.tensors.size());
            cg.tensors.push_back({k.id, *k.conn, ports[link_ports[li][0]].sort, -1, -1});
        }
    }
    for (std::size_t i = 0; i < ports.size(); ++i) {
        if (ports[i].kind != PortKind::Consumer) continue;
        consumer_of_port[static_cast<int>(i)] = static_cast<int>(cg.consumers.size());
        cg.consumers.push_back({ports[i].sort, false, {}, -1});
        if (ports[i].link >= 0) {
            auto& t = cg.tensors[tensor_of_link[ports[i].link]];
            (ports[i].operand == 1 ? t.left : t.right) = static_cast<int>(cg.consumers.size()) - 1;
        }
    }
    for (std::size_t li = 0; li < net.links.size(); ++li) {
        const Link& k = net.links[li];
        if (k.kind == LinkKind::Cotensor)
            cg.cotensors.push_back({k.id, *k.conn, var_name(link_ports[li][0]), var_name(link_ports[li][1]), var_name(link_ports[li][2])});
    }
    auto source = [&](int p) {
        CG::Source s;
        if (ports[p].kind == PortKind::Producer) {
            s.producer = true;
            s.tensor = tensor_of_link[ports[p].link];
        } else {
            s.name = var_name(p);
        }
        return s;
    };
    for (std::size_t e = 0; e < edges.size(); ++e) {
        auto [a, b] = edges[e];
        const Port &pa = ports[a], &pb = ports[b];
        if (pa.kind == PortKind::Var && pb.kind == PortKind::Var && pa.sort == pb.sort) continue;
        if (pb.kind == PortKind::Consumer && pa.kind != PortKind::Consumer) std::swap(a, b);
        const Port &x = ports[a], &y = ports[b];
        if (x.kind == PortKind::Consumer) {
            if (y.kind == PortKind::Consumer) throw std::invalid_argument("build_composition_graph: consumer meets consumer");
            auto& c = cg.consumers[consumer_of_port[a]];
            if (y.sort == x.sort) {
                c.source = source(b);
            } else if (y.kind == PortKind::Var) {
                c.mu = true;
                c.mu_edge = static_cast<int>(cg.mus.size());
                cg.mus.push_back({edge_vertex[e], consumer_of_port[a], var_name(b)});
            } else {
                throw std::invalid_argument("build_composition_graph: cut between producers");
            }
        } else {
            if (x.sort == y.sort) throw std::invalid_argument("build_composition_graph: cut between producers");
            if (x.sort == Sort::Value) cg.commands.push_back({edge_vertex[e], source(a), source(b)});
            else cg.commands.push_back({edge_vertex[e], source(b), source(a)});
        }
    }
    for (std::size_t i = 0; i < net.hyp_roots.size(); ++i)
        if (!(opt.exit.kind == ExitPoint::Kind::Hypothesis && opt.exit.index == static_cast<int>(i)))
            cg.free_names.push_back(detail::default_tag(opt.hyp_tags, i, "x"));
    for (std::size_t i = 0; i < net.concl_roots.size(); ++i)
        if (!(opt.exit.kind == ExitPoint::Kind::Conclusion && opt.exit.index == static_cast<int>(i)))
            cg.free_names.push_back(detail::default_tag(opt.concl_tags, i, "a"));
    if (exit_port >= 0) {
        cg.exit = consumer_of_port[exit_port];
        cg.exit_sort = ports[exit_port].sort;
    } else if (opt.exit.kind != ExitPoint::Kind::Command) {
        throw std::invalid_argument("build_composition_graph: exit index out of range");
    }
    return cg;
}

// Maximal groups of tensor links joined by substitution, each with a single
// main formula (its root). Returned as link ids.
inline std::vector<std::vector<int>> rooted_components(const CompositionGraph& cg) {
    std::vector<int> parent(cg.tensors.size(), -1);
    for (std::size_t t = 0; t < cg.tensors.size(); ++t)
        for (int c : {cg.tensors[t].left, cg.tensors[t].right}) {
            const auto& con = cg.consumers[c];
            if (!con.mu && con.source.producer) parent[con.source.tensor] = static_cast<int>(t);
        }
    std::map<int, std::vector<int>> groups;
    for (std::size_t t = 0; t < cg.tensors.size(); ++t) {
        int r = static_cast<int>(t);
        while (parent[r] >= 0) r = parent[r];
        groups[r].push_back(cg.tensors[t].link);
    }
    std::vector<std::vector<int>> out;
    for (auto& [root, links] : groups) out.push_back(links);
    return out;
}

// Which command edge each mu edge consumed; the top-level command of a
// command exit is paired with mu edge -1.
using Pairing = std::vector<std::pair<int, int>>;

struct Extraction {
    Pairing pairing;
    Term term;
};

namespace detail {

class Extractor {
public:
    explicit Extractor(const CompositionGraph& cg) : cg_(cg) {
        for (std::size_t i = 0; i < cg.cotensors.size(); ++i) by_scrutinee_[cg.cotensors[i].scrutinee] = static_cast<int>(i);
    }

    std::vector<Extraction> run() {
        std::vector<State> states;
        State start{Term(), std::vector<bool>(cg_.commands.size(), false), {}};
        if (cg_.exit < 0) states = body(cg_.free_names, -1, start);
        else states = consumer(cg_.exit, start, &cg_.free_names);
        std::vector<Extraction> out;
        std::multiset<std::string> expected(cg_.free_names.begin(), cg_.free_names.end());
        for (auto& s : states) {
            if (std::count(s.used.begin(), s.used.end(), false)) continue;
            std::multiset<std::string> free;
            free_names(s.term, free);
            if (free != expected || !is_linear(s.term)) continue;
            out.push_back({s.pairing, s.term});
        }
        return out;
    }

private:
    struct State {
        Term term;
        std::vector<bool> used;
        Pairing pairing;
    };

    // The case prefix opened by binding name, outermost first.
    void cases_for(const std::string& name, std::vector<int>& out) const {
        auto it = by_scrutinee_.find(name);
        if (it == by_scrutinee_.end()) return;
        out.push_back(it->second);
        cases_for(cg_.cotensors[it->second].first, out);
        cases_for(cg_.cotensors[it->second].second, out);
    }

    std::vector<State> source(const CompositionGraph::Source& s, Sort sort, const State& in) {
        if (!s.producer) return {State{sort == Sort::Value ? Term::var(s.name) : Term::covar(s.name), in.used, in.pairing}};
        const auto& t = cg_.tensors[s.tensor];
        std::vector<State> out;
        for (auto& l : consumer(t.left, in, nullptr))
            for (auto& r : consumer(t.right, l, nullptr)) out.push_back({Term::pair(t.conn, l.term, r.term), r.used, r.pairing});
        return out;
    }

    // pending: top-level names whose cases belong under the first binder.
    std::vector<State> consumer(int c, const State& in, const std::vector<std::string>* pending) {
        const auto& con = cg_.consumers[c];
        bool has_cases = false;
        if (pending)
            for (auto& n : *pending) has_cases = has_cases || by_scrutinee_.count(n);
        if (!con.mu) {
            if (has_cases) return {};
            return source(con.source, con.sort, in);
        }
        const auto& m = cg_.mus[con.mu_edge];
        std::vector<std::string> binders{m.binder};
        if (pending) binders.insert(binders.end(), pending->begin(), pending->end());
        std::vector<State> out;
        for (auto& s : body(binders, con.mu_edge, in)) {
            std::multiset<std::string> free;
            free_names(s.term, free);
            if (!free.count(m.binder)) continue;
            s.term = con.sort == Sort::Value ? Term::mu(m.binder, s.term) : Term::comu(m.binder, s.term);
            out.push_back(std::move(s));
        }
        return out;
    }

    std::vector<State> body(const std::vector<std::string>& binders, int mu_edge, const State& in) {
        std::vector<int> prefix;
        for (auto& b : binders) cases_for(b, prefix);
        std::vector<State> out;
        for (std::size_t k = 0; k < cg_.commands.size(); ++k) {
            if (in.used[k]) continue;
            State s = in;
            s.used[k] = true;
            s.pairing.push_back({mu_edge, static_cast<int>(k)});
            const auto& cmd = cg_.commands[k];
            for (auto& v : source(cmd.value, Sort::Value, s))
                for (auto& e : source(cmd.context, Sort::Context, v)) {
                    Term t = Term::cmd(v.term, e.term);
                    for (auto it = prefix.rbegin(); it != prefix.rend(); ++it) {
                        const auto& ct = cg_.cotensors[*it];
                        t = Term::case_of(ct.conn, ct.first, ct.second, ct.scrutinee, t);
                    }
                    out.push_back({t, e.used, e.pairing});
                }
        }
        return out;
    }

    const CompositionGraph& cg_;
    std::map<std::string, int> by_scrutinee_;
};

} // namespace detail

// All terms of the graph, one per coherent pairing of mu edges with
// command edges; pairings giving equivalent terms are reported once.
inline std::vector<Extraction> extract_terms(const CompositionGraph& cg) {
    std::vector<Extraction> out;
    std::set<std::string> seen;
    for (auto& e : detail::Extractor(cg).run())
        if (seen.insert(to_string(canonical_term(e.term))).second) out.push_back(std::move(e));
    return out;
}

inline std::vector<Extraction> extract_terms(const ProofStructure& net, const BiasMap& bias, const ExtractOptions& opt = {}) {
    return extract_terms(build_composition_graph(net, bias, opt));
}

// Terms of every net of the judgement, pooled and deduplicated.
inline std::vector<Term> extract_judgement_terms(const std::vector<Formula>& hyps, const std::vector<Formula>& concls,
                                                 const BiasMap& bias, const ExtractOptions& opt = {}, bool word_order = false) {
    std::vector<Term> out;
    std::set<std::string> seen;
    for (auto& an : analyze_judgement(hyps, concls)) {
        if (!an.result.is_net() || (word_order && !an.word_order())) continue;
        for (auto& e : extract_terms(an.structure, bias, opt))
            if (seen.insert(to_string(canonical_term(e.term))).second) out.push_back(e.term);
    }
    return out;
}

} // namespace lg
