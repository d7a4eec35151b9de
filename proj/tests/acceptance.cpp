#include "lg/lexicon.hpp"
#include "support.hpp"

#include <chrono>
#include <iostream>

using namespace lg;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

int failures = 0;

// One line per criterion; the details say what was measured.
void report(int n, const std::string& title, bool ok, const std::string& details) {
    std::cout << (ok ? "PASS" : "FAIL") << " criterion " << n << " (" << title << "): " << details << "\n" << std::flush;
    if (!ok) ++failures;
}

struct Tally {
    bool ok = true;
    std::vector<std::string> problems;

    void expect(bool cond, const std::string& what) {
        if (cond) return;
        ok = false;
        if (problems.size() < 5) problems.push_back(what);
    }
    std::string summary() const {
        std::string out;
        for (auto& p : problems) out += "; " + p;
        return out;
    }
};

Formula F(const std::string& s) { return parse_formula(s); }

std::set<std::string> canonical_set(const std::vector<Term>& ts) {
    std::set<std::string> out;
    for (auto& t : ts) out.insert(to_string(canonical_term(t)));
    return out;
}

bool contains_equivalent(const std::vector<Term>& ts, const Term& t) {
    for (auto& u : ts)
        if (equivalent_terms(u, t)) return true;
    return false;
}

bool contains_alpha(const std::vector<TargetTerm>& ts, const TargetTerm& t) {
    for (auto& u : ts)
        if (alpha_equivalent(u, t)) return true;
    return false;
}

std::string fmt(double s) {
    std::ostringstream out;
    out << std::fixed << std::setprecision(2) << s << " s";
    return out.str();
}

// ---- criterion 1 ----

void coapplication() {
    auto t0 = Clock::now();
    Tally t;
    auto thms = coapplication_theorems(atom("a"), atom("b"));
    t.expect(thms.size() == 8, "expected eight patterns");
    for (auto& th : thms) {
        t.expect(check(th.arrow), "arrow check failed for " + th.name);
        t.expect(provable(Sequent(leaf(th.arrow.source), leaf(th.arrow.target))), "sLG failed for " + th.name);
        t.expect(net_derivable(th.arrow.source, th.arrow.target) == NetStatus::Net, "no net for " + th.name);
    }
    double s = seconds_since(t0);
    t.expect(s < 1.0, "too slow");
    report(1, "coapplication patterns", t.ok, std::to_string(thms.size()) + " patterns via aLG, sLG and nets in " + fmt(s) + t.summary());
}

// ---- criterion 2 ----

void figure3() {
    Tally t;
    auto res = analyze_judgement({F("(s(/)s)(\\)np")}, {F("s/(np\\s)")});
    t.expect(res.size() == 2, std::to_string(res.size()) + " matchings");
    int nets = 0;
    std::string trace;
    for (auto& m : res) {
        if (!m.result.is_net()) continue;
        ++nets;
        std::multiset<std::string> kinds;
        for (auto& st : m.result.trace) {
            kinds.insert(step_name(st.kind));
            trace += std::string(trace.empty() ? "" : " ") + step_name(st.kind);
        }
        t.expect(kinds.count("G1") == 1, "trace lacks exactly one G1");
        t.expect(kinds.count("L(\\)") == 1 && kinds.count("R/") == 1, "trace lacks L(\\) or R/ contraction");
        auto proof = sequentialize(m.result);
        t.expect(proof && check_proof(*proof).ok, "sequentialized proof rejected");
        t.expect(proof && proof->conclusion() == parse_sequent("(s(/)s)(\\)np |- s/(np\\s)"), "sequentialized proof has the wrong conclusion");
    }
    t.expect(nets == 1, std::to_string(nets) + " nets");
    report(2, "Grishin interaction pipeline", t.ok,
           std::to_string(res.size()) + " matchings, " + std::to_string(nets) + " net, trace [" + trace + "], sequentialization checked" +
               t.summary());
}

// ---- criterion 3 ----

const char* sov_goal = "subj:((np/n)*n) .*. (tv:((np\\s)/np) .*. (det:(np/n) .*. noun:n)) |- [s]";

void sov() {
    auto t0 = Clock::now();
    Tally t;
    std::vector<Formula> hyps = {F("(np/n)*n"), F("(np\\s)/np"), F("np/n"), F("n")};
    int ordered = 0;
    for (auto& m : analyze_judgement(hyps, {F("s")}))
        if (m.result.is_net() && m.word_order()) ++ordered;
    t.expect(ordered == 1, std::to_string(ordered) + " word-order nets");

    auto slg = prove(parse_sequent("(np/n)*n .*. ((np\\s)/np .*. (np/n .*. n)) |- s"));
    t.expect(slg.count >= 7, std::to_string(slg.count) + " sLG proofs");

    Sequent goal = parse_sequent(sov_goal);
    auto V = [](const std::string& s) { return parse_term(s, Sort::Value); };
    auto neg = fprove(goal, BiasMap{}).terms();
    t.expect(neg.size() == 1, std::to_string(neg.size()) + " all-negative terms");
    t.expect(contains_equivalent(neg, V("mu b. case subj of (y * z). <tv | ((mu g. <y | (g / mu g2. <z | g2>)> \\ b) / "
                                        "mu a. <det | (a / mu a2. <noun | a2>)>)>")),
             "all-negative term differs from the reference");
    BiasMap mixed = BiasMap::parse("np=+,n=+,s=-");
    auto pos = fprove(goal, mixed).terms();
    t.expect(pos.size() == 2, std::to_string(pos.size()) + " terms with np,n positive");
    t.expect(contains_equivalent(pos, V("mu a. case subj of (x2 * z). <x2 | (comu x. <det | (comu y. <tv | ((x \\ a) / y)> / noun)> / z)>")),
             "subject-wide term missing");
    t.expect(contains_equivalent(pos, V("mu a. case subj of (x2 * z). <det | (comu y. <x2 | (comu x. <tv | ((x \\ a) / y)> / z)> / noun)>")),
             "object-wide term missing");

    ExtractOptions opt;
    opt.hyp_tags = {"subj", "tv", "det", "noun"};
    opt.exit = {ExitPoint::Kind::Conclusion, 0};
    for (auto* b : {&neg, &pos}) {
        BiasMap bias = b == &neg ? BiasMap{} : mixed;
        auto extracted = extract_judgement_terms(hyps, {F("s")}, bias, opt, true);
        t.expect(canonical_set(extracted) == canonical_set(*b), "extract_terms differs from fprove");
    }
    double s = seconds_since(t0);
    t.expect(s < 10.0, "too slow");
    report(3, "SOV benchmark", t.ok,
           std::to_string(ordered) + " word-order net, " + std::to_string(slg.count) + " sLG proofs, fLG " + std::to_string(neg.size()) +
               " / " + std::to_string(pos.size()) + " terms, extraction agrees, " + fmt(s) + t.summary());
}

// ---- criterion 4 ----

void semantics() {
    Tally t;
    // Lexical types of the verb and determiner rows.
    struct Row {
        const char *formula, *bias, *linear, *lexical;
    };
    const Row rows[] = {
        {"(np\\s)/np", "np=+,s=-", "((np * s^) * np)^", "((e x (t -> t)) x e) -> t"},
        {"np/n", "np=+,n=+", "(np^ * n)^", "((e -> t) x (e -> t)) -> t"},
        {"(np\\s)/np", "np=-,s=-", "((np^^ * s^) * np^^)^", "((((e -> t) -> t) x (t -> t)) x ((e -> t) -> t)) -> t"},
        {"np/n", "np=-,n=-", "(np^ * n^^)^", "((e -> t) x (((e -> t) -> t) -> t)) -> t"},
    };
    for (auto& r : rows) {
        BiasMap b = BiasMap::parse(r.bias);
        t.expect(cps_value_type(F(r.formula), b) == parse_type(r.linear), std::string("row type ") + r.formula);
        t.expect(lexical_type(F(r.formula), b) == parse_type(r.lexical), std::string("row lexical type ") + r.formula);
    }

    struct Case {
        const char *lexicon, *verb;
        std::vector<const char*> images, finals;
    };
    const std::set<std::string> tags = {"w1", "w2", "w3", "w4"};
    const std::vector<Case> cases = {
        {"sov_negative.json", "needs",
         {"\\b.case w1 of <y, z>. (w2 <<\\g.(y <g, \\g2.(z g2)>), b>, \\a.(w3 <a, \\a2.(w4 a2)>)>)"},
         {"\\c.(forall \\x.((implies (person x)) (c ((needs \\w.(exists \\y.((and (unicorn y)) (w y)))) x))))"}},
        {"sov_positive.json", "likes",
         {"\\a.case w1 of <x2, z>. (x2 <\\x.(w3 <\\y.(w2 <<x, a>, y>), w4>), z>)",
          "\\a.case w1 of <x2, z>. (w3 <\\y.(x2 <\\x.(w2 <<x, a>, y>), z>), w4>)"},
         {"\\c.(forall \\x.((implies (person x)) (exists \\y.((and (unicorn y)) (c ((likes y) x))))))",
          "\\c.(exists \\y.((and (unicorn y)) (forall \\x.((implies (person x)) (c ((likes y) x))))))"}},
    };
    int finals = 0, images = 0;
    for (auto& c : cases) {
        Lexicon lex = load_lexicon(std::string(LG_LEXICON_DIR) + "/" + c.lexicon);
        validate_lexicon(lex);
        auto readings = parse_words({"everyone", c.verb, "some", "unicorn"}, lex);
        t.expect(readings.size() == c.finals.size(), std::string(c.lexicon) + ": " + std::to_string(readings.size()) + " readings");
        std::vector<TargetTerm> got_images, got_finals;
        for (auto& r : readings) {
            std::vector<Formula> hyps;
            for (auto* e : r.entries) hyps.push_back(e->formula);
            CpsJudgement j = cps_sequent(reading_sequent(hyps, lex.goal), lex.bias);
            try {
                typecheck_target(r.image, j.as_context(), j.result);
                typecheck_target(r.meaning, {}, lex_type(j.result, lex.types), lex.constants);
            } catch (const TypeError& e) {
                t.expect(false, e.what());
            }
            got_images.push_back(r.image);
            got_finals.push_back(r.meaning);
        }
        for (auto* i : c.images) {
            bool hit = contains_alpha(got_images, parse_target(i, tags));
            images += hit;
            t.expect(hit, std::string("CPS image missing: ") + i);
        }
        for (auto* f : c.finals) {
            bool hit = contains_alpha(got_finals, parse_target(f));
            finals += hit;
            t.expect(hit, std::string("final formula missing: ") + f);
        }
    }
    report(4, "CPS and lexical semantics", t.ok,
           std::to_string(finals) + "/3 final formulas and " + std::to_string(images) +
               "/3 CPS images reproduced up to alpha; rows a-d and all intermediate terms typecheck" + t.summary());
}

// ---- criterion 5 ----

void cross_system() {
    auto t0 = Clock::now();
    const std::vector<BiasMap> biases = {BiasMap{}, BiasMap::parse("p=+,q=+"), BiasMap::parse("p=+,q=-")};
    long judgements = 0, balanced = 0, provable_count = 0;
    std::vector<std::string> disagreements;
    long flg_disagreements = 0;
    for (int n = 0; n <= 4; ++n)
        for (int i = 0; i <= n; ++i) {
            auto as = lgtest::all_formulas(i, {"p", "q"});
            auto bs = lgtest::all_formulas(n - i, {"p", "q"});
            for (auto& a : as)
                for (auto& b : bs) {
                    ++judgements;
                    // Unbalanced atom counts rule out all three systems alike.
                    if (!atoms_balanced({a}, {b})) continue;
                    ++balanced;
                    Sequent s(leaf(a), leaf(b));
                    bool slg = provable(s);
                    bool net = net_derivable(a, b) == NetStatus::Net;
                    provable_count += slg;
                    std::string bad;
                    if (slg != net) bad += " net=" + std::to_string(net);
                    for (std::size_t k = 0; k < biases.size(); ++k) {
                        bool f = fprovable(s, biases[k]);
                        if (f != slg) {
                            bad += " fLG[" + to_string(biases[k]) + "]=" + std::to_string(f);
                            ++flg_disagreements;
                        }
                    }
                    if (!bad.empty()) {
                        disagreements.push_back(to_string(s) + ": sLG=" + std::to_string(slg) + bad);
                        std::cout << "  disagreement: " << disagreements.back() << "\n";
                    }
                }
        }
    double s = seconds_since(t0);
    bool ok = disagreements.empty() && s < 300;
    report(5, "cross-system agreement", ok,
           std::to_string(judgements) + " judgements (" + std::to_string(balanced) + " atom-balanced, " + std::to_string(provable_count) +
               " provable), sLG/nets/fLG under 3 biases, " + std::to_string(disagreements.size()) + " disagreements (" +
               std::to_string(flg_disagreements) + " involving fLG), " + fmt(s));
}

// ---- criterion 6 ----

std::multiset<std::string> labels(const Aps& a) {
    std::multiset<std::string> out;
    for (int v = 0; v < a.vertex_count; ++v) {
        if (!a.alive[v]) continue;
        if (a.hyp[v]) out.insert("h" + std::to_string(a.hyp[v]->index) + to_string(a.hyp[v]->formula));
        if (a.con[v]) out.insert("c" + std::to_string(a.con[v]->index) + to_string(a.con[v]->formula));
    }
    return out;
}

// A random judgement A |- B with balanced atoms, tried until one is found.
std::pair<Formula, Formula> random_balanced(std::mt19937& rng, int min_conn, int max_conn, const std::vector<std::string>& atoms) {
    while (true) {
        int n = min_conn + 2 * static_cast<int>(rng() % ((max_conn - min_conn) / 2 + 1));
        int i = static_cast<int>(rng() % (n + 1));
        Formula a = lgtest::random_formula(rng, i, atoms), b = lgtest::random_formula(rng, n - i, atoms);
        if (atoms_balanced({a}, {b})) return {a, b};
    }
}

void structural_invariants() {
    auto t0 = Clock::now();
    const int cases = 10000;
    std::mt19937 rng(2024);
    Tally t;

    // symmetries
    for (int i = 0; i < cases; ++i) {
        Formula f = lgtest::random_formula(rng, static_cast<int>(rng() % 7), {"a", "b", "c"});
        t.expect(mirror(mirror(f)) == f && dual(dual(f)) == f && mirror(dual(f)) == dual(mirror(f)), "formula symmetry: " + to_string(f));
        Arrow a = make_arrow(lgtest::random_proof(rng, 1 + i % 6));
        Arrow m = mirror_proof(a), d = dual_proof(a);
        t.expect(check(m) && check(d), "symmetric image of a proof fails to check: " + to_string(a.proof));
        t.expect(mirror_proof(m.proof) == a.proof && dual_proof(d.proof) == a.proof, "proof symmetry not involutive");
        t.expect(m.source == mirror(a.source) && m.target == mirror(a.target) && d.source == dual(a.target) && d.target == dual(a.source),
                 "proof symmetry changes the arrow type");
    }

    // rewriting: label conservation, link accounting, generalized steps
    int steps = 0, generalized = 0, nets = 0;
    for (int i = 0; i < cases; ++i) {
        // identity judgements always have a net with a long trace
        auto [a, b] = random_balanced(rng, 4, 8, {"p", "q"});
        if (i % 2 == 0) b = a = lgtest::random_formula(rng, 2 + static_cast<int>(rng() % 4), {"p", "q"});
        auto ms = enumerate_matchings({a}, {b});
        Aps s = to_abstract(ms[rng() % ms.size()]);
        auto r = is_proof_net(s);
        for (std::size_t k = 0; i % 2 == 0 && !r.is_net() && k < ms.size(); ++k) {
            s = to_abstract(ms[k]);
            r = is_proof_net(s);
        }
        if (r.is_net()) {
            ++nets;
            t.expect(is_tree(r.final_tree()), "net trace does not end in a tree");
        }
        const Aps* prev = &r.initial;
        for (auto& st : r.trace) {
            ++steps;
            t.expect(labels(st.result) == labels(*prev), "labels not conserved by " + std::string(step_name(st.kind)));
            long dt = static_cast<long>(st.result.count(LinkKind::Tensor)) - static_cast<long>(prev->count(LinkKind::Tensor));
            long dc = static_cast<long>(st.result.count(LinkKind::Cotensor)) - static_cast<long>(prev->count(LinkKind::Cotensor));
            long dv = st.result.live_vertices() - prev->live_vertices();
            bool ok = is_interaction(st.kind) ? (dt == 0 && dc == 0 && dv == 0) : (dt == -1 && dc == -1 && dv == -3);
            t.expect(ok, "link accounting off for " + std::string(step_name(st.kind)));
            prev = &st.result;
        }
        // generalized contractions from the structure, from states one interaction on
        // and from every state of the trace
        std::vector<Aps> states{s};
        for (auto& st : interaction_steps(s)) states.push_back(st.result);
        for (auto& st : r.trace) states.push_back(st.result);
        for (auto& st : states)
            for (auto& g : generalized_steps(st)) {
                ++generalized;
                auto seq = expand_generalized(st, g);
                t.expect(seq.size() + 1 == g.redex.size(), "derived sequence has the wrong length");
                t.expect(!seq.empty() && isomorphic(seq.back().result, g.result) && labels(seq.back().result) == labels(g.result),
                         "generalized contraction differs from its derived sequence");
            }
    }

    // linearity of produced terms
    int terms = 0, extracted = 0;
    const std::vector<BiasMap> biases = {BiasMap{}, BiasMap::parse("p=+"), BiasMap::parse("p=+,q=+")};
    for (int i = 0; i < cases; ++i) {
        auto [a, b] = random_balanced(rng, 2, 4, {"p", "q"});
        const BiasMap& bias = biases[rng() % biases.size()];
        Sequent s(leaf(a, "x0"), leaf(b, "a0"));
        for (auto& p : fprove(s, bias).proofs) {
            ++terms;
            t.expect(is_linear(p.term()), "non-linear term " + to_string(p.term()));
            TargetTerm image = cps_proof(p);
            t.expect(target_is_linear(image), "non-linear CPS image " + to_string(image));
        }
        for (auto& u : extract_judgement_terms({a}, {b}, bias)) {
            ++extracted;
            t.expect(is_linear(u), "non-linear extracted term " + to_string(u));
        }
    }
    t.expect(generalized > 0 && steps > 0 && terms > 0, "a property was never exercised");
    double sec = seconds_since(t0);
    report(6, "structural invariants", t.ok,
           std::to_string(cases) + " cases each: symmetries, " + std::to_string(steps) + " rewrite steps over " + std::to_string(nets) +
               " nets, " + std::to_string(generalized) + " generalized contractions, " + std::to_string(terms) + " focused and " +
               std::to_string(extracted) + " extracted terms linear, " + fmt(sec) + t.summary());
}

} // namespace

int main() {
    const std::vector<std::pair<int, void (*)()>> criteria = {{1, coapplication}, {2, figure3},     {3, sov},
                                                              {4, semantics},     {5, cross_system}, {6, structural_invariants}};
    for (auto& [n, run] : criteria) {
        try {
            run();
        } catch (const std::exception& e) {
            report(n, "exception", false, e.what());
        }
    }
    std::cout << (failures ? "FAILED " : "ALL PASSED ") << "(" << failures << " failing)\n";
    return failures ? 1 : 0;
}
