#include "lg/lexicon.hpp"

#include "CLI11.hpp"

#include <filesystem>
#include <iostream>

using namespace lg;

namespace {

struct Flags {
    std::string system = "all";
    std::string bias;
    std::size_t max_depth = 0;
    std::size_t max_proofs = 0;
    std::string dot_dir;
    bool unicode = false;
    bool quiet = false;
};

std::string show(const Sequent& s, const Flags& f) { return f.unicode ? to_unicode(s) : to_string(s); }
std::string show(const Formula& a, const Flags& f) { return f.unicode ? to_unicode(a) : to_string(a); }

void write_dot(const Flags& f, const std::string& name, const std::string& dot) {
    if (f.dot_dir.empty()) return;
    std::filesystem::create_directories(f.dot_dir);
    std::ofstream out(std::filesystem::path(f.dot_dir) / (name + ".dot"));
    out << dot;
}

SearchConfig search_config(const Flags& f) {
    SearchConfig cfg;
    if (f.max_depth) cfg.max_logical_depth = f.max_depth;
    cfg.max_proofs = f.max_proofs;
    return cfg;
}

bool prove_slg(const Sequent& s, const Flags& f) {
    auto r = prove(s, search_config(f));
    std::cout << "sLG: " << status_name(r.status()) << ", " << r.count << " proof(s)\n";
    if (!f.quiet)
        for (std::size_t i = 0; i < r.proofs.size(); ++i)
            std::cout << "-- proof " << i + 1 << "\n" << (f.unicode ? to_unicode(r.proofs[i]) : to_string(r.proofs[i]));
    return r.count > 0;
}

bool prove_flg(const Sequent& s, const BiasMap& bias, const Flags& f) {
    auto r = fprove(s, bias, search_config(f));
    std::cout << "fLG: " << status_name(r.status()) << ", " << r.proofs.size() << " term(s), bias " << to_string(bias) << "\n";
    if (!f.quiet)
        for (auto& p : r.proofs) {
            std::cout << "  " << (f.unicode ? to_unicode(p.term()) : to_string(p.term())) << "\n";
            CpsJudgement j = cps_sequent(p.conclusion(), bias);
            std::cout << "    cps: " << to_string(tidy_names(cps_proof(p)), f.unicode) << " : " << to_string(j.result, true, f.unicode) << "\n";
        }
    return !r.proofs.empty();
}

// The antecedent (succedent) must be a product (coproduct) of formulas.
bool prove_net(const Sequent& s, const Flags& f) {
    std::vector<Structure> ls, rs;
    collect_leaves(s.ant, ls);
    collect_leaves(s.suc, rs);
    auto only = [](const Structure& st, Conn c, auto& self) -> bool {
        return st.is_leaf() || (st.conn() == c && self(st.left(), c, self) && self(st.right(), c, self));
    };
    if (!only(s.ant, Conn::Prod, only) || !only(s.suc, Conn::Coprod, only))
        throw std::invalid_argument("net: antecedent must be a product and succedent a coproduct of formulas");
    std::vector<Formula> hyps, concls;
    for (auto& l : ls) hyps.push_back(l.formula());
    for (auto& r : rs) concls.push_back(r.formula());
    auto analyses = analyze_judgement(hyps, concls);
    int nets = 0, ordered = 0;
    for (std::size_t i = 0; i < analyses.size(); ++i) {
        auto& an = analyses[i];
        write_dot(f, "matching" + std::to_string(i + 1), to_dot(an.structure));
        if (!an.result.is_net()) continue;
        ++nets;
        if (an.word_order()) ++ordered;
        write_dot(f, "tree" + std::to_string(i + 1), to_dot(an.result.final_tree()));
        if (f.quiet) continue;
        std::cout << "-- net from matching " << i + 1 << (an.word_order() ? " (word order kept)" : "") << "\n   trace:";
        for (auto& st : an.result.trace) std::cout << " " << (f.unicode ? step_unicode(st.kind) : step_name(st.kind));
        std::cout << "\n   tree: " << show(tree_sequent(an.result.final_tree()), f) << "\n";
        if (auto p = sequentialize(an.result))
            std::cout << "   sequentialized: " << (check_proof(*p).ok ? "checked" : "REJECTED") << "\n";
    }
    std::cout << "net: " << analyses.size() << " matching(s), " << nets << " net(s), " << ordered << " respecting word order\n";
    return nets > 0;
}

int cmd_prove(const std::string& text, const Flags& f) {
    Sequent s;
    try {
        s = parse_sequent(text);
    } catch (const std::exception& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    }
    BiasMap bias = BiasMap::parse(f.bias);
    std::cout << "sequent: " << show(s, f) << "\n";
    bool any = false, all = f.system == "all";
    if (all || f.system == "slg") any |= prove_slg(s, f);
    if (all || f.system == "flg") any |= prove_flg(s, bias, f);
    if (all || f.system == "net") any |= prove_net(s, f);
    return any ? 0 : 1;
}

int cmd_parse(const std::vector<std::string>& words, const std::string& lexicon_path, const Flags& f, std::optional<int> expect,
              std::optional<unsigned> seed, bool latex) {
    Lexicon lex;
    try {
        lex = load_lexicon(lexicon_path);
        if (!f.bias.empty())
            for (auto& [atom, p] : BiasMap::parse(f.bias).overrides()) lex.bias.set(atom, p);
        validate_lexicon(lex);
    } catch (const std::exception& e) {
        std::cerr << "lexicon error: " << e.what() << "\n";
        return 2;
    }
    ParseOptions opt;
    opt.seed = seed;
    std::vector<Reading> readings;
    try {
        readings = parse_words(words, lex, opt);
    } catch (const std::invalid_argument& e) {
        std::cerr << e.what() << "\n";
        return 2;
    }
    std::cout << "bias " << to_string(lex.bias) << ", goal " << show(lex.goal, f) << ", " << readings.size() << " reading(s)\n";
    for (std::size_t i = 0; i < readings.size(); ++i) {
        auto& r = readings[i];
        std::cout << "-- reading " << i + 1 << "\n   hypotheses:";
        for (std::size_t k = 0; k < r.entries.size(); ++k) std::cout << " w" << k + 1 << ":" << show(r.entries[k]->formula, f);
        std::cout << "\n   pairing:";
        for (auto [m, c] : r.pairing) std::cout << " " << m << "->" << (c < 0 ? std::string("top") : std::to_string(c));
        std::cout << "\n   term: " << (f.unicode ? to_unicode(r.term) : to_string(r.term));
        std::cout << "\n   cps: " << to_string(tidy_names(r.image), f.unicode);
        std::cout << "\n   reading: " << to_string(tidy_names(r.meaning), f.unicode) << "\n";
        if (latex) std::cout << "   latex: " << to_latex(tidy_names(r.meaning)) << "\n";
    }
    if (expect && static_cast<int>(readings.size()) != *expect) {
        std::cerr << "expected " << *expect << " reading(s), found " << readings.size() << "\n";
        return 1;
    }
    return readings.empty() ? 1 : 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Lambek-Grishin workbench: proof search in the display, focused and proof-net systems, and CPS readings."};
    app.require_subcommand(1);
    Flags f;
    auto common = [&](CLI::App* sub) {
        sub->add_option("--bias", f.bias, "atom polarities, e.g. np=+,s=- (default negative)");
        sub->add_flag("--unicode", f.unicode, "print with unicode symbols");
        sub->add_flag("-q,--quiet", f.quiet, "print counts only");
        sub->add_option("--dot", f.dot_dir, "write proof structures as DOT files into this directory");
    };

    std::string sequent;
    auto* prove_cmd = app.add_subcommand("prove", "prove a sequent \"X |- Y\"");
    prove_cmd->add_option("sequent", sequent, "the sequent")->required();
    prove_cmd->add_option("--system", f.system, "slg, flg, net or all")->check(CLI::IsMember({"slg", "flg", "net", "all"}));
    prove_cmd->add_option("--max-depth", f.max_depth, "bound on logical rule depth (0 = none)");
    prove_cmd->add_option("--max-proofs", f.max_proofs, "stop after this many proofs (0 = all)");
    common(prove_cmd);

    std::vector<std::string> words;
    std::string lexicon;
    std::optional<int> expect;
    std::optional<unsigned> seed;
    bool latex = false;
    auto* parse_cmd = app.add_subcommand("parse", "parse a word sequence against a lexicon and print its readings");
    parse_cmd->add_option("words", words, "the words")->required();
    parse_cmd->add_option("-l,--lexicon", lexicon, "lexicon JSON file")->required()->check(CLI::ExistingFile);
    parse_cmd->add_option("--expect-readings", expect, "fail unless exactly this many readings are found");
    parse_cmd->add_option("--seed", seed, "shuffle the matching order with this seed");
    parse_cmd->add_flag("--latex", latex, "also print readings as LaTeX");
    common(parse_cmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    try {
        if (*prove_cmd) return cmd_prove(sequent, f);
        return cmd_parse(words, lexicon, f, expect, seed, latex);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
