#pragma once

#include "lg/cps.hpp"
#include "lg/extraction.hpp"

#include "json.hpp"

#include <fstream>
#include <random>

namespace lg {

struct Lexicon {
    std::vector<LexEntry> entries;
    BiasMap bias;
    Formula goal = Formula::atom("s");
    TypeContext constants = default_constants();
    LexTypeMap types;

    std::vector<const LexEntry*> lookup(const std::string& word) const {
        std::vector<const LexEntry*> out;
        for (auto& e : entries)
            if (e.word == word) out.push_back(&e);
        return out;
    }
};

inline std::string to_string(const BiasMap& b) {
    std::string out = b.default_polarity() == Polarity::Positive ? "+" : "";
    for (auto& [atom, p] : b.overrides()) {
        if (!out.empty()) out += ",";
        out += atom + (p == Polarity::Positive ? "=+" : "=-");
    }
    return out;
}

// Every recipe must have the lexical type of its formula under the bias.
// Throws TypeError naming the word.
inline void validate_lexicon(const Lexicon& lex) {
    for (auto& e : lex.entries) {
        TargetType want = lexical_type(e.formula, lex.bias, lex.types);
        try {
            typecheck_target(e.semantics, {}, want, lex.constants);
        } catch (const TypeError& err) {
            throw TypeError("lexicon entry '" + e.word + "' does not have type " + to_string(want, false) + ": " + err.what(), err.path());
        }
    }
}

// {"bias": "np=+,n=+,s=-", "goal": "s",
//  "constants": {"likes": "e -> e -> t"}, "atoms": {"pp": "e -> t"},
//  "entries": [{"word": ..., "formula": ..., "semantics": ...}]}
// "constants" and "atoms" extend the defaults.
inline Lexicon lexicon_from_json(const nlohmann::json& j) {
    Lexicon lex;
    if (j.contains("bias")) lex.bias = BiasMap::parse(j.at("bias").get<std::string>());
    if (j.contains("goal")) lex.goal = parse_formula(j.at("goal").get<std::string>());
    if (j.contains("constants"))
        for (auto& [name, type] : j.at("constants").items()) lex.constants[name] = parse_type(type.get<std::string>());
    if (j.contains("atoms"))
        for (auto& [name, type] : j.at("atoms").items()) lex.types.atoms[name] = parse_type(type.get<std::string>());
    for (auto& e : j.at("entries"))
        lex.entries.push_back(
            {e.at("word").get<std::string>(), parse_formula(e.at("formula").get<std::string>()), parse_target(e.at("semantics").get<std::string>())});
    return lex;
}

inline Lexicon load_lexicon(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open lexicon " + path);
    return lexicon_from_json(nlohmann::json::parse(in));
}

struct Reading {
    std::vector<const LexEntry*> entries;  // one per word
    Pairing pairing;
    Term term;             // source term, free names w1..wn
    TargetTerm image;      // CPS image
    TargetTerm meaning;    // after lexical substitution and normalization
};

struct ParseOptions {
    NetConfig net;
    std::optional<unsigned> seed;  // shuffles the matching order
    std::size_t normalize_budget = 1000000;
};

inline std::vector<std::string> word_tags(std::size_t n) {
    std::vector<std::string> tags;
    for (std::size_t i = 1; i <= n; ++i) tags.push_back("w" + std::to_string(i));
    return tags;
}

// Right-branching antecedent of tagged hypotheses, focused on the goal.
inline Sequent reading_sequent(const std::vector<Formula>& hyps, const Formula& goal) {
    auto tags = word_tags(hyps.size());
    Structure x = leaf(hyps.back(), tags.back());
    for (std::size_t i = hyps.size() - 1; i-- > 0;) x = Structure::binary(Conn::Prod, leaf(hyps[i], tags[i]), x);
    return Sequent(x, leaf(goal), Focus::Right);
}

// Nets respecting word order for every choice of lexical entries, their
// extracted terms, CPS images and final formulas. Readings are ordered by
// final formula, so the result does not depend on the seed.
inline std::vector<Reading> parse_words(const std::vector<std::string>& words, const Lexicon& lex, const ParseOptions& opt = {}) {
    if (words.empty()) throw std::invalid_argument("parse: no words");
    std::vector<std::vector<const LexEntry*>> choices;
    for (auto& w : words) {
        auto es = lex.lookup(w);
        if (es.empty()) throw std::invalid_argument("parse: unknown word '" + w + "'");
        choices.push_back(std::move(es));
    }
    ExtractOptions xo;
    xo.hyp_tags = word_tags(words.size());
    xo.exit = {ExitPoint::Kind::Conclusion, 0};
    TargetType result = lex_type(cps_value_type(lex.goal, lex.bias), lex.types);

    std::vector<Reading> out;
    std::set<std::string> seen;
    std::vector<const LexEntry*> pick(words.size());
    std::function<void(std::size_t)> go = [&](std::size_t i) {
        if (i < words.size()) {
            for (auto* e : choices[i]) {
                pick[i] = e;
                go(i + 1);
            }
            return;
        }
        std::vector<Formula> hyps;
        std::map<std::string, TargetTerm> recipes;
        for (std::size_t k = 0; k < pick.size(); ++k) {
            hyps.push_back(pick[k]->formula);
            recipes[xo.hyp_tags[k]] = pick[k]->semantics;
        }
        Sequent goal = reading_sequent(hyps, lex.goal);
        auto analyses = analyze_judgement(hyps, {lex.goal}, opt.net);
        if (opt.seed) {
            std::mt19937 rng(*opt.seed);
            std::shuffle(analyses.begin(), analyses.end(), rng);
        }
        for (auto& an : analyses) {
            if (!an.result.is_net() || !an.word_order()) continue;
            for (auto& x : extract_terms(an.structure, lex.bias, xo)) {
                std::string key;
                for (auto* e : pick) key += std::to_string(e - lex.entries.data()) + ",";
                if (!seen.insert(key + to_string(canonical_term(x.term))).second) continue;
                Reading r{pick, x.pairing, x.term, cps_term(x.term, goal, lex.bias), {}};
                r.meaning = substitute_and_normalize(r.image, recipes, opt.normalize_budget);
                typecheck_target(r.meaning, {}, result, lex.constants);
                out.push_back(std::move(r));
            }
        }
    };
    go(0);
    std::stable_sort(out.begin(), out.end(), [](const Reading& a, const Reading& b) {
        return to_string(canonical_target(a.meaning)) < to_string(canonical_target(b.meaning));
    });
    return out;
}

} // namespace lg
