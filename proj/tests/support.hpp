#pragma once

#include "lg/arrow.hpp"

#include <random>
#include <string>
#include <vector>

namespace lgtest {

inline lg::Formula random_formula(std::mt19937& rng, int connectives, const std::vector<std::string>& atoms) {
    if (connectives == 0) {
        std::uniform_int_distribution<std::size_t> pick(0, atoms.size() - 1);
        return lg::atom(atoms[pick(rng)]);
    }
    std::uniform_int_distribution<int> split(0, connectives - 1);
    std::uniform_int_distribution<int> conn(0, 5);
    int l = split(rng);
    return lg::Formula::binary(static_cast<lg::Conn>(conn(rng)), random_formula(rng, l, atoms),
                               random_formula(rng, connectives - 1 - l, atoms));
}

// All formulas with exactly n connectives over the given atoms.
inline std::vector<lg::Formula> all_formulas(int n, const std::vector<std::string>& atoms) {
    std::vector<lg::Formula> out;
    if (n == 0) {
        for (auto& a : atoms) out.push_back(lg::atom(a));
        return out;
    }
    for (int l = 0; l < n; ++l) {
        auto ls = all_formulas(l, atoms);
        auto rs = all_formulas(n - 1 - l, atoms);
        for (int c = 0; c < 6; ++c)
            for (auto& a : ls)
                for (auto& b : rs) out.push_back(lg::Formula::binary(static_cast<lg::Conn>(c), a, b));
    }
    return out;
}

// Random well-typed proof: start from an identity or axiom and apply
// whichever rules the current type admits.
inline lg::ArrowProof random_proof(std::mt19937& rng, int steps) {
    auto f = [&] { return random_formula(rng, rng() % 3, {"a", "b"}); };
    lg::ArrowProof p;
    switch (rng() % 6) {
    case 0: p = lg::ax_d(f(), f(), f()); break;
    case 1: p = lg::ax_q(f(), f(), f()); break;
    case 2: p = lg::ax_b(f(), f(), f()); break;
    case 3: p = lg::ax_p(f(), f(), f()); break;
    default: p = lg::id_arrow(random_formula(rng, 2 + rng() % 3, {"a", "b"})); break;
    }
    for (int i = 0; i < steps; ++i) {
        lg::ArrowType t = *lg::infer(p).type;
        std::vector<lg::ArrowProof> options;
        if (t.source.is(lg::Conn::Prod)) {
            options.push_back(lg::res_over(p));
            options.push_back(lg::res_under(p));
        }
        if (t.target.is(lg::Conn::Over)) options.push_back(lg::res_over_inv(p));
        if (t.target.is(lg::Conn::Under)) options.push_back(lg::res_under_inv(p));
        if (t.target.is(lg::Conn::Coprod)) {
            options.push_back(lg::cores_ldiff(p));
            options.push_back(lg::cores_rdiff(p));
        }
        if (t.source.is(lg::Conn::LDiff)) options.push_back(lg::cores_ldiff_inv(p));
        if (t.source.is(lg::Conn::RDiff)) options.push_back(lg::cores_rdiff_inv(p));
        options.push_back(lg::comp(lg::id_arrow(t.target), p));
        options.push_back(lg::comp(p, lg::id_arrow(t.source)));
        p = options[rng() % options.size()];
    }
    return p;
}

} // namespace lgtest
